use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use polar_core::{
    build_schedule, construct_code, reduction_report, ConstructionMethod, DecoderKind, ListDecoder,
    PmMode,
};
use polar_sim::error::SimError;
use polar_sim::{
    emit_report, emit_timesteps, parse_ebn0_list, run_equivalence_campaign, run_simulation,
    CodeSpec, OutputFormat, SimConfig, TimeStepRow,
};

#[derive(Parser)]
#[command(
    name = "polar-sim",
    version,
    about = "Polar code construction, decoding and Monte-Carlo simulation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CodeArgs {
    /// log2 of the block length
    #[arg(long)]
    n: Option<u32>,
    /// Information bits, CRC included
    #[arg(long)]
    k: Option<usize>,
    /// Frozen-set file (one index per line)
    #[arg(long)]
    frozen_file: Option<PathBuf>,
    #[arg(long, default_value_t = 2.0)]
    design_ebn0: f64,
    #[arg(long, default_value = "ga")]
    method: ConstructionMethod,
    /// none, crc8 or crc32
    #[arg(long, default_value = "none")]
    crc: String,
}

impl CodeArgs {
    fn spec(&self) -> Result<CodeSpec, SimError> {
        let n = self
            .n
            .ok_or_else(|| SimError::Config("--n is required".into()))?;
        Ok(CodeSpec {
            n,
            k: self.k,
            frozen_file: self.frozen_file.clone(),
            design_ebn0_db: self.design_ebn0,
            method: self.method,
            crc: self.crc.clone(),
        })
    }
}

#[derive(Args, Clone)]
struct RunArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long, default_value = "8")]
    list_size: usize,
    #[arg(long, default_value = "hwf")]
    pm: PmMode,
    /// start:step:stop or a comma list, in dB
    #[arg(long, default_value = "1.0:0.5:3.0")]
    ebn0: String,
    /// Frames per Eb/N0 point
    #[arg(long, default_value_t = 10_000)]
    frames: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads (0 = all cores)
    #[arg(long, default_value_t = 0)]
    workers: usize,
}

impl RunArgs {
    fn config(&self, algo: DecoderKind) -> Result<SimConfig, SimError> {
        let mut cfg = SimConfig::new(
            self.code.spec()?,
            algo,
            self.list_size,
            self.pm,
            parse_ebn0_list(&self.ebn0)?,
        );
        cfg.max_frames = self.frames;
        cfg.seed = self.seed;
        cfg.workers = self.workers;
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a code and write its frozen set
    Construct {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 2.0)]
        design_ebn0: f64,
        #[arg(long, default_value = "ga")]
        method: ConstructionMethod,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time-step counts of SC, SCL, SSCL and Fast-SSCL
    Timesteps {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_delimiter = ',', default_value = "2,4,8,16,32")]
        list_sizes: Vec<usize>,
        #[arg(long, default_value = "csv")]
        format: OutputFormat,
        /// Print the pruned decoding tree instead of the table
        #[arg(long)]
        tree: bool,
    },
    /// Decode one LLR vector (one value per line)
    Decode {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        llr_file: PathBuf,
        #[arg(long, default_value = "fast-sscl")]
        algo: DecoderKind,
        #[arg(long, default_value_t = 8)]
        list_size: usize,
        #[arg(long, default_value = "hwf")]
        pm: PmMode,
    },
    /// Monte-Carlo FER/BER simulation
    Simulate {
        /// JSON configuration; replaces all other flags
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value = "fast-sscl")]
        algo: DecoderKind,
        #[arg(long, default_value_t = 100)]
        max_frame_errors: u64,
        #[arg(long)]
        format: Option<OutputFormat>,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decode identical frames with several decoders and report divergences
    Equivalence {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_delimiter = ',', default_value = "scl,sscl,fast-sscl")]
        algos: Vec<DecoderKind>,
        /// Stop at the first divergent frame
        #[arg(long)]
        stop_at_first: bool,
    },
}

fn write_out(path: Option<&PathBuf>, text: &str) -> Result<(), SimError> {
    match path {
        Some(path) => std::fs::write(path, text).map_err(|source| SimError::Io {
            path: path.clone(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_llrs(path: &PathBuf) -> Result<Vec<f64>, SimError> {
    let text = std::fs::read_to_string(path).map_err(|source| SimError::Io {
        path: path.clone(),
        source,
    })?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            l.trim().parse::<f64>().map_err(|_| {
                SimError::Config(format!(
                    "{}:{}: not a number: '{}'",
                    path.display(),
                    i + 1,
                    l.trim()
                ))
            })
        })
        .collect()
}

fn run(cli: Cli) -> Result<(), SimError> {
    match cli.command {
        Command::Construct {
            n,
            k,
            design_ebn0,
            method,
            out,
        } => {
            let code = construct_code(n, k, design_ebn0, method)?;
            let doc = format!(
                "# P({},{}) {} at {} dB\n{}",
                code.len(),
                code.k(),
                method,
                design_ebn0,
                code.frozen_set_document()
            );
            write_out(out.as_ref(), &doc)
        }
        Command::Timesteps {
            code,
            list_sizes,
            format,
            tree,
        } => {
            let code = code.spec()?.build()?;
            if tree {
                print!("{}", build_schedule(&code).dump_tree());
                return Ok(());
            }
            let rows: Vec<TimeStepRow> = reduction_report(&code, &list_sizes)?
                .into_iter()
                .map(Into::into)
                .collect();
            print!("{}", emit_timesteps(&rows, format));
            Ok(())
        }
        Command::Decode {
            mut code,
            llr_file,
            algo,
            list_size,
            pm,
        } => {
            let llr = read_llrs(&llr_file)?;
            if code.n.is_none() {
                if !llr.len().is_power_of_two() || llr.len() < 2 {
                    return Err(SimError::Config(format!(
                        "{} LLRs is not a block length",
                        llr.len()
                    )));
                }
                code.n = Some(llr.len().trailing_zeros());
            }
            let code = code.spec()?.build()?;
            if algo == DecoderKind::Sc {
                let out = polar_core::sc_decode(&code, &llr, pm.f_mode())?;
                println!("u_hat: {}", out.u_hat);
                println!("x_hat: {}", out.x_hat);
                println!("info: {}", code.extract(out.u_hat.as_slice())?);
                println!("time_steps: {}", out.time_steps);
                return Ok(());
            }
            let decoder = ListDecoder::new(code.clone(), list_size, algo, pm)?;
            let res = decoder.decode(&llr)?;
            println!("u_hat: {}", res.u_hat());
            println!("x_hat: {}", res.x_hat());
            println!("info: {}", code.extract(res.u_hat().as_slice())?);
            println!("pm: {}", res.pm());
            if let Some(passed) = res.selection.crc_passed {
                println!("crc: {}", if passed { "pass" } else { "fail" });
            }
            let pms: Vec<String> = res.sorted_pms().iter().map(|p| p.to_string()).collect();
            println!("list_pms: {}", pms.join(","));
            println!("time_steps: {}", res.time_steps);
            Ok(())
        }
        Command::Simulate {
            config,
            run,
            algo,
            max_frame_errors,
            format,
            out,
        } => {
            let mut cfg = match config {
                Some(path) => SimConfig::load(&path)?,
                None => {
                    let mut cfg = run.config(algo)?;
                    cfg.max_frame_errors = max_frame_errors;
                    cfg
                }
            };
            if let Some(format) = format {
                cfg.format = format;
            }
            let start = Instant::now();
            let result = run_simulation(&cfg)?;
            eprintln!("wall time: {:.3} s", start.elapsed().as_secs_f64());
            write_out(out.as_ref(), &emit_report(&result, cfg.format))
        }
        Command::Equivalence {
            run,
            algos,
            stop_at_first,
        } => {
            let cfg = run.config(algos[0])?;
            let report = run_equivalence_campaign(&cfg, &algos, stop_at_first)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
