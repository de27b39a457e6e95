//! Seeded Monte-Carlo FER/BER campaigns.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::SimConfig;
use crate::error::{Result, SimError};
use crate::frames::{generate_frame, sigma_for, stream_id, Engine};

/// Frames decoded between two early-stop checks. Fixed so that the frame
/// count at which a point stops does not depend on the worker count.
pub const CHUNK: u64 = 256;

/// Tally of one (decoder, L, metric, Eb/N0) point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimRow {
    pub decoder: String,
    #[serde(rename = "L")]
    pub list_size: usize,
    pub pm_mode: String,
    pub ebn0_db: f64,
    pub frames: u64,
    pub bit_errors: u64,
    pub frame_errors: u64,
    pub ber: f64,
    pub fer: f64,
    /// Time-steps per frame from the decoder's latency model.
    pub time_steps: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub rows: Vec<SimRow>,
}

pub(crate) fn thread_pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| SimError::Config(format!("cannot start {workers} workers: {e}")))
}

/// Runs every Eb/N0 point of `config` and tallies payload errors.
///
/// Frame `i` at point `p` always uses RNG stream `(seed, p << 40 | i)`. Frames are
/// decoded in parallel chunks and reduced in frame order, stopping right after the
/// frame that reaches `max_frame_errors`.
pub fn run_simulation(config: &SimConfig) -> Result<SimResult> {
    config.validate()?;
    let code = config.code.build()?;
    let engine = Engine::new(code.clone(), config.algo, config.list_size, config.pm_mode)?;
    let pool = thread_pool(config.workers)?;
    let payload = code.payload_len() as u64;

    let mut rows = Vec::with_capacity(config.ebn0_db.len());
    for (point, &ebn0_db) in config.ebn0_db.iter().enumerate() {
        let sigma = sigma_for(&code, ebn0_db)?;
        let (mut frames, mut bit_errors, mut frame_errors) = (0u64, 0u64, 0u64);
        'chunks: while frames < config.max_frames {
            let end = (frames + CHUNK).min(config.max_frames);
            let tallies: Vec<Result<u64>> = pool.install(|| {
                (frames..end)
                    .into_par_iter()
                    .map(|i| {
                        let err = |source| SimError::Decode {
                            ebn0_db,
                            frame: i,
                            source,
                        };
                        let frame = generate_frame(&code, sigma, config.seed, stream_id(point, i))
                            .map_err(err)?;
                        let decoded = engine.decode(&frame.llr).map_err(err)?;
                        Ok(engine.payload_errors(&decoded, &frame).map_err(err)? as u64)
                    })
                    .collect()
            });
            for errors in tallies {
                let errors = errors?;
                frames += 1;
                bit_errors += errors;
                frame_errors += u64::from(errors > 0);
                if frame_errors >= config.max_frame_errors {
                    break 'chunks;
                }
            }
        }
        rows.push(SimRow {
            decoder: config.algo.to_string(),
            list_size: config.list_size,
            pm_mode: config.pm_mode.to_string(),
            ebn0_db,
            frames,
            bit_errors,
            frame_errors,
            ber: bit_errors as f64 / (frames * payload) as f64,
            fer: frame_errors as f64 / frames as f64,
            time_steps: engine.time_steps(),
        });
    }
    Ok(SimResult { rows })
}
