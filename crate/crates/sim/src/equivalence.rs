//! Cross-decoder equivalence campaigns on identical channel outputs.

use polar_core::DecoderKind;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::SimConfig;
use crate::error::{Result, SimError};
use crate::frames::{generate_frame, sigma_for, stream_id, Decoded, Engine};
use crate::simulate::{thread_pool, CHUNK};

/// Path metrics closer than this are considered equal.
pub const PM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DivergenceKind {
    /// Different selected source word.
    Output,
    /// Same selected word, different sorted path-metric list.
    Metric,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Divergence {
    pub ebn0_db: f64,
    pub frame: u64,
    pub kind: DivergenceKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairReport {
    pub a: String,
    pub b: String,
    pub output_divergences: u64,
    pub metric_divergences: u64,
    pub first: Option<Divergence>,
}

impl PairReport {
    pub fn divergences(&self) -> u64 {
        self.output_divergences + self.metric_divergences
    }
}

/// Error counts of one decoder over the campaign frames.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecoderTally {
    pub decoder: String,
    pub bit_errors: u64,
    pub frame_errors: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    #[serde(rename = "L")]
    pub list_size: usize,
    pub pm_mode: String,
    pub ebn0_db: Vec<f64>,
    pub frames: u64,
    pub pairs: Vec<PairReport>,
    pub tallies: Vec<DecoderTally>,
}

impl EquivalenceReport {
    pub fn pair(&self, a: DecoderKind, b: DecoderKind) -> Option<&PairReport> {
        let (a, b) = (a.to_string(), b.to_string());
        self.pairs
            .iter()
            .find(|p| (p.a == a && p.b == b) || (p.a == b && p.b == a))
    }

    pub fn total_divergences(&self) -> u64 {
        self.pairs.iter().map(PairReport::divergences).sum()
    }
}

/// Compares two decoder outputs; metric lists are compared only when both decoders keep a list.
pub fn compare(a: &Decoded, b: &Decoded) -> Option<DivergenceKind> {
    if a.u_hat != b.u_hat {
        return Some(DivergenceKind::Output);
    }
    if a.pms.is_empty() || b.pms.is_empty() {
        return None;
    }
    let same = a.pms.len() == b.pms.len()
        && a.pms
            .iter()
            .zip(&b.pms)
            .all(|(x, y)| (x - y).abs() <= PM_TOLERANCE);
    (!same).then_some(DivergenceKind::Metric)
}

/// Decodes `config.max_frames` frames per Eb/N0 point with every decoder in
/// `algos` on the same LLRs and reports divergences for every pair.
///
/// With `stop_at_first`, the campaign ends after the chunk holding the first
/// divergence of any pair, and `frames` counts the frames up to and including it.
pub fn run_equivalence_campaign(
    config: &SimConfig,
    algos: &[DecoderKind],
    stop_at_first: bool,
) -> Result<EquivalenceReport> {
    config.validate()?;
    if algos.len() < 2 {
        return Err(SimError::Config(
            "an equivalence campaign needs at least two decoders".into(),
        ));
    }
    let code = config.code.build()?;
    let engines = algos
        .iter()
        .map(|&a| Engine::new(code.clone(), a, config.list_size, config.pm_mode))
        .collect::<polar_core::Result<Vec<_>>>()?;
    let pool = thread_pool(config.workers)?;

    let mut pairs: Vec<PairReport> = Vec::new();
    for i in 0..algos.len() {
        for j in i + 1..algos.len() {
            pairs.push(PairReport {
                a: algos[i].to_string(),
                b: algos[j].to_string(),
                output_divergences: 0,
                metric_divergences: 0,
                first: None,
            });
        }
    }
    let mut tallies: Vec<DecoderTally> = algos
        .iter()
        .map(|a| DecoderTally {
            decoder: a.to_string(),
            bit_errors: 0,
            frame_errors: 0,
        })
        .collect();

    let mut total = 0u64;
    'points: for (point, &ebn0_db) in config.ebn0_db.iter().enumerate() {
        let sigma = sigma_for(&code, ebn0_db)?;
        let mut start = 0u64;
        while start < config.max_frames {
            let end = (start + CHUNK).min(config.max_frames);
            let chunk: Vec<Result<(Vec<Decoded>, Vec<usize>)>> = pool.install(|| {
                (start..end)
                    .into_par_iter()
                    .map(|i| {
                        let err = |source| SimError::Decode {
                            ebn0_db,
                            frame: i,
                            source,
                        };
                        let frame = generate_frame(&code, sigma, config.seed, stream_id(point, i))
                            .map_err(err)?;
                        let mut outs = Vec::with_capacity(engines.len());
                        let mut errors = Vec::with_capacity(engines.len());
                        for engine in &engines {
                            let out = engine.decode(&frame.llr).map_err(err)?;
                            errors.push(engine.payload_errors(&out, &frame).map_err(err)?);
                            outs.push(out);
                        }
                        Ok((outs, errors))
                    })
                    .collect()
            });
            let mut found = false;
            for (offset, item) in chunk.into_iter().enumerate() {
                let (outs, errors) = item?;
                let frame = start + offset as u64;
                total += 1;
                for (t, &e) in tallies.iter_mut().zip(&errors) {
                    t.bit_errors += e as u64;
                    t.frame_errors += u64::from(e > 0);
                }
                let mut k = 0;
                for i in 0..outs.len() {
                    for j in i + 1..outs.len() {
                        if let Some(kind) = compare(&outs[i], &outs[j]) {
                            let pair = &mut pairs[k];
                            match kind {
                                DivergenceKind::Output => pair.output_divergences += 1,
                                DivergenceKind::Metric => pair.metric_divergences += 1,
                            }
                            pair.first.get_or_insert(Divergence {
                                ebn0_db,
                                frame,
                                kind,
                            });
                            found = true;
                        }
                        k += 1;
                    }
                }
                if stop_at_first && found {
                    break 'points;
                }
            }
            start = end;
        }
    }

    Ok(EquivalenceReport {
        list_size: config.list_size,
        pm_mode: config.pm_mode.to_string(),
        ebn0_db: config.ebn0_db.clone(),
        frames: total,
        pairs,
        tallies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::CodeSpec;
    use polar_core::{BitVector, PmMode};

    fn config(l: usize, mode: PmMode) -> SimConfig {
        let mut cfg = SimConfig::new(
            CodeSpec::constructed(6, 32),
            DecoderKind::FastSscl,
            l,
            mode,
            vec![1.0, 2.0],
        );
        cfg.max_frames = 200;
        cfg.seed = 3;
        cfg
    }

    #[test]
    fn compare_kinds() {
        let d = |bits: &str, pms: Vec<f64>| Decoded {
            u_hat: bits.parse::<BitVector>().unwrap(),
            pms,
            crc_passed: None,
        };
        assert_eq!(
            compare(&d("01", vec![0.0, 1.0]), &d("01", vec![0.0, 1.0 + 1e-12])),
            None
        );
        assert_eq!(
            compare(&d("01", vec![0.0, 1.0]), &d("11", vec![0.0, 1.0])),
            Some(DivergenceKind::Output)
        );
        assert_eq!(
            compare(&d("01", vec![0.0, 1.0]), &d("01", vec![0.0, 1.1])),
            Some(DivergenceKind::Metric)
        );
        assert_eq!(
            compare(&d("01", vec![0.0]), &d("01", vec![0.0, 1.0])),
            Some(DivergenceKind::Metric)
        );
        assert_eq!(compare(&d("01", vec![]), &d("01", vec![0.0, 1.0])), None);
    }

    #[test]
    fn hwf_list_decoders_agree() {
        let algos = [
            DecoderKind::Scl,
            DecoderKind::Sscl,
            DecoderKind::FastSscl,
            DecoderKind::Capped(3),
        ];
        let report = run_equivalence_campaign(&config(4, PmMode::Hwf), &algos, false).unwrap();
        assert_eq!(report.frames, 400);
        assert_eq!(report.pairs.len(), 6);
        assert_eq!(report.total_divergences(), 0);
        let fer = report.tallies[0].frame_errors;
        assert!(fer > 0);
        assert!(report.tallies.iter().all(|t| t.frame_errors == fer));
    }

    #[test]
    fn sc_matches_list_of_one() {
        let algos = [DecoderKind::Sc, DecoderKind::Scl, DecoderKind::FastSscl];
        for mode in [PmMode::Exact, PmMode::Hwf] {
            let report = run_equivalence_campaign(&config(1, mode), &algos, false).unwrap();
            assert_eq!(report.total_divergences(), 0);
        }
    }

    #[test]
    fn stop_at_first_finds_capped_witness() {
        let mut cfg = config(8, PmMode::Hwf);
        cfg.max_frames = 5000;
        let report =
            run_equivalence_campaign(&cfg, &[DecoderKind::FastSscl, DecoderKind::Capped(1)], true)
                .unwrap();
        let first = report.pairs[0].first.expect("witness");
        assert_eq!(report.pairs[0].divergences(), 1);
        let point = cfg
            .ebn0_db
            .iter()
            .position(|&e| e == first.ebn0_db)
            .unwrap() as u64;
        assert_eq!(report.frames, point * cfg.max_frames + first.frame + 1);
    }

    #[test]
    fn needs_two_decoders() {
        assert!(
            run_equivalence_campaign(&config(2, PmMode::Hwf), &[DecoderKind::Scl], false).is_err()
        );
    }
}
