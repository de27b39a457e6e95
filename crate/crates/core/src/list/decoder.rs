use super::metric::PmMode;
use super::nodes::{
    decode_leaf, decode_rate0, decode_rate1, decode_rep, NodeSpan, Rate1Options, Rate1Order,
    Rate1Stats,
};
use super::path::{DecoderPath, PathSet};
use crate::bits::BitVector;
use crate::code::PolarCode;
use crate::crc::crc_check_slice;
use crate::error::{check_len, Error, Result};
use crate::schedule::{
    build_schedule, count_time_steps, rate1_splits, DecoderKind, NodeType, Schedule,
};

/// Which path a decode hands back and whether it passed the CRC.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Selection {
    pub index: usize,
    /// `None` without CRC; `Some(false)` when no path passed and the lowest
    /// metric path was returned instead.
    pub crc_passed: Option<bool>,
}

/// Lowest-metric path, preferring paths that pass the code's CRC.
pub fn select_output(set: &PathSet, code: &PolarCode) -> Result<Selection> {
    let best = |filter: &dyn Fn(&DecoderPath) -> Result<bool>| -> Result<Option<usize>> {
        let mut best: Option<usize> = None;
        for (i, path) in set.paths().iter().enumerate() {
            if !filter(path)? {
                continue;
            }
            if best.is_none_or(|b| path.pm.total_cmp(&set.paths()[b].pm).is_lt()) {
                best = Some(i);
            }
        }
        Ok(best)
    };
    let lowest = best(&|_| Ok(true))?.ok_or(Error::EmptyPathSet)?;
    let Some(crc) = code.crc() else {
        return Ok(Selection {
            index: lowest,
            crc_passed: None,
        });
    };
    let passing = best(&|path| {
        let info = code.extract(path.u_hat())?;
        crc_check_slice(info.as_slice(), crc)
    })?;
    Ok(match passing {
        Some(index) => Selection {
            index,
            crc_passed: Some(true),
        },
        None => Selection {
            index: lowest,
            crc_passed: Some(false),
        },
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecodeResult {
    /// Final list, sorted by ascending path metric.
    pub paths: PathSet,
    pub selection: Selection,
    pub time_steps: u64,
    pub rate1: Rate1Stats,
}

impl DecodeResult {
    pub fn selected(&self) -> &DecoderPath {
        &self.paths.paths()[self.selection.index]
    }

    pub fn u_hat(&self) -> BitVector {
        BitVector::from_vec_unchecked(self.selected().u_hat().to_vec())
    }

    pub fn x_hat(&self) -> BitVector {
        BitVector::from_vec_unchecked(self.selected().x_hat().to_vec())
    }

    pub fn pm(&self) -> f64 {
        self.selected().pm()
    }

    pub fn sorted_pms(&self) -> Vec<f64> {
        self.paths.sorted_pms()
    }
}

/// A list decoder bound to one code and configuration.
#[derive(Debug, Clone)]
pub struct ListDecoder {
    code: PolarCode,
    schedule: Schedule,
    list_size: usize,
    algo: DecoderKind,
    mode: PmMode,
    early_exit: bool,
    time_steps: u64,
}

impl ListDecoder {
    pub fn new(code: PolarCode, list_size: usize, algo: DecoderKind, mode: PmMode) -> Result<Self> {
        if algo == DecoderKind::Sc {
            return Err(Error::Parameter(
                "SC is not a list algorithm; use sc_decode".into(),
            ));
        }
        let schedule = build_schedule(&code);
        let time_steps = count_time_steps(&schedule, algo, list_size)?;
        Ok(Self {
            code,
            schedule,
            list_size,
            algo,
            mode,
            early_exit: false,
            time_steps,
        })
    }

    /// Enables skipping Rate-1 flips that cannot survive. Outputs are unchanged.
    pub fn with_early_exit(mut self, on: bool) -> Self {
        self.early_exit = on;
        self
    }

    pub fn code(&self) -> &PolarCode {
        &self.code
    }

    pub fn schedule(&self) -> &Schedule {
        &self.schedule
    }

    pub fn list_size(&self) -> usize {
        self.list_size
    }

    pub fn algo(&self) -> DecoderKind {
        self.algo
    }

    pub fn mode(&self) -> PmMode {
        self.mode
    }

    /// Time-steps per frame under the latency model.
    pub fn time_steps(&self) -> u64 {
        self.time_steps
    }

    pub fn decode(&self, llr: &[f64]) -> Result<DecodeResult> {
        check_len(self.code.len(), llr.len())?;
        if let Some(i) = llr.iter().position(|a| !a.is_finite()) {
            return Err(Error::Parameter(format!("LLR {i} is not finite")));
        }
        let mut set = PathSet::new(llr, self.list_size)?;
        let mut walk = Walk {
            decoder: self,
            next_node: 0,
            time_steps: 0,
            rate1: Rate1Stats::default(),
        };
        walk.descend(&mut set, NodeSpan::root(self.code.len()));
        debug_assert_eq!(walk.time_steps, self.time_steps);
        let (time_steps, rate1) = (walk.time_steps, walk.rate1);
        set.sort_by_pm();
        let selection = select_output(&set, &self.code)?;
        Ok(DecodeResult {
            paths: set,
            selection,
            time_steps,
            rate1,
        })
    }
}

struct Walk<'a> {
    decoder: &'a ListDecoder,
    next_node: usize,
    time_steps: u64,
    rate1: Rate1Stats,
}

impl Walk<'_> {
    fn descend(&mut self, set: &mut PathSet, span: NodeSpan) {
        let d = self.decoder;
        if d.algo == DecoderKind::Scl {
            if span.len == 1 {
                let frozen = d.code.is_frozen(span.start);
                if !frozen {
                    self.time_steps += 1;
                }
                decode_leaf(set, span, frozen, d.mode);
                return;
            }
        } else {
            let node = d.schedule.nodes()[self.next_node];
            debug_assert_eq!(node.start, span.start);
            if node.len == span.len {
                self.next_node += 1;
                self.special(set, span, node.kind);
                return;
            }
        }

        let half = span.len / 2;
        let f_mode = d.mode.f_mode();
        self.time_steps += 2;
        set.paths_mut()
            .iter_mut()
            .for_each(|p| p.step_f(span.depth, f_mode));
        self.descend(
            set,
            NodeSpan {
                depth: span.depth + 1,
                start: span.start,
                len: half,
            },
        );
        set.paths_mut()
            .iter_mut()
            .for_each(|p| p.step_g(span.depth));
        self.descend(
            set,
            NodeSpan {
                depth: span.depth + 1,
                start: span.start + half,
                len: half,
            },
        );
        set.paths_mut()
            .iter_mut()
            .for_each(|p| p.step_combine(span.depth));
    }

    fn special(&mut self, set: &mut PathSet, span: NodeSpan, kind: NodeType) {
        let d = self.decoder;
        match kind {
            NodeType::Rate0 => {
                self.time_steps += 1;
                decode_rate0(set, span, d.mode);
            }
            NodeType::Rep => {
                self.time_steps += 2;
                decode_rep(set, span, d.mode);
            }
            NodeType::Rate1 => {
                let splits = rate1_splits(d.algo, d.list_size, span.len);
                self.time_steps += splits as u64;
                let order = if d.algo == DecoderKind::Sscl {
                    Rate1Order::Natural
                } else {
                    Rate1Order::LeastReliableFirst
                };
                self.rate1 += decode_rate1(
                    set,
                    span,
                    d.mode,
                    Rate1Options {
                        order,
                        splits,
                        early_exit: d.early_exit,
                    },
                );
            }
            NodeType::Generic | NodeType::Leaf => unreachable!("schedule holds special nodes only"),
        }
    }
}

/// One-shot list decode; see [`ListDecoder`].
pub fn list_decode(
    code: &PolarCode,
    llr: &[f64],
    list_size: usize,
    algo: DecoderKind,
    mode: PmMode,
) -> Result<DecodeResult> {
    ListDecoder::new(code.clone(), list_size, algo, mode)?.decode(llr)
}
