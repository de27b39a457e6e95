//! Closed-form list decoders for special nodes.
//!
//! Each decoder reads the node LLRs from `alpha[depth]` of every path, writes
//! the node partial sums to `beta[depth]`, the source bits of the node span to
//! `u_hat`, and updates path metrics.

use super::metric::{hard_decision, pm_increment, PmMode};
use super::path::{Candidate, DecoderPath, PathSet};
use crate::code::polar_transform;

/// Location of a node in the decoding tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeSpan {
    pub depth: usize,
    /// First source-bit index covered by the node.
    pub start: usize,
    pub len: usize,
}

impl NodeSpan {
    /// The root of a tree with `len` leaves.
    pub fn root(len: usize) -> Self {
        Self {
            depth: 0,
            start: 0,
            len,
        }
    }
}

/// Writes a node's partial sums and the matching source bits.
fn store_pattern(path: &mut DecoderPath, span: NodeSpan, pattern: &[u8]) {
    path.beta[span.depth][..span.len].copy_from_slice(pattern);
    let u = &mut path.u_hat[span.start..span.start + span.len];
    u.copy_from_slice(pattern);
    polar_transform(u);
}

fn node_alpha(path: &DecoderPath, span: NodeSpan) -> &[f64] {
    &path.alpha[span.depth][..span.len]
}

/// Single leaf under plain SCL: frozen leaves update the metric with bit 0,
/// information leaves split every path.
pub(crate) fn decode_leaf(set: &mut PathSet, span: NodeSpan, frozen: bool, mode: PmMode) {
    debug_assert_eq!(span.len, 1);
    if frozen {
        for path in set.paths_mut() {
            let a = path.alpha[span.depth][0];
            path.pm += pm_increment(a, 0, mode);
            path.beta[span.depth][0] = 0;
            path.u_hat[span.start] = 0;
        }
        return;
    }
    let candidates = set
        .paths()
        .iter()
        .enumerate()
        .flat_map(|(l, p)| {
            let a = p.alpha[span.depth][0];
            [0u8, 1].map(|bit| Candidate {
                parent: l,
                bit,
                pm: p.pm + pm_increment(a, bit, mode),
            })
        })
        .collect();
    set.split_and_prune(candidates, |path, c| {
        path.beta[span.depth][0] = c.bit;
        path.u_hat[span.start] = c.bit;
    });
}

/// Rate-0 node: no split, metric grows by the all-zero penalty.
pub fn decode_rate0(set: &mut PathSet, span: NodeSpan, mode: PmMode) {
    let zeros = vec![0u8; span.len];
    for path in set.paths_mut() {
        let inc: f64 = node_alpha(path, span)
            .iter()
            .map(|&a| pm_increment(a, 0, mode))
            .sum();
        path.pm += inc;
        store_pattern(path, span, &zeros);
    }
}

/// Repetition node: each path proposes the all-zero and the all-one pattern.
pub fn decode_rep(set: &mut PathSet, span: NodeSpan, mode: PmMode) {
    let candidates = set
        .paths()
        .iter()
        .enumerate()
        .flat_map(|(l, p)| {
            let alpha = node_alpha(p, span);
            [0u8, 1].map(|bit| Candidate {
                parent: l,
                bit,
                pm: p.pm
                    + alpha
                        .iter()
                        .map(|&a| pm_increment(a, bit, mode))
                        .sum::<f64>(),
            })
        })
        .collect();
    set.split_and_prune(candidates, |path, c| {
        let pattern = vec![c.bit; span.len];
        store_pattern(path, span, &pattern);
    });
}

/// Order in which a Rate-1 decoder visits the node bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rate1Order {
    /// Natural index order.
    Natural,
    /// Per path, ascending `|alpha|`, ties by lower index.
    LeastReliableFirst,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rate1Options {
    pub order: Rate1Order,
    /// Number of bit-estimation steps that may split paths; the rest are hard decisions.
    pub splits: usize,
    /// Skip a flip whose metric already exceeds every kept-bit child when the
    /// list is full; such a candidate can never survive pruning.
    pub early_exit: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rate1Stats {
    /// Estimation steps in which at least one path was split.
    pub split_steps: usize,
    /// Total number of path duplications proposed.
    pub path_splits: usize,
}

impl std::ops::AddAssign for Rate1Stats {
    fn add_assign(&mut self, rhs: Self) {
        self.split_steps += rhs.split_steps;
        self.path_splits += rhs.path_splits;
    }
}

fn visit_order(alpha: &[f64], order: Rate1Order) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..alpha.len()).collect();
    if order == Rate1Order::LeastReliableFirst {
        idx.sort_by(|&a, &b| alpha[a].abs().total_cmp(&alpha[b].abs()).then(a.cmp(&b)));
    }
    idx
}

/// Rate-1 node decoder shared by the SSCL, Fast-SSCL and capped variants.
///
/// Every path starts from the hard decision of its own LLRs. For each of the
/// first `splits` positions in visit order, every path proposes keeping and
/// flipping that bit; candidates are pruned to `L` after each step. Positions
/// left over keep their hard decision.
pub fn decode_rate1(
    set: &mut PathSet,
    span: NodeSpan,
    mode: PmMode,
    opts: Rate1Options,
) -> Rate1Stats {
    let splits = opts.splits.min(span.len);
    let mut orders: Vec<Vec<usize>> = Vec::with_capacity(set.len());
    for path in set.paths_mut() {
        let alpha = &path.alpha[span.depth][..span.len];
        orders.push(visit_order(alpha, opts.order));
        let hd: Vec<u8> = alpha.iter().map(|&a| hard_decision(a)).collect();
        path.beta[span.depth][..span.len].copy_from_slice(&hd);
    }

    let mut stats = Rate1Stats::default();
    for step in 0..splits {
        let kept: Vec<Candidate> = set
            .paths()
            .iter()
            .enumerate()
            .map(|(l, path)| {
                let a = path.alpha[span.depth][orders[l][step]];
                let hd = hard_decision(a);
                Candidate {
                    parent: l,
                    bit: hd,
                    pm: path.pm + pm_increment(a, hd, mode),
                }
            })
            .collect();
        let worst_kept = if opts.early_exit && set.is_full() {
            kept.iter().map(|c| c.pm).fold(f64::NEG_INFINITY, f64::max)
        } else {
            f64::INFINITY
        };
        let mut candidates = Vec::with_capacity(2 * set.len());
        let mut split_here = 0;
        for (path, keep) in set.paths().iter().zip(kept) {
            candidates.push(keep);
            let a = path.alpha[span.depth][orders[keep.parent][step]];
            let flip_pm = path.pm + pm_increment(a, 1 - keep.bit, mode);
            // Strictly worse than L kept children: pruned whatever the tie-break.
            if flip_pm > worst_kept {
                continue;
            }
            split_here += 1;
            candidates.push(Candidate {
                parent: keep.parent,
                bit: 1 - keep.bit,
                pm: flip_pm,
            });
        }
        if split_here > 0 {
            stats.split_steps += 1;
            stats.path_splits += split_here;
        }
        let parents = set.split_and_prune(candidates, |path, c| {
            let pos = orders[c.parent][step];
            path.beta[span.depth][pos] = c.bit;
        });
        orders = parents.into_iter().map(|p| orders[p].clone()).collect();
    }

    for (path, order) in set.paths_mut().iter_mut().zip(&orders) {
        if mode == PmMode::Exact {
            let alpha = &path.alpha[span.depth];
            let rest: f64 = order[splits..]
                .iter()
                .map(|&i| pm_increment(alpha[i], hard_decision(alpha[i]), mode))
                .sum();
            path.pm += rest;
        }
        let pattern = path.beta[span.depth][..span.len].to_vec();
        store_pattern(path, span, &pattern);
    }
    stats
}

/// SSCL Rate-1 decoder: all `N_v` bits estimated in index order.
pub fn decode_rate1_sscl(set: &mut PathSet, span: NodeSpan, mode: PmMode) -> Rate1Stats {
    decode_rate1(
        set,
        span,
        mode,
        Rate1Options {
            order: Rate1Order::Natural,
            splits: span.len,
            early_exit: false,
        },
    )
}

/// Fast Rate-1 decoder: only the `min(L-1, N_v)` least reliable bits split paths.
pub fn decode_rate1_fast(set: &mut PathSet, span: NodeSpan, mode: PmMode) -> Rate1Stats {
    let splits = (set.list_size() - 1).min(span.len);
    decode_rate1(
        set,
        span,
        mode,
        Rate1Options {
            order: Rate1Order::LeastReliableFirst,
            splits,
            early_exit: false,
        },
    )
}

/// Fast Rate-1 decoder with the number of splitting steps capped at `t`.
///
/// Not equivalent to SCL when `t < min(L-1, N_v)`.
pub fn decode_rate1_capped(
    set: &mut PathSet,
    span: NodeSpan,
    mode: PmMode,
    t: usize,
) -> Rate1Stats {
    decode_rate1(
        set,
        span,
        mode,
        Rate1Options {
            order: Rate1Order::LeastReliableFirst,
            splits: t.min(span.len),
            early_exit: false,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(alpha: &[f64], list_size: usize) -> PathSet {
        PathSet::new(alpha, list_size).unwrap()
    }

    fn root(len: usize) -> NodeSpan {
        NodeSpan::root(len)
    }

    #[test]
    fn rate0_hwf_penalty() {
        let mut set = single(&[1.5, -2.0, 3.0, -0.5], 4);
        decode_rate0(&mut set, root(4), PmMode::Hwf);
        assert_eq!(set.pms(), vec![2.5]);
        assert_eq!(set.paths()[0].beta(0), &[0, 0, 0, 0]);

        let mut set = single(&[1.5, 2.0, 3.0, 0.5], 4);
        decode_rate0(&mut set, root(4), PmMode::Hwf);
        assert_eq!(set.pms(), vec![0.0]);
    }

    #[test]
    fn rate0_exact_penalty() {
        let mut set = single(&[1.0, -1.0], 2);
        decode_rate0(&mut set, root(2), PmMode::Exact);
        let expected = (1.0 + (-1f64).exp()).ln() + (1.0 + 1f64.exp()).ln();
        assert!((set.pms()[0] - expected).abs() < 1e-12);
        assert!((expected - (0.3133 + 1.3133)).abs() < 1e-3);
    }

    #[test]
    fn rep_candidates() {
        let mut set = single(&[2.0; 4], 2);
        decode_rep(&mut set, root(4), PmMode::Hwf);
        assert_eq!(set.pms(), vec![0.0, 8.0]);
        assert_eq!(set.paths()[0].beta(0), &[0, 0, 0, 0]);
        assert_eq!(set.paths()[1].beta(0), &[1, 1, 1, 1]);
        assert_eq!(set.paths()[1].u_hat(), &[0, 0, 0, 1]);
    }

    #[test]
    fn rep_exact_symmetric_input() {
        let mut set = single(&[1.5, -0.5, -1.0, 0.0], 2);
        decode_rep(&mut set, root(4), PmMode::Exact);
        let pms = set.pms();
        assert!((pms[0] - pms[1]).abs() < 1e-12);
        // tie resolved toward bit 0
        assert_eq!(set.paths()[0].beta(0), &[0, 0, 0, 0]);
    }

    #[test]
    fn rate1_single_path_hard_decision() {
        let alpha = [0.3, -1.0, 2.0, -0.1];
        for mode in [PmMode::Exact, PmMode::Hwf] {
            let mut set = single(&alpha, 1);
            let stats = decode_rate1_sscl(&mut set, root(4), mode);
            assert_eq!(set.len(), 1);
            assert_eq!(set.paths()[0].beta(0), &[0, 1, 0, 1]);
            assert_eq!(stats.split_steps, 4);
            if mode == PmMode::Hwf {
                assert_eq!(set.pms(), vec![0.0]);
            }
            let mut fast = single(&alpha, 1);
            let stats = decode_rate1_fast(&mut fast, root(4), mode);
            assert_eq!(stats.split_steps, 0);
            assert_eq!(fast.paths()[0].beta(0), set.paths()[0].beta(0));
            assert!((fast.pms()[0] - set.pms()[0]).abs() < 1e-12);
        }
    }

    #[test]
    fn rate1_all_patterns_of_two() {
        let mut set = single(&[1.0, 2.0], 4);
        decode_rate1_sscl(&mut set, root(2), PmMode::Hwf);
        assert_eq!(set.pms(), vec![0.0, 1.0, 2.0, 3.0]);
        let betas: Vec<_> = set.paths().iter().map(|p| p.beta(0).to_vec()).collect();
        assert_eq!(betas, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn rate1_fast_worked_example() {
        let mut set = single(&[5.0, -1.0, 3.0, -2.0], 2);
        let stats = decode_rate1_fast(&mut set, root(4), PmMode::Hwf);
        assert_eq!(stats.split_steps, 1);
        assert_eq!(set.pms(), vec![0.0, 1.0]);
        assert_eq!(set.paths()[0].beta(0), &[0, 1, 0, 1]);
        assert_eq!(set.paths()[1].beta(0), &[0, 0, 0, 1]);
    }

    #[test]
    fn rate1_capped_zero_is_hard_decision() {
        let paths = vec![
            DecoderPath::with_pm(&[0.4, -0.2, 1.0, -3.0], 0.0).unwrap(),
            DecoderPath::with_pm(&[-0.4, 0.2, -1.0, 3.0], 0.7).unwrap(),
        ];
        let mut set = PathSet::from_paths(paths, 8).unwrap();
        let stats = decode_rate1_capped(&mut set, root(4), PmMode::Hwf, 0);
        assert_eq!(stats, Rate1Stats::default());
        assert_eq!(set.pms(), vec![0.0, 0.7]);
        assert_eq!(set.paths()[0].beta(0), &[0, 1, 0, 1]);
        assert_eq!(set.paths()[1].beta(0), &[1, 0, 1, 0]);
        assert_eq!(set.paths()[1].u_hat(), &[0, 0, 1, 0]);
    }

    #[test]
    fn early_exit_skips_hopeless_splits() {
        let alpha = [0.1, -0.2, 4.0, 5.0, -6.0, 7.0, 8.0, 9.0];
        let mut plain = single(&alpha, 2);
        let mut early = single(&alpha, 2);
        let opts = Rate1Options {
            order: Rate1Order::Natural,
            splits: 8,
            early_exit: false,
        };
        let a = decode_rate1(&mut plain, root(8), PmMode::Hwf, opts);
        let b = decode_rate1(
            &mut early,
            root(8),
            PmMode::Hwf,
            Rate1Options {
                early_exit: true,
                ..opts
            },
        );
        assert_eq!(plain, early);
        assert_eq!(a.split_steps, 8);
        assert!(b.path_splits < a.path_splits);
    }
}
