use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::sc::{f, g, FMode};

/// One list-decoding hypothesis and its stage memories.
///
/// `alpha[d]` and `beta[d]` hold the LLRs and partial sums of the node currently
/// being decoded at depth `d`, sized `N >> d`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecoderPath {
    pub(crate) pm: f64,
    pub(crate) alpha: Vec<Vec<f64>>,
    pub(crate) beta: Vec<Vec<u8>>,
    pub(crate) u_hat: Vec<u8>,
}

impl DecoderPath {
    /// A fresh path with metric 0 and the channel LLRs at the root.
    pub fn new(root_llr: &[f64]) -> Result<Self> {
        Self::with_pm(root_llr, 0.0)
    }

    pub fn with_pm(root_llr: &[f64], pm: f64) -> Result<Self> {
        let len = root_llr.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::Parameter(format!(
                "LLR vector length {len} is not a power of two"
            )));
        }
        if !(pm >= 0.0 && pm.is_finite()) {
            return Err(Error::Parameter(format!(
                "path metric {pm} must be finite and >= 0"
            )));
        }
        let depths = len.trailing_zeros() as usize + 1;
        let mut alpha: Vec<Vec<f64>> = (0..depths).map(|d| vec![0.0; len >> d]).collect();
        alpha[0].copy_from_slice(root_llr);
        Ok(Self {
            pm,
            alpha,
            beta: (0..depths).map(|d| vec![0; len >> d]).collect(),
            u_hat: vec![0; len],
        })
    }

    pub fn pm(&self) -> f64 {
        self.pm
    }

    /// Decided source bits (positions not yet reached are 0).
    pub fn u_hat(&self) -> &[u8] {
        &self.u_hat
    }

    /// Codeword estimate, valid once the root has been combined.
    pub fn x_hat(&self) -> &[u8] {
        &self.beta[0]
    }

    pub fn alpha(&self, depth: usize) -> &[f64] {
        &self.alpha[depth]
    }

    pub fn beta(&self, depth: usize) -> &[u8] {
        &self.beta[depth]
    }

    /// Left-child LLRs of the node at `depth`.
    pub(crate) fn step_f(&mut self, depth: usize, mode: FMode) {
        let (upper, lower) = self.alpha.split_at_mut(depth + 1);
        let src = &upper[depth];
        let half = src.len() / 2;
        for (i, dst) in lower[0].iter_mut().enumerate() {
            *dst = f(mode, src[i], src[i + half]);
        }
    }

    /// Stashes the left child's partial sums and computes the right-child LLRs.
    pub(crate) fn step_g(&mut self, depth: usize) {
        let half = self.beta[depth].len() / 2;
        let (bu, bl) = self.beta.split_at_mut(depth + 1);
        bu[depth][..half].copy_from_slice(&bl[0]);
        let (upper, lower) = self.alpha.split_at_mut(depth + 1);
        let src = &upper[depth];
        let beta_l = &bu[depth];
        for (i, dst) in lower[0].iter_mut().enumerate() {
            *dst = g(src[i], src[i + half], beta_l[i]);
        }
    }

    /// Combines the stashed left partial sums with the right child's.
    pub(crate) fn step_combine(&mut self, depth: usize) {
        let half = self.beta[depth].len() / 2;
        let (bu, bl) = self.beta.split_at_mut(depth + 1);
        let node = &mut bu[depth];
        for (i, &r) in bl[0].iter().enumerate() {
            node[i] ^= r;
            node[half + i] = r;
        }
    }
}

/// A child hypothesis: `parent` extended with `bit`, scored `pm`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    pub parent: usize,
    pub bit: u8,
    pub pm: f64,
}

impl Candidate {
    /// Total order: metric, then parent index, then bit value (0 first).
    pub fn order(&self, other: &Self) -> Ordering {
        self.pm
            .total_cmp(&other.pm)
            .then(self.parent.cmp(&other.parent))
            .then(self.bit.cmp(&other.bit))
    }
}

/// Sorts candidates by [`Candidate::order`] and keeps the best `list_size`.
pub fn select_survivors(candidates: &mut Vec<Candidate>, list_size: usize) {
    candidates.sort_by(Candidate::order);
    candidates.truncate(list_size);
}

/// The surviving paths of a list decoder; a path's id is its index.
#[derive(Debug, Clone, PartialEq)]
pub struct PathSet {
    paths: Vec<DecoderPath>,
    list_size: usize,
}

impl PathSet {
    pub fn new(root_llr: &[f64], list_size: usize) -> Result<Self> {
        Self::from_paths(vec![DecoderPath::new(root_llr)?], list_size)
    }

    pub fn from_paths(paths: Vec<DecoderPath>, list_size: usize) -> Result<Self> {
        if list_size == 0 {
            return Err(Error::Parameter("list size must be at least 1".into()));
        }
        if paths.is_empty() {
            return Err(Error::EmptyPathSet);
        }
        if paths.len() > list_size {
            return Err(Error::Parameter(format!(
                "{} paths exceed list size {list_size}",
                paths.len()
            )));
        }
        Ok(Self { paths, list_size })
    }

    pub fn paths(&self) -> &[DecoderPath] {
        &self.paths
    }

    pub(crate) fn paths_mut(&mut self) -> &mut [DecoderPath] {
        &mut self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn list_size(&self) -> usize {
        self.list_size
    }

    pub fn is_full(&self) -> bool {
        self.paths.len() == self.list_size
    }

    pub fn pms(&self) -> Vec<f64> {
        self.paths.iter().map(|p| p.pm).collect()
    }

    pub fn sorted_pms(&self) -> Vec<f64> {
        let mut pms = self.pms();
        pms.sort_by(f64::total_cmp);
        pms
    }

    /// Reorders paths by ascending metric, ties by current index.
    pub fn sort_by_pm(&mut self) {
        self.paths.sort_by(|a, b| a.pm.total_cmp(&b.pm));
    }

    /// Keeps the `L` best candidates and materializes them as the new path list.
    ///
    /// Survivors are stored in candidate order, each copied from its parent and
    /// then updated by `apply`. Returns the parent index of every survivor.
    pub fn split_and_prune<F>(&mut self, mut candidates: Vec<Candidate>, mut apply: F) -> Vec<usize>
    where
        F: FnMut(&mut DecoderPath, &Candidate),
    {
        select_survivors(&mut candidates, self.list_size);
        let mut uses = vec![0usize; self.paths.len()];
        for c in &candidates {
            uses[c.parent] += 1;
        }
        let mut old: Vec<Option<DecoderPath>> = self.paths.drain(..).map(Some).collect();
        let mut parents = Vec::with_capacity(candidates.len());
        for c in &candidates {
            uses[c.parent] -= 1;
            let mut path = if uses[c.parent] == 0 {
                old[c.parent].take().expect("parent consumed twice")
            } else {
                old[c.parent].clone().expect("parent already moved")
            };
            path.pm = c.pm;
            apply(&mut path, c);
            self.paths.push(path);
            parents.push(c.parent);
        }
        parents
    }
}
