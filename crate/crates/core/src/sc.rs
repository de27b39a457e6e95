//! Successive-cancellation kernels and the plain SC decoder.
//!
//! The kernels here (`f_exact`, `f_hwf`, `g`, `combine_beta`, `leaf_decision`)
//! are shared by every list decoder in the crate.

use std::fmt;
use std::str::FromStr;

use crate::bits::BitVector;
use crate::code::PolarCode;
use crate::error::{check_len, Error, Result};

/// Arithmetic used for the check-node (`f`) update.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum FMode {
    /// `2 artanh(tanh(a/2) tanh(b/2))`
    Exact,
    /// min-sum
    #[default]
    Hwf,
}

impl FromStr for FMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exact" => Ok(Self::Exact),
            "hwf" | "min-sum" => Ok(Self::Hwf),
            other => Err(Error::Parameter(format!("unknown f mode {other:?}"))),
        }
    }
}

impl fmt::Display for FMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Exact => "exact",
            Self::Hwf => "hwf",
        })
    }
}

/// `ln(1 + e^-x)` for `x >= 0`.
#[inline]
pub(crate) fn softplus_neg(x: f64) -> f64 {
    (-x).exp().ln_1p()
}

/// Exact check-node update.
///
/// Evaluated as `sgn(a)sgn(b)·max(0, min + ln(1+e^-(|a|+|b|)) - ln(1+e^-||a|-|b||))`,
/// which never overflows and keeps `|f| <= min(|a|, |b|)`.
#[inline]
pub fn f_exact(a: f64, b: f64) -> f64 {
    let (x, y) = (a.abs(), b.abs());
    let mag = x.min(y) + softplus_neg(x + y) - softplus_neg((x - y).abs());
    let mag = mag.clamp(0.0, x.min(y));
    if (a < 0.0) != (b < 0.0) {
        -mag
    } else {
        mag
    }
}

/// Min-sum check-node update.
#[inline]
pub fn f_hwf(a: f64, b: f64) -> f64 {
    let mag = a.abs().min(b.abs());
    if (a < 0.0) != (b < 0.0) {
        -mag
    } else {
        mag
    }
}

#[inline]
pub fn f(mode: FMode, a: f64, b: f64) -> f64 {
    match mode {
        FMode::Exact => f_exact(a, b),
        FMode::Hwf => f_hwf(a, b),
    }
}

/// Variable-node update `b + (1 - 2β)a`.
#[inline]
pub fn g(a: f64, b: f64, beta_l: u8) -> f64 {
    if beta_l == 0 {
        b + a
    } else {
        b - a
    }
}

/// Partial-sum combination: `(β_l ⊕ β_r) ∥ β_r`.
pub fn combine_beta(beta_l: &BitVector, beta_r: &BitVector) -> Result<BitVector> {
    check_len(beta_l.len(), beta_r.len())?;
    let mut out = beta_l.xor(beta_r)?.into_vec();
    out.extend_from_slice(beta_r.as_slice());
    Ok(BitVector::from_vec_unchecked(out))
}

/// Hard decision at a leaf: frozen bits and non-negative LLRs decide 0.
#[inline]
pub fn leaf_decision(alpha: f64, is_frozen: bool) -> u8 {
    if is_frozen || alpha >= 0.0 {
        0
    } else {
        1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScOutput {
    pub u_hat: BitVector,
    pub x_hat: BitVector,
    pub time_steps: u64,
}

struct ScState<'a> {
    frozen: &'a [bool],
    mode: FMode,
    u_hat: Vec<u8>,
    time_steps: u64,
}

impl ScState<'_> {
    /// Decodes the subtree whose LLRs are `alpha` and returns its partial sums.
    fn decode(&mut self, alpha: &[f64], start: usize) -> Vec<u8> {
        if alpha.len() == 1 {
            let bit = leaf_decision(alpha[0], self.frozen[start]);
            self.u_hat[start] = bit;
            return vec![bit];
        }
        let half = alpha.len() / 2;
        let (top, bottom) = alpha.split_at(half);

        let left_llr: Vec<f64> = top
            .iter()
            .zip(bottom)
            .map(|(&a, &b)| f(self.mode, a, b))
            .collect();
        self.time_steps += 1;
        let beta_l = self.decode(&left_llr, start);

        let right_llr: Vec<f64> = top
            .iter()
            .zip(bottom)
            .zip(&beta_l)
            .map(|((&a, &b), &bl)| g(a, b, bl))
            .collect();
        self.time_steps += 1;
        let beta_r = self.decode(&right_llr, start + half);

        let mut beta: Vec<u8> = beta_l.iter().zip(&beta_r).map(|(l, r)| l ^ r).collect();
        beta.extend_from_slice(&beta_r);
        beta
    }
}

/// Successive-cancellation decoding over the full tree.
pub fn sc_decode(code: &PolarCode, llr: &[f64], mode: FMode) -> Result<ScOutput> {
    check_len(code.len(), llr.len())?;
    let mut state = ScState {
        frozen: code.frozen_mask(),
        mode,
        u_hat: vec![0; code.len()],
        time_steps: 0,
    };
    let x_hat = state.decode(llr, 0);
    Ok(ScOutput {
        u_hat: BitVector::from_vec_unchecked(state.u_hat),
        x_hat: BitVector::from_vec_unchecked(x_hat),
        time_steps: state.time_steps,
    })
}
