use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sc::{softplus_neg, FMode};

/// Path-metric arithmetic, fixed for a whole decode.
///
/// `Exact` pairs the log-likelihood metric with the exact `f` update; `Hwf`
/// pairs the absolute-value metric with min-sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PmMode {
    Exact,
    #[default]
    Hwf,
}

impl PmMode {
    pub fn f_mode(self) -> FMode {
        match self {
            Self::Exact => FMode::Exact,
            Self::Hwf => FMode::Hwf,
        }
    }
}

impl FromStr for PmMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exact" => Ok(Self::Exact),
            "hwf" => Ok(Self::Hwf),
            other => Err(Error::Parameter(format!("unknown PM mode {other:?}"))),
        }
    }
}

impl fmt::Display for PmMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Exact => "exact",
            Self::Hwf => "hwf",
        })
    }
}

/// Metric penalty for deciding `bit` on a bit with LLR `alpha`.
#[inline]
pub fn pm_increment(alpha: f64, bit: u8, mode: PmMode) -> f64 {
    // t > 0 when the decision agrees with the LLR sign
    let t = if bit == 0 { alpha } else { -alpha };
    match mode {
        // ln(1 + e^-t)
        PmMode::Exact => {
            if t >= 0.0 {
                softplus_neg(t)
            } else {
                -t + softplus_neg(-t)
            }
        }
        PmMode::Hwf => {
            if t < 0.0 {
                -t
            } else {
                0.0
            }
        }
    }
}

#[inline]
pub fn pm_update(pm: f64, alpha: f64, bit: u8, mode: PmMode) -> f64 {
    pm + pm_increment(alpha, bit, mode)
}

/// Hard decision on an LLR: 0 when `alpha >= 0`.
#[inline]
pub(crate) fn hard_decision(alpha: f64) -> u8 {
    u8::from(alpha < 0.0)
}
