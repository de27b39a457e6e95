//! Frozen-set selection from bit-channel reliabilities.
//!
//! Reliabilities are computed on a BPSK/AWGN design channel. The design point is
//! converted to a noise level at a fixed reference rate of 1/2, so the
//! reliability order does not depend on K and frozen sets are nested in K.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::channel::ebn0_to_sigma;
use crate::code::PolarCode;
use crate::error::{Error, Result};

/// Rate used to turn the design Eb/N0 into a noise variance.
pub const DESIGN_REFERENCE_RATE: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ConstructionMethod {
    /// Gaussian approximation of density evolution (LLR means).
    #[default]
    GaussianApprox,
    /// Bhattacharyya-parameter recursion.
    Bhattacharyya,
}

impl FromStr for ConstructionMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ga" | "gaussian-approx" | "gaussian" => Ok(Self::GaussianApprox),
            "bhattacharyya" | "bhatt" => Ok(Self::Bhattacharyya),
            other => Err(Error::Parameter(format!(
                "unknown construction method {other:?}"
            ))),
        }
    }
}

impl fmt::Display for ConstructionMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::GaussianApprox => "gaussian-approx",
            Self::Bhattacharyya => "bhattacharyya",
        })
    }
}

/// Mean LLR of the degraded (check-node) channel under the Gaussian approximation.
///
/// Piecewise fit of `phi^-1(1 - (1 - phi(m))^2)`.
fn ga_check_node(m: f64) -> f64 {
    if m > 12.0 {
        0.9861 * m - 2.3152
    } else if m > 3.5 {
        m * (0.009005 * m + 0.7694) - 0.9615
    } else if m > 1.0 {
        m * (0.062883 * m + 0.3678) - 0.1627
    } else {
        m * (0.2202 * m + 0.06448)
    }
}

/// Per-bit-channel reliability, larger is better, indexed in natural order.
pub fn bit_channel_reliability(
    n: u32,
    design_ebn0_db: f64,
    method: ConstructionMethod,
) -> Result<Vec<f64>> {
    if n == 0 || n > 24 {
        return Err(Error::Parameter(format!("n = {n} outside 1..=24")));
    }
    let sigma = ebn0_to_sigma(design_ebn0_db, DESIGN_REFERENCE_RATE)?;
    let var = sigma * sigma;
    // Level by level, the degraded child goes to the even index and the
    // upgraded child to the odd one, so the first split lands in the MSB.
    let mut values = vec![match method {
        ConstructionMethod::GaussianApprox => 2.0 / var,
        // ln Z of the BPSK/AWGN channel
        ConstructionMethod::Bhattacharyya => -1.0 / (2.0 * var),
    }];
    for _ in 0..n {
        values = values
            .iter()
            .flat_map(|&v| match method {
                ConstructionMethod::GaussianApprox => [ga_check_node(v), 2.0 * v],
                ConstructionMethod::Bhattacharyya => {
                    let z = v.exp();
                    [v + (2.0 - z).ln(), 2.0 * v]
                }
            })
            .collect();
    }
    if method == ConstructionMethod::Bhattacharyya {
        values.iter_mut().for_each(|v| *v = -*v);
    }
    Ok(values)
}

/// Freezes the N−K least reliable bit-channels; ties freeze the lower index first.
pub fn construct_code(
    n: u32,
    k: usize,
    design_ebn0_db: f64,
    method: ConstructionMethod,
) -> Result<PolarCode> {
    if !design_ebn0_db.is_finite() {
        return Err(Error::Parameter("design Eb/N0 must be finite".into()));
    }
    let reliability = bit_channel_reliability(n, design_ebn0_db, method)?;
    let len = reliability.len();
    if k == 0 || k > len {
        return Err(Error::Parameter(format!("K = {k} outside 1..={len}")));
    }
    let mut order: Vec<usize> = (0..len).collect();
    order.sort_by(|&a, &b| {
        reliability[a]
            .partial_cmp(&reliability[b])
            .unwrap_or(Ordering::Equal)
            .then(a.cmp(&b))
    });
    let mut frozen = vec![false; len];
    for &i in &order[..len - k] {
        frozen[i] = true;
    }
    PolarCode::from_frozen_mask(frozen)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_rate_has_no_frozen_bits() {
        for method in [
            ConstructionMethod::GaussianApprox,
            ConstructionMethod::Bhattacharyya,
        ] {
            let code = construct_code(3, 8, 2.0, method).unwrap();
            assert!(code.frozen_positions().is_empty());
        }
    }

    #[test]
    fn fig1_code_from_ga() {
        let code = construct_code(3, 5, 2.0, ConstructionMethod::GaussianApprox).unwrap();
        assert_eq!(code.frozen_positions(), vec![0, 1, 2]);
    }

    #[test]
    fn length_two_freezes_index_zero() {
        for method in [
            ConstructionMethod::GaussianApprox,
            ConstructionMethod::Bhattacharyya,
        ] {
            for snr in [-5.0, 0.0, 2.0, 10.0] {
                let code = construct_code(1, 1, snr, method).unwrap();
                assert_eq!(code.frozen_positions(), vec![0]);
            }
        }
    }

    #[test]
    fn invalid_parameters() {
        assert!(construct_code(3, 0, 2.0, ConstructionMethod::GaussianApprox).is_err());
        assert!(construct_code(3, 9, 2.0, ConstructionMethod::GaussianApprox).is_err());
        assert!(construct_code(0, 1, 2.0, ConstructionMethod::GaussianApprox).is_err());
        assert!(construct_code(3, 4, f64::NAN, ConstructionMethod::Bhattacharyya).is_err());
    }

    #[test]
    fn nested_in_k() {
        for method in [
            ConstructionMethod::GaussianApprox,
            ConstructionMethod::Bhattacharyya,
        ] {
            let mut prev = construct_code(7, 1, 2.0, method).unwrap();
            for k in 2..=128 {
                let code = construct_code(7, k, 2.0, method).unwrap();
                for i in code.frozen_positions() {
                    assert!(prev.is_frozen(i), "K={k}: {i} frozen but free at K-1");
                }
                prev = code;
            }
        }
    }

    #[test]
    fn reliability_is_finite_at_large_n() {
        for method in [
            ConstructionMethod::GaussianApprox,
            ConstructionMethod::Bhattacharyya,
        ] {
            let r = bit_channel_reliability(12, 6.0, method).unwrap();
            assert!(r.iter().all(|v| v.is_finite()));
        }
    }

    #[test]
    fn method_names() {
        assert_eq!(
            "ga".parse::<ConstructionMethod>().unwrap(),
            ConstructionMethod::GaussianApprox
        );
        assert_eq!(
            ConstructionMethod::Bhattacharyya
                .to_string()
                .parse::<ConstructionMethod>()
                .unwrap(),
            ConstructionMethod::Bhattacharyya
        );
    }
}
