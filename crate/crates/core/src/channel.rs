//! BPSK over AWGN with seeded, stream-separated noise.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::bits::BitVector;
use crate::error::{Error, Result};

/// Maps bit `b` to the symbol `1 - 2b`.
pub fn modulate_bpsk(x: &BitVector) -> Vec<f64> {
    x.iter().map(|b| 1.0 - 2.0 * b as f64).collect()
}

/// Noise standard deviation for unit-energy BPSK at the given Eb/N0 and code rate.
pub fn ebn0_to_sigma(ebn0_db: f64, rate: f64) -> Result<f64> {
    if !(rate > 0.0 && rate <= 1.0) {
        return Err(Error::Parameter(format!("rate {rate} outside (0, 1]")));
    }
    if !ebn0_db.is_finite() {
        return Err(Error::Parameter(format!(
            "Eb/N0 {ebn0_db} dB is not finite"
        )));
    }
    let ebn0 = 10f64.powf(ebn0_db / 10.0);
    Ok((1.0 / (2.0 * rate * ebn0)).sqrt())
}

/// Gaussian noise source; `(seed, stream_id)` fixes the whole sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    sigma: f64,
    seed: u64,
    stream_id: u64,
}

impl NoiseModel {
    pub fn new(sigma: f64, seed: u64, stream_id: u64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::Parameter(format!("sigma {sigma} must be positive")));
        }
        Ok(Self {
            sigma,
            seed,
            stream_id,
        })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Fresh generator positioned at the start of this model's stream.
    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id);
        rng
    }
}

/// Adds iid `N(0, sigma²)` noise drawn from `rng`.
pub fn add_noise<R: Rng + ?Sized>(y: &[f64], sigma: f64, rng: &mut R) -> Vec<f64> {
    y.iter()
        .map(|&s| s + sigma * rng.sample::<f64, _>(StandardNormal))
        .collect()
}

/// Passes symbols through the AWGN channel of `model`.
pub fn transmit(y: &[f64], model: &NoiseModel) -> Vec<f64> {
    add_noise(y, model.sigma, &mut model.rng())
}

/// Channel LLRs `2r/sigma²`; positive means bit 0 is more likely.
pub fn llr_demod(r: &[f64], sigma: f64) -> Result<Vec<f64>> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::Parameter(format!("sigma {sigma} must be positive")));
    }
    let scale = 2.0 / (sigma * sigma);
    Ok(r.iter().map(|&v| scale * v).collect())
}
