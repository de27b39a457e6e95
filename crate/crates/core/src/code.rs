//! Polar code definition and GF(2) encoding.

use crate::bits::BitVector;
use crate::crc::CrcSpec;
use crate::error::{check_len, Error, Result};

/// A polar code 𝒫(N, K): block length `N = 2^n` and a frozen-bit mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarCode {
    n: u32,
    frozen: Vec<bool>,
    k: usize,
    crc: Option<CrcSpec>,
}

impl PolarCode {
    /// Builds a code from its frozen mask (`true` = frozen).
    pub fn from_frozen_mask(frozen: Vec<bool>) -> Result<Self> {
        let len = frozen.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::Parameter(format!(
                "block length {len} is not a power of two >= 2"
            )));
        }
        let k = frozen.iter().filter(|&&f| !f).count();
        if k == 0 {
            return Err(Error::Parameter("code has no information bits".into()));
        }
        Ok(Self {
            n: len.trailing_zeros(),
            frozen,
            k,
            crc: None,
        })
    }

    /// Attaches an outer CRC whose bits occupy the last information positions.
    pub fn with_crc(mut self, crc: Option<CrcSpec>) -> Result<Self> {
        if let Some(spec) = &crc {
            if self.k < spec.width() {
                return Err(Error::Parameter(format!(
                    "K = {} cannot hold a {}-bit CRC",
                    self.k,
                    spec.width()
                )));
            }
        }
        self.crc = crc;
        Ok(self)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Block length N.
    pub fn len(&self) -> usize {
        self.frozen.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of information positions K (CRC bits included).
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.len() as f64
    }

    pub fn crc(&self) -> Option<&CrcSpec> {
        self.crc.as_ref()
    }

    /// Information bits carried per frame once the CRC is accounted for.
    pub fn payload_len(&self) -> usize {
        self.k - self.crc.map_or(0, |c| c.width())
    }

    pub fn frozen_mask(&self) -> &[bool] {
        &self.frozen
    }

    pub fn is_frozen(&self, i: usize) -> bool {
        self.frozen[i]
    }

    pub fn frozen_positions(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.frozen[i]).collect()
    }

    pub fn info_positions(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.frozen[i]).collect()
    }

    /// Computes `x = u·G^⊗n`, rejecting a `u` with a nonzero frozen position.
    pub fn encode(&self, u: &BitVector) -> Result<BitVector> {
        check_len(self.len(), u.len())?;
        if let Some(i) = (0..self.len()).find(|&i| self.frozen[i] && u.get(i) != 0) {
            return Err(Error::FrozenBitSet(i));
        }
        let mut x = u.as_slice().to_vec();
        polar_transform(&mut x);
        Ok(BitVector::from_vec_unchecked(x))
    }

    /// Places K information bits into their positions of a length-N input vector.
    pub fn embed(&self, info: &BitVector) -> Result<BitVector> {
        check_len(self.k, info.len())?;
        let mut u = vec![0u8; self.len()];
        for (pos, bit) in self.info_positions().into_iter().zip(info.iter()) {
            u[pos] = bit;
        }
        Ok(BitVector::from_vec_unchecked(u))
    }

    /// Reads the K information positions out of a length-N input vector.
    pub fn extract(&self, u: &[u8]) -> Result<BitVector> {
        check_len(self.len(), u.len())?;
        Ok(BitVector::from_vec_unchecked(
            self.info_positions().into_iter().map(|i| u[i]).collect(),
        ))
    }

    /// Serializes the frozen set in the one-index-per-line file format.
    pub fn frozen_set_document(&self) -> String {
        let mut out = format!("# polar code N={} K={}\n", self.len(), self.k);
        for i in self.frozen_positions() {
            out.push_str(&i.to_string());
            out.push('\n');
        }
        out
    }
}

/// In-place multiplication by `G^⊗n` over GF(2), `G = [[1,0],[1,1]]`.
///
/// The transform is its own inverse.
pub fn polar_transform(bits: &mut [u8]) {
    let len = bits.len();
    debug_assert!(len.is_power_of_two());
    let mut half = 1;
    while half < len {
        for block in bits.chunks_mut(2 * half) {
            let (left, right) = block.split_at_mut(half);
            for (l, r) in left.iter_mut().zip(right.iter()) {
                *l ^= *r;
            }
        }
        half *= 2;
    }
}

/// Parses a frozen-set document: one decimal index per line, `#` starts a comment.
pub fn load_frozen_set(text: &str, n: u32) -> Result<PolarCode> {
    if n == 0 || n > 24 {
        return Err(Error::Parameter(format!("n = {n} outside 1..=24")));
    }
    let len = 1usize << n;
    let mut frozen = vec![false; len];
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let format_err = |msg: String| Error::Format {
            line: lineno + 1,
            msg,
        };
        let idx: usize = line
            .parse()
            .map_err(|_| format_err(format!("{line:?} is not a decimal index")))?;
        if idx >= len {
            return Err(format_err(format!(
                "index {idx} out of range for N = {len}"
            )));
        }
        if frozen[idx] {
            return Err(format_err(format!("duplicate index {idx}")));
        }
        frozen[idx] = true;
    }
    PolarCode::from_frozen_mask(frozen)
}
