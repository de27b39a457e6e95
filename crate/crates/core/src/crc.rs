//! Bit-serial CRCs over arbitrary-length bit sequences.
//!
//! Non-reflected specs shift the register left and emit the checksum MSB
//! first. Reflected specs shift right with the bit-reversed polynomial and emit
//! the checksum LSB first, which matches the usual byte-oriented definition when
//! each byte is fed least-significant bit first.

use crate::bits::BitVector;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrcSpec {
    pub width: u8,
    /// Generator polynomial without the implicit `x^width` term.
    pub polynomial: u32,
    pub init: u32,
    pub reflect: bool,
    pub xor_out: u32,
}

impl CrcSpec {
    /// CRC-8 with polynomial 0x07, zero init, no reflection.
    pub const CRC8: CrcSpec = CrcSpec {
        width: 8,
        polynomial: 0x07,
        init: 0,
        reflect: false,
        xor_out: 0,
    };

    /// The common 32-bit CRC (0x04C11DB7, reflected, all-ones init and xor-out).
    pub const CRC32: CrcSpec = CrcSpec {
        width: 32,
        polynomial: 0x04C1_1DB7,
        init: 0xFFFF_FFFF,
        reflect: true,
        xor_out: 0xFFFF_FFFF,
    };

    pub fn new(width: u8, polynomial: u32, init: u32, reflect: bool, xor_out: u32) -> Result<Self> {
        let spec = CrcSpec {
            width,
            polynomial,
            init,
            reflect,
            xor_out,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Looks up a CRC by name: `none`, `crc8` or `crc32`.
    pub fn from_name(name: &str) -> Result<Option<CrcSpec>> {
        match name.to_ascii_lowercase().as_str() {
            "none" => Ok(None),
            "crc8" => Ok(Some(Self::CRC8)),
            "crc32" => Ok(Some(Self::CRC32)),
            other => Err(Error::Parameter(format!("unknown CRC {other:?}"))),
        }
    }

    pub fn name(&self) -> Option<&'static str> {
        if *self == Self::CRC8 {
            Some("crc8")
        } else if *self == Self::CRC32 {
            Some("crc32")
        } else {
            None
        }
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    fn mask(&self) -> u32 {
        if self.width == 32 {
            u32::MAX
        } else {
            (1u32 << self.width) - 1
        }
    }

    fn validate(&self) -> Result<()> {
        if self.width == 0 || self.width > 32 {
            return Err(Error::Parameter(format!(
                "CRC width {} outside 1..=32",
                self.width
            )));
        }
        let mask = self.mask();
        if self.polynomial & 1 == 0 || self.polynomial & !mask != 0 {
            return Err(Error::Parameter(format!(
                "CRC polynomial {:#x} is not a degree-{} generator",
                self.polynomial, self.width
            )));
        }
        if (self.init | self.xor_out) & !mask != 0 {
            return Err(Error::Parameter(
                "CRC init/xor-out wider than the register".into(),
            ));
        }
        Ok(())
    }

    /// Final register value (after xor-out) for a message of bits.
    pub fn checksum(&self, bits: &[u8]) -> u32 {
        let w = self.width as u32;
        let mask = self.mask();
        let mut reg = self.init & mask;
        if self.reflect {
            let poly = self.polynomial.reverse_bits() >> (32 - w);
            for &b in bits {
                let lsb = (reg ^ b as u32) & 1;
                reg >>= 1;
                if lsb == 1 {
                    reg ^= poly;
                }
            }
        } else {
            for &b in bits {
                let top = ((reg >> (w - 1)) ^ b as u32) & 1;
                reg = (reg << 1) & mask;
                if top == 1 {
                    reg ^= self.polynomial;
                }
            }
        }
        (reg ^ self.xor_out) & mask
    }

    /// Checksum as transmitted bits, in the order they are appended to the message.
    pub fn checksum_bits(&self, bits: &[u8]) -> Vec<u8> {
        let crc = self.checksum(bits);
        let w = self.width as u32;
        if self.reflect {
            (0..w).map(|i| ((crc >> i) & 1) as u8).collect()
        } else {
            (0..w).rev().map(|i| ((crc >> i) & 1) as u8).collect()
        }
    }
}

/// Returns `info ∥ crc(info)`.
pub fn crc_attach(info: &BitVector, spec: &CrcSpec) -> BitVector {
    let mut bits = info.as_slice().to_vec();
    bits.extend(spec.checksum_bits(info.as_slice()));
    BitVector::from_vec_unchecked(bits)
}

/// True iff the trailing `spec.width` bits are the CRC of the leading bits.
pub fn crc_check(bits: &BitVector, spec: &CrcSpec) -> Result<bool> {
    crc_check_slice(bits.as_slice(), spec)
}

pub(crate) fn crc_check_slice(bits: &[u8], spec: &CrcSpec) -> Result<bool> {
    let w = spec.width();
    if bits.len() < w {
        return Err(Error::Parameter(format!(
            "{} bits cannot hold a {w}-bit CRC",
            bits.len()
        )));
    }
    let (msg, crc) = bits.split_at(bits.len() - w);
    Ok(spec.checksum_bits(msg) == crc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bytes_to_bits(bytes: &[u8], lsb_first: bool) -> Vec<u8> {
        bytes
            .iter()
            .flat_map(|&byte| {
                (0..8).map(move |i| {
                    let shift = if lsb_first { i } else { 7 - i };
                    (byte >> shift) & 1
                })
            })
            .collect()
    }

    #[test]
    fn standard_check_values() {
        let msg = b"123456789";
        assert_eq!(
            CrcSpec::CRC32.checksum(&bytes_to_bits(msg, true)),
            0xCBF4_3926
        );
        assert_eq!(CrcSpec::CRC8.checksum(&bytes_to_bits(msg, false)), 0xF4);
    }

    #[test]
    fn empty_message_gets_crc_of_nothing() {
        let out = crc_attach(&BitVector::zeros(0), &CrcSpec::CRC32);
        assert_eq!(out.len(), 32);
        // init ^ xor_out = 0 for this spec.
        assert_eq!(out.count_ones(), 0);
        let out8 = crc_attach(&BitVector::zeros(0), &CrcSpec::CRC8);
        assert_eq!(out8, BitVector::zeros(8));
    }

    #[test]
    fn zero_message_zero_crc() {
        let out = crc_attach(&BitVector::zeros(40), &CrcSpec::CRC8);
        assert_eq!(out, BitVector::zeros(48));
        assert!(crc_check(&BitVector::zeros(48), &CrcSpec::CRC8).unwrap());
    }

    #[test]
    fn too_short_is_an_error() {
        assert!(crc_check(&BitVector::zeros(7), &CrcSpec::CRC8).is_err());
    }

    #[test]
    fn names_round_trip() {
        assert_eq!(CrcSpec::from_name("none").unwrap(), None);
        assert_eq!(
            CrcSpec::from_name("CRC8").unwrap().unwrap().name(),
            Some("crc8")
        );
        assert_eq!(
            CrcSpec::from_name("crc32").unwrap().unwrap().name(),
            Some("crc32")
        );
        assert!(CrcSpec::from_name("crc7").is_err());
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(CrcSpec::new(8, 0x106, 0, false, 0).is_err());
        assert!(CrcSpec::new(8, 0x06, 0, false, 0).is_err());
        assert!(CrcSpec::new(0, 0x1, 0, false, 0).is_err());
        assert!(CrcSpec::new(16, 0x1021, 0xFFFF, false, 0).is_ok());
    }
}
