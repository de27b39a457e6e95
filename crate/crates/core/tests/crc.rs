use polar_core::{crc_attach, crc_check, BitVector, CrcSpec};
use proptest::prelude::*;

/// Plain polynomial long division over GF(2): remainder of m(x)·x^w mod p(x).
fn long_division(msg: &[u8], poly: u32, width: usize) -> Vec<u8> {
    let mut dividend: Vec<u8> = msg.to_vec();
    dividend.extend(std::iter::repeat_n(0, width));
    let divisor: Vec<u8> = (0..=width)
        .map(|i| {
            if i == 0 {
                1
            } else {
                ((poly >> (width - i)) & 1) as u8
            }
        })
        .collect();
    for i in 0..msg.len() {
        if dividend[i] == 1 {
            for (j, &d) in divisor.iter().enumerate() {
                dividend[i + j] ^= d;
            }
        }
    }
    dividend[msg.len()..].to_vec()
}

#[test]
fn crc8_matches_long_division() {
    let msg: BitVector = "1011 0011 0101 1100 0110 1001".parse().unwrap();
    let out = crc_attach(&msg, &CrcSpec::CRC8);
    assert_eq!(out.len(), 32);
    assert_eq!(&out.as_slice()[..24], msg.as_slice());
    assert_eq!(
        &out.as_slice()[24..],
        long_division(msg.as_slice(), 0x07, 8).as_slice()
    );
}

#[test]
fn all_zero_message_checks() {
    let zeros = BitVector::zeros(40);
    assert!(crc_check(&zeros, &CrcSpec::CRC8).unwrap());
}

proptest! {
    #[test]
    fn crc8_long_division_random(msg in proptest::collection::vec(0u8..=1, 1..80)) {
        let m = BitVector::from_bits(&msg).unwrap();
        let out = crc_attach(&m, &CrcSpec::CRC8);
        let expected = long_division(&msg, 0x07, 8);
        prop_assert_eq!(&out.as_slice()[msg.len()..], expected.as_slice());
    }

    #[test]
    fn round_trip_and_single_flips(msg in proptest::collection::vec(0u8..=1, 0..64), wide in any::<bool>()) {
        let spec = if wide { CrcSpec::CRC32 } else { CrcSpec::CRC8 };
        let m = BitVector::from_bits(&msg).unwrap();
        let coded = crc_attach(&m, &spec);
        prop_assert!(crc_check(&coded, &spec).unwrap());
        for i in 0..coded.len() {
            let mut bad = coded.clone();
            bad.set(i, coded.get(i) == 0);
            prop_assert!(!crc_check(&bad, &spec).unwrap());
        }
    }
}
