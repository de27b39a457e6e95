//! Deterministic frame generation and the decoders driven by the harness.

use polar_core::channel::add_noise;
use polar_core::{
    count_time_steps, crc_attach, ebn0_to_sigma, llr_demod, modulate_bpsk, sc_decode, BitVector,
    DecodeResult, DecoderKind, ListDecoder, NoiseModel, PmMode, PolarCode,
};
use rand::Rng;

/// One transmitted frame: the payload, the source word and the channel LLRs.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    pub payload: BitVector,
    pub u: BitVector,
    pub llr: Vec<f64>,
}

/// RNG stream of frame `frame` at Eb/N0 point `point`.
pub fn stream_id(point: usize, frame: u64) -> u64 {
    ((point as u64) << 40) | frame
}

/// Draws a uniformly random payload, attaches the CRC, encodes, and passes the
/// codeword through BPSK/AWGN. Everything comes from one `(seed, stream)` stream.
pub fn generate_frame(
    code: &PolarCode,
    sigma: f64,
    seed: u64,
    stream: u64,
) -> polar_core::Result<Frame> {
    let model = NoiseModel::new(sigma, seed, stream)?;
    let mut rng = model.rng();
    let payload: BitVector = (0..code.payload_len())
        .map(|_| rng.random::<bool>())
        .collect();
    let info = match code.crc() {
        Some(spec) => crc_attach(&payload, spec),
        None => payload.clone(),
    };
    let u = code.embed(&info)?;
    let x = code.encode(&u)?;
    let r = add_noise(&modulate_bpsk(&x), sigma, &mut rng);
    let llr = llr_demod(&r, sigma)?;
    Ok(Frame { payload, u, llr })
}

/// Noise level used for a code at `ebn0_db`; the rate counts CRC bits as overhead.
pub fn sigma_for(code: &PolarCode, ebn0_db: f64) -> polar_core::Result<f64> {
    ebn0_to_sigma(ebn0_db, code.payload_len() as f64 / code.len() as f64)
}

/// Decoded output of any decoder kind.
#[derive(Debug, Clone, PartialEq)]
pub struct Decoded {
    pub u_hat: BitVector,
    /// Sorted final path metrics; empty for SC.
    pub pms: Vec<f64>,
    pub crc_passed: Option<bool>,
}

/// SC or one of the list decoders, prepared for a fixed code.
#[derive(Debug, Clone)]
pub enum Engine {
    Sc {
        code: PolarCode,
        mode: PmMode,
        time_steps: u64,
    },
    List(ListDecoder),
}

impl Engine {
    pub fn new(
        code: PolarCode,
        algo: DecoderKind,
        list_size: usize,
        mode: PmMode,
    ) -> polar_core::Result<Self> {
        if algo == DecoderKind::Sc {
            let schedule = polar_core::build_schedule(&code);
            let time_steps = count_time_steps(&schedule, algo, list_size)?;
            return Ok(Self::Sc {
                code,
                mode,
                time_steps,
            });
        }
        Ok(Self::List(ListDecoder::new(code, list_size, algo, mode)?))
    }

    pub fn code(&self) -> &PolarCode {
        match self {
            Self::Sc { code, .. } => code,
            Self::List(d) => d.code(),
        }
    }

    pub fn time_steps(&self) -> u64 {
        match self {
            Self::Sc { time_steps, .. } => *time_steps,
            Self::List(d) => d.time_steps(),
        }
    }

    pub fn decode(&self, llr: &[f64]) -> polar_core::Result<Decoded> {
        match self {
            Self::Sc { code, mode, .. } => {
                let out = sc_decode(code, llr, mode.f_mode())?;
                let crc_passed = match code.crc() {
                    Some(spec) => Some(polar_core::crc_check(
                        &code.extract(out.u_hat.as_slice())?,
                        spec,
                    )?),
                    None => None,
                };
                Ok(Decoded {
                    u_hat: out.u_hat,
                    pms: Vec::new(),
                    crc_passed,
                })
            }
            Self::List(d) => {
                let res: DecodeResult = d.decode(llr)?;
                Ok(Decoded {
                    u_hat: res.u_hat(),
                    pms: res.sorted_pms(),
                    crc_passed: res.selection.crc_passed,
                })
            }
        }
    }

    /// Payload bit errors of a decoded word against the transmitted frame.
    pub fn payload_errors(&self, decoded: &Decoded, frame: &Frame) -> polar_core::Result<usize> {
        let code = self.code();
        let info = code.extract(decoded.u_hat.as_slice())?;
        Ok(info
            .iter()
            .zip(frame.payload.iter())
            .filter(|(a, b)| a != b)
            .count())
    }
}
