//! Polar codes with successive-cancellation list decoders.
//!
//! The crate covers code construction and encoding ([`construct_code`],
//! [`PolarCode::encode`]), a BPSK/AWGN channel ([`channel`]), plain SC
//! decoding ([`sc_decode`]) and three list decoders sharing one path-management
//! core: SCL over the full tree, SSCL over the pruned tree of Rate-0 / Rep /
//! Rate-1 nodes, and Fast-SSCL, whose Rate-1 decoder only splits paths on the
//! `min(L-1, N_v)` least reliable bits of each node. [`schedule`] holds the
//! pruned tree and the time-step model used to compare them.

pub mod bits;
pub mod channel;
pub mod code;
pub mod construct;
pub mod crc;
pub mod error;
pub mod list;
pub mod sc;
pub mod schedule;

pub use bits::BitVector;
pub use channel::{ebn0_to_sigma, llr_demod, modulate_bpsk, transmit, NoiseModel};
pub use code::{load_frozen_set, polar_transform, PolarCode};
pub use construct::{construct_code, ConstructionMethod};
pub use crc::{crc_attach, crc_check, CrcSpec};
pub use error::{Error, Result};
pub use list::{list_decode, DecodeResult, ListDecoder, PathSet, PmMode};
pub use sc::{sc_decode, FMode, ScOutput};
pub use schedule::{build_schedule, count_time_steps, reduction_report, DecoderKind, Schedule};
