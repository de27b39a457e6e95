//! Successive-cancellation list decoding: SCL, SSCL and Fast-SSCL.

mod decoder;
mod metric;
mod nodes;
mod path;

pub use decoder::{list_decode, select_output, DecodeResult, ListDecoder, Selection};
pub use metric::{pm_increment, pm_update, PmMode};
pub use nodes::{
    decode_rate0, decode_rate1, decode_rate1_capped, decode_rate1_fast, decode_rate1_sscl,
    decode_rep, NodeSpan, Rate1Options, Rate1Order, Rate1Stats,
};
pub use path::{select_survivors, Candidate, DecoderPath, PathSet};
