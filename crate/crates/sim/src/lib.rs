//! Monte-Carlo BPSK/AWGN harness for the `polar-core` decoders.
//!
//! Every frame draws its payload and noise from its own RNG stream, so results
//! depend only on the configuration and seed, never on the worker count.

pub mod config;
pub mod equivalence;
pub mod error;
pub mod frames;
pub mod report;
pub mod simulate;

pub use config::{parse_ebn0_list, CodeSpec, OutputFormat, SimConfig};
pub use equivalence::{
    run_equivalence_campaign, Divergence, DivergenceKind, EquivalenceReport, PairReport,
};
pub use error::{Result, SimError};
pub use frames::{generate_frame, Engine, Frame};
pub use report::{emit_report, emit_timesteps, TimeStepRow};
pub use simulate::{run_simulation, SimResult, SimRow};
