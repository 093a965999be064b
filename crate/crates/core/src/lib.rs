//! Simulation and exact analysis of the flip-based cooling process on
//! balanced words over `{1, 2}`.
//!
//! The cooling process repeatedly exchanges two adjacent different letters,
//! chosen uniformly among the exchanges that do not increase the number of
//! adjacent equal letters, until the word alternates perfectly.

pub mod cooling;
pub mod dyck;
pub mod error;
pub mod flip;
pub mod harness;
pub mod oracle;
pub mod sampler;
pub mod word;

pub use cooling::{
    convergence_time, cooling_step, melt_step, run_cooling, AllowedSet, CoolingRun, CoolingState,
    RunOptions, TraceEntry, DEFAULT_STEP_CAP,
};
pub use dyck::{dyck_decompose, variant_bound, variant_phi, DyckFactor, Sign, VariantParams};
pub use error::{Error, Result};
pub use flip::{
    allowed_flips, apply_flip, classify_flip, enumerate_flips, flip_count, FlipClass, FlipMove,
};
pub use sampler::{
    exact_natural_distribution, sample_natural, sample_uniform_bridge, worst_case_config,
    NaturalTable, SamplerKind, SamplerSpec,
};
pub use word::{parse_configuration, Configuration, Letter, PathProfile, Volume};
