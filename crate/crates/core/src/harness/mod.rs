//! Experiment orchestration: batch simulation, scaling fits, verification
//! bundles and single-word inspection.

mod fit;
mod inspect;
mod simulate;
mod verify;

pub use fit::{fit_records, fit_scaling, Model, ScalingFit};
pub use inspect::{inspect_word, FactorView, VariantView, WordReport};
pub use simulate::{
    derive_seed, read_csv, simulate, summarize, summary_for, write_csv, LengthSummary, Mode,
    RunRecord, SimulateConfig, SimulationSummary,
};
pub use verify::{run_verification, CheckResult, Status, VerifyReport};
