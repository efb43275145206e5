//! Decision procedures and randomized test campaigns.

pub mod axioms;
pub mod cg_report;
pub mod decide;
pub mod fuzz;
pub mod generate;

pub use cg_report::{cg_semantics_report, CgRow};
pub use fuzz::{
    fuzz_axioms, fuzz_soundness, fuzz_soundness_with, monotonicity_holds, monotonicity_instance, Counterexample,
    FuzzConfig, RunReport, SectionReport,
};
pub use generate::{trial_rng, TermGen};
