//! Experiment configuration, Monte Carlo runners and report serialization.

pub mod analytic;
pub mod config;
pub mod inspect;
pub mod report;
pub mod runs;
pub mod seeds;

pub use config::{ExperimentConfig, OutputFormat};
pub use inspect::{inspect, InspectReport};
pub use report::{SimRecord, SimReport, SweepParam};
pub use runs::{run_baseline, run_ber_sweep, run_roundtrip, run_sensitivity, ROUNDTRIP_TOLERANCE};
