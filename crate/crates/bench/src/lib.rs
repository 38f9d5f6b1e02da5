//! Throughput benchmarks, energy and emissions accounting, trajectory
//! transcripts and the `gymkit` command-line tool.
//!
//! ```
//! use gymkit_bench::{run_bench, BenchConfig};
//!
//! let config = BenchConfig {
//!     steps_per_trial: 1_000,
//!     trials: 3,
//!     ..BenchConfig::new("CartPole-v1")
//! };
//! let report = run_bench(&config).unwrap();
//! assert_eq!(report.trial_seconds.len(), 3);
//! println!("{}", report.to_json());
//! ```

mod cli;
mod config;
mod energy;
mod error;
mod report;
mod transcript;
mod trial;

pub use cli::cli_main;
pub use config::{BenchConfig, Mode};
pub use energy::{estimate_co2_kg, estimate_energy_kwh};
pub use error::{BenchError, Result};
pub use report::{
    compare_reports, host_descriptor, run_bench, run_bench_with, BenchReport, Comparison,
};
pub use transcript::{
    dump_frames, format_action, parse_line, trajectory_transcript, TranscriptLine,
};
pub use trial::{frame_digest, replay_checksum, run_trial, ActionSampler, Checksum, TrialOutcome};
