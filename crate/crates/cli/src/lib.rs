//! Harness around the `regwin` library: stream generators, Monte Carlo
//! estimation, experiment reports and JSON summaries for the command line.

pub mod experiment;
pub mod report;
pub mod sim;
pub mod source;
pub mod stream;

pub use experiment::{Experiment, ExperimentConfig, ExperimentReport, ReportRow};
pub use sim::{decision_trace, monte_carlo, MonteCarlo, TesterFactory, TesterKind};
pub use source::LanguageSource;
pub use stream::StreamSpec;
