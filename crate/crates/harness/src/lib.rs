//! Monte-Carlo harness for LRPC error-support recovery experiments.
//!
//! Generates planted LRPC instances, runs a chosen decoder per trial,
//! aggregates success statistics and reports them next to the analytic
//! failure estimates. The binary target exposes the same machinery on the
//! command line; see the crate README for the flag reference.

pub mod config;
pub mod experiment;
pub mod output;
pub mod trial;

pub use config::{Algorithm, ConfigDraft, ExperimentConfig, HarnessError, OutputFormat};
pub use experiment::{run_experiment, sweep, ExperimentSummary, SweepParam};
pub use trial::{run_trial, TrialReport};
