//! Experiment execution: independent trials, order-insensitive
//! aggregation, parameter sweeps.

use crate::config::{Algorithm, ExperimentConfig, HarnessError};
use crate::trial::{run_trial, TrialReport};
use lrpc::decoders::{
    estimate_basic_intersect, estimate_stray, estimate_syndrome_fill, ProbabilityEstimate,
};
use lrpc::Field;
use rayon::prelude::*;
use serde::Serialize;
use std::time::Instant;

pub const SCHEMA: &str = "lrpc-experiment/1";

#[derive(Debug, Clone, Copy, Serialize, PartialEq)]
pub struct EstimateView {
    pub log_q_failure: i64,
    pub value: f64,
    pub vacuous: bool,
}

impl From<ProbabilityEstimate> for EstimateView {
    fn from(e: ProbabilityEstimate) -> Self {
        EstimateView {
            log_q_failure: e.log_q_failure,
            value: e.value,
            vacuous: e.vacuous(),
        }
    }
}

/// Analytic failure estimates echoed next to the measured rate.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct EstimateEcho {
    /// Probability the syndrome support falls short of the product space.
    pub syndrome_fill: EstimateView,
    /// Residual failure of the basis-intersection decoder.
    pub basic_intersect: EstimateView,
    /// Stray-element probability for the accumulating decoder (needs t).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stray: Option<EstimateView>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ExperimentSummary {
    pub schema: &'static str,
    pub q: u16,
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub d: usize,
    pub c: i64,
    pub t: Option<u64>,
    pub algorithm: Algorithm,
    pub trials: u64,
    /// Trials whose recovered support equals the planted one.
    pub successes: u64,
    /// Trials that reported success with a different support.
    pub wrong_support: u64,
    pub failures: u64,
    /// Degenerate instances redrawn across all trials.
    pub degenerate: u64,
    pub success_rate: f64,
    pub mean_rounds: f64,
    /// Successful trials whose coordinate solve missed the planted error;
    /// only populated when the full decode runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub full_decode_failures: Option<u64>,
    pub seed: u64,
    pub wall_ms: u64,
    pub estimates: EstimateEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial_reports: Option<Vec<TrialReport>>,
}

impl ExperimentSummary {
    /// Copy with timing zeroed, for determinism comparisons.
    pub fn strip_timing(mut self) -> Self {
        self.wall_ms = 0;
        self.trial_reports = self
            .trial_reports
            .map(|v| v.into_iter().map(TrialReport::strip_timing).collect());
        self
    }
}

/// Runs every trial of the experiment on a worker pool of the configured
/// width. Results do not depend on the worker count: each trial derives
/// its RNG stream from (seed, index) and aggregation reduces the reports
/// in index order.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentSummary, HarnessError> {
    let field = Field::new(cfg.q, cfg.m)?;
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallelism)
        .build()
        .map_err(|e| HarnessError::Config(format!("worker pool: {e}")))?;
    let reports: Result<Vec<TrialReport>, HarnessError> = pool.install(|| {
        (0..cfg.trials)
            .into_par_iter()
            .map(|trial| run_trial(cfg, &field, trial))
            .collect()
    });
    let reports = reports?;
    let wall_ms = start.elapsed().as_millis() as u64;
    Ok(summarize(cfg, reports, wall_ms))
}

fn summarize(cfg: &ExperimentConfig, reports: Vec<TrialReport>, wall_ms: u64) -> ExperimentSummary {
    let mut successes = 0u64;
    let mut wrong_support = 0u64;
    let mut failures = 0u64;
    let mut degenerate = 0u64;
    let mut rounds_sum = 0u64;
    let mut full_decode_failures = 0u64;
    let mut saw_full_decode = false;
    for report in &reports {
        if report.support_correct {
            successes += 1;
        } else if report.outcome == "wrong-support" {
            wrong_support += 1;
        } else {
            failures += 1;
        }
        degenerate += report.degenerate_resamples as u64;
        rounds_sum += report.rounds as u64;
        if let Some(ok) = report.full_decode_correct {
            saw_full_decode = true;
            if !ok {
                full_decode_failures += 1;
            }
        }
    }
    let t = cfg.effective_arity();
    let estimates = EstimateEcho {
        syndrome_fill: estimate_syndrome_fill(cfg.q, cfg.r, cfg.d, cfg.n, cfg.k).into(),
        basic_intersect: estimate_basic_intersect(cfg.q, cfg.m, cfg.r, cfg.d).into(),
        stray: t
            .map(|t| estimate_stray(cfg.q, cfg.m, cfg.r, cfg.d, cfg.c.max(0) as usize, t).into()),
    };
    ExperimentSummary {
        schema: SCHEMA,
        q: cfg.q,
        m: cfg.m,
        n: cfg.n,
        k: cfg.k,
        r: cfg.r,
        d: cfg.d,
        c: cfg.c,
        t,
        algorithm: cfg.algorithm,
        trials: cfg.trials,
        successes,
        wrong_support,
        failures,
        degenerate,
        success_rate: successes as f64 / cfg.trials as f64,
        mean_rounds: rounds_sum as f64 / cfg.trials as f64,
        full_decode_failures: saw_full_decode.then_some(full_decode_failures),
        seed: cfg.seed,
        wall_ms,
        estimates,
        trial_reports: cfg.verbose.then_some(reports),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SweepParam {
    M,
    C,
    T,
    R,
    D,
    Trials,
    K,
}

/// Runs one experiment per value of the swept parameter. The code length
/// is rederived from (r, d, c, k) for every point, so sweeping k keeps
/// n - k fixed and sweeping c or the rank parameters adjusts n.
pub fn sweep(
    base: &ExperimentConfig,
    param: SweepParam,
    values: &[i64],
) -> Result<Vec<ExperimentSummary>, HarnessError> {
    if values.is_empty() {
        return Err(HarnessError::Config(
            "--values must list at least one value".into(),
        ));
    }
    let positive = |v: i64, name: &str| -> Result<usize, HarnessError> {
        usize::try_from(v).map_err(|_| {
            HarnessError::Config(format!("swept {name} value {v} must be nonnegative"))
        })
    };
    let mut summaries = Vec::with_capacity(values.len());
    for &value in values {
        let mut draft = base.to_draft();
        match param {
            SweepParam::M => draft.m = positive(value, "m")?,
            SweepParam::C => draft.c = Some(value),
            SweepParam::T => draft.t = Some(positive(value, "t")? as u64),
            SweepParam::R => draft.r = positive(value, "r")?,
            SweepParam::D => draft.d = positive(value, "d")?,
            SweepParam::Trials => draft.trials = positive(value, "trials")? as u64,
            SweepParam::K => draft.k = positive(value, "k")?,
        }
        let cfg = draft.resolve()?;
        summaries.push(run_experiment(&cfg)?);
    }
    Ok(summaries)
}
