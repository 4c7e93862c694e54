//! Output rendering: JSON summaries and the fixed-column CSV table.

use crate::config::HarnessError;
use crate::experiment::ExperimentSummary;

/// Column order is part of the output contract.
pub const CSV_COLUMNS: [&str; 16] = [
    "q",
    "m",
    "n",
    "k",
    "r",
    "d",
    "c",
    "t",
    "algorithm",
    "trials",
    "successes",
    "degenerate",
    "success_rate",
    "mean_rounds",
    "seed",
    "wall_ms",
];

pub fn csv_header() -> String {
    CSV_COLUMNS.join(",")
}

pub fn csv_row(s: &ExperimentSummary) -> String {
    let t = s.t.map_or(String::new(), |t| t.to_string());
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{:.6},{:.3},{},{}",
        s.q,
        s.m,
        s.n,
        s.k,
        s.r,
        s.d,
        s.c,
        t,
        s.algorithm,
        s.trials,
        s.successes,
        s.degenerate,
        s.success_rate,
        s.mean_rounds,
        s.seed,
        s.wall_ms
    )
}

pub fn to_json(summaries: &[ExperimentSummary]) -> Result<String, HarnessError> {
    let rendered = if summaries.len() == 1 {
        serde_json::to_string_pretty(&summaries[0])
    } else {
        serde_json::to_string_pretty(summaries)
    };
    rendered.map_err(|e| HarnessError::Io(std::io::Error::other(e)))
}
