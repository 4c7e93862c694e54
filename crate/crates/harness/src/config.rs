//! Experiment configuration and validation.
//!
//! The decoding regime is pinned by n - k = rd - c: give either the code
//! length n or the target codimension c and the other is derived (k
//! defaults to 1, matching the benchmark setup n = rd - c + k). Negative c
//! describes the overdetermined regime n - k > rd where the basis
//! intersection decoder operates.

use lrpc::decoders;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("resource bound exceeded: {0}")]
    Resource(String),
    #[error(transparent)]
    Decode(#[from] lrpc::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl HarnessError {
    /// Process exit code: 2 for configuration problems, 3 for resource
    /// bounds, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) => 2,
            HarnessError::Resource(_) => 3,
            HarnessError::Decode(e) if e.is_resource_limit() => 3,
            HarnessError::Decode(_) => 2,
            HarnessError::Io(_) => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// Intersect the scaled syndrome spaces over a basis of the support.
    Basic,
    /// Threshold candidates on their multiplicity across all scaled spaces.
    Multiset,
    /// Accumulate t-fold intersections for random support elements.
    Intersect,
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Algorithm::Basic => write!(f, "basic"),
            Algorithm::Multiset => write!(f, "multiset"),
            Algorithm::Intersect => write!(f, "intersect"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Raw knobs as collected from the command line; [`ConfigDraft::resolve`]
/// turns them into a validated [`ExperimentConfig`].
#[derive(Debug, Clone)]
pub struct ConfigDraft {
    pub q: u16,
    pub m: usize,
    pub r: usize,
    pub d: usize,
    pub n: Option<usize>,
    pub k: usize,
    pub c: Option<i64>,
    pub t: Option<u64>,
    pub algorithm: Algorithm,
    pub trials: u64,
    pub seed: u64,
    pub max_rounds: u32,
    pub candidate_cap: u64,
    pub full_decode: bool,
    pub faithful_guard: bool,
    pub parallelism: usize,
    pub verbose: bool,
}

impl Default for ConfigDraft {
    fn default() -> Self {
        ConfigDraft {
            q: 2,
            m: 0,
            r: 0,
            d: 0,
            n: None,
            k: 1,
            c: None,
            t: None,
            algorithm: Algorithm::Intersect,
            trials: 1000,
            seed: 42,
            max_rounds: 64,
            candidate_cap: 1 << 24,
            full_decode: false,
            faithful_guard: false,
            parallelism: 0,
            verbose: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub q: u16,
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub d: usize,
    /// rd - (n - k); negative when the syndrome is overdetermined.
    pub c: i64,
    pub t: Option<u64>,
    pub algorithm: Algorithm,
    pub trials: u64,
    pub seed: u64,
    pub max_rounds: u32,
    pub candidate_cap: u64,
    pub full_decode: bool,
    pub faithful_guard: bool,
    pub parallelism: usize,
    pub verbose: bool,
}

impl ConfigDraft {
    pub fn resolve(self) -> Result<ExperimentConfig, HarnessError> {
        let fail = |msg: String| Err(HarnessError::Config(msg));
        if self.m == 0 {
            return fail("--m is required and must be positive".into());
        }
        if self.d == 0 {
            return fail("--d must be at least 1".into());
        }
        if self.k == 0 {
            return fail("--k must be at least 1".into());
        }
        if self.trials == 0 {
            return fail("--trials must be at least 1".into());
        }
        if self.max_rounds == 0 {
            return fail("--max-rounds must be at least 1".into());
        }
        let rd = self.r as i64 * self.d as i64;
        if rd > self.m as i64 {
            return fail(format!(
                "rd = {rd} exceeds m = {}; the product space cannot reach dimension rd",
                self.m
            ));
        }
        let (n, c) = match (self.n, self.c) {
            (None, None) => {
                return fail("specify --n or --c (n - k = rd - c ties them together)".into())
            }
            (Some(n), None) => (n, rd - (n as i64 - self.k as i64)),
            (None, Some(c)) => {
                let n = rd - c + self.k as i64;
                if n <= self.k as i64 {
                    return fail(format!("derived n = {n} must exceed k = {}", self.k));
                }
                (n as usize, c)
            }
            (Some(n), Some(c)) => {
                if n as i64 - self.k as i64 != rd - c {
                    return fail(format!(
                        "inconsistent shape: n - k = {} but rd - c = {}",
                        n as i64 - self.k as i64,
                        rd - c
                    ));
                }
                (n, c)
            }
        };
        if n <= self.k {
            return fail(format!("need n > k, got n = {n}, k = {}", self.k));
        }
        if self.r > n || self.r > self.m {
            return fail(format!(
                "error rank r = {} must not exceed n = {n} or m = {}",
                self.r, self.m
            ));
        }
        if self.d > self.m {
            return fail(format!("--d = {} exceeds m = {}", self.d, self.m));
        }
        match self.algorithm {
            Algorithm::Intersect => {
                if self.t.is_none() && c <= 0 {
                    return fail(
                        "the accumulating decoder needs --t when c <= 0 (no arity formula applies)"
                            .into(),
                    );
                }
                if let Some(t) = self.t {
                    if t == 0 {
                        return fail("--t must be at least 1".into());
                    }
                }
            }
            Algorithm::Basic | Algorithm::Multiset => {
                if self.t.is_some() {
                    return fail(format!(
                        "--t applies only to the intersect algorithm, not {}",
                        self.algorithm
                    ));
                }
            }
        }
        Ok(ExperimentConfig {
            q: self.q,
            m: self.m,
            n,
            k: self.k,
            r: self.r,
            d: self.d,
            c,
            t: self.t,
            algorithm: self.algorithm,
            trials: self.trials,
            seed: self.seed,
            max_rounds: self.max_rounds,
            candidate_cap: self.candidate_cap,
            full_decode: self.full_decode,
            faithful_guard: self.faithful_guard,
            parallelism: self.parallelism,
            verbose: self.verbose,
        })
    }
}

impl ExperimentConfig {
    /// The arity the accumulating decoder will use: the explicit override,
    /// or the formula value when the configured codimension admits one.
    pub fn effective_arity(&self) -> Option<u64> {
        match self.algorithm {
            Algorithm::Intersect => self.t.or_else(|| {
                (self.c >= 1)
                    .then(|| {
                        decoders::default_intersection_arity(self.q, self.r, self.c as usize).ok()
                    })
                    .flatten()
            }),
            _ => None,
        }
    }

    /// Rebuilds a draft with the same derived regime, used by sweeps.
    pub fn to_draft(&self) -> ConfigDraft {
        ConfigDraft {
            q: self.q,
            m: self.m,
            r: self.r,
            d: self.d,
            n: None,
            k: self.k,
            c: Some(self.c),
            t: self.t,
            algorithm: self.algorithm,
            trials: self.trials,
            seed: self.seed,
            max_rounds: self.max_rounds,
            candidate_cap: self.candidate_cap,
            full_decode: self.full_decode,
            faithful_guard: self.faithful_guard,
            parallelism: self.parallelism,
            verbose: self.verbose,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn draft() -> ConfigDraft {
        ConfigDraft {
            m: 41,
            r: 5,
            d: 5,
            c: Some(1),
            t: Some(4),
            ..Default::default()
        }
    }

    #[test]
    fn derives_n_from_codimension() {
        let cfg = draft().resolve().unwrap();
        assert_eq!(cfg.n, 25);
        assert_eq!(cfg.k, 1);
        assert_eq!(cfg.c, 1);
    }

    #[test]
    fn derives_codimension_from_n() {
        let cfg = ConfigDraft {
            n: Some(25),
            c: None,
            ..draft()
        }
        .resolve()
        .unwrap();
        assert_eq!(cfg.c, 1);
    }

    #[test]
    fn rejects_inconsistent_shape() {
        let err = ConfigDraft {
            n: Some(24),
            c: Some(1),
            ..draft()
        }
        .resolve()
        .unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn rejects_rd_above_m() {
        let err = ConfigDraft { m: 24, ..draft() }.resolve().unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn negative_codimension_is_accepted() {
        let cfg = ConfigDraft {
            m: 24,
            r: 3,
            d: 3,
            c: Some(-3),
            t: None,
            algorithm: Algorithm::Basic,
            ..Default::default()
        }
        .resolve()
        .unwrap();
        assert_eq!(cfg.n, 13);
        assert_eq!(cfg.n - cfg.k, 12);
    }

    #[test]
    fn intersect_without_arity_needs_positive_c() {
        let err = ConfigDraft {
            c: Some(0),
            t: None,
            m: 26,
            ..draft()
        }
        .resolve()
        .unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn arity_rejected_for_other_algorithms() {
        let err = ConfigDraft {
            algorithm: Algorithm::Basic,
            ..draft()
        }
        .resolve()
        .unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn effective_arity_falls_back_to_formula() {
        let cfg = ConfigDraft { t: None, ..draft() }.resolve().unwrap();
        assert_eq!(cfg.effective_arity(), Some(8));
        let cfg = draft().resolve().unwrap();
        assert_eq!(cfg.effective_arity(), Some(4));
    }
}
