//! Error-support recovery for LRPC codes.
//!
//! Given the syndrome support S inside the product space A.E (A the
//! parity-check support of dimension d, E the unknown error support of
//! dimension r), three recovery strategies are provided:
//!
//! * [`basic_recover`] — intersect the d scaled spaces S a^{-1} over a
//!   basis of A. Works when S is the whole product space.
//! * [`multiset_recover`] — when S has codimension c in A.E, every scaled
//!   space S a^{-1} for every nonzero a in A is enumerated; elements of E
//!   appear in at least q^{d-c} - 1 of them while generic elements appear
//!   in far fewer, so thresholding on that multiplicity isolates a small
//!   superset of E which is then shrunk by intersecting it with its own
//!   translates. The multiset of scaled spaces is never materialized: the
//!   multiplicity of x is exactly q^{dim(S x^{-1} ∩ A)} - 1, computed per
//!   candidate.
//! * [`intersect_recover`] — accumulate sums of t-fold intersections
//!   S a_1^{-1} ∩ ... ∩ S a_t^{-1} for random nonzero a_i until the
//!   accumulated space reaches dimension r. Practical at cryptographic
//!   sizes; each intersection contributes at least r - tc dimensions of E
//!   and contains anything else only with probability about
//!   q^{-((t-1)m + r - trd)}.
//!
//! The analytic failure estimates the experiment harness reports live
//! here as well.

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::rng::Rng;
use crate::subspace::Subspace;
use std::collections::BTreeSet;
use std::fmt;

/// Why a recovery attempt did not produce the target support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailureReason {
    /// The syndrome codimension is too large for the algorithm.
    GuardRejected { codim: usize, limit: usize },
    /// The recovered space has the wrong dimension.
    SupportDimension { expected: usize, got: usize },
    /// The accumulated space outgrew the target rank.
    StrayElements { dim: usize },
    /// No translate intersection shrank the candidate set any further.
    FilterStuck { size: u64 },
    /// The filtered candidate set is not the element set of a subspace of
    /// the target dimension.
    NotASubspace { size: u64, span_dim: usize },
    /// The round budget ran out before the support filled up.
    RoundBudget { rounds: u32 },
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailureReason::GuardRejected { codim, limit } => {
                write!(
                    f,
                    "support recovery failure: codimension {codim} exceeds {limit}"
                )
            }
            FailureReason::SupportDimension { expected, got } => {
                write!(f, "recovered dimension {got}, wanted {expected}")
            }
            FailureReason::StrayElements { dim } => {
                write!(f, "accumulated space overshot to dimension {dim}")
            }
            FailureReason::FilterStuck { size } => {
                write!(f, "filtering stalled with {size} candidates")
            }
            FailureReason::NotASubspace { size, span_dim } => {
                write!(
                    f,
                    "{size} candidates spanning dimension {span_dim} do not form a subspace"
                )
            }
            FailureReason::RoundBudget { rounds } => {
                write!(f, "round budget of {rounds} exhausted")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecoveryStatus {
    Success,
    /// Assigned by callers that know the planted support and found the
    /// recovered one differs despite a successful run.
    WrongSupport,
    Failure(FailureReason),
}

impl RecoveryStatus {
    pub fn is_success(&self) -> bool {
        matches!(self, RecoveryStatus::Success)
    }
}

impl fmt::Display for RecoveryStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecoveryStatus::Success => write!(f, "success"),
            RecoveryStatus::WrongSupport => write!(f, "wrong-support"),
            RecoveryStatus::Failure(reason) => write!(f, "failure: {reason}"),
        }
    }
}

/// Result of one support-recovery attempt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveryOutcome {
    pub status: RecoveryStatus,
    /// The recovered (or partially accumulated) support, when one exists.
    pub support: Option<Subspace>,
    /// Rounds executed by the accumulating decoder.
    pub rounds: u32,
    /// Accumulated dimension after each round, for diagnostics.
    pub round_dims: Vec<usize>,
    /// Distinct candidates examined by the thresholding decoder.
    pub candidates_examined: u64,
}

impl RecoveryOutcome {
    fn new(status: RecoveryStatus, support: Option<Subspace>) -> Self {
        RecoveryOutcome {
            status,
            support,
            rounds: 0,
            round_dims: Vec::new(),
            candidates_examined: 0,
        }
    }
}

/// Recovers E as the intersection of the spaces S alpha^{-1} over the
/// canonical basis of A. Succeeds exactly when the intersection has the
/// target dimension; callers compare the support against the truth.
pub fn basic_recover(
    field: &Field,
    s: &Subspace,
    a: &Subspace,
    r: usize,
) -> Result<RecoveryOutcome> {
    if a.is_zero() {
        return Err(Error::InvalidParameters(
            "parity-check support must have dimension at least 1".into(),
        ));
    }
    let mut acc: Option<Subspace> = None;
    for alpha in a.basis_elements() {
        let shifted = s.scale(field, &field.inv(&alpha)?)?;
        acc = Some(match acc {
            None => shifted,
            Some(prev) => prev.intersect(&shifted)?,
        });
    }
    let e_hat = acc.expect("support has at least one basis element");
    let status = if e_hat.dim() == r {
        RecoveryStatus::Success
    } else {
        RecoveryStatus::Failure(FailureReason::SupportDimension {
            expected: r,
            got: e_hat.dim(),
        })
    };
    Ok(RecoveryOutcome::new(status, Some(e_hat)))
}

/// Multiplicity of `x` in the multiset union of S a^{-1} over nonzero
/// a in A: the number of nonzero a with x in S a^{-1}. Equals
/// q^dim(A) - 1 at x = 0 and q^{dim(S x^{-1} ∩ A)} - 1 elsewhere, because
/// x = s a^{-1} holds iff a = s x^{-1}.
pub fn multiplicity(field: &Field, x: &FieldElement, s: &Subspace, a: &Subspace) -> Result<u64> {
    let dim = if x.is_zero() {
        a.dim()
    } else {
        s.scale(field, &field.inv(x)?)?.intersect(a)?.dim()
    };
    let count = (field.q() as u64)
        .checked_pow(dim as u32)
        .ok_or_else(|| Error::InvalidParameters("multiplicity exceeds u64".into()))?;
    Ok(count - 1)
}

/// The deduplicated union of the scaled spaces together with the subset
/// clearing the multiplicity threshold q^{d-c} - 1.
#[derive(Debug, Clone)]
pub struct CandidateSet {
    /// Elements with multiplicity at least the threshold, ascending in the
    /// canonical encoding order.
    pub elements: Vec<FieldElement>,
    /// Distinct elements examined across all scaled spaces.
    pub examined: u64,
    /// The threshold q^{d-c} - 1 that was applied.
    pub threshold: u64,
}

/// Options for [`multiset_recover`].
#[derive(Debug, Clone)]
pub struct MultisetOptions {
    /// Apply the stricter guard `codim < d - 2` instead of `codim <= d - 2`.
    pub faithful_guard: bool,
    /// Upper bound on the multiset size (q^d - 1) * q^{dim S}.
    pub candidate_cap: u64,
    /// Order in which filtering candidates are tried.
    pub filter_order: FilterOrder,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FilterOrder {
    /// Ascending canonical encoding; fully deterministic.
    Canonical,
    /// Random order drawn from a dedicated stream; still reproducible.
    Shuffled { seed: u64 },
}

impl Default for MultisetOptions {
    fn default() -> Self {
        MultisetOptions {
            faithful_guard: false,
            candidate_cap: crate::subspace::DEFAULT_ENUMERATION_CAP,
            filter_order: FilterOrder::Canonical,
        }
    }
}

/// Builds the high-multiplicity candidate set: the union of all scaled
/// spaces S a^{-1} (a nonzero in A), restricted to elements whose
/// multiplicity reaches q^{d-c} - 1. Every element of E clears the
/// threshold, so E is always contained in the result.
pub fn multiplicity_candidates(
    field: &Field,
    s: &Subspace,
    a: &Subspace,
    c: usize,
    candidate_cap: u64,
) -> Result<CandidateSet> {
    let q = field.q() as u128;
    let d = a.dim();
    if c > d {
        return Err(Error::InvalidParameters(format!(
            "codimension {c} exceeds the support dimension {d}"
        )));
    }
    let space_count = q.pow(d as u32) - 1;
    let space_size = q.pow(s.dim() as u32);
    let multiset_size = space_count * space_size;
    if multiset_size > candidate_cap as u128 {
        return Err(Error::CandidateCap {
            size: multiset_size,
            cap: candidate_cap,
        });
    }
    let mut union: BTreeSet<FieldElement> = BTreeSet::new();
    for idx in 1..=space_count {
        let alpha = a.element_at(idx);
        let scaled = s.scale(field, &field.inv(&alpha)?)?;
        union.extend(scaled.elements_capped(candidate_cap)?);
    }
    let examined = union.len() as u64;
    let threshold = (field.q() as u64)
        .checked_pow((d - c) as u32)
        .ok_or_else(|| Error::InvalidParameters("threshold exceeds u64".into()))?
        - 1;
    let threshold_dim = d - c;
    let mut elements = Vec::new();
    for x in union {
        // Same quantity as `multiplicity`: dim(S x^{-1} ∩ A) = dim(S ∩ Ax),
        // and the right-hand side scales the small support instead of
        // inverting x and scaling S.
        let dim = if x.is_zero() {
            d
        } else {
            s.intersect(&a.scale(field, &x)?)?.dim()
        };
        if dim >= threshold_dim {
            elements.push(x);
        }
    }
    Ok(CandidateSet {
        elements,
        examined,
        threshold,
    })
}

/// Support recovery by multiplicity thresholding.
///
/// Requires the codimension c = rd - dim(S) to satisfy c <= d - 2 (strict
/// under the faithful guard); larger codimensions cannot separate E from
/// generic candidates and the attempt is reported as a recovery failure.
/// When more than q^r candidates survive the threshold, the set is shrunk
/// by replacing it with its intersection with one of its own translates,
/// trying translate representatives in the configured order and keeping
/// any replacement that shrinks the set without dropping below q^r.
pub fn multiset_recover(
    field: &Field,
    s: &Subspace,
    a: &Subspace,
    r: usize,
    d: usize,
    c: usize,
    opts: &MultisetOptions,
) -> Result<RecoveryOutcome> {
    validate_instance(s, a, r, d, c)?;
    if r == 0 && s.is_zero() {
        return Ok(RecoveryOutcome::new(
            RecoveryStatus::Success,
            Some(zero_like(s)),
        ));
    }
    let limit = if opts.faithful_guard {
        d.saturating_sub(3)
    } else {
        d.saturating_sub(2)
    };
    if c > limit {
        return Ok(RecoveryOutcome::new(
            RecoveryStatus::Failure(FailureReason::GuardRejected { codim: c, limit }),
            None,
        ));
    }
    let candidates = multiplicity_candidates(field, s, a, c, opts.candidate_cap)?;
    let examined = candidates.examined;
    let target = (field.q() as u128).pow(r as u32);

    let mut working: BTreeSet<FieldElement> = candidates.elements.into_iter().collect();
    let mut stuck = false;
    while working.len() as u128 > target {
        let mut order: Vec<FieldElement> = working.iter().cloned().collect();
        if let FilterOrder::Shuffled { seed } = opts.filter_order {
            let mut rng = Rng::new(seed);
            for i in (1..order.len()).rev() {
                order.swap(i, rng.below(i as u64 + 1) as usize);
            }
        }
        let mut accepted = false;
        for x in order {
            if x.is_zero() {
                continue;
            }
            // working ∩ (working + x): keep y when y - x is also present.
            let mut shrunk = BTreeSet::new();
            for y in &working {
                if working.contains(&field.sub(y, &x)?) {
                    shrunk.insert(y.clone());
                }
            }
            if (shrunk.len() as u128) >= target && shrunk.len() < working.len() {
                working = shrunk;
                accepted = true;
                break;
            }
        }
        if !accepted {
            stuck = true;
            break;
        }
    }

    let elements: Vec<FieldElement> = working.iter().cloned().collect();
    let span = Subspace::span(field, &elements)?;
    let status = if stuck {
        RecoveryStatus::Failure(FailureReason::FilterStuck {
            size: working.len() as u64,
        })
    } else if working.len() as u128 == target && span.dim() == r {
        // Exactly q^r elements inside an r-dimensional span: the set is
        // the whole subspace.
        RecoveryStatus::Success
    } else {
        RecoveryStatus::Failure(FailureReason::NotASubspace {
            size: working.len() as u64,
            span_dim: span.dim(),
        })
    };
    let mut outcome = RecoveryOutcome::new(status, Some(span));
    outcome.candidates_examined = examined;
    Ok(outcome)
}

/// Default intersection arity: the smallest power of q with t * c >= r.
pub fn default_intersection_arity(q: u16, r: usize, c: usize) -> Result<u64> {
    if c == 0 {
        return Err(Error::InvalidParameters(
            "codimension 0 needs no accumulation; use basic_recover or supply an explicit arity"
                .into(),
        ));
    }
    let mut t: u64 = 1;
    while (t as u128) * (c as u128) < r as u128 {
        t = t
            .checked_mul(q as u64)
            .ok_or_else(|| Error::InvalidParameters("intersection arity exceeds u64".into()))?;
    }
    Ok(t)
}

/// Support recovery by accumulating t-fold intersections.
///
/// Each round draws t distinct nonzero elements of A, intersects the t
/// scaled spaces S a_i^{-1} and adds the intersection to the accumulated
/// support. Stops with success as soon as the accumulated dimension
/// reaches r, and with failure if it overshoots (a stray element slipped
/// into some intersection) or the round budget runs out.
#[allow(clippy::too_many_arguments)]
pub fn intersect_recover(
    field: &Field,
    s: &Subspace,
    a: &Subspace,
    r: usize,
    d: usize,
    c: usize,
    t_override: Option<u64>,
    max_rounds: u32,
    rng: &mut Rng,
) -> Result<RecoveryOutcome> {
    validate_instance(s, a, r, d, c)?;
    if r == 0 && s.is_zero() {
        return Ok(RecoveryOutcome::new(
            RecoveryStatus::Success,
            Some(zero_like(s)),
        ));
    }
    if c >= d {
        return Ok(RecoveryOutcome::new(
            RecoveryStatus::Failure(FailureReason::GuardRejected {
                codim: c,
                limit: d - 1,
            }),
            None,
        ));
    }
    let t = match t_override {
        Some(t) => t,
        None => default_intersection_arity(field.q(), r, c)?,
    };
    let nonzero_count = (field.q() as u128).pow(d as u32) - 1;
    if t == 0 || t as u128 > nonzero_count {
        return Err(Error::InvalidParameters(format!(
            "arity {t} must lie in [1, {nonzero_count}] to draw distinct support elements"
        )));
    }

    let mut acc = zero_like(s);
    let mut round_dims = Vec::new();
    for round in 1..=max_rounds {
        // t distinct uniform nonzero elements of A, drawn by index.
        let mut picks: Vec<u64> = Vec::with_capacity(t as usize);
        while picks.len() < t as usize {
            let idx = rng.below(nonzero_count as u64) + 1;
            if !picks.contains(&idx) {
                picks.push(idx);
            }
        }
        let mut inter: Option<Subspace> = None;
        for idx in picks {
            let alpha = a.element_at(idx as u128);
            let shifted = s.scale(field, &field.inv(&alpha)?)?;
            inter = Some(match inter {
                None => shifted,
                Some(prev) => {
                    if prev.is_zero() {
                        prev
                    } else {
                        prev.intersect(&shifted)?
                    }
                }
            });
        }
        acc = acc.sum(&inter.expect("arity is at least 1"))?;
        round_dims.push(acc.dim());
        if acc.dim() >= r {
            let status = if acc.dim() == r {
                RecoveryStatus::Success
            } else {
                RecoveryStatus::Failure(FailureReason::StrayElements { dim: acc.dim() })
            };
            let mut outcome = RecoveryOutcome::new(status, Some(acc));
            outcome.rounds = round;
            outcome.round_dims = round_dims;
            return Ok(outcome);
        }
    }
    let mut outcome = RecoveryOutcome::new(
        RecoveryStatus::Failure(FailureReason::RoundBudget { rounds: max_rounds }),
        Some(acc),
    );
    outcome.rounds = max_rounds;
    outcome.round_dims = round_dims;
    Ok(outcome)
}

fn validate_instance(s: &Subspace, a: &Subspace, r: usize, d: usize, c: usize) -> Result<()> {
    if a.dim() != d {
        return Err(Error::InvalidParameters(format!(
            "support dimension {} does not match stated d = {d}",
            a.dim()
        )));
    }
    if d == 0 {
        return Err(Error::InvalidParameters(
            "parity-check support must have dimension at least 1".into(),
        ));
    }
    let product_dim = r * d;
    if s.dim() + c != product_dim {
        return Err(Error::InvalidParameters(format!(
            "syndrome dimension {} plus codimension {c} must equal rd = {product_dim}",
            s.dim()
        )));
    }
    Ok(())
}

fn zero_like(s: &Subspace) -> Subspace {
    s.zero_like()
}

/// Failure-probability estimate of the form q^exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbabilityEstimate {
    /// Exponent e with failure probability ~ q^e.
    pub log_q_failure: i64,
    /// The evaluated value q^e.
    pub value: f64,
}

impl ProbabilityEstimate {
    fn new(q: u16, log_q_failure: i64) -> Self {
        ProbabilityEstimate {
            log_q_failure,
            value: (q as f64).powi(log_q_failure as i32),
        }
    }

    /// A nonnegative exponent means the bound carries no information.
    pub fn vacuous(&self) -> bool {
        self.log_q_failure >= 0
    }
}

/// Probability that n-k uniform product-space elements fail to span the
/// whole rd-dimensional product space: about q^{rd - (n-k)}.
pub fn estimate_syndrome_fill(
    q: u16,
    r: usize,
    d: usize,
    n: usize,
    k: usize,
) -> ProbabilityEstimate {
    let exp = (r * d) as i64 - (n - k) as i64;
    ProbabilityEstimate::new(q, exp)
}

/// Probability that the basis-intersection decoder keeps anything beyond
/// E: about q^{-(d-1)(m - rd - r)}.
pub fn estimate_basic_intersect(q: u16, m: usize, r: usize, d: usize) -> ProbabilityEstimate {
    let exp = -((d as i64 - 1) * (m as i64 - (r * d) as i64 - r as i64));
    ProbabilityEstimate::new(q, exp)
}

/// Probability that a t-fold intersection of codimension-c syndrome
/// spaces contains an element outside E: about q^{-((t-1)m + r - trd)}.
/// The codimension does not enter the exponent but is kept for context.
pub fn estimate_stray(
    q: u16,
    m: usize,
    r: usize,
    d: usize,
    _c: usize,
    t: u64,
) -> ProbabilityEstimate {
    let exp = -((t as i64 - 1) * m as i64 + r as i64 - t as i64 * (r * d) as i64);
    ProbabilityEstimate::new(q, exp)
}
