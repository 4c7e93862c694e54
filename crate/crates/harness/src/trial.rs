//! One Monte-Carlo trial: plant an instance, decode, compare supports.
//!
//! Each trial owns an independent RNG substream derived from the
//! experiment seed and the trial index, so trials can run on any worker
//! in any order and still reproduce bit-for-bit.
//!
//! Instances are conditioned on the regime the analysis assumes: the
//! product space A.E must reach dimension rd (the worst and typical
//! case), and in the underdetermined regime n - k <= rd the syndrome
//! components must be linearly independent so that the codimension of S
//! equals the configured c. Instances failing either condition are
//! redrawn and counted as degenerate events. In the overdetermined
//! regime n - k > rd no rank conditioning applies: falling short of the
//! full product space is exactly the failure mode the fill estimate
//! q^{rd-(n-k)} prices in, so those instances stay in the sample.

use crate::config::{Algorithm, ExperimentConfig, HarnessError};
use lrpc::code::{gen_code, gen_error, recover_coordinates, syndrome, CoordinateRecovery};
use lrpc::decoders::{
    basic_recover, intersect_recover, multiset_recover, FilterOrder, MultisetOptions,
    RecoveryStatus,
};
use lrpc::{Field, Rng};
use serde::Serialize;
use std::time::Instant;

/// Redraw budget for degenerate instances within one trial.
const RESAMPLE_BUDGET: u32 = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialReport {
    pub trial: u64,
    /// Final status after support comparison: "success", "wrong-support"
    /// or a failure description.
    pub outcome: String,
    pub support_correct: bool,
    /// Whether the full coordinate solve reproduced the planted error
    /// exactly; only populated on support-recovery success when the full
    /// decode is enabled.
    pub full_decode_correct: Option<bool>,
    /// Whether the recovered error satisfies e H^T = s with rank <= r.
    pub rsd_contract_ok: Option<bool>,
    /// Instances redrawn before this trial met the conditioning.
    pub degenerate_resamples: u32,
    /// Codimension of the realized syndrome support inside A.E.
    pub c_actual: usize,
    pub rounds: u32,
    pub candidates_examined: u64,
    pub micros: u64,
}

impl TrialReport {
    /// Copy with timing zeroed, for determinism comparisons.
    pub fn strip_timing(mut self) -> Self {
        self.micros = 0;
        self
    }
}

pub fn run_trial(
    cfg: &ExperimentConfig,
    field: &Field,
    trial: u64,
) -> Result<TrialReport, HarnessError> {
    let start = Instant::now();
    let mut rng = Rng::for_trial(cfg.seed, trial);
    let rd = cfg.r * cfg.d;
    let n_minus_k = cfg.n - cfg.k;

    let mut degenerate_resamples = 0u32;
    let (code, planted, syn) = loop {
        if degenerate_resamples > RESAMPLE_BUDGET {
            return Err(HarnessError::Resource(format!(
                "trial {trial} exceeded {RESAMPLE_BUDGET} degenerate redraws"
            )));
        }
        let code = gen_code(field, cfg.n, cfg.k, cfg.d, &mut rng)?;
        let planted = gen_error(field, cfg.n, cfg.r, &mut rng)?;
        let product = code.support().product(field, planted.support())?;
        if product.dim() != rd {
            degenerate_resamples += 1;
            continue;
        }
        let syn = syndrome(field, &code, planted.vector())?;
        if n_minus_k <= rd && syn.support().dim() != n_minus_k {
            degenerate_resamples += 1;
            continue;
        }
        break (code, planted, syn);
    };
    let c_actual = rd - syn.support().dim();

    let outcome = match cfg.algorithm {
        Algorithm::Basic => basic_recover(field, syn.support(), code.support(), cfg.r)?,
        Algorithm::Multiset => {
            let opts = MultisetOptions {
                faithful_guard: cfg.faithful_guard,
                candidate_cap: cfg.candidate_cap,
                filter_order: FilterOrder::Canonical,
            };
            multiset_recover(
                field,
                syn.support(),
                code.support(),
                cfg.r,
                cfg.d,
                c_actual,
                &opts,
            )?
        }
        Algorithm::Intersect => intersect_recover(
            field,
            syn.support(),
            code.support(),
            cfg.r,
            cfg.d,
            c_actual,
            cfg.t,
            cfg.max_rounds,
            &mut rng,
        )?,
    };

    let support_correct =
        outcome.status.is_success() && outcome.support.as_ref() == Some(planted.support());
    let status = if outcome.status.is_success() && !support_correct {
        RecoveryStatus::WrongSupport
    } else {
        outcome.status.clone()
    };

    let mut full_decode_correct = None;
    let mut rsd_contract_ok = None;
    if cfg.full_decode && status.is_success() {
        let recovered_support = outcome.support.as_ref().expect("success carries a support");
        match recover_coordinates(field, &code, &syn, recovered_support)? {
            CoordinateRecovery::Unique(recovered) => {
                full_decode_correct = Some(recovered.vector() == planted.vector());
                let recheck = syndrome(field, &code, recovered.vector())?;
                rsd_contract_ok =
                    Some(recheck.vector() == syn.vector() && recovered.rank() <= cfg.r);
            }
            CoordinateRecovery::Ambiguous { .. } => {
                // A positive-dimensional solution space counts as a decode
                // failure unless the planted error is among the solutions,
                // which holds exactly when the recovered support is the
                // planted one.
                full_decode_correct = Some(support_correct);
                rsd_contract_ok = None;
            }
            CoordinateRecovery::NoSolution => {
                full_decode_correct = Some(false);
                rsd_contract_ok = Some(false);
            }
        }
    }

    Ok(TrialReport {
        trial,
        outcome: status.to_string(),
        support_correct,
        full_decode_correct,
        rsd_contract_ok,
        degenerate_resamples,
        c_actual,
        rounds: outcome.rounds,
        candidates_examined: outcome.candidates_examined,
        micros: start.elapsed().as_micros() as u64,
    })
}
