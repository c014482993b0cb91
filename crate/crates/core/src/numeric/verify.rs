use serde::Serialize;

use super::rank::{pointwise_output_ctrb_rank, transfer_rank_with, DEFAULT_TRANSFER_SAMPLES};
use super::{instantiate, ValueRange, DEFAULT_REL_TOL};
use crate::control::max_io_linking;
use crate::error::NumericError;
use crate::system::StructuredSystem;

/// Matrix powers in the controllability test lose meaning well before
/// structural results do; numeric cross-checks stop here.
pub const ORACLE_MAX_STATES: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub trials: usize,
    pub rel_tol: f64,
    pub samples: usize,
    pub range: ValueRange,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0,
            trials: 20,
            rel_tol: DEFAULT_REL_TOL,
            samples: DEFAULT_TRANSFER_SAMPLES,
            range: ValueRange::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub seed: u64,
    /// Maximum input-output linking size.
    pub structural_rank: usize,
    pub transfer_rank: usize,
    pub pointwise_rank: usize,
    /// `transfer_rank == structural_rank`.
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub outputs: usize,
    pub trials: Vec<TrialRecord>,
    pub disagreements: usize,
}

impl VerifyReport {
    pub fn all_agree(&self) -> bool {
        self.disagreements == 0
    }
}

/// Compares the maximum input-output linking with the numeric transfer rank
/// on `trials` instances seeded `seed, seed + 1, ...`.
pub fn verify(sys: &StructuredSystem, opts: &VerifyOptions) -> Result<VerifyReport, NumericError> {
    if sys.n() > ORACLE_MAX_STATES {
        return Err(NumericError::TooLarge {
            n: sys.n(),
            max: ORACLE_MAX_STATES,
        });
    }
    let structural_rank = max_io_linking(sys).size;
    let mut trials = Vec::with_capacity(opts.trials);
    for seed in (opts.seed..).take(opts.trials) {
        let inst = instantiate(sys, seed, opts.range);
        let transfer_rank = transfer_rank_with(&inst, opts.samples, opts.rel_tol)?;
        trials.push(TrialRecord {
            seed,
            structural_rank,
            transfer_rank,
            pointwise_rank: pointwise_output_ctrb_rank(&inst, opts.rel_tol),
            agree: transfer_rank == structural_rank,
        });
    }
    Ok(VerifyReport {
        outputs: sys.output_rows().len(),
        disagreements: trials.iter().filter(|t| !t.agree).count(),
        trials,
    })
}
