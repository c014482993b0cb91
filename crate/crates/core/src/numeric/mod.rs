//! Numeric cross-checks of the structural answers on random realizations.
//!
//! Structural results hold for almost every choice of the free parameters,
//! so drawing them at random and computing ranks in floating point should
//! reproduce them exactly at a fixed relative tolerance.

mod instance;
mod rank;
mod tracking;
mod verify;

pub use instance::{instantiate, NumericInstance, ValueRange};
pub use rank::{
    ctrb_rank, numeric_rank, pointwise_output_ctrb_rank, relative_degree, scaled_controllability_matrix,
    transfer_rank, transfer_rank_with, DEFAULT_TRANSFER_SAMPLES,
};
pub use tracking::{track_trajectory, Solver, TrackingReport, TrajectoryTask};
pub use verify::{verify, TrialRecord, VerifyOptions, VerifyReport, ORACLE_MAX_STATES};

/// Relative singular-value cutoff used for every numeric rank by default.
pub const DEFAULT_REL_TOL: f64 = 1e-9;
