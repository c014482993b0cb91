use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{NumericInstance, DEFAULT_REL_TOL};
use crate::error::NumericError;

pub const DEFAULT_TRANSFER_SAMPLES: usize = 5;

const SAMPLE_LO: f64 = 1.0;
const SAMPLE_HI: f64 = 3.0;
// (sI - A) is rejected as a sample point below this reciprocal condition.
const MIN_RCOND: f64 = 1e-8;
const RESAMPLE_FACTOR: usize = 20;

/// Number of singular values above `rel_tol` times the largest one.
pub fn numeric_rank(m: &DMatrix<f64>, rel_tol: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.singular_values();
    let top = sv.max();
    if top == 0.0 || !top.is_finite() {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * top).count()
}

/// `[B, AB, ..., A^{n-1}B]` with each block scaled to unit Frobenius norm.
/// Column scaling leaves the rank of this matrix, and of `C` times it,
/// unchanged while keeping the powers of `A` in range.
pub fn scaled_controllability_matrix(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    let (n, m) = (a.nrows(), b.ncols());
    let mut k = DMatrix::zeros(n, n * m);
    let mut block = b.clone();
    for power in 0..n {
        let norm = block.norm();
        if norm == 0.0 {
            break;
        }
        block /= norm;
        k.columns_mut(power * m, m).copy_from(&block);
        block = a * &block;
    }
    k
}

/// Numeric rank of the controllability matrix of `(A, B)`.
pub fn ctrb_rank(inst: &NumericInstance, rel_tol: f64) -> usize {
    numeric_rank(&scaled_controllability_matrix(&inst.a, &inst.b), rel_tol)
}

/// Numeric rank of `C [B, AB, ..., A^{n-1}B]`; equals the output count iff
/// the instance is point-wise output controllable.
pub fn pointwise_output_ctrb_rank(inst: &NumericInstance, rel_tol: f64) -> usize {
    let k = scaled_controllability_matrix(&inst.a, &inst.b);
    numeric_rank(&(&inst.c * k), rel_tol)
}

/// Normal rank of `T(s) = C (sI - A)^{-1} B` with the default sample count
/// and tolerance.
pub fn transfer_rank(inst: &NumericInstance) -> Result<usize, NumericError> {
    transfer_rank_with(inst, DEFAULT_TRANSFER_SAMPLES, DEFAULT_REL_TOL)
}

/// Maximum over `n_samples` real points `s` of `rank P(s) - n`, where
/// `P(s) = [[sI - A, -B], [C, 0]]`. For invertible `sI - A` this equals
/// `rank T(s)` by a Schur complement, without forming the inverse. Points
/// are drawn from `[1, 3]` on a stream of the instance seed; points with
/// ill-conditioned `sI - A` are redrawn.
pub fn transfer_rank_with(inst: &NumericInstance, n_samples: usize, rel_tol: f64) -> Result<usize, NumericError> {
    let (n, m, p) = (inst.n(), inst.input_count(), inst.output_count());
    if m == 0 || p == 0 {
        return Ok(0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(inst.seed);
    rng.set_stream(3);

    let mut best = 0;
    let mut accepted = 0;
    for _ in 0..n_samples.max(1) * RESAMPLE_FACTOR {
        if accepted == n_samples.max(1) {
            break;
        }
        let s: f64 = rng.gen_range(SAMPLE_LO..SAMPLE_HI);
        let shifted = DMatrix::<f64>::identity(n, n) * s - &inst.a;
        if n > 0 {
            let sv = shifted.singular_values();
            if sv.min() < MIN_RCOND * sv.max() {
                continue;
            }
        }
        accepted += 1;
        let mut sys_matrix = DMatrix::zeros(n + p, n + m);
        sys_matrix.view_mut((0, 0), (n, n)).copy_from(&shifted);
        sys_matrix.view_mut((0, n), (n, m)).copy_from(&(-&inst.b));
        sys_matrix.view_mut((n, 0), (p, n)).copy_from(&inst.c);
        best = best.max(numeric_rank(&sys_matrix, rel_tol).saturating_sub(n));
    }
    if accepted == 0 {
        return Err(NumericError::SingularSample);
    }
    Ok(best)
}

/// Largest per-output relative degree: for each row `c_l` of `C`, the first
/// `k` with `c_l A^{k-1} B != 0`. `None` if some output never sees an input.
pub fn relative_degree(inst: &NumericInstance, rel_tol: f64) -> Option<usize> {
    let (n, m) = (inst.n(), inst.input_count());
    let k = scaled_controllability_matrix(&inst.a, &inst.b);
    let markov = &inst.c * k;
    let mut worst = 0;
    for l in 0..inst.output_count() {
        let scale = inst.c.row(l).norm();
        let degree = (0..n).find(|&power| {
            let block = markov.view((l, power * m), (1, m));
            scale > 0.0 && block.norm() > rel_tol * scale
        })?;
        worst = worst.max(degree + 1);
    }
    Some(worst)
}
