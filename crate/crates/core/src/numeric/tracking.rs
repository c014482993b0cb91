use std::io::{self, Write};

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::rank::{numeric_rank, relative_degree, transfer_rank};
use super::{NumericInstance, DEFAULT_REL_TOL};
use crate::error::NumericError;

// Above this many unknowns the dense fallback is refused.
const MAX_DENSE_UNKNOWNS: usize = 4000;
const ZERO_START_TOL: f64 = 1e-12;

/// A reference output on a uniform time grid, plus the computed input and
/// achieved output once tracked.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryTask {
    pub horizon: f64,
    pub dt: f64,
    /// `p x (N + 1)`: reference at `t_k = k dt`.
    pub reference: DMatrix<f64>,
    /// `p x N`: reference at `t_k + dt / 2`, when known.
    pub midpoint_reference: Option<DMatrix<f64>>,
    /// `m x N`: input held constant on `[t_k, t_{k+1})`.
    pub input: Option<DMatrix<f64>>,
    /// `p x (N + 1)`.
    pub output: Option<DMatrix<f64>>,
    pub report: Option<TrackingReport>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Solver {
    /// Exact step-by-step inversion; `C B_d` has full row rank.
    Sequential,
    /// Dense least squares over the whole horizon.
    LeastSquares,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrackingReport {
    pub steps: usize,
    pub relative_degree: usize,
    pub solver: Solver,
    /// Max `|y - y_ref|` over grid points after the first `relative_degree` steps.
    pub max_error: f64,
    /// Same, at interval midpoints; `None` without a midpoint reference.
    pub max_intersample_error: Option<f64>,
}

fn steps_for(horizon: f64, dt: f64) -> Result<usize, NumericError> {
    if !(horizon > 0.0 && dt > 0.0 && horizon.is_finite() && dt.is_finite()) {
        return Err(NumericError::InvalidTask(format!(
            "horizon and dt must be positive, got horizon={horizon}, dt={dt}"
        )));
    }
    let steps = (horizon / dt).round();
    if steps < 1.0 || (steps * dt - horizon).abs() > 1e-9 * horizon {
        return Err(NumericError::InvalidTask(format!(
            "horizon {horizon} is not a whole number of steps of {dt}"
        )));
    }
    Ok(steps as usize)
}

impl TrajectoryTask {
    /// Task from grid samples, one column per grid point.
    pub fn new(horizon: f64, dt: f64, reference: DMatrix<f64>) -> Result<Self, NumericError> {
        let steps = steps_for(horizon, dt)?;
        if reference.ncols() != steps + 1 {
            return Err(NumericError::InvalidTask(format!(
                "reference has {} samples, expected {}",
                reference.ncols(),
                steps + 1
            )));
        }
        Ok(TrajectoryTask {
            horizon,
            dt,
            reference,
            midpoint_reference: None,
            input: None,
            output: None,
            report: None,
        })
    }

    /// Samples `f(l, t)` for outputs `l = 0..p` on the grid and at midpoints.
    pub fn from_fn(horizon: f64, dt: f64, p: usize, f: impl Fn(usize, f64) -> f64) -> Result<Self, NumericError> {
        let steps = steps_for(horizon, dt)?;
        let reference = DMatrix::from_fn(p, steps + 1, |l, k| f(l, k as f64 * dt));
        let midpoints = DMatrix::from_fn(p, steps, |l, k| f(l, (k as f64 + 0.5) * dt));
        let mut task = TrajectoryTask::new(horizon, dt, reference)?;
        task.midpoint_reference = Some(midpoints);
        Ok(task)
    }

    /// Smooth references vanishing at `t = 0`: output `l` follows
    /// `t^2 sin(w t)` for even `l` and `t (1 - cos(w t))` for odd `l`,
    /// with `w = 1 + l / 2`.
    pub fn default_reference(p: usize, horizon: f64, dt: f64) -> Result<Self, NumericError> {
        TrajectoryTask::from_fn(horizon, dt, p, default_reference_value)
    }

    pub fn steps(&self) -> usize {
        self.reference.ncols() - 1
    }

    pub fn times(&self) -> Vec<f64> {
        (0..=self.steps()).map(|k| k as f64 * self.dt).collect()
    }

    /// CSV with columns `t, yref1.., y1.., u1..`; the input column is empty
    /// on the final grid point.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        let p = self.reference.nrows();
        let m = self.input.as_ref().map_or(0, |u| u.nrows());
        let mut header = vec!["t".to_string()];
        header.extend((1..=p).map(|l| format!("yref{l}")));
        if self.output.is_some() {
            header.extend((1..=p).map(|l| format!("y{l}")));
        }
        header.extend((1..=m).map(|k| format!("u{k}")));
        writeln!(w, "{}", header.join(","))?;
        for (k, t) in self.times().into_iter().enumerate() {
            let mut row = vec![format!("{t}")];
            row.extend(self.reference.column(k).iter().map(|v| format!("{v:e}")));
            if let Some(y) = &self.output {
                row.extend(y.column(k).iter().map(|v| format!("{v:e}")));
            }
            if let Some(u) = &self.input {
                if k < u.ncols() {
                    row.extend(u.column(k).iter().map(|v| format!("{v:e}")));
                } else {
                    row.extend(std::iter::repeat(String::new()).take(m));
                }
            }
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }
}

pub(crate) fn default_reference_value(l: usize, t: f64) -> f64 {
    let w = 1.0 + (l / 2) as f64;
    if l % 2 == 0 {
        t * t * (w * t).sin()
    } else {
        t * (1.0 - (w * t).cos())
    }
}

/// Exact zero-order-hold discretization `(A_d, B_d)` at step `dt`.
pub(crate) fn discretize(a: &DMatrix<f64>, b: &DMatrix<f64>, dt: f64) -> (DMatrix<f64>, DMatrix<f64>) {
    let (n, m) = (a.nrows(), b.ncols());
    let mut aug = DMatrix::zeros(n + m, n + m);
    aug.view_mut((0, 0), (n, n)).copy_from(&(a * dt));
    aug.view_mut((0, n), (n, m)).copy_from(&(b * dt));
    let e = aug.exp();
    (e.view((0, 0), (n, n)).into_owned(), e.view((0, n), (n, m)).into_owned())
}

/// Computes a piecewise-constant input driving `y = C x` from `x(0) = 0`
/// along the reference, minimizing the summed squared grid error.
///
/// When `C B_d` has full row rank the grid error can be made zero one step
/// at a time (minimum-norm input per step). Otherwise the whole horizon is
/// solved as one least-squares problem.
pub fn track_trajectory(inst: &NumericInstance, task: &TrajectoryTask) -> Result<TrajectoryTask, NumericError> {
    let (n, m, p) = (inst.n(), inst.input_count(), inst.output_count());
    if task.reference.nrows() != p {
        return Err(NumericError::InvalidTask(format!(
            "reference has {} rows, system has {p} outputs",
            task.reference.nrows()
        )));
    }
    let rank = transfer_rank(inst)?;
    if rank < p {
        return Err(NumericError::NotRightInvertible { rank, outputs: p });
    }
    let start = task.reference.column(0).amax();
    if start > ZERO_START_TOL {
        return Err(NumericError::NonzeroInitialReference(start));
    }
    let r = relative_degree(inst, DEFAULT_REL_TOL).expect("right invertible system has finite relative degree");
    let steps = task.steps();
    let (ad, bd) = discretize(&inst.a, &inst.b, task.dt);
    let cbd = &inst.c * &bd;

    let (solver, input) = if numeric_rank(&cbd, DEFAULT_REL_TOL) == p {
        let pinv = cbd.clone().pseudo_inverse(1e-14).expect("pseudo-inverse of finite matrix");
        let cad = &inst.c * &ad;
        let mut u = DMatrix::zeros(m, steps);
        let mut x = DVector::zeros(n);
        for k in 0..steps {
            let uk = &pinv * (task.reference.column(k + 1) - &cad * &x);
            x = &ad * &x + &bd * &uk;
            u.set_column(k, &uk);
        }
        (Solver::Sequential, u)
    } else {
        (Solver::LeastSquares, dense_least_squares(&inst.c, &ad, &bd, &task.reference)?)
    };

    let output = simulate(&inst.c, &ad, &bd, &input);
    let max_error = (r + 1..=steps)
        .map(|k| (output.column(k) - task.reference.column(k)).amax())
        .fold(0.0, f64::max);
    let max_intersample_error = task.midpoint_reference.as_ref().map(|mid| {
        let (ad_half, bd_half) = discretize(&inst.a, &inst.b, task.dt / 2.0);
        let mut x = DVector::zeros(n);
        let mut worst: f64 = 0.0;
        for k in 0..steps {
            let uk = input.column(k);
            if k >= r {
                let y_mid = &inst.c * (&ad_half * &x + &bd_half * uk);
                worst = worst.max((y_mid - mid.column(k)).amax());
            }
            x = &ad * &x + &bd * uk;
        }
        worst
    });

    Ok(TrajectoryTask {
        input: Some(input),
        output: Some(output),
        report: Some(TrackingReport {
            steps,
            relative_degree: r,
            solver,
            max_error,
            max_intersample_error,
        }),
        ..task.clone()
    })
}

fn simulate(c: &DMatrix<f64>, ad: &DMatrix<f64>, bd: &DMatrix<f64>, input: &DMatrix<f64>) -> DMatrix<f64> {
    let steps = input.ncols();
    let mut y = DMatrix::zeros(c.nrows(), steps + 1);
    let mut x = DVector::zeros(ad.nrows());
    for k in 0..steps {
        x = ad * &x + bd * input.column(k);
        y.set_column(k + 1, &(c * &x));
    }
    y
}

// Block lower-triangular Toeplitz system: y_{i+1} = sum_{j<=i} C A_d^{i-j} B_d u_j.
fn dense_least_squares(
    c: &DMatrix<f64>,
    ad: &DMatrix<f64>,
    bd: &DMatrix<f64>,
    reference: &DMatrix<f64>,
) -> Result<DMatrix<f64>, NumericError> {
    let (p, m) = (c.nrows(), bd.ncols());
    let steps = reference.ncols() - 1;
    if steps * m.max(p) > MAX_DENSE_UNKNOWNS {
        return Err(NumericError::InvalidTask(format!(
            "least-squares fallback limited to {MAX_DENSE_UNKNOWNS} unknowns; use fewer steps"
        )));
    }
    let mut markov = Vec::with_capacity(steps);
    let mut power_b = bd.clone();
    for _ in 0..steps {
        markov.push(c * &power_b);
        power_b = ad * power_b;
    }
    let mut g = DMatrix::zeros(p * steps, m * steps);
    for i in 0..steps {
        for j in 0..=i {
            g.view_mut((i * p, j * m), (p, m)).copy_from(&markov[i - j]);
        }
    }
    let mut rhs = DVector::zeros(p * steps);
    for k in 1..=steps {
        rhs.rows_mut((k - 1) * p, p).copy_from(&reference.column(k));
    }
    let sol = g
        .svd(true, true)
        .solve(&rhs, 1e-12)
        .map_err(|e| NumericError::InvalidTask(e.to_string()))?;
    Ok(DMatrix::from_column_slice(m, steps, sol.as_slice()))
}
