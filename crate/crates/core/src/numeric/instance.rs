use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::NumericError;
use crate::system::StructuredSystem;

/// Magnitudes are drawn uniformly from `[lo, hi]` and given a random sign,
/// so every structural nonzero satisfies `|v| >= lo > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValueRange {
    lo: f64,
    hi: f64,
}

impl ValueRange {
    pub fn new(lo: f64, hi: f64) -> Result<Self, NumericError> {
        if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo <= hi) {
            return Err(NumericError::InvalidRange { lo, hi });
        }
        Ok(ValueRange { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> f64 {
        let magnitude = if self.lo == self.hi {
            self.lo
        } else {
            rng.gen_range(self.lo..=self.hi)
        };
        if rng.gen::<bool>() {
            magnitude
        } else {
            -magnitude
        }
    }
}

impl Default for ValueRange {
    fn default() -> Self {
        ValueRange { lo: 0.1, hi: 2.0 }
    }
}

/// A real realization of a structured system. Structural zeros are exact.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericInstance {
    pub a: DMatrix<f64>,
    pub b: DMatrix<f64>,
    pub c: DMatrix<f64>,
    pub seed: u64,
    pub range: ValueRange,
}

impl NumericInstance {
    pub fn n(&self) -> usize {
        self.a.nrows()
    }

    pub fn input_count(&self) -> usize {
        self.b.ncols()
    }

    pub fn output_count(&self) -> usize {
        self.c.nrows()
    }

    /// Same `A` and `B`, output matrix replaced.
    pub fn with_c(&self, c: DMatrix<f64>) -> Self {
        assert_eq!(c.ncols(), self.n(), "output matrix must have n columns");
        NumericInstance { c, ..self.clone() }
    }
}

/// Draws `A`, `B` and `C` from independent ChaCha streams of `seed`, visiting
/// nonzeros in ascending pattern order. `B` and `C` follow
/// [`StructuredSystem::input_columns`] and [`StructuredSystem::output_rows`].
pub fn instantiate(sys: &StructuredSystem, seed: u64, range: ValueRange) -> NumericInstance {
    let n = sys.n();
    let stream = |k: u64| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k);
        rng
    };

    let mut rng = stream(0);
    let mut a = DMatrix::zeros(n, n);
    for &(i, j) in sys.edges() {
        a[(j - 1, i - 1)] = range.sample(&mut rng);
    }

    let inputs = sys.input_columns();
    let mut rng = stream(1);
    let mut b = DMatrix::zeros(n, inputs.len());
    for (k, col) in inputs.iter().enumerate() {
        for &j in col {
            b[(j - 1, k)] = range.sample(&mut rng);
        }
    }

    let outputs = sys.output_rows();
    let mut rng = stream(2);
    let mut c = DMatrix::zeros(outputs.len(), n);
    for (l, row) in outputs.iter().enumerate() {
        for &j in row {
            c[(l, j - 1)] = range.sample(&mut rng);
        }
    }

    NumericInstance { a, b, c, seed, range }
}
