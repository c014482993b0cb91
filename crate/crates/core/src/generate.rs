//! Seeded random structured systems for tests and benchmarks.

use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::system::StructuredSystem;

/// Shape of a random system. Edges are drawn uniformly over ordered pairs
/// (self-loops included) until `edges` distinct ones exist or the pattern
/// is full.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomSpec {
    pub n: usize,
    pub edges: usize,
    pub available: usize,
    pub targets: usize,
    /// Explicit input columns, each touching 1 or 2 random states.
    pub inputs: usize,
    /// Explicit output rows, each reading 1 or 2 random states.
    pub outputs: usize,
}

impl RandomSpec {
    pub fn new(n: usize, edges: usize, available: usize, targets: usize) -> Self {
        RandomSpec {
            n,
            edges,
            available,
            targets,
            inputs: 0,
            outputs: 0,
        }
    }

    pub fn with_io(mut self, inputs: usize, outputs: usize) -> Self {
        self.inputs = inputs;
        self.outputs = outputs;
        self
    }
}

fn subset<R: Rng>(rng: &mut R, n: usize, k: usize) -> Vec<usize> {
    let mut v: Vec<usize> = sample(rng, n, k.min(n)).into_iter().map(|i| i + 1).collect();
    v.sort_unstable();
    v
}

fn small_subset<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let k = rng.gen_range(1..=2.min(n));
    subset(rng, n, k)
}

pub fn random_system(spec: &RandomSpec, seed: u64) -> StructuredSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = spec.n;
    let wanted = spec.edges.min(n * n);
    let mut edges = BTreeSet::new();
    if wanted * 2 > n * n {
        // dense: pick pair indices without replacement
        for idx in sample(&mut rng, n * n, wanted) {
            edges.insert((idx / n + 1, idx % n + 1));
        }
    } else {
        while edges.len() < wanted {
            edges.insert((rng.gen_range(1..=n), rng.gen_range(1..=n)));
        }
    }
    let available = subset(&mut rng, n, spec.available);
    let targets = subset(&mut rng, n, spec.targets);
    let mut sys = StructuredSystem::new(n, edges, available, targets).expect("generated indices are in range");
    if n > 0 && spec.inputs > 0 {
        let cols = (0..spec.inputs).map(|_| small_subset(&mut rng, n)).collect();
        sys = sys.with_inputs(cols).expect("generated inputs are valid");
    }
    if n > 0 && spec.outputs > 0 {
        let rows = (0..spec.outputs).map(|_| small_subset(&mut rng, n)).collect();
        sys = sys.with_outputs(rows).expect("generated outputs are valid");
    }
    sys
}

/// A sparse system of `n` states with about `3n` edges, `available`
/// available nodes and `targets` targets, as used for scaling checks.
pub fn sparse_system(n: usize, available: usize, targets: usize, seed: u64) -> StructuredSystem {
    random_system(&RandomSpec::new(n, 3 * n, available, targets), seed)
}
