//! Workloads shared by the benchmarks.

use netctrl_core::generate::{random_system, sparse_system, RandomSpec};
use netctrl_core::StructuredSystem;

/// Sparse classification workload: `n` states, about `3n` edges, ten targets.
pub fn classification_workload(n: usize, seed: u64) -> StructuredSystem {
    sparse_system(n, n / 100 + 10, 10, seed)
}

/// Small system with explicit inputs and outputs for the numeric oracle.
pub fn oracle_workload(n: usize, seed: u64) -> StructuredSystem {
    let io = (n / 4).max(1);
    random_system(&RandomSpec::new(n, 2 * n, 0, 0).with_io(io, io), seed)
}
