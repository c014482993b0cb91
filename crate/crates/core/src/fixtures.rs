//! Small reference networks used throughout the tests, benches and docs.

use crate::system::{parse_system, StructuredSystem};

/// Nine states, two inputs (`u1 -> x4, x7`, `u2 -> x6, x9`) and two outputs
/// (`y1 <- x8`, `y2 <- x8, x9`).
pub const NINE_NODE_TEXT: &str = include_str!("../fixtures/nine_node.sys");

/// The nine-state dynamics with available set `{x1..x4}` and targets `{x8, x9}`.
pub const TARGET_SELECTION_TEXT: &str = include_str!("../fixtures/target_selection.sys");

/// `u1 -> x1 -> x2 -> x3` plus `x1 -> x4`; targets `{x3, x4}`.
pub const CHAIN_WITH_BRANCH_TEXT: &str = include_str!("../fixtures/chain_with_branch.sys");

pub fn nine_node_system() -> StructuredSystem {
    parse_system(NINE_NODE_TEXT).expect("fixture parses")
}

pub fn target_selection_system() -> StructuredSystem {
    parse_system(TARGET_SELECTION_TEXT).expect("fixture parses")
}

pub fn chain_with_branch_system() -> StructuredSystem {
    parse_system(CHAIN_WITH_BRANCH_TEXT).expect("fixture parses")
}
