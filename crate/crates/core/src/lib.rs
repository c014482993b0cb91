//! Structural controllability of networked linear systems.
//!
//! A system is described only by which entries of `A`, `B` and `C` may be
//! nonzero. Decisions about it reduce to vertex-disjoint path problems on
//! the state digraph (edge `i -> j` iff `a_ji != 0`), solved here with a
//! node-split maximum flow, plus maximum matching for generic rank. The
//! [`numeric`] module checks those generic answers against random
//! numerical realizations.

pub mod control;
pub mod dot;
pub mod error;
pub mod fixtures;
pub mod flow;
pub mod generate;
pub mod graph;
pub mod matching;
pub mod numeric;
pub mod system;

pub use control::{
    classify_nodes, is_functional_output_controllable, is_functional_target_controllable,
    is_structurally_controllable, max_io_linking, solve_mtcp, solve_mtcp_with, ControlReport, Cover,
    FtcVerdict, IoLinking, MtcpOutcome, MtcpSolution, NodeClass, NodeClassification, StartPreference,
    StructuralReport, StructuralSummary,
};
pub use dot::serialize_dot;
pub use error::{ControlError, FlowError, ModelError, NumericError};
pub use flow::{
    max_linking, max_linking_size, minimal_left_separator, preprocess_direct, Linking, LinkingAnalysis,
    Separator,
};
pub use graph::Digraph;
pub use system::{
    build_graph, build_io_graph, parse_system, parse_system_json, parse_system_text, Node, StructuredSystem,
    SystemGraph,
};
