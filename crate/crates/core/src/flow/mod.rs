//! Linkings, separators and the max-flow machinery behind them.
//!
//! A maximum set of vertex-disjoint direct paths from an available set `A`
//! to a target set `T` is computed as a maximum flow on a node-split
//! network (see [`AuxiliaryGraph`]); the residual-reachable side of that
//! flow yields the minimal separator closest to `A`.
//!
//! All vertex ids in this module are 0-based.

mod auxiliary;
mod maxflow;

use serde::Serialize;

pub use auxiliary::{build_auxiliary_graph, AuxEdge, AuxNode, AuxiliaryGraph, EdgeKind};
pub use maxflow::{extract_linking, max_flow, max_flow_from, min_cut_source_set, residual_reachable, Flow};

use crate::graph::Digraph;
use auxiliary::sorted_set;

/// Removes every edge entering a vertex of `available` and every edge
/// leaving a vertex of `targets`. Vertex set is unchanged.
pub fn preprocess_direct(g: &Digraph, available: &[usize], targets: &[usize]) -> Digraph {
    let mut is_available = vec![false; g.node_count()];
    let mut is_target = vec![false; g.node_count()];
    available.iter().for_each(|&a| is_available[a] = true);
    targets.iter().for_each(|&t| is_target[t] = true);
    g.filter_edges(|u, v| !is_available[v] && !is_target[u])
}

/// Vertex-disjoint simple direct paths. A path of a single vertex is the
/// zero-length path of a vertex that is both available and a target.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Linking {
    paths: Vec<Vec<usize>>,
}

impl Linking {
    pub fn new(paths: Vec<Vec<usize>>) -> Self {
        Linking { paths }
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn paths(&self) -> &[Vec<usize>] {
        &self.paths
    }

    pub fn start_nodes(&self) -> Vec<usize> {
        self.paths.iter().filter_map(|p| p.first().copied()).collect()
    }

    pub fn end_nodes(&self) -> Vec<usize> {
        self.paths.iter().filter_map(|p| p.last().copied()).collect()
    }

    /// Paths relabelled `1..=n` for reporting.
    pub fn labelled(&self) -> Vec<Vec<usize>> {
        self.paths
            .iter()
            .map(|p| p.iter().map(|v| v + 1).collect())
            .collect()
    }

    pub fn export(&self) -> LinkingExport {
        LinkingExport {
            size: self.len(),
            paths: self.labelled(),
        }
    }
}

/// JSON view of a linking with 1-based labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkingExport {
    pub size: usize,
    pub paths: Vec<Vec<usize>>,
}

/// A set of vertices meeting every path from `A` to `T`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Separator {
    nodes: Vec<usize>,
}

impl Separator {
    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.nodes.binary_search(&v).is_ok()
    }

    pub fn labelled(&self) -> Vec<usize> {
        self.nodes.iter().map(|v| v + 1).collect()
    }
}

/// Preprocessed network plus its maximum flow, from which the maximum
/// linking and the minimal left separator are both read off.
#[derive(Debug, Clone)]
pub struct LinkingAnalysis {
    pub aux: AuxiliaryGraph,
    pub flow: Flow,
}

impl LinkingAnalysis {
    pub fn new(g: &Digraph, available: &[usize], targets: &[usize]) -> Self {
        let available = sorted_set(available);
        let targets = sorted_set(targets);
        let direct = preprocess_direct(g, &available, &targets);
        let aux = build_auxiliary_graph(&direct, &available, &targets);
        let flow = max_flow(&aux);
        LinkingAnalysis { aux, flow }
    }

    pub fn size(&self) -> usize {
        self.flow.value()
    }

    pub fn linking(&self) -> Linking {
        extract_linking(&self.aux, &self.flow)
    }

    pub fn separator(&self) -> Separator {
        let reach = residual_reachable(&self.aux, &self.flow);
        let nodes = (0..self.aux.state_count())
            .filter(|&i| reach[self.aux.index(AuxNode::In(i))] && !reach[self.aux.index(AuxNode::Out(i))])
            .collect();
        Separator { nodes }
    }
}

/// Size of a maximum `(A, T)`-linking in `g`.
pub fn max_linking_size(g: &Digraph, available: &[usize], targets: &[usize]) -> usize {
    LinkingAnalysis::new(g, available, targets).size()
}

/// A maximum `(A, T)`-linking in `g`.
pub fn max_linking(g: &Digraph, available: &[usize], targets: &[usize]) -> Linking {
    LinkingAnalysis::new(g, available, targets).linking()
}

/// The minimal separator closest to `A`: vertices whose split edge leaves
/// the residual-reachable set of a maximum flow. Its size equals the
/// maximum linking size, and it does not depend on which maximum flow was
/// found.
pub fn minimal_left_separator(g: &Digraph, available: &[usize], targets: &[usize]) -> Separator {
    LinkingAnalysis::new(g, available, targets).separator()
}
