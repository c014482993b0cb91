use std::collections::{BTreeSet, VecDeque};

use super::auxiliary::{AuxNode, AuxiliaryGraph, EdgeKind};
use super::Linking;
use crate::error::FlowError;

/// Integral flow on an [`AuxiliaryGraph`], one entry per edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flow {
    per_edge: Vec<u32>,
    value: u32,
}

impl Flow {
    pub fn zero(aux: &AuxiliaryGraph) -> Self {
        Flow {
            per_edge: vec![0; aux.edges().len()],
            value: 0,
        }
    }

    pub fn value(&self) -> usize {
        self.value as usize
    }

    pub fn on_edge(&self, edge: usize) -> u32 {
        self.per_edge[edge]
    }

    pub fn per_edge(&self) -> &[u32] {
        &self.per_edge
    }

    /// Routes one unit along each state path (0-based, first vertex
    /// available, last vertex a target). Used to warm-start a search.
    ///
    /// Panics if a path uses an edge missing from `aux`.
    pub fn from_paths(aux: &AuxiliaryGraph, paths: &[Vec<usize>]) -> Self {
        let mut flow = Flow::zero(aux);
        for path in paths {
            let mut hops = vec![AuxNode::Source];
            for &v in path {
                hops.push(AuxNode::In(v));
                hops.push(AuxNode::Out(v));
            }
            hops.push(AuxNode::Sink);
            for pair in hops.windows(2) {
                let e = aux
                    .find_edge(pair[0], pair[1])
                    .unwrap_or_else(|| panic!("path edge {:?} -> {:?} missing", pair[0], pair[1]));
                flow.per_edge[e] += 1;
            }
            flow.value += 1;
        }
        flow
    }
}

/// Maximum integral flow by repeated breadth-first augmentation, starting
/// from zero. Neighbours are scanned in ascending vertex index so the result
/// is fully deterministic.
pub fn max_flow(aux: &AuxiliaryGraph) -> Flow {
    let mut flow = Flow::zero(aux);
    while augment(aux, &mut flow) {}
    flow
}

/// Continues augmenting from a feasible starting flow.
pub fn max_flow_from(aux: &AuxiliaryGraph, mut flow: Flow) -> Flow {
    while augment(aux, &mut flow) {}
    flow
}

fn residual(aux: &AuxiliaryGraph, flow: &Flow, edge: usize, forward: bool) -> u32 {
    if forward {
        aux.edges()[edge].capacity - flow.per_edge[edge]
    } else {
        flow.per_edge[edge]
    }
}

/// One breadth-first augmentation. Returns `false` when the flow is maximum.
pub(crate) fn augment(aux: &AuxiliaryGraph, flow: &mut Flow) -> bool {
    const UNSEEN: u32 = u32::MAX;
    let (source, sink) = (aux.source(), aux.sink());
    // parent[v] = (edge, forward) used to reach v
    let mut parent: Vec<(u32, bool)> = vec![(UNSEEN, false); aux.node_count()];
    let mut seen = vec![false; aux.node_count()];
    seen[source] = true;
    let mut queue = VecDeque::from([source]);

    'search: while let Some(u) = queue.pop_front() {
        for arc in aux.arcs(u) {
            let v = arc.to as usize;
            if seen[v] || residual(aux, flow, arc.edge as usize, arc.forward) == 0 {
                continue;
            }
            seen[v] = true;
            parent[v] = (arc.edge, arc.forward);
            if v == sink {
                break 'search;
            }
            queue.push_back(v);
        }
    }
    if !seen[sink] {
        return false;
    }

    let mut bottleneck = u32::MAX;
    let mut v = sink;
    while v != source {
        let (edge, forward) = parent[v];
        let edge = edge as usize;
        bottleneck = bottleneck.min(residual(aux, flow, edge, forward));
        let e = &aux.edges()[edge];
        v = if forward { e.from } else { e.to };
    }
    let mut v = sink;
    while v != source {
        let (edge, forward) = parent[v];
        let edge = edge as usize;
        let e = &aux.edges()[edge];
        if forward {
            flow.per_edge[edge] += bottleneck;
            v = e.from;
        } else {
            flow.per_edge[edge] -= bottleneck;
            v = e.to;
        }
    }
    flow.value += bottleneck;
    true
}

/// Vertices reachable from the source in the residual network of `flow`.
pub fn residual_reachable(aux: &AuxiliaryGraph, flow: &Flow) -> Vec<bool> {
    let mut seen = vec![false; aux.node_count()];
    seen[aux.source()] = true;
    let mut queue = VecDeque::from([aux.source()]);
    while let Some(u) = queue.pop_front() {
        for arc in aux.arcs(u) {
            let v = arc.to as usize;
            if !seen[v] && residual(aux, flow, arc.edge as usize, arc.forward) > 0 {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen
}

/// Source side of the minimum cut closest to the source: everything
/// reachable from `s` in the residual network of a maximum flow.
pub fn min_cut_source_set(aux: &AuxiliaryGraph, flow: &Flow) -> Result<BTreeSet<AuxNode>, FlowError> {
    let reach = residual_reachable(aux, flow);
    if reach[aux.sink()] {
        return Err(FlowError::NotMaximum);
    }
    Ok(reach
        .iter()
        .enumerate()
        .filter(|&(_, &r)| r)
        .map(|(idx, _)| aux.node(idx))
        .collect())
}

/// Decomposes an integral flow into vertex-disjoint state paths, one per
/// saturated supply edge, in ascending order of the starting vertex.
pub fn extract_linking(aux: &AuxiliaryGraph, flow: &Flow) -> Linking {
    let mut remaining = flow.per_edge.clone();
    let mut paths = Vec::with_capacity(flow.value());
    let supply_edges: Vec<usize> = aux
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.kind == EdgeKind::Supply)
        .map(|(id, _)| id)
        .collect();

    for start_edge in supply_edges {
        while remaining[start_edge] > 0 {
            remaining[start_edge] -= 1;
            let mut path = Vec::new();
            let mut v = aux.edges()[start_edge].to;
            let mut steps = 0;
            while v != aux.sink() {
                if let AuxNode::In(i) = aux.node(v) {
                    path.push(i);
                }
                let next = aux
                    .arcs(v)
                    .iter()
                    .find(|a| a.forward && remaining[a.edge as usize] > 0)
                    .expect("flow conservation: a unit entering a vertex must leave it");
                remaining[next.edge as usize] -= 1;
                v = next.to as usize;
                steps += 1;
                assert!(steps <= aux.node_count(), "flow walk did not reach the sink");
            }
            paths.push(path);
        }
    }
    Linking::new(paths)
}
