use crate::graph::Digraph;

/// A vertex of the node-split flow network.
///
/// `In(i)` and `Out(i)` are the entry and exit halves of state vertex `i`
/// (0-based); every unit of flow through `i` crosses the edge `In(i) -> Out(i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AuxNode {
    Source,
    In(usize),
    Out(usize),
    Sink,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    /// `In(i) -> Out(i)`, capacity one.
    Split,
    /// `Out(i) -> In(j)` for a graph edge `i -> j`.
    Transfer,
    /// `Source -> In(a)` for an available vertex `a`.
    Supply,
    /// `Out(t) -> Sink` for a target vertex `t`.
    Demand,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuxEdge {
    pub from: usize,
    pub to: usize,
    pub capacity: u32,
    pub kind: EdgeKind,
}

/// One residual arc leaving a vertex: `forward` arcs follow an edge, the
/// others traverse it backwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct ResidualArc {
    pub to: u32,
    pub edge: u32,
    pub forward: bool,
}

/// Node-split flow network with a dummy source and sink.
///
/// Vertex numbering: source `0`, `In(i) = 2i + 1`, `Out(i) = 2i + 2`,
/// sink `2n + 1`. Residual arcs of every vertex are kept sorted by head
/// index so that breadth-first search visits neighbours in ascending order.
#[derive(Debug, Clone)]
pub struct AuxiliaryGraph {
    state_count: usize,
    infinite: u32,
    edges: Vec<AuxEdge>,
    arcs: Vec<Vec<ResidualArc>>,
}

impl AuxiliaryGraph {
    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn node_count(&self) -> usize {
        2 * self.state_count + 2
    }

    pub fn edges(&self) -> &[AuxEdge] {
        &self.edges
    }

    /// Sentinel used for "infinite" capacity; strictly larger than any
    /// feasible flow value.
    pub fn infinite_capacity(&self) -> u32 {
        self.infinite
    }

    pub fn source(&self) -> usize {
        0
    }

    pub fn sink(&self) -> usize {
        2 * self.state_count + 1
    }

    pub fn index(&self, node: AuxNode) -> usize {
        match node {
            AuxNode::Source => 0,
            AuxNode::In(i) => 2 * i + 1,
            AuxNode::Out(i) => 2 * i + 2,
            AuxNode::Sink => self.sink(),
        }
    }

    pub fn node(&self, index: usize) -> AuxNode {
        if index == 0 {
            AuxNode::Source
        } else if index == self.sink() {
            AuxNode::Sink
        } else if index % 2 == 1 {
            AuxNode::In((index - 1) / 2)
        } else {
            AuxNode::Out((index - 2) / 2)
        }
    }

    /// Id of the edge `from -> to`, if present.
    pub fn find_edge(&self, from: AuxNode, to: AuxNode) -> Option<usize> {
        let (u, v) = (self.index(from), self.index(to));
        let arcs = &self.arcs[u];
        let start = arcs.partition_point(|a| (a.to as usize) < v);
        arcs[start..]
            .iter()
            .take_while(|a| a.to as usize == v)
            .find(|a| a.forward)
            .map(|a| a.edge as usize)
    }

    pub(crate) fn arcs(&self, vertex: usize) -> &[ResidualArc] {
        &self.arcs[vertex]
    }
}

/// Builds the node-split network for `g` with supplies on `available` and
/// demands on `targets` (0-based vertex ids).
///
/// Edge order: the `n` split edges, then one transfer edge per edge of `g`
/// in ascending order, then supply edges, then demand edges. The caller is
/// expected to have applied [`super::preprocess_direct`] first.
pub fn build_auxiliary_graph(g: &Digraph, available: &[usize], targets: &[usize]) -> AuxiliaryGraph {
    let n = g.node_count();
    let available = sorted_set(available);
    let targets = sorted_set(targets);
    let infinite = u32::try_from(targets.len() + 1).expect("target count fits in u32");
    let sink = 2 * n + 1;

    let mut edges = Vec::with_capacity(n + g.edge_count() + available.len() + targets.len());
    edges.extend((0..n).map(|i| AuxEdge {
        from: 2 * i + 1,
        to: 2 * i + 2,
        capacity: 1,
        kind: EdgeKind::Split,
    }));
    edges.extend(g.edges().map(|(i, j)| AuxEdge {
        from: 2 * i + 2,
        to: 2 * j + 1,
        capacity: infinite,
        kind: EdgeKind::Transfer,
    }));
    edges.extend(available.iter().map(|&a| AuxEdge {
        from: 0,
        to: 2 * a + 1,
        capacity: infinite,
        kind: EdgeKind::Supply,
    }));
    edges.extend(targets.iter().map(|&t| AuxEdge {
        from: 2 * t + 2,
        to: sink,
        capacity: infinite,
        kind: EdgeKind::Demand,
    }));

    let mut arcs = vec![Vec::new(); 2 * n + 2];
    for (id, e) in edges.iter().enumerate() {
        let id = id as u32;
        arcs[e.from].push(ResidualArc {
            to: e.to as u32,
            edge: id,
            forward: true,
        });
        arcs[e.to].push(ResidualArc {
            to: e.from as u32,
            edge: id,
            forward: false,
        });
    }
    for list in &mut arcs {
        list.sort_unstable_by_key(|a| (a.to, a.edge));
    }

    AuxiliaryGraph {
        state_count: n,
        infinite,
        edges,
        arcs,
    }
}

pub(crate) fn sorted_set(nodes: &[usize]) -> Vec<usize> {
    let mut v = nodes.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}
