//! Plain directed graph on vertices `0..n` with sorted, deduplicated
//! successor lists. All combinatorial kernels operate on this type.

use std::collections::VecDeque;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Digraph {
    succ: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph {
            succ: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from `(tail, head)` pairs. Parallel edges collapse.
    ///
    /// Panics if an endpoint is `>= n`.
    pub fn from_edges<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut succ = vec![Vec::new(); n];
        for (u, v) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) outside 0..{n}");
            succ[u].push(v);
        }
        for list in &mut succ {
            list.sort_unstable();
            list.dedup();
        }
        Digraph { succ }
    }

    pub fn node_count(&self) -> usize {
        self.succ.len()
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.succ[u].binary_search(&v).is_ok()
    }

    /// Edges in ascending `(tail, head)` order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |&v| (u, v)))
    }

    pub fn reversed(&self) -> Digraph {
        Digraph::from_edges(self.node_count(), self.edges().map(|(u, v)| (v, u)))
    }

    /// Keeps only the edges for which `keep(tail, head)` holds.
    pub fn filter_edges(&self, mut keep: impl FnMut(usize, usize) -> bool) -> Digraph {
        let succ = self
            .succ
            .iter()
            .enumerate()
            .map(|(u, list)| list.iter().copied().filter(|&v| keep(u, v)).collect())
            .collect();
        Digraph { succ }
    }

    /// Marks every vertex reachable from `sources` (sources included).
    pub fn reachable_from(&self, sources: impl IntoIterator<Item = usize>) -> Vec<bool> {
        let mut seen = vec![false; self.node_count()];
        let mut queue = VecDeque::new();
        for s in sources {
            if !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &v in &self.succ[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    /// Marks every vertex from which some vertex of `sinks` can be reached.
    pub fn reaching(&self, sinks: impl IntoIterator<Item = usize>) -> Vec<bool> {
        self.reversed().reachable_from(sinks)
    }
}
