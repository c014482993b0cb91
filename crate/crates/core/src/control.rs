//! Controllability decisions on structured systems.
//!
//! Every function here takes and returns 1-based state labels.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::ControlError;
use crate::flow::{self, build_auxiliary_graph, preprocess_direct, Flow, LinkingAnalysis};
use crate::graph::Digraph;
use crate::matching::maximum_matching;
use crate::system::{build_io_graph, Node, StructuredSystem};

fn to_zero_based(sys: &StructuredSystem, nodes: &[usize]) -> Result<Vec<usize>, ControlError> {
    let mut out = Vec::with_capacity(nodes.len());
    for &v in nodes {
        if v == 0 || v > sys.n() {
            return Err(ControlError::NodeOutOfRange { node: v, n: sys.n() });
        }
        out.push(v - 1);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FtcVerdict {
    pub controllable: bool,
    pub linking_size: usize,
    pub required: usize,
    /// A linking of size `required` certifying controllability.
    pub witness: Option<Vec<Vec<usize>>>,
}

/// Generic functional target controllability of `(A, B_S, C_T)`: holds
/// exactly when `|T|` vertex-disjoint paths lead from `S` to `T`.
pub fn is_functional_target_controllable(
    sys: &StructuredSystem,
    steering: &[usize],
    targets: &[usize],
) -> Result<FtcVerdict, ControlError> {
    let s = to_zero_based(sys, steering)?;
    let t = to_zero_based(sys, targets)?;
    let analysis = LinkingAnalysis::new(&sys.state_digraph(), &s, &t);
    let size = analysis.size();
    let controllable = size == t.len();
    Ok(FtcVerdict {
        controllable,
        linking_size: size,
        required: t.len(),
        witness: controllable.then(|| analysis.linking().labelled()),
    })
}

/// Maximum input-output linking in `G(Σ)`, with inputs and outputs as given
/// by [`StructuredSystem::input_columns`] and [`StructuredSystem::output_rows`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IoLinking {
    pub size: usize,
    pub outputs: usize,
    pub paths: Vec<Vec<Node>>,
}

pub fn max_io_linking(sys: &StructuredSystem) -> IoLinking {
    let graph = build_io_graph(sys);
    let inputs: Vec<usize> = (1..=graph.input_count())
        .map(|k| graph.vertex(Node::Input(k)))
        .collect();
    let outputs: Vec<usize> = (1..=graph.output_count())
        .map(|l| graph.vertex(Node::Output(l)))
        .collect();
    let linking = flow::max_linking(&graph.to_digraph(), &inputs, &outputs);
    IoLinking {
        size: linking.len(),
        outputs: outputs.len(),
        paths: linking
            .paths()
            .iter()
            .map(|p| p.iter().map(|&v| graph.node_at(v)).collect())
            .collect(),
    }
}

/// Generic functional output controllability: the maximum input-output
/// linking covers every output.
pub fn is_functional_output_controllable(sys: &StructuredSystem) -> bool {
    let io = max_io_linking(sys);
    io.size == io.outputs
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StartPreference {
    /// Start vertices of the linking found by the deterministic flow.
    #[default]
    Canonical,
    /// Lexicographically smallest minimum steering set.
    LowestIndex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MtcpSolution {
    /// Ascending steering labels, exactly one per target.
    pub steering: Vec<usize>,
    /// Vertex-disjoint paths, one from each steering node to a target.
    pub witness: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MtcpOutcome {
    Solved(MtcpSolution),
    Unsolvable { achieved: usize, required: usize },
}

impl MtcpOutcome {
    pub fn solution(&self) -> Option<&MtcpSolution> {
        match self {
            MtcpOutcome::Solved(s) => Some(s),
            MtcpOutcome::Unsolvable { .. } => None,
        }
    }
}

/// Smallest steering set within the available nodes that makes the targets
/// functionally controllable.
pub fn solve_mtcp(sys: &StructuredSystem) -> MtcpOutcome {
    solve_mtcp_with(sys, StartPreference::Canonical)
}

pub fn solve_mtcp_with(sys: &StructuredSystem, preference: StartPreference) -> MtcpOutcome {
    let g = sys.state_digraph();
    let available: Vec<usize> = sys.available().iter().map(|v| v - 1).collect();
    let targets: Vec<usize> = sys.targets().iter().map(|v| v - 1).collect();
    let required = targets.len();
    let analysis = LinkingAnalysis::new(&g, &available, &targets);
    if analysis.size() < required {
        return MtcpOutcome::Unsolvable {
            achieved: analysis.size(),
            required,
        };
    }
    let linking = match preference {
        StartPreference::Canonical => analysis.linking(),
        StartPreference::LowestIndex => {
            // Greedy over ascending labels: linkable start sets form a matroid,
            // so this yields the lexicographically smallest basis.
            let mut chosen: Vec<usize> = Vec::with_capacity(required);
            for &a in &available {
                if chosen.len() == required {
                    break;
                }
                chosen.push(a);
                if flow::max_linking_size(&g, &chosen, &targets) < chosen.len() {
                    chosen.pop();
                }
            }
            flow::max_linking(&g, &chosen, &targets)
        }
    };
    let mut steering: Vec<usize> = linking.start_nodes().iter().map(|v| v + 1).collect();
    steering.sort_unstable();
    MtcpOutcome::Solved(MtcpSolution {
        steering,
        witness: linking.labelled(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeClass {
    /// In every admissible steering set.
    Essential,
    /// In some admissible set where it cannot be dropped, but not in all.
    Useful,
    /// Can always be dropped: no path to any target.
    Useless,
}

impl std::fmt::Display for NodeClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            NodeClass::Essential => "essential",
            NodeClass::Useful => "useful",
            NodeClass::Useless => "useless",
        })
    }
}

/// Label of every available node, in ascending node order. Serializes as a
/// JSON object `{"x1": "essential", ...}` preserving that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeClassification {
    labels: Vec<(usize, NodeClass)>,
}

impl NodeClassification {
    pub fn get(&self, node: usize) -> Option<NodeClass> {
        self.labels
            .binary_search_by_key(&node, |&(v, _)| v)
            .ok()
            .map(|i| self.labels[i].1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, NodeClass)> + '_ {
        self.labels.iter().copied()
    }

    pub fn with_class(&self, class: NodeClass) -> Vec<usize> {
        self.iter().filter(|&(_, c)| c == class).map(|(v, _)| v).collect()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

impl Serialize for NodeClassification {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.labels.len()))?;
        for (v, class) in &self.labels {
            map.serialize_entry(&Node::State(*v).to_string(), class)?;
        }
        map.end()
    }
}

/// Labels each available node as essential, useful or useless.
///
/// A node is useless iff no target is reachable from it. Essential nodes
/// lie in the minimal left separator of `(A, T)`; a separator node is
/// confirmed essential only if the remaining available nodes cannot reach
/// full linking size on their own, since their paths may route through it.
pub fn classify_nodes(sys: &StructuredSystem) -> Result<NodeClassification, ControlError> {
    let g = sys.state_digraph();
    let available: Vec<usize> = sys.available().iter().map(|v| v - 1).collect();
    let targets: Vec<usize> = sys.targets().iter().map(|v| v - 1).collect();
    let analysis = LinkingAnalysis::new(&g, &available, &targets);
    if analysis.size() < targets.len() {
        return Err(ControlError::Unsolvable {
            achieved: analysis.size(),
            required: targets.len(),
        });
    }
    let separator = analysis.separator();
    let linking = analysis.linking();
    let reaches_target = g.reaching(targets.iter().copied());

    let labels = available
        .iter()
        .map(|&a| {
            let class = if separator.contains(a) && !replaceable(&g, &available, &targets, a, linking.paths()) {
                NodeClass::Essential
            } else if reaches_target[a] {
                NodeClass::Useful
            } else {
                NodeClass::Useless
            };
            (a + 1, class)
        })
        .collect();
    Ok(NodeClassification { labels })
}

/// Whether `available \ {node}` still admits a linking of full size.
/// Starts from the given maximum linking minus the path through `node` and
/// tries one augmentation.
fn replaceable(g: &Digraph, available: &[usize], targets: &[usize], node: usize, paths: &[Vec<usize>]) -> bool {
    let rest: Vec<usize> = available.iter().copied().filter(|&v| v != node).collect();
    let kept: Vec<Vec<usize>> = paths
        .iter()
        .filter(|p| !p.contains(&node))
        .cloned()
        .collect();
    let direct = preprocess_direct(g, &rest, targets);
    let aux = build_auxiliary_graph(&direct, &rest, targets);
    let flow = flow::max_flow_from(&aux, Flow::from_paths(&aux, &kept));
    flow.value() == paths.len()
}

/// Disjoint stems (input-rooted paths) and cycles covering every state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cover {
    pub stems: Vec<Vec<Node>>,
    pub cycles: Vec<Vec<Node>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructuralReport {
    pub controllable: bool,
    /// Every state is reachable from some input.
    pub reachable: bool,
    pub unreachable: Vec<usize>,
    /// Generic rank of `[A B]`.
    pub generic_rank: usize,
    pub state_count: usize,
    /// States left unmatched by one maximum matching of `[A B]`.
    pub uncovered: Vec<usize>,
    pub cover: Option<Cover>,
}

/// Structural (point-wise, full-state) controllability of `(A, B)` with `B`
/// from [`StructuredSystem::input_columns`]: input-connectedness plus
/// generic rank `n` of `[A B]`, the latter via maximum matching.
pub fn is_structurally_controllable(sys: &StructuredSystem) -> StructuralReport {
    let n = sys.n();
    let inputs = sys.input_columns();
    let m = inputs.len();

    // reachability from all inputs at once
    let g = sys.state_digraph();
    let seeds = inputs.iter().flatten().map(|&j| j - 1);
    let reached = g.reachable_from(seeds);
    let unreachable: Vec<usize> = (0..n).filter(|&i| !reached[i]).map(|i| i + 1).collect();

    // rows: states; columns: states 0..n then inputs n..n+m
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(i, j) in sys.edges() {
        adj[j - 1].push(i - 1);
    }
    for (k, col) in inputs.iter().enumerate() {
        for &j in col {
            adj[j - 1].push(n + k);
        }
    }
    let matching = maximum_matching(&adj, n + m);
    let generic_rank = matching.size();
    let uncovered: Vec<usize> = (0..n)
        .filter(|&j| matching.left_match[j].is_none())
        .map(|j| j + 1)
        .collect();

    let reachable = unreachable.is_empty();
    let controllable = reachable && generic_rank == n;
    let cover = (generic_rank == n).then(|| {
        // each state row is fed by its matched column; follow the feeds
        let mut next_state: Vec<Option<usize>> = vec![None; n];
        for (row, col) in matching.left_match.iter().enumerate() {
            if let Some(col) = *col {
                if col < n {
                    next_state[col] = Some(row);
                }
            }
        }
        let mut covered = vec![false; n];
        let mut stems = Vec::new();
        for k in 0..m {
            if let Some(first) = matching.right_match[n + k] {
                let mut stem = vec![Node::Input(k + 1)];
                let mut v = Some(first);
                while let Some(x) = v {
                    covered[x] = true;
                    stem.push(Node::State(x + 1));
                    v = next_state[x];
                }
                stems.push(stem);
            }
        }
        let mut cycles = Vec::new();
        for start in 0..n {
            if covered[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !covered[x] {
                covered[x] = true;
                cycle.push(Node::State(x + 1));
                x = next_state[x].expect("perfect matching closes every non-stem chain");
            }
            cycles.push(cycle);
        }
        Cover { stems, cycles }
    });

    StructuralReport {
        controllable,
        reachable,
        unreachable,
        generic_rank,
        state_count: n,
        uncovered,
        cover,
    }
}

/// Combined JSON result schema shared by the command-line subcommands.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ControlReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solvable: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steering_set: Option<Vec<Node>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_paths: Option<Vec<Vec<Node>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<NodeClassification>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structural_controllability: Option<StructuralSummary>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructuralSummary {
    pub reachable: bool,
    pub generic_rank: usize,
}

impl From<&StructuralReport> for StructuralSummary {
    fn from(r: &StructuralReport) -> Self {
        StructuralSummary {
            reachable: r.reachable,
            generic_rank: r.generic_rank,
        }
    }
}

pub fn state_nodes(labels: &[usize]) -> Vec<Node> {
    labels.iter().map(|&v| Node::State(v)).collect()
}

pub fn state_paths(paths: &[Vec<usize>]) -> Vec<Vec<Node>> {
    paths.iter().map(|p| state_nodes(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn nine_node_functional_and_structural() {
        let sys = fixtures::nine_node_system();
        let io = max_io_linking(&sys);
        assert_eq!(io.size, 2);
        assert!(is_functional_output_controllable(&sys));
        let verdict = is_functional_target_controllable(&sys, &[4, 7, 6, 9], &[8, 9]).unwrap();
        assert!(verdict.controllable);
        assert_eq!(verdict.witness.unwrap().len(), 2);
        let report = is_structurally_controllable(&sys);
        assert!(report.controllable);
        let cover = report.cover.unwrap();
        let covered: usize = cover.stems.iter().map(|s| s.len() - 1).sum::<usize>()
            + cover.cycles.iter().map(Vec::len).sum::<usize>();
        assert_eq!(covered, 9);
    }

    #[test]
    fn chain_with_branch_is_limited_to_one_target() {
        let sys = fixtures::chain_with_branch_system();
        let v = is_functional_target_controllable(&sys, &[1], &[3, 4]).unwrap();
        assert!(!v.controllable);
        assert_eq!((v.linking_size, v.required), (1, 2));
        assert!(v.witness.is_none());
        let report = is_structurally_controllable(&sys);
        assert!(!report.controllable);
        assert!(report.reachable);
        assert_eq!(report.generic_rank, 3);
        assert_eq!(report.uncovered.len(), 1);
        assert!(report.cover.is_none());
    }

    #[test]
    fn steering_equal_to_targets_is_controllable() {
        let sys = fixtures::chain_with_branch_system();
        let v = is_functional_target_controllable(&sys, &[2, 4], &[2, 4]).unwrap();
        assert!(v.controllable);
        assert_eq!(v.witness.unwrap(), vec![vec![2], vec![4]]);
    }

    #[test]
    fn out_of_range_steering_rejected() {
        let sys = fixtures::chain_with_branch_system();
        assert_eq!(
            is_functional_target_controllable(&sys, &[5], &[3]),
            Err(ControlError::NodeOutOfRange { node: 5, n: 4 })
        );
    }

    #[test]
    fn target_selection_mtcp() {
        let sys = fixtures::target_selection_system();
        let sol = solve_mtcp(&sys);
        let sol = sol.solution().unwrap();
        assert_eq!(sol.steering, vec![1, 2]);
        assert_eq!(sol.witness.len(), 2);
        let lowest = solve_mtcp_with(&sys, StartPreference::LowestIndex);
        assert_eq!(lowest.solution().unwrap().steering, vec![1, 2]);
    }

    #[test]
    fn mtcp_with_available_equal_targets() {
        let sys = fixtures::target_selection_system()
            .with_available([8, 9])
            .unwrap();
        assert_eq!(solve_mtcp(&sys).solution().unwrap().steering, vec![8, 9]);
    }

    #[test]
    fn mtcp_unsolvable_from_dead_end() {
        let sys = fixtures::target_selection_system().with_available([3]).unwrap();
        assert_eq!(
            solve_mtcp(&sys),
            MtcpOutcome::Unsolvable {
                achieved: 0,
                required: 2
            }
        );
    }

    #[test]
    fn target_selection_classification() {
        let sys = fixtures::target_selection_system();
        let c = classify_nodes(&sys).unwrap();
        assert_eq!(c.get(1), Some(NodeClass::Essential));
        assert_eq!(c.get(2), Some(NodeClass::Useful));
        assert_eq!(c.get(3), Some(NodeClass::Useless));
        assert_eq!(c.get(4), Some(NodeClass::Useful));
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"x1":"essential","x2":"useful","x3":"useless","x4":"useful"}"#
        );
    }

    #[test]
    fn singleton_is_essential() {
        let sys = StructuredSystem::new(1, [], [1], [1]).unwrap();
        assert_eq!(classify_nodes(&sys).unwrap().get(1), Some(NodeClass::Essential));
    }

    #[test]
    fn isolated_extra_node_is_useless() {
        let base = fixtures::target_selection_system();
        let sys = StructuredSystem::new(10, base.edges().iter().copied(), [1, 2, 3, 4, 10], [8, 9]).unwrap();
        let c = classify_nodes(&sys).unwrap();
        assert_eq!(c.get(10), Some(NodeClass::Useless));
        assert_eq!(c.get(1), Some(NodeClass::Essential));
    }

    #[test]
    fn separator_node_bypassed_through_itself_is_not_essential() {
        // x1 -> x2 -> x3 with A = {1, 2}, T = {3}: x2 sits in the left
        // separator, yet steering x1 alone drives x3 through x2.
        let sys = StructuredSystem::new(3, [(1, 2), (2, 3)], [1, 2], [3]).unwrap();
        let c = classify_nodes(&sys).unwrap();
        assert_eq!(c.get(2), Some(NodeClass::Useful));
        assert_eq!(c.get(1), Some(NodeClass::Useful));
        assert!(is_functional_target_controllable(&sys, &[1], &[3]).unwrap().controllable);
    }

    #[test]
    fn classification_requires_solvability() {
        let sys = fixtures::target_selection_system().with_available([3]).unwrap();
        assert_eq!(
            classify_nodes(&sys),
            Err(ControlError::Unsolvable {
                achieved: 0,
                required: 2
            })
        );
    }

    #[test]
    fn single_state_single_input() {
        let sys = StructuredSystem::new(1, [], [], [])
            .unwrap()
            .with_inputs(vec![vec![1]])
            .unwrap();
        let r = is_structurally_controllable(&sys);
        assert!(r.controllable);
        assert_eq!(r.cover.unwrap().stems, vec![vec![Node::Input(1), Node::State(1)]]);
    }

    #[test]
    fn cycle_cover_reported() {
        // u1 -> x1, x2 <-> x3 cycle fed from x1
        let sys = StructuredSystem::new(3, [(1, 2), (2, 3), (3, 2)], [], [])
            .unwrap()
            .with_inputs(vec![vec![1]])
            .unwrap();
        let r = is_structurally_controllable(&sys);
        assert!(r.controllable);
        let cover = r.cover.unwrap();
        assert_eq!(cover.stems.len(), 1);
        let total: usize = cover.stems[0].len() - 1 + cover.cycles.iter().map(Vec::len).sum::<usize>();
        assert_eq!(total, 3);
    }

    #[test]
    fn unreachable_states_reported() {
        let sys = StructuredSystem::new(3, [(1, 2), (3, 3)], [], [])
            .unwrap()
            .with_inputs(vec![vec![1]])
            .unwrap();
        let r = is_structurally_controllable(&sys);
        assert!(!r.reachable);
        assert_eq!(r.unreachable, vec![3]);
        assert!(!r.controllable);
    }
}
