//! Structured systems: the zero/nonzero pattern of `A` (and optionally of
//! `B` and `C`) together with the available and target node sets.
//!
//! State nodes are labelled `1..=n` everywhere in this module and in every
//! user-facing result. The combinatorial kernels in [`crate::flow`] work on
//! 0-based vertex ids; conversion happens at the boundary.
//!
//! # Text format
//!
//! ```text
//! # comment
//! n 4
//! edge 1 2
//! edge 2 3
//! edge 1 4
//! available 1
//! targets 3 4
//! input 1 1        # optional explicit input column 1 acting on x1
//! output 1 3       # optional explicit output row 1 reading x3
//! ```
//!
//! A JSON object with the keys `n`, `edge`, `available`, `targets`, `input`
//! and `output` is accepted as well.

use std::borrow::Cow;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::ModelError;
use crate::graph::Digraph;

/// A node of the system graph, 1-based within its kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Input(usize),
    State(usize),
    Output(usize),
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::State(i) => write!(f, "x{i}"),
            Node::Input(k) => write!(f, "u{k}"),
            Node::Output(l) => write!(f, "y{l}"),
        }
    }
}

impl Serialize for Node {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuredSystem {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    available: Vec<usize>,
    targets: Vec<usize>,
    inputs: Vec<Vec<usize>>,
    outputs: Vec<Vec<usize>>,
}

impl StructuredSystem {
    /// Validates and builds a system. Edges are `(i, j)` for `x_i -> x_j`;
    /// repeated edges collapse. `available` and `targets` must not contain
    /// duplicates and are stored in ascending order.
    pub fn new<E, A, T>(n: usize, edges: E, available: A, targets: T) -> Result<Self, ModelError>
    where
        E: IntoIterator<Item = (usize, usize)>,
        A: IntoIterator<Item = usize>,
        T: IntoIterator<Item = usize>,
    {
        if n == 0 {
            return Err(ModelError::validation("node count must be positive"));
        }
        let mut edge_set = BTreeSet::new();
        for (i, j) in edges {
            check_index(n, i, "edge")?;
            check_index(n, j, "edge")?;
            edge_set.insert((i, j));
        }
        let available = node_set(n, available, "available")?;
        let targets = node_set(n, targets, "targets")?;
        Ok(StructuredSystem {
            n,
            edges: edge_set,
            available,
            targets,
            inputs: Vec::new(),
            outputs: Vec::new(),
        })
    }

    /// Attaches an explicit input pattern: column `k` lists the states
    /// driven by input `u_{k+1}`.
    pub fn with_inputs(mut self, columns: Vec<Vec<usize>>) -> Result<Self, ModelError> {
        self.inputs = columns
            .into_iter()
            .enumerate()
            .map(|(k, col)| node_set(self.n, col, &format!("input {}", k + 1)))
            .collect::<Result<_, _>>()?;
        Ok(self)
    }

    /// Attaches an explicit output pattern: row `l` lists the states read by
    /// output `y_{l+1}`.
    pub fn with_outputs(mut self, rows: Vec<Vec<usize>>) -> Result<Self, ModelError> {
        self.outputs = rows
            .into_iter()
            .enumerate()
            .map(|(l, row)| node_set(self.n, row, &format!("output {}", l + 1)))
            .collect::<Result<_, _>>()?;
        Ok(self)
    }

    pub fn with_available(mut self, available: impl IntoIterator<Item = usize>) -> Result<Self, ModelError> {
        self.available = node_set(self.n, available, "available")?;
        Ok(self)
    }

    pub fn with_targets(mut self, targets: impl IntoIterator<Item = usize>) -> Result<Self, ModelError> {
        self.targets = node_set(self.n, targets, "targets")?;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn available(&self) -> &[usize] {
        &self.available
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn explicit_inputs(&self) -> &[Vec<usize>] {
        &self.inputs
    }

    pub fn explicit_outputs(&self) -> &[Vec<usize>] {
        &self.outputs
    }

    /// Input pattern used for numeric instances and input-output linkings:
    /// the explicit columns when present, otherwise one dedicated input per
    /// available node.
    pub fn input_columns(&self) -> Cow<'_, [Vec<usize>]> {
        if self.inputs.is_empty() {
            Cow::Owned(self.available.iter().map(|&a| vec![a]).collect())
        } else {
            Cow::Borrowed(&self.inputs)
        }
    }

    /// Output pattern: the explicit rows when present, otherwise one output
    /// per target node.
    pub fn output_rows(&self) -> Cow<'_, [Vec<usize>]> {
        if self.outputs.is_empty() {
            Cow::Owned(self.targets.iter().map(|&t| vec![t]).collect())
        } else {
            Cow::Borrowed(&self.outputs)
        }
    }

    /// The state graph `G(A)` on 0-based vertices.
    pub fn state_digraph(&self) -> Digraph {
        Digraph::from_edges(self.n, self.edges.iter().map(|&(i, j)| (i - 1, j - 1)))
    }

    /// Checks that every label lies in `1..=n`.
    pub fn check_nodes(&self, nodes: &[usize]) -> Result<(), ModelError> {
        nodes.iter().try_for_each(|&v| check_index(self.n, v, "node"))
    }

    /// Canonical text form; `parse_system(&sys.to_text()) == Ok(sys)`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n {}", self.n);
        for (i, j) in &self.edges {
            let _ = writeln!(out, "edge {i} {j}");
        }
        let _ = writeln!(out, "available{}", join_prefixed(&self.available));
        let _ = writeln!(out, "targets{}", join_prefixed(&self.targets));
        for (k, col) in self.inputs.iter().enumerate() {
            let _ = writeln!(out, "input {}{}", k + 1, join_prefixed(col));
        }
        for (l, row) in self.outputs.iter().enumerate() {
            let _ = writeln!(out, "output {}{}", l + 1, join_prefixed(row));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let file = SystemFile {
            n: self.n,
            edge: self.edges.iter().map(|&(i, j)| [i, j]).collect(),
            available: self.available.clone(),
            targets: self.targets.clone(),
            input: self.inputs.clone(),
            output: self.outputs.clone(),
        };
        serde_json::to_string_pretty(&file).expect("system serializes")
    }
}

fn join_prefixed(nodes: &[usize]) -> String {
    nodes.iter().map(|v| format!(" {v}")).collect()
}

fn check_index(n: usize, v: usize, what: &str) -> Result<(), ModelError> {
    if v == 0 || v > n {
        Err(ModelError::validation(format!(
            "{what}: node index {v} out of range 1..={n}"
        )))
    } else {
        Ok(())
    }
}

fn node_set(n: usize, nodes: impl IntoIterator<Item = usize>, what: &str) -> Result<Vec<usize>, ModelError> {
    let mut seen = BTreeSet::new();
    for v in nodes {
        check_index(n, v, what)?;
        if !seen.insert(v) {
            return Err(ModelError::validation(format!("{what}: duplicate node {v}")));
        }
    }
    Ok(seen.into_iter().collect())
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemFile {
    n: usize,
    #[serde(default, alias = "edges")]
    edge: Vec<[usize; 2]>,
    #[serde(default)]
    available: Vec<usize>,
    #[serde(default)]
    targets: Vec<usize>,
    #[serde(default, alias = "inputs", skip_serializing_if = "Vec::is_empty")]
    input: Vec<Vec<usize>>,
    #[serde(default, alias = "outputs", skip_serializing_if = "Vec::is_empty")]
    output: Vec<Vec<usize>>,
}

/// Parses either the line format or its JSON equivalent (detected by a
/// leading `{`).
pub fn parse_system(text: &str) -> Result<StructuredSystem, ModelError> {
    if text.trim_start().starts_with('{') {
        parse_system_json(text)
    } else {
        parse_system_text(text)
    }
}

pub fn parse_system_json(text: &str) -> Result<StructuredSystem, ModelError> {
    let file: SystemFile = serde_json::from_str(text).map_err(|e| ModelError::Json(e.to_string()))?;
    StructuredSystem::new(
        file.n,
        file.edge.iter().map(|&[i, j]| (i, j)),
        file.available,
        file.targets,
    )?
    .with_inputs(file.input)?
    .with_outputs(file.output)
}

pub fn parse_system_text(text: &str) -> Result<StructuredSystem, ModelError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut available: Option<Vec<usize>> = None;
    let mut targets: Option<Vec<usize>> = None;
    let mut inputs: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut outputs: BTreeMap<usize, Vec<usize>> = BTreeMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens: Vec<&str> = line.split_whitespace().collect();
        // `n=9` style
        if let Some((key, rest)) = tokens[0].split_once('=') {
            let mut split = vec![key];
            if !rest.is_empty() {
                split.push(rest);
            }
            split.extend_from_slice(&tokens[1..]);
            tokens = split;
        }
        let keyword = tokens[0];
        let args = tokens[1..]
            .iter()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| ModelError::syntax(line_no, format!("expected a non-negative integer, found `{t}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;

        if n.is_none() && keyword != "n" {
            return Err(ModelError::syntax(line_no, "the first statement must be `n <count>`"));
        }
        match keyword {
            "n" => {
                if n.is_some() {
                    return Err(ModelError::syntax(line_no, "node count given twice"));
                }
                match args.as_slice() {
                    [count] => n = Some(*count),
                    _ => return Err(ModelError::syntax(line_no, "`n` takes exactly one integer")),
                }
            }
            "edge" => match args.as_slice() {
                [i, j] => edges.push((*i, *j)),
                _ => return Err(ModelError::syntax(line_no, "`edge` takes exactly two node indices")),
            },
            "available" => {
                if available.replace(args).is_some() {
                    return Err(ModelError::syntax(line_no, "`available` given twice"));
                }
            }
            "targets" => {
                if targets.replace(args).is_some() {
                    return Err(ModelError::syntax(line_no, "`targets` given twice"));
                }
            }
            "input" | "output" => {
                let Some((&k, nodes)) = args.split_first() else {
                    return Err(ModelError::syntax(line_no, format!("`{keyword}` needs an index")));
                };
                if k == 0 {
                    return Err(ModelError::syntax(line_no, format!("`{keyword}` indices start at 1")));
                }
                let map = if keyword == "input" { &mut inputs } else { &mut outputs };
                if map.insert(k, nodes.to_vec()).is_some() {
                    return Err(ModelError::validation(format!("{keyword} {k} given twice")));
                }
            }
            other => return Err(ModelError::syntax(line_no, format!("unknown keyword `{other}`"))),
        }
    }

    let n = n.ok_or_else(|| ModelError::syntax(text.lines().count().max(1), "missing `n <count>`"))?;
    let inputs = contiguous(inputs, "input")?;
    let outputs = contiguous(outputs, "output")?;
    StructuredSystem::new(n, edges, available.unwrap_or_default(), targets.unwrap_or_default())?
        .with_inputs(inputs)?
        .with_outputs(outputs)
}

fn contiguous(map: BTreeMap<usize, Vec<usize>>, what: &str) -> Result<Vec<Vec<usize>>, ModelError> {
    let count = map.len();
    if let Some((&last, _)) = map.iter().next_back() {
        if last != count {
            return Err(ModelError::validation(format!(
                "{what} indices must be contiguous from 1, highest is {last} but only {count} given"
            )));
        }
    }
    Ok(map.into_values().collect())
}

/// Directed graph `G(Σ)` over state, input and output nodes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SystemGraph {
    states: usize,
    inputs: usize,
    outputs: usize,
    edges: Vec<(Node, Node)>,
}

impl SystemGraph {
    pub fn state_count(&self) -> usize {
        self.states
    }

    pub fn input_count(&self) -> usize {
        self.inputs
    }

    pub fn output_count(&self) -> usize {
        self.outputs
    }

    pub fn node_count(&self) -> usize {
        self.states + self.inputs + self.outputs
    }

    /// Inputs first, then states, then outputs.
    pub fn nodes(&self) -> impl Iterator<Item = Node> + '_ {
        (1..=self.inputs)
            .map(Node::Input)
            .chain((1..=self.states).map(Node::State))
            .chain((1..=self.outputs).map(Node::Output))
    }

    pub fn edges(&self) -> &[(Node, Node)] {
        &self.edges
    }

    /// 0-based vertex id used by [`SystemGraph::to_digraph`]: states occupy
    /// `0..n`, inputs `n..n+m`, outputs `n+m..n+m+p`.
    pub fn vertex(&self, node: Node) -> usize {
        match node {
            Node::State(i) => i - 1,
            Node::Input(k) => self.states + k - 1,
            Node::Output(l) => self.states + self.inputs + l - 1,
        }
    }

    pub fn node_at(&self, vertex: usize) -> Node {
        if vertex < self.states {
            Node::State(vertex + 1)
        } else if vertex < self.states + self.inputs {
            Node::Input(vertex - self.states + 1)
        } else {
            Node::Output(vertex - self.states - self.inputs + 1)
        }
    }

    pub fn to_digraph(&self) -> Digraph {
        Digraph::from_edges(
            self.node_count(),
            self.edges.iter().map(|&(u, v)| (self.vertex(u), self.vertex(v))),
        )
    }
}

/// Builds `G(Σ)`: `x_i -> x_j` for each state edge, `u_k -> x_j` for each
/// entry of an explicit input column and `x_j -> y_l` for each entry of an
/// explicit output row.
pub fn build_graph(sys: &StructuredSystem) -> SystemGraph {
    let mut edges: Vec<(Node, Node)> = sys
        .edges()
        .iter()
        .map(|&(i, j)| (Node::State(i), Node::State(j)))
        .collect();
    for (k, col) in sys.explicit_inputs().iter().enumerate() {
        edges.extend(col.iter().map(|&j| (Node::Input(k + 1), Node::State(j))));
    }
    for (l, row) in sys.explicit_outputs().iter().enumerate() {
        edges.extend(row.iter().map(|&j| (Node::State(j), Node::Output(l + 1))));
    }
    SystemGraph {
        states: sys.n(),
        inputs: sys.explicit_inputs().len(),
        outputs: sys.explicit_outputs().len(),
        edges,
    }
}

/// Like [`build_graph`], but with the implicit patterns from
/// [`StructuredSystem::input_columns`] and [`StructuredSystem::output_rows`].
pub fn build_io_graph(sys: &StructuredSystem) -> SystemGraph {
    let inputs = sys.input_columns();
    let outputs = sys.output_rows();
    let mut edges: Vec<(Node, Node)> = sys
        .edges()
        .iter()
        .map(|&(i, j)| (Node::State(i), Node::State(j)))
        .collect();
    for (k, col) in inputs.iter().enumerate() {
        edges.extend(col.iter().map(|&j| (Node::Input(k + 1), Node::State(j))));
    }
    for (l, row) in outputs.iter().enumerate() {
        edges.extend(row.iter().map(|&j| (Node::State(j), Node::Output(l + 1))));
    }
    SystemGraph {
        states: sys.n(),
        inputs: inputs.len(),
        outputs: outputs.len(),
        edges,
    }
}
