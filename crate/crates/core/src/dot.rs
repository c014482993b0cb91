//! Graphviz export of `G(Σ)`.

use std::fmt::Write;

use crate::control::{NodeClass, NodeClassification};
use crate::system::{Node, SystemGraph};

fn class_style(class: NodeClass) -> &'static str {
    match class {
        NodeClass::Essential => r##"style=filled, fillcolor="#e6550d", penwidth=2"##,
        NodeClass::Useful => r##"style=filled, fillcolor="#fdd0a2""##,
        NodeClass::Useless => r##"style=dashed, fontcolor="#969696", color="#969696""##,
    }
}

/// Renders the graph as a DOT digraph. Inputs are boxes, outputs diamonds,
/// states circles; with a classification, available states are styled by
/// class and carry a `class` tooltip.
pub fn serialize_dot(graph: &SystemGraph, classification: Option<&NodeClassification>) -> String {
    let mut out = String::from("digraph G {\n");
    if graph.node_count() > 0 {
        out.push_str("  rankdir=LR;\n");
    }
    for node in graph.nodes() {
        let shape = match node {
            Node::Input(_) => "box",
            Node::State(_) => "circle",
            Node::Output(_) => "diamond",
        };
        let _ = write!(out, "  {node} [shape={shape}");
        if let (Node::State(i), Some(c)) = (node, classification) {
            if let Some(class) = c.get(i) {
                let _ = write!(out, ", {}, tooltip=\"{class}\"", class_style(class));
            }
        }
        out.push_str("];\n");
    }
    for (u, v) in graph.edges() {
        let _ = writeln!(out, "  {u} -> {v};");
    }
    out.push_str("}\n");
    out
}
