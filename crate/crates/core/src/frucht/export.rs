use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::FruchtGraph;
use crate::graph::FiniteGraph;

/// `{group, order, L, vertex_count, edge_count}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildManifest {
    pub group: String,
    pub order: usize,
    #[serde(rename = "L")]
    pub code_len: usize,
    pub vertex_count: usize,
    pub edge_count: usize,
}

impl BuildManifest {
    pub fn new(group: impl Into<String>, graph: &FruchtGraph) -> Self {
        BuildManifest {
            group: group.into(),
            order: graph.order(),
            code_len: graph.word_len(),
            vertex_count: graph.graph().vertex_count(),
            edge_count: graph.graph().edge_count(),
        }
    }
}

/// Full JSON export: the manifest plus labelled vertices and edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphExport {
    #[serde(flatten)]
    pub manifest: BuildManifest,
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

impl GraphExport {
    pub fn new(group: impl Into<String>, graph: &FruchtGraph) -> Self {
        let label = |i: usize| graph.vertex(i).to_string();
        GraphExport {
            manifest: BuildManifest::new(group, graph),
            vertices: (0..graph.vertices().len()).map(label).collect(),
            edges: graph.graph().edges().map(|(u, v)| (label(u), label(v))).collect(),
        }
    }
}

/// One `u v` line per edge.
pub fn edge_list(graph: &FiniteGraph, label: impl Fn(usize) -> String) -> String {
    let mut out = String::new();
    for (u, v) in graph.edges() {
        writeln!(out, "{} {}", label(u), label(v)).unwrap();
    }
    out
}

/// An undirected DOT graph; every vertex is declared so isolated ones survive.
pub fn to_dot(name: &str, graph: &FiniteGraph, label: impl Fn(usize) -> String) -> String {
    let mut out = format!("graph \"{name}\" {{\n");
    for v in 0..graph.vertex_count() {
        writeln!(out, "  \"{}\";", label(v)).unwrap();
    }
    for (u, v) in graph.edges() {
        writeln!(out, "  \"{}\" -- \"{}\";", label(u), label(v)).unwrap();
    }
    out.push_str("}\n");
    out
}
