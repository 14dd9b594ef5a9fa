//! Coded asymmetric gadgets.
//!
//! The gadget for a bit sequence `a` lives on `{2, 3, 4, …}`: the spine
//! `2 – 3 – 4`, then for every even `n ≥ 4` a block coding bit
//! `a((n - 4)/2)`: a fork `n – n+1, n – n+2` for a one, a path
//! `n – n+1 – n+2` for a zero.

use serde::Serialize;
use thiserror::Error;

use crate::aut::{enumerate_automorphisms_colored, AutError, DEFAULT_BUDGET};
use crate::codec::{BitOracle, CodeWord};
use crate::graph::FiniteGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("gadget vertices start at 2, got {0}")]
    IndexBelowTwo(u64),
    #[error("code word {0} must end in the terminator bit 0")]
    MissingTerminator(String),
    #[error(transparent)]
    Search(#[from] AutError),
}

/// Adjacency of `lo < hi`, both at least 2, in the gadget coded by `bit`.
pub(crate) fn coded_edge(bit: impl Fn(u64) -> bool, lo: u64, hi: u64) -> bool {
    debug_assert!(2 <= lo && lo < hi);
    match (lo, hi) {
        (2, 3) | (3, 4) => true,
        _ if lo < 4 => false,
        // (n, n+1) belongs to both block shapes.
        _ if hi == lo + 1 && lo.is_multiple_of(2) => true,
        _ if hi == lo + 1 => !bit((lo - 5) / 2),
        _ if hi == lo + 2 && lo.is_multiple_of(2) => bit((lo - 4) / 2),
        _ => false,
    }
}

/// Whether `{m, n}` is an edge of the gadget coded by `a`.
pub fn gadget_edge(a: &BitOracle, m: u64, n: u64) -> Result<bool, GadgetError> {
    if let Some(&bad) = [m, n].iter().find(|&&v| v < 2) {
        return Err(GadgetError::IndexBelowTwo(bad));
    }
    if m == n {
        return Ok(false);
    }
    Ok(coded_edge(|i| a.bit(i), m.min(n), m.max(n)))
}

/// A finite gadget on `2..=2·len + 4`, `len` counting the terminator.
/// Graph vertex `i` carries label `i + 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetGraph {
    code: CodeWord,
    graph: FiniteGraph,
}

impl GadgetGraph {
    pub fn code(&self) -> &CodeWord {
        &self.code
    }

    pub fn graph(&self) -> &FiniteGraph {
        &self.graph
    }

    pub fn max_label(&self) -> u64 {
        2 * self.code.len() as u64 + 4
    }

    pub fn labels(&self) -> std::ops::RangeInclusive<u64> {
        2..=self.max_label()
    }

    pub fn index(label: u64) -> usize {
        (label - 2) as usize
    }

    pub fn label(index: usize) -> u64 {
        index as u64 + 2
    }
}

/// Materializes the gadget of a terminated code word: the spine plus one
/// block per bit.
pub fn materialize_gadget(code: &CodeWord) -> Result<GadgetGraph, GadgetError> {
    if !code.has_terminator() {
        return Err(GadgetError::MissingTerminator(code.to_string()));
    }
    let at = GadgetGraph::index;
    let mut edges = vec![(at(2), at(3)), (at(3), at(4))];
    for (i, &bit) in code.bits().iter().enumerate() {
        let n = 4 + 2 * i as u64;
        edges.push((at(n), at(n + 1)));
        edges.push(if bit { (at(n), at(n + 2)) } else { (at(n + 1), at(n + 2)) });
    }
    let vertex_count = 2 * code.len() + 3;
    let graph = FiniteGraph::from_edges(vertex_count, edges).expect("block edges stay in range");
    Ok(GadgetGraph { code: code.clone(), graph })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RigidityReport {
    pub rigid: bool,
    /// Labels in the order the propagation from vertex 2 pinned them down.
    pub forcing_order: Vec<u64>,
    /// Whether propagation alone settled every vertex.
    pub propagation_complete: bool,
}

/// Whether the identity is the only automorphism of `gadget` fixing vertex 2.
pub fn anchored_rigidity_check(gadget: &GadgetGraph) -> bool {
    rigidity_report(gadget).map(|r| r.rigid).unwrap_or(false)
}

/// Propagates fixed vertices outward from vertex 2: once `v` is fixed, an
/// unfixed neighbor of `v` whose degree is unique among the unfixed
/// neighbors of `v` is fixed as well. If this pins every vertex the gadget
/// is anchored-rigid; otherwise the anchored automorphisms are counted by
/// exhaustive search.
pub fn rigidity_report(gadget: &GadgetGraph) -> Result<RigidityReport, GadgetError> {
    let graph = gadget.graph();
    let n = graph.vertex_count();
    let mut fixed = vec![false; n];
    let mut order = vec![0usize];
    fixed[0] = true;
    loop {
        let before = order.len();
        let mut cursor = 0;
        while cursor < order.len() {
            let open: Vec<usize> =
                graph.neighbors(order[cursor]).iter().copied().filter(|&u| !fixed[u]).collect();
            for &u in &open {
                if open.iter().filter(|&&w| graph.degree(w) == graph.degree(u)).count() == 1 {
                    fixed[u] = true;
                    order.push(u);
                }
            }
            cursor += 1;
        }
        if order.len() == before {
            break;
        }
    }
    let forcing_order = order.iter().map(|&i| GadgetGraph::label(i)).collect();
    let propagation_complete = order.len() == n;
    let rigid = propagation_complete || {
        let mut colors = vec![1; n];
        colors[0] = 0;
        enumerate_automorphisms_colored(graph, &colors, DEFAULT_BUDGET)?.len() == 1
    };
    Ok(RigidityReport { rigid, forcing_order, propagation_complete })
}

/// Least `i < bound` with `a(i) ≠ b(i)`.
pub fn first_divergence(a: &BitOracle, b: &BitOracle, bound: u64) -> Option<u64> {
    (0..bound).find(|&i| a.bit(i) != b.bit(i))
}
