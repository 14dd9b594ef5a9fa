//! The main graph on `G × G × ℕ`.
//!
//! Each hub `(x, x, 0)` stands for a group element. Every ordered pair
//! `x ≠ y` carries a block base `(x, y, 0..=4)` joining hub `x` to hub `y`
//! through `(x, y, 2)`, followed by the coded gadget for `x⁻¹y` on
//! `(x, y, k)`, `k ≥ 2`. Diagonal vertices `(x, x, k)` with `k ≥ 1` form a
//! ray hanging off each hub.
//!
//! [`EdgeOracle`] evaluates adjacency lazily for any [`Group`]; [`materialize`]
//! builds the finite graph for a [`FiniteGroup`], truncated after one
//! zero-padding block past the code word and with the diagonal rays dropped.

mod export;

pub use export::{edge_list, to_dot, BuildManifest, GraphExport};

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::codec::{CodecError, Coding, FiniteCoding};
use crate::gadget::coded_edge;
use crate::graph::FiniteGraph;
use crate::groups::{FiniteGroup, Group};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FruchtError {
    #[error("vertex {0} does not belong to the group")]
    GroupMismatch(String),
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error("malformed vertex `{0}`, expected `x,y,k`")]
    ParseVertex(String),
}

/// A vertex `(x, y, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex<E> {
    pub x: E,
    pub y: E,
    pub k: u64,
}

impl<E> Vertex<E> {
    pub fn new(x: E, y: E, k: u64) -> Self {
        Vertex { x, y, k }
    }
}

impl<E: PartialEq> Vertex<E> {
    pub fn is_diagonal(&self) -> bool {
        self.x == self.y
    }

    pub fn is_hub(&self) -> bool {
        self.is_diagonal() && self.k == 0
    }
}

impl fmt::Display for Vertex<usize> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.x, self.y, self.k)
    }
}

impl FromStr for Vertex<usize> {
    type Err = FruchtError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FruchtError::ParseVertex(s.to_string());
        let mut parts = s.split(',').map(|p| p.trim());
        let mut next = || parts.next().ok_or_else(bad);
        let (x, y, k) = (next()?, next()?, next()?);
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(Vertex {
            x: x.parse().map_err(|_| bad())?,
            y: y.parse().map_err(|_| bad())?,
            k: k.parse().map_err(|_| bad())?,
        })
    }
}

/// Lazy adjacency for the main graph over `group`, with gadgets coded by `coding`.
pub struct EdgeOracle<'a, G: Group, C> {
    group: &'a G,
    coding: &'a C,
}

impl<'a, G: Group, C: Coding<G::Elem>> EdgeOracle<'a, G, C> {
    pub fn new(group: &'a G, coding: &'a C) -> Self {
        EdgeOracle { group, coding }
    }

    pub fn group(&self) -> &'a G {
        self.group
    }

    /// Bit `i` of the code attached to the ordered pair `(x, y)`, i.e. of `x⁻¹y`.
    pub fn label_bit(&self, x: &G::Elem, y: &G::Elem, i: u64) -> bool {
        let label = self.group.mul(&self.group.inv(x), y);
        self.coding.bit(&label, i)
    }

    /// Whether `{u, v}` is an edge.
    pub fn main_edge(&self, u: &Vertex<G::Elem>, v: &Vertex<G::Elem>) -> Result<bool, FruchtError> {
        for w in [u, v] {
            if !self.group.contains(&w.x) || !self.group.contains(&w.y) {
                return Err(FruchtError::GroupMismatch(format!("{w:?}")));
            }
        }
        if u == v {
            return Ok(false);
        }
        Ok(self.directed(u, v) || self.directed(v, u))
    }

    /// Edge families listed with `u` as the first coordinate.
    fn directed(&self, u: &Vertex<G::Elem>, v: &Vertex<G::Elem>) -> bool {
        if u.is_diagonal() {
            let ray = v.is_diagonal() && v.x == u.x && v.k == u.k + 1;
            let hub_to_base = u.k == 0 && v.k == 0 && v.x == u.x && !v.is_diagonal();
            return ray || hub_to_base;
        }
        if u.k == 2 && v.is_hub() && v.x == u.y {
            return true;
        }
        if v.x != u.x || v.y != u.y || v.k <= u.k {
            return false;
        }
        match (u.k, v.k) {
            (0, 1) | (0, 2) => true,
            (lo, hi) if lo >= 2 => coded_edge(|i| self.label_bit(&u.x, &u.y, i), lo, hi),
            _ => false,
        }
    }
}

/// The materialized main graph of a finite group.
#[derive(Debug, Clone)]
pub struct FruchtGraph {
    graph: FiniteGraph,
    vertices: Vec<Vertex<usize>>,
    index: HashMap<Vertex<usize>, usize>,
    order: usize,
    word_len: usize,
}

impl FruchtGraph {
    pub fn graph(&self) -> &FiniteGraph {
        &self.graph
    }

    pub fn vertices(&self) -> &[Vertex<usize>] {
        &self.vertices
    }

    pub fn vertex(&self, index: usize) -> &Vertex<usize> {
        &self.vertices[index]
    }

    pub fn index_of(&self, v: &Vertex<usize>) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Code word length, terminator included.
    pub fn word_len(&self) -> usize {
        self.word_len
    }

    /// Largest third coordinate of an off-diagonal vertex, `2L + 6`.
    pub fn max_k(&self) -> u64 {
        2 * self.word_len as u64 + 6
    }

    /// Off-diagonal vertices `(x, y, 0)` in lexicographic order.
    pub fn probes(&self) -> impl Iterator<Item = &Vertex<usize>> {
        self.vertices.iter().filter(|v| v.k == 0 && !v.is_diagonal())
    }

    /// Replaces the edge set, keeping the vertex labelling. Used to build
    /// deliberately corrupted graphs.
    pub fn with_graph(&self, graph: FiniteGraph) -> FruchtGraph {
        assert_eq!(graph.vertex_count(), self.vertices.len());
        FruchtGraph { graph, ..self.clone() }
    }
}

/// Builds the finite main graph.
///
/// Vertices are the hubs `(x, x, 0)` followed by `(x, y, k)` for `x ≠ y` in
/// lexicographic order and `0 ≤ k ≤ 2L + 6`, `L` being the code length with
/// terminator; `|G| + |G|(|G|-1)(2L+7)` vertices in total.
pub fn materialize(group: &FiniteGroup, coding: &FiniteCoding) -> Result<FruchtGraph, FruchtError> {
    let coding = coding.clone().for_group(group)?;
    let n = group.order();
    let word_len = coding.word_len();
    let max_k = 2 * word_len as u64 + 6;

    let mut vertices: Vec<Vertex<usize>> = (0..n).map(|x| Vertex::new(x, x, 0)).collect();
    for x in 0..n {
        for y in (0..n).filter(|&y| y != x) {
            vertices.extend((0..=max_k).map(|k| Vertex::new(x, y, k)));
        }
    }
    let index: HashMap<Vertex<usize>, usize> =
        vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();

    let mut edges = Vec::new();
    for x in 0..n {
        for y in (0..n).filter(|&y| y != x) {
            let at = |k: u64| index[&Vertex::new(x, y, k)];
            edges.extend([(x, at(0)), (at(0), at(1)), (at(0), at(2)), (at(2), at(3)), (at(3), at(4)), (at(2), y)]);
            let word = coding.word(group.mul(&group.inv(&x), &y));
            // Bit `word_len` is the zero padding block.
            for i in 0..=word_len as u64 {
                let base = 4 + 2 * i;
                if word.bit(i) {
                    edges.extend([(at(base), at(base + 1)), (at(base), at(base + 2))]);
                } else {
                    edges.extend([(at(base), at(base + 1)), (at(base + 1), at(base + 2))]);
                }
            }
        }
    }
    let graph = FiniteGraph::from_edges(vertices.len(), edges).expect("edges lie within the vertex set");
    Ok(FruchtGraph { graph, vertices, index, order: n, word_len })
}

/// First vertex pair of the materialized set where adjacency in `graph`
/// and `oracle` disagree.
pub fn first_disagreement<C: Coding<usize>>(
    graph: &FruchtGraph,
    oracle: &EdgeOracle<'_, FiniteGroup, C>,
) -> Option<(Vertex<usize>, Vertex<usize>)> {
    let vs = graph.vertices();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            let lazy = oracle.main_edge(&vs[i], &vs[j]).unwrap_or(false);
            if lazy != graph.graph().has_edge(i, j) {
                return Some((vs[i].clone(), vs[j].clone()));
            }
        }
    }
    None
}

/// Whether materialized adjacency matches the lazy oracle on every pair.
pub fn oracle_agreement<C: Coding<usize>>(
    graph: &FruchtGraph,
    oracle: &EdgeOracle<'_, FiniteGroup, C>,
) -> bool {
    first_disagreement(graph, oracle).is_none()
}

/// Vertex classes recovered from degrees alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeClasses {
    pub hubs: Vec<usize>,
    /// Vertices with a neighbor of hub degree and a neighbor of degree one.
    pub bases: Vec<usize>,
    /// Degree-one neighbors of bases.
    pub leaves: Vec<usize>,
    /// Degree-three neighbors of bases.
    pub anchors: Vec<usize>,
}

/// Identifies hubs, `(x,y,0)`, `(x,y,1)` and `(x,y,2)` from the degree
/// structure. Hub degree is `2(|G|-1)`, which only separates hubs from the
/// rest when `|G| ≥ 3`.
pub fn degree_classes(graph: &FiniteGraph, order: usize) -> DegreeClasses {
    let hub_degree = 2 * order.saturating_sub(1);
    let hubs = graph.vertices_of_degree(hub_degree).to_vec();
    let bases: Vec<usize> = (0..graph.vertex_count())
        .filter(|&v| {
            let around = graph.neighbors(v);
            around.iter().any(|&u| graph.degree(u) == hub_degree)
                && around.iter().any(|&u| graph.degree(u) == 1)
        })
        .collect();
    let collect = |degree: usize| {
        let mut out: Vec<usize> = bases
            .iter()
            .flat_map(|&b| graph.neighbors(b).iter().copied())
            .filter(|&u| graph.degree(u) == degree)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    };
    DegreeClasses { leaves: collect(1), anchors: collect(3), hubs, bases }
}
