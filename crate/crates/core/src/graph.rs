//! Explicit finite simple graphs.

use std::collections::BTreeMap;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
}

/// An undirected simple graph on `0..n` with sorted adjacency lists and a
/// degree index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGraph {
    adjacency: Vec<Vec<usize>>,
    degree_index: BTreeMap<usize, Vec<usize>>,
    edge_count: usize,
}

impl FiniteGraph {
    /// Builds a graph from an edge list; duplicate and reversed edges collapse.
    pub fn from_edges(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for (u, v) in edges {
            for vertex in [u, v] {
                if vertex >= vertex_count {
                    return Err(GraphError::VertexOutOfRange { vertex, vertex_count });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        let mut degree_index: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (v, list) in adjacency.iter().enumerate() {
            degree_index.entry(list.len()).or_default().push(v);
        }
        Ok(FiniteGraph { adjacency, degree_index, edge_count })
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency.get(u).is_some_and(|list| list.binary_search(&v).is_ok())
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn degree_index(&self) -> &BTreeMap<usize, Vec<usize>> {
        &self.degree_index
    }

    pub fn vertices_of_degree(&self, degree: usize) -> &[usize] {
        self.degree_index.get(&degree).map_or(&[], Vec::as_slice)
    }

    pub fn max_degree(&self) -> usize {
        self.degree_index.keys().next_back().copied().unwrap_or(0)
    }

    /// A copy with the edge `{u, v}` removed, if present.
    pub fn without_edge(&self, u: usize, v: usize) -> FiniteGraph {
        let edges = self.edges().filter(|&e| e != (u.min(v), u.max(v)));
        FiniteGraph::from_edges(self.vertex_count(), edges).expect("subgraph of a valid graph")
    }

    /// The subgraph induced on `vertices`, relabelled by position in the slice.
    pub fn induced(&self, vertices: &[usize]) -> FiniteGraph {
        let position: BTreeMap<usize, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges = self.edges().filter_map(|(u, v)| Some((*position.get(&u)?, *position.get(&v)?)));
        FiniteGraph::from_edges(vertices.len(), edges).expect("induced subgraph of a valid graph")
    }
}
