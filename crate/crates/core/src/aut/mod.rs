//! Automorphisms: enumeration for finite graphs, the lift of group elements
//! to left-translation automorphisms, and decoding automorphisms back to
//! group elements.

pub mod naive;
mod realize;
mod search;

pub use realize::{verify_realization, RealizationReport, VerifyOptions};
pub use search::{enumerate_automorphisms, enumerate_automorphisms_colored, DEFAULT_BUDGET};

use thiserror::Error;

use crate::frucht::{FruchtError, FruchtGraph, Vertex};
use crate::graph::FiniteGraph;
use crate::groups::{FiniteGroup, Group, GroupError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutError {
    #[error("search budget exhausted after {nodes} nodes ({found} automorphisms found, depth {depth})")]
    SearchBudgetExceeded { nodes: u64, found: usize, depth: usize },
    #[error("probe {0} is not an off-diagonal vertex (x, y, 0)")]
    InvalidProbe(String),
    #[error("image {image} of probe {probe} is not an off-diagonal vertex (x', y', 0)")]
    MalformedImage { probe: String, image: String },
    #[error("not a permutation: {0}")]
    NotPermutation(String),
    #[error("group order {order} exceeds the verification limit {limit}")]
    OrderTooLarge { order: usize, limit: usize },
    #[error("realization check `{check}` failed")]
    RealizationFailure { check: &'static str, report: Box<RealizationReport> },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Frucht(#[from] FruchtError),
}

/// A permutation of `0..n`, stored as its image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn new(images: Vec<usize>) -> Result<Self, AutError> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(AutError::NotPermutation(format!("image {i} repeated or out of range")));
            }
        }
        Ok(Permutation(images))
    }

    pub(crate) fn from_vec_unchecked(images: Vec<usize>) -> Self {
        Permutation(images)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&v| self.0[v]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (v, &w) in self.0.iter().enumerate() {
            inv[w] = v;
        }
        Permutation(inv)
    }

    /// Bijective, and maps edges to edges (hence non-edges to non-edges).
    pub fn is_automorphism_of(&self, graph: &FiniteGraph) -> bool {
        self.0.len() == graph.vertex_count()
            && Permutation::new(self.0.clone()).is_ok()
            && graph.edges().all(|(u, v)| graph.has_edge(self.0[u], self.0[v]))
    }
}

/// A vertex map of the main graph, possibly partial.
pub trait VertexMap<E> {
    fn image(&self, v: &Vertex<E>) -> Option<Vertex<E>>;
}

impl<E, F: Fn(&Vertex<E>) -> Option<Vertex<E>>> VertexMap<E> for F {
    fn image(&self, v: &Vertex<E>) -> Option<Vertex<E>> {
        self(v)
    }
}

/// The automorphism `(x, y, k) ↦ (gx, gy, k)`.
pub struct Lift<'g, G: Group> {
    group: &'g G,
    element: G::Elem,
}

impl<G: Group> Lift<'_, G> {
    pub fn element(&self) -> &G::Elem {
        &self.element
    }

    pub fn apply(&self, v: &Vertex<G::Elem>) -> Vertex<G::Elem> {
        Vertex::new(self.group.mul(&self.element, &v.x), self.group.mul(&self.element, &v.y), v.k)
    }
}

impl<G: Group> VertexMap<G::Elem> for Lift<'_, G> {
    fn image(&self, v: &Vertex<G::Elem>) -> Option<Vertex<G::Elem>> {
        Some(self.apply(v))
    }
}

pub fn lift<'g, G: Group>(group: &'g G, g: &G::Elem) -> Result<Lift<'g, G>, AutError> {
    if !group.contains(g) {
        return Err(GroupError::InvalidHandle(format!("{g:?}")).into());
    }
    Ok(Lift { group, element: g.clone() })
}

/// The lift of `g` restricted to a materialized graph, as a permutation of
/// its vertex indices.
pub fn lift_permutation(graph: &FruchtGraph, group: &FiniteGroup, g: usize) -> Result<Permutation, AutError> {
    let lifted = lift(group, &g)?;
    let images = graph
        .vertices()
        .iter()
        .map(|v| graph.index_of(&lifted.apply(v)).expect("left translation preserves the vertex set"))
        .collect();
    Ok(Permutation(images))
}

/// A permutation of a materialized graph, read as a vertex map.
pub struct PermutationMap<'a> {
    pub graph: &'a FruchtGraph,
    pub permutation: &'a Permutation,
}

impl VertexMap<usize> for PermutationMap<'_> {
    fn image(&self, v: &Vertex<usize>) -> Option<Vertex<usize>> {
        let i = self.graph.index_of(v)?;
        self.permutation.0.get(i).map(|&j| self.graph.vertex(j).clone())
    }
}

/// Recovers `g = x'x⁻¹` from the image `(x', y', 0)` of the probe `(x, y, 0)`.
pub fn decode<G: Group>(
    f: &impl VertexMap<G::Elem>,
    group: &G,
    probe: &Vertex<G::Elem>,
) -> Result<G::Elem, AutError> {
    if probe.k != 0 || probe.is_diagonal() || !group.contains(&probe.x) || !group.contains(&probe.y) {
        return Err(AutError::InvalidProbe(format!("{probe:?}")));
    }
    let malformed = |image: String| AutError::MalformedImage { probe: format!("{probe:?}"), image };
    let image = f.image(probe).ok_or_else(|| malformed("<undefined>".into()))?;
    if image.k != 0 || image.is_diagonal() || !group.contains(&image.x) || !group.contains(&image.y) {
        return Err(malformed(format!("{image:?}")));
    }
    Ok(group.mul(&image.x, &group.inv(&probe.x)))
}

/// Whether every probe decodes to the same `g`, and `f` agrees with the lift
/// of `g` on every vertex of `check`.
pub fn decode_consistency<G: Group>(
    f: &impl VertexMap<G::Elem>,
    group: &G,
    probes: &[Vertex<G::Elem>],
    check: &[Vertex<G::Elem>],
) -> bool {
    let mut decoded = probes.iter().map(|p| decode(f, group, p));
    let Some(Ok(g)) = decoded.next() else {
        return false;
    };
    if !decoded.all(|h| h.as_ref() == Ok(&g)) {
        return false;
    }
    let lifted = Lift { group, element: g };
    check.iter().all(|v| f.image(v).as_ref() == Some(&lifted.apply(v)))
}

/// [`decode_consistency`] over every probe and every vertex of the graph.
pub fn decode_consistency_exhaustive(
    permutation: &Permutation,
    graph: &FruchtGraph,
    group: &FiniteGroup,
) -> bool {
    let map = PermutationMap { graph, permutation };
    let probes: Vec<Vertex<usize>> = graph.probes().cloned().collect();
    !probes.is_empty() && decode_consistency(&map, group, &probes, graph.vertices())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::finite_psi;
    use crate::frucht::materialize;
    use crate::groups::catalog;

    fn path(n: usize) -> FiniteGraph {
        FiniteGraph::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    #[test]
    fn small_graph_automorphism_counts() {
        assert_eq!(enumerate_automorphisms(&path(3), DEFAULT_BUDGET).unwrap().len(), 2);
        let triangle = FiniteGraph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(enumerate_automorphisms(&triangle, DEFAULT_BUDGET).unwrap().len(), 6);
        let empty = FiniteGraph::from_edges(0, []).unwrap();
        assert_eq!(enumerate_automorphisms(&empty, DEFAULT_BUDGET).unwrap().len(), 1);
        let petersen_like = FiniteGraph::from_edges(4, []).unwrap();
        assert_eq!(enumerate_automorphisms(&petersen_like, DEFAULT_BUDGET).unwrap().len(), 24);
    }

    #[test]
    fn output_is_sorted_and_verified() {
        let cycle = FiniteGraph::from_edges(6, (0..6).map(|v| (v, (v + 1) % 6))).unwrap();
        let auts = enumerate_automorphisms(&cycle, DEFAULT_BUDGET).unwrap();
        assert_eq!(auts.len(), 12);
        assert!(auts.windows(2).all(|w| w[0] < w[1]));
        assert!(auts.iter().all(|p| p.is_automorphism_of(&cycle)));
        assert_eq!(auts[0], Permutation::identity(6));
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let empty = FiniteGraph::from_edges(6, []).unwrap();
        let err = enumerate_automorphisms(&empty, 10).unwrap_err();
        assert!(matches!(err, AutError::SearchBudgetExceeded { nodes: 10, .. }));
    }

    #[test]
    fn permutation_algebra() {
        let p = Permutation::new(vec![1, 2, 0]).unwrap();
        let q = Permutation::new(vec![0, 2, 1]).unwrap();
        assert_eq!(p.compose(&q).images(), &[1, 0, 2]);
        assert_eq!(p.compose(&p.inverse()), Permutation::identity(3));
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![2, 0]).is_err());
    }

    #[test]
    fn lift_examples() {
        let z4 = catalog("cyclic:4").unwrap();
        assert_eq!(lift(&z4, &1).unwrap().apply(&Vertex::new(0, 2, 5)), Vertex::new(1, 3, 5));
        let id = lift(&z4, &0).unwrap();
        assert_eq!(id.apply(&Vertex::new(3, 1, 9)), Vertex::new(3, 1, 9));
        assert!(lift(&z4, &4).is_err());
    }

    #[test]
    fn decode_examples() {
        let s3 = catalog("symmetric:3").unwrap();
        let graph = materialize(&s3, &finite_psi(&s3)).unwrap();
        for g in 0..6 {
            let f = lift(&s3, &g).unwrap();
            for probe in graph.probes() {
                assert_eq!(decode(&f, &s3, probe).unwrap(), g);
            }
        }
        let identity = |v: &Vertex<usize>| Some(v.clone());
        assert_eq!(decode(&identity, &s3, &Vertex::new(0, 1, 0)).unwrap(), 0);

        assert!(matches!(
            decode(&identity, &s3, &Vertex::new(1, 1, 0)),
            Err(AutError::InvalidProbe(_))
        ));
        let to_hub = |v: &Vertex<usize>| Some(Vertex::new(v.x, v.x, 0));
        assert!(matches!(
            decode(&to_hub, &s3, &Vertex::new(0, 1, 0)),
            Err(AutError::MalformedImage { .. })
        ));
    }

    #[test]
    fn decode_consistency_detects_mutation() {
        let z3 = catalog("cyclic:3").unwrap();
        let graph = materialize(&z3, &finite_psi(&z3)).unwrap();
        let perm = lift_permutation(&graph, &z3, 1).unwrap();
        assert!(decode_consistency_exhaustive(&perm, &graph, &z3));

        // Swap the images of two leaves (x,y,1).
        let (a, b) = (
            graph.index_of(&Vertex::new(0, 1, 1)).unwrap(),
            graph.index_of(&Vertex::new(0, 2, 1)).unwrap(),
        );
        let mut images = perm.images().to_vec();
        images.swap(a, b);
        let altered = Permutation::new(images).unwrap();
        assert!(!altered.is_automorphism_of(graph.graph()));
        assert!(!decode_consistency_exhaustive(&altered, &graph, &z3));
    }
}
