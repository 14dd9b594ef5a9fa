//! Exhaustive searches with no invariants beyond adjacency itself. These
//! serve as independent oracles for the refinement-based search.

use super::Permutation;
use crate::graph::FiniteGraph;

/// Every automorphism, found by testing all `n!` vertex permutations.
/// Intended for graphs with at most about 9 vertices.
pub fn all_permutation_automorphisms(graph: &FiniteGraph) -> Vec<Permutation> {
    let n = graph.vertex_count();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let candidate = Permutation::from_vec_unchecked(perm.clone());
        if candidate.is_automorphism_of(graph) {
            out.push(candidate);
        }
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}

/// Every isomorphism `from → to` that sends each vertex listed in `fixed`
/// to itself, found by extending partial bijections one vertex at a time and
/// rejecting as soon as adjacency to an already-mapped vertex disagrees.
/// Stops after `limit` isomorphisms.
pub fn backtrack_isomorphisms(
    from: &FiniteGraph,
    to: &FiniteGraph,
    fixed: &[usize],
    limit: usize,
) -> Vec<Permutation> {
    let n = from.vertex_count();
    if n != to.vertex_count() || from.edge_count() != to.edge_count() {
        return Vec::new();
    }
    let mut state = Backtrack {
        from,
        to,
        fixed,
        image: vec![usize::MAX; n],
        used: vec![false; n],
        out: Vec::new(),
        limit,
    };
    state.extend(0);
    state.out
}

struct Backtrack<'a> {
    from: &'a FiniteGraph,
    to: &'a FiniteGraph,
    fixed: &'a [usize],
    image: Vec<usize>,
    used: Vec<bool>,
    out: Vec<Permutation>,
    limit: usize,
}

impl Backtrack<'_> {
    fn extend(&mut self, v: usize) {
        if self.out.len() >= self.limit {
            return;
        }
        let n = self.image.len();
        if v == n {
            self.out.push(Permutation::from_vec_unchecked(self.image.clone()));
            return;
        }
        for w in 0..n {
            if self.used[w] || (self.fixed.contains(&v) && w != v) {
                continue;
            }
            let consistent =
                (0..v).all(|u| self.from.has_edge(u, v) == self.to.has_edge(self.image[u], w));
            if !consistent {
                continue;
            }
            self.image[v] = w;
            self.used[w] = true;
            self.extend(v + 1);
            self.used[w] = false;
            self.image[v] = usize::MAX;
        }
    }
}

/// Whether `a` and `b` are isomorphic, by [`backtrack_isomorphisms`].
pub fn are_isomorphic(a: &FiniteGraph, b: &FiniteGraph) -> bool {
    !backtrack_isomorphisms(a, b, &[], 1).is_empty()
}
