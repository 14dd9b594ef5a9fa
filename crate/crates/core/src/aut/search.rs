//! Automorphism enumeration by individualization and color refinement.
//!
//! The left side of the search tree always individualizes the lowest-index
//! vertex of the first non-singleton cell; the right side tries every vertex
//! of the matching cell. Each automorphism corresponds to exactly one
//! surviving right leaf, and every leaf is re-verified against the edge set.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use super::{AutError, Permutation};
use crate::graph::FiniteGraph;

/// Default search budget, in search-tree nodes.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// All automorphisms of `graph`, in lexicographic order of their arrays.
pub fn enumerate_automorphisms(graph: &FiniteGraph, budget: u64) -> Result<Vec<Permutation>, AutError> {
    enumerate_automorphisms_colored(graph, &vec![0; graph.vertex_count()], budget)
}

/// All automorphisms of `graph` that preserve the vertex coloring `colors`.
pub fn enumerate_automorphisms_colored(
    graph: &FiniteGraph,
    colors: &[usize],
    budget: u64,
) -> Result<Vec<Permutation>, AutError> {
    assert_eq!(colors.len(), graph.vertex_count(), "one color per vertex");
    let mut search = Search { graph, budget, nodes: 0, found: Vec::new(), left_path: Vec::new() };
    let mut root = compress(colors);
    let root_trace = refine(graph, &mut root);
    search.left_path.push((root.clone(), root_trace));
    search.descend(root, 0)?;
    search.found.sort();
    Ok(search.found)
}

struct Search<'g> {
    graph: &'g FiniteGraph,
    budget: u64,
    nodes: u64,
    found: Vec<Permutation>,
    /// Refined left colorings and traces, one per depth.
    left_path: Vec<(Vec<usize>, Vec<u64>)>,
}

impl Search<'_> {
    fn descend(&mut self, right: Vec<usize>, depth: usize) -> Result<(), AutError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(AutError::SearchBudgetExceeded {
                nodes: self.nodes - 1,
                found: self.found.len(),
                depth,
            });
        }
        let left = self.left_path[depth].0.clone();
        let Some(cell) = first_nontrivial_cell(&left) else {
            self.record_leaf(&left, &right);
            return Ok(());
        };
        if self.left_path.len() == depth + 1 {
            let v = (0..left.len()).find(|&v| left[v] == cell).expect("cell is non-empty");
            let mut next = individualize(&left, v);
            let trace = refine(self.graph, &mut next);
            self.left_path.push((next, trace));
        }
        let candidates: Vec<usize> = (0..right.len()).filter(|&w| right[w] == cell).collect();
        for w in candidates {
            let mut next = individualize(&right, w);
            let trace = refine(self.graph, &mut next);
            if trace == self.left_path[depth + 1].1 {
                self.descend(next, depth + 1)?;
            }
        }
        Ok(())
    }

    fn record_leaf(&mut self, left: &[usize], right: &[usize]) {
        let mut by_color = vec![usize::MAX; right.len()];
        for (w, &c) in right.iter().enumerate() {
            by_color[c] = w;
        }
        let perm = Permutation::from_vec_unchecked(left.iter().map(|&c| by_color[c]).collect());
        if perm.is_automorphism_of(self.graph) {
            self.found.push(perm);
        }
    }
}

fn first_nontrivial_cell(colors: &[usize]) -> Option<usize> {
    let mut size = vec![0usize; colors.len()];
    for &c in colors {
        size[c] += 1;
    }
    size.iter().position(|&s| s > 1)
}

/// Re-ranks arbitrary color values to `0..k`, preserving their order.
fn compress(colors: &[usize]) -> Vec<usize> {
    let mut distinct = colors.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    colors.iter().map(|c| distinct.binary_search(c).unwrap()).collect()
}

/// Splits `v` off in front of the rest of its cell.
fn individualize(colors: &[usize], v: usize) -> Vec<usize> {
    let doubled: Vec<usize> =
        colors.iter().enumerate().map(|(u, &c)| 2 * c + usize::from(u != v)).collect();
    compress(&doubled)
}

/// Refines `colors` to the coarsest equitable partition below it and returns
/// a trace of per-round signature hashes.
fn refine(graph: &FiniteGraph, colors: &mut [usize]) -> Vec<u64> {
    let n = colors.len();
    let mut trace = Vec::new();
    let mut cells = colors.iter().max().map_or(0, |&c| c + 1);
    loop {
        let mut signatures: Vec<(usize, Vec<usize>, usize)> = (0..n)
            .map(|v| {
                let mut around: Vec<usize> = graph.neighbors(v).iter().map(|&u| colors[u]).collect();
                around.sort_unstable();
                (colors[v], around, v)
            })
            .collect();
        signatures.sort_unstable();

        let mut hasher = DefaultHasher::new();
        let mut rank = 0;
        for i in 0..n {
            let (old, around, v) = &signatures[i];
            if i > 0 && (old, around) != (&signatures[i - 1].0, &signatures[i - 1].1) {
                rank += 1;
            }
            (old, around).hash(&mut hasher);
            colors[*v] = rank;
        }
        let new_cells = if n == 0 { 0 } else { rank + 1 };
        trace.push(hasher.finish());
        if new_cells == cells {
            return trace;
        }
        cells = new_cells;
    }
}
