use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{
    decode, decode_consistency_exhaustive, enumerate_automorphisms, lift, lift_permutation, AutError,
    Permutation, DEFAULT_BUDGET,
};
use crate::codec::FiniteCoding;
use crate::frucht::materialize;
use crate::groups::{FiniteGroup, Group};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Search budget in backtrack nodes.
    pub budget: u64,
    pub max_order: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { budget: DEFAULT_BUDGET, max_order: 8 }
    }
}

/// Outcome of checking that the materialized graph of a group has exactly
/// the lifted left translations as automorphisms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationReport {
    pub order: usize,
    pub vertex_count: usize,
    pub aut_count: usize,
    /// `|Aut| = |G|` and `Aut` is exactly the set of lifts.
    pub is_isomorphic: bool,
    /// Lifts are pairwise distinct and compose like the group.
    pub homomorphism_ok: bool,
    /// Decoding every lift from every probe returns its element, and every
    /// enumerated automorphism decodes consistently.
    pub decode_ok: bool,
    pub elapsed_ms: u64,
}

impl RealizationReport {
    pub fn passed(&self) -> bool {
        self.is_isomorphic && self.homomorphism_ok && self.decode_ok
    }

    fn first_failure(&self) -> Option<&'static str> {
        [
            (self.is_isomorphic, "is_isomorphic"),
            (self.homomorphism_ok, "homomorphism_ok"),
            (self.decode_ok, "decode_ok"),
        ]
        .into_iter()
        .find_map(|(ok, name)| (!ok).then_some(name))
    }
}

/// Materializes the graph of `group` under `coding`, enumerates its
/// automorphisms and checks them against the lifts of the group elements.
pub fn verify_realization(
    group: &FiniteGroup,
    coding: &FiniteCoding,
    options: VerifyOptions,
) -> Result<RealizationReport, AutError> {
    let started = Instant::now();
    let n = group.order();
    if n > options.max_order {
        return Err(AutError::OrderTooLarge { order: n, limit: options.max_order });
    }
    let graph = materialize(group, coding)?;
    let automorphisms = enumerate_automorphisms(graph.graph(), options.budget)?;
    let lifts: Vec<Permutation> =
        group.elements().map(|g| lift_permutation(&graph, group, g)).collect::<Result<_, _>>()?;

    let mut sorted_lifts = lifts.clone();
    sorted_lifts.sort();
    sorted_lifts.dedup();
    let injective = sorted_lifts.len() == n;
    let is_isomorphic = automorphisms.len() == n && sorted_lifts == automorphisms;

    let composes = group.elements().all(|g| {
        group.elements().all(|h| lifts[g].compose(&lifts[h]) == lifts[group.mul(&g, &h)])
    });
    let homomorphism_ok = injective && composes;

    let probes: Vec<_> = graph.probes().cloned().collect();
    let lifts_decode = group.elements().all(|g| {
        let f = lift(group, &g).expect("element of the group");
        probes.iter().all(|p| decode(&f, group, p).ok() == Some(g))
    });
    // The trivial group has no probes; its one automorphism is the identity.
    let automorphisms_decode = probes.is_empty()
        || automorphisms.iter().all(|f| decode_consistency_exhaustive(f, &graph, group));
    let decode_ok = lifts_decode && automorphisms_decode;

    let report = RealizationReport {
        order: n,
        vertex_count: graph.graph().vertex_count(),
        aut_count: automorphisms.len(),
        is_isomorphic,
        homomorphism_ok,
        decode_ok,
        elapsed_ms: started.elapsed().as_millis() as u64,
    };
    match report.first_failure() {
        None => Ok(report),
        Some(check) => Err(AutError::RealizationFailure { check, report: Box::new(report) }),
    }
}
