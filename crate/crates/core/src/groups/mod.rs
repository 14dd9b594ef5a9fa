//! Finite groups given by Cayley tables, an abstract interface for groups
//! with computable elements, and a small catalog of test groups.

mod catalog;
mod computable;

pub use catalog::{acceptance_catalog, catalog, GroupSpec, MAX_CATALOG_ORDER};
pub use computable::{IntegerGroup, XorGroup, XorElement};

use std::fmt::Debug;
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Orders up to this bound get an exhaustive associativity check.
pub const EXHAUSTIVE_ASSOCIATIVITY_ORDER: usize = 64;
/// Number of random triples sampled for associativity above that bound.
pub const SAMPLED_ASSOCIATIVITY_TRIPLES: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("Cayley table is empty")]
    Empty,
    #[error("Cayley table is not square: row {row} has length {len}, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("declared order {declared} does not match table size {actual}")]
    OrderMismatch { declared: usize, actual: usize },
    #[error("entry {value} at ({row}, {col}) is out of range 0..{order}")]
    EntryOutOfRange { row: usize, col: usize, value: i64, order: usize },
    #[error("not a Latin square: value at ({row}, {col}) repeats in its {line}")]
    NotLatinSquare { row: usize, col: usize, line: &'static str },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("invalid element handle {0}")]
    InvalidHandle(String),
    #[error("unknown group family `{0}`")]
    UnknownFamily(String),
    #[error("parameter {value} out of range for `{family}`")]
    ParameterOutOfRange { family: String, value: usize },
    #[error("malformed Cayley JSON: {0}")]
    Json(String),
}

/// A group whose elements are finitely encoded handles with decidable equality.
///
/// Implementations must satisfy the group axioms on every valid handle.
/// `mul` and `inv` may panic on handles for which `contains` is false; use
/// [`checked_mul`] and [`checked_inv`] at trust boundaries.
pub trait Group {
    type Elem: Clone + Eq + Ord + Hash + Debug;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn contains(&self, a: &Self::Elem) -> bool;
    /// Canonical text encoding; equal handles encode identically.
    fn encode(&self, a: &Self::Elem) -> String;
}

pub fn checked_mul<G: Group>(group: &G, a: &G::Elem, b: &G::Elem) -> Result<G::Elem, GroupError> {
    for h in [a, b] {
        if !group.contains(h) {
            return Err(GroupError::InvalidHandle(format!("{h:?}")));
        }
    }
    Ok(group.mul(a, b))
}

pub fn checked_inv<G: Group>(group: &G, a: &G::Elem) -> Result<G::Elem, GroupError> {
    if !group.contains(a) {
        return Err(GroupError::InvalidHandle(format!("{a:?}")));
    }
    Ok(group.inv(a))
}

/// A validated finite group. Elements are indices `0..order`, and index 0 is
/// always the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

/// Wire form of a Cayley table: `{"order": n, "table": [[...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyJson {
    pub order: usize,
    pub table: Vec<Vec<i64>>,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Row-major multiplication table, `table()[i * order + j] = i*j`.
    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverse
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        (0..n).all(|i| (i + 1..n).all(|j| self.table[i * n + j] == self.table[j * n + i]))
    }

    pub fn to_json(&self) -> CayleyJson {
        let n = self.order;
        CayleyJson {
            order: n,
            table: (0..n)
                .map(|i| self.table[i * n..(i + 1) * n].iter().map(|&v| v as i64).collect())
                .collect(),
        }
    }

    pub fn from_json(json: &CayleyJson) -> Result<Self, GroupError> {
        if json.order != json.table.len() {
            return Err(GroupError::OrderMismatch { declared: json.order, actual: json.table.len() });
        }
        validate_cayley(&json.table)
    }

    pub fn from_json_str(text: &str) -> Result<Self, GroupError> {
        let json: CayleyJson =
            serde_json::from_str(text).map_err(|e| GroupError::Json(e.to_string()))?;
        Self::from_json(&json)
    }
}

impl Group for FiniteGroup {
    type Elem = usize;

    fn identity(&self) -> usize {
        0
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.table[a * self.order + b]
    }

    fn inv(&self, a: &usize) -> usize {
        self.inverse[*a]
    }

    fn contains(&self, a: &usize) -> bool {
        *a < self.order
    }

    fn encode(&self, a: &usize) -> String {
        a.to_string()
    }
}

/// Validates a raw Cayley table (`raw[i][j] = i*j`) and returns the group it
/// defines, relabelled so that the identity has index 0.
pub fn validate_cayley(raw: &[Vec<i64>]) -> Result<FiniteGroup, GroupError> {
    let n = raw.len();
    if n == 0 {
        return Err(GroupError::Empty);
    }
    let mut table = Vec::with_capacity(n * n);
    for (row, entries) in raw.iter().enumerate() {
        if entries.len() != n {
            return Err(GroupError::NotSquare { row, len: entries.len(), expected: n });
        }
        for (col, &value) in entries.iter().enumerate() {
            if value < 0 || value as u64 >= n as u64 {
                return Err(GroupError::EntryOutOfRange { row, col, value, order: n });
            }
            table.push(value as usize);
        }
    }

    check_latin(&table, n)?;

    let at = |i: usize, j: usize| table[i * n + j];
    let identity = (0..n)
        .find(|&e| (0..n).all(|j| at(e, j) == j && at(j, e) == j))
        .ok_or(GroupError::NoIdentity)?;

    if n <= EXHAUSTIVE_ASSOCIATIVITY_ORDER {
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        for _ in 0..SAMPLED_ASSOCIATIVITY_TRIPLES {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            if at(at(a, b), c) != at(a, at(b, c)) {
                return Err(GroupError::NotAssociative { a, b, c });
            }
        }
    }

    // Relabel by the transposition (0 identity).
    let swap = |i: usize| {
        if i == identity {
            0
        } else if i == 0 {
            identity
        } else {
            i
        }
    };
    let mut relabelled = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            relabelled[swap(i) * n + swap(j)] = swap(at(i, j));
        }
    }
    let inverse = (0..n)
        .map(|i| {
            (0..n)
                .find(|&j| relabelled[i * n + j] == 0)
                .expect("Latin square row contains the identity")
        })
        .collect();
    Ok(FiniteGroup { order: n, table: relabelled, inverse })
}

fn check_latin(table: &[usize], n: usize) -> Result<(), GroupError> {
    let mut seen = vec![false; n];
    for row in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        for col in 0..n {
            let v = table[row * n + col];
            if std::mem::replace(&mut seen[v], true) {
                return Err(GroupError::NotLatinSquare { row, col, line: "row" });
            }
        }
    }
    for col in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        for row in 0..n {
            let v = table[row * n + col];
            if std::mem::replace(&mut seen[v], true) {
                return Err(GroupError::NotLatinSquare { row, col, line: "column" });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_table() {
        let g = validate_cayley(&[vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.inv(&0), 0);
    }

    #[test]
    fn z2_table() {
        let g = validate_cayley(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.mul(&1, &1), 0);
    }

    #[test]
    fn repeated_entry_is_not_latin() {
        let err = validate_cayley(&[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(err, GroupError::NotLatinSquare { row: 1, col: 1, line: "row" });
    }

    #[test]
    fn identity_is_relabelled_to_zero() {
        // Z2 with identity at index 1.
        let g = validate_cayley(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(g.table(), &[0, 1, 1, 0]);
    }

    #[test]
    fn latin_square_without_identity() {
        // x*y = (x + y + 1) mod 3 has identity 2; this one, x*y = (2 - x - y) mod 3, has none.
        let raw: Vec<Vec<i64>> =
            (0..3).map(|x| (0..3).map(|y| (2 * 3 - x - y + 2) % 3).collect()).collect();
        assert_eq!(validate_cayley(&raw).unwrap_err(), GroupError::NoIdentity);
    }

    #[test]
    fn non_associative_loop() {
        // Smallest non-associative loop (order 5), identity 0.
        let raw = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(validate_cayley(&raw), Err(GroupError::NotAssociative { .. })));
    }

    #[test]
    fn shape_and_range_errors() {
        assert_eq!(validate_cayley(&[]).unwrap_err(), GroupError::Empty);
        assert!(matches!(
            validate_cayley(&[vec![0, 1], vec![1]]),
            Err(GroupError::NotSquare { row: 1, .. })
        ));
        assert!(matches!(
            validate_cayley(&[vec![0, 2], vec![1, 0]]),
            Err(GroupError::EntryOutOfRange { row: 0, col: 1, value: 2, .. })
        ));
        assert!(matches!(
            validate_cayley(&[vec![0, -1], vec![1, 0]]),
            Err(GroupError::EntryOutOfRange { value: -1, .. })
        ));
    }

    #[test]
    fn json_roundtrip_and_order_mismatch() {
        let g = catalog("symmetric:3").unwrap();
        let text = serde_json::to_string(&g.to_json()).unwrap();
        assert_eq!(FiniteGroup::from_json_str(&text).unwrap(), g);
        let bad = r#"{"order": 3, "table": [[0,1],[1,0]]}"#;
        assert!(matches!(
            FiniteGroup::from_json_str(bad),
            Err(GroupError::OrderMismatch { declared: 3, actual: 2 })
        ));
        assert!(matches!(FiniteGroup::from_json_str("{"), Err(GroupError::Json(_))));
    }

    #[test]
    fn checked_ops_reject_bad_handles() {
        let g = catalog("cyclic:4").unwrap();
        assert_eq!(checked_mul(&g, &1, &3), Ok(0));
        assert!(matches!(checked_mul(&g, &1, &4), Err(GroupError::InvalidHandle(_))));
        assert!(matches!(checked_inv(&g, &9), Err(GroupError::InvalidHandle(_))));
    }
}
