//! Realizing groups as automorphism groups of graphs.
//!
//! Every ordered pair of distinct group elements `(x, y)` is joined by a
//! rigid gadget whose shape spells out a binary code of `x⁻¹y`. Left
//! translation by any group element permutes these gadgets, and nothing
//! else does, so the automorphism group of the resulting graph is the
//! group itself.
//!
//! - [`groups`]: Cayley-table groups, computable groups, a catalog.
//! - [`codec`]: codings of elements as bit sequences.
//! - [`gadget`]: the coded gadgets and their rigidity.
//! - [`frucht`]: the main graph, lazily and materialized.
//! - [`aut`]: automorphism search, lifting and decoding.
//! - [`cli`]: the `frucht` command-line tool.

pub mod aut;
pub mod cli;
pub mod codec;
pub mod frucht;
pub mod gadget;
pub mod graph;
pub mod groups;

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;

/// Exact rationals over machine integers; digit extraction needs the
/// denominator below `2^31` to square residues without overflow.
pub type Rational = Ratio<i64>;
/// Exact rationals with arbitrary-precision parts.
pub type BigRational = Ratio<BigInt>;
/// Indices of bits in Cantor space.
pub type Nat = u64;
/// Arbitrary-precision naturals for the Cantor pairing.
pub type BigNat = BigUint;

pub use aut::{
    decode, decode_consistency, enumerate_automorphisms, lift, lift_permutation, verify_realization,
    AutError, Permutation, RealizationReport, VerifyOptions,
};
pub use codec::{
    cantor_pair, cantor_unpair, finite_psi, psi_hat, xi_digit, zeta, BitOracle, CodeWord, CodecError,
    Coding, FiniteCoding, HilbertPoint,
};
pub use frucht::{materialize, EdgeOracle, FruchtError, FruchtGraph, Vertex};
pub use gadget::{anchored_rigidity_check, first_divergence, gadget_edge, materialize_gadget, GadgetGraph};
pub use graph::FiniteGraph;
pub use groups::{catalog, validate_cayley, FiniteGroup, Group, GroupError, GroupSpec};
