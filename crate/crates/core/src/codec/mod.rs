//! Injective codings of group elements into Cantor space.
//!
//! Finite groups get fixed-length binary words with an appended `0`
//! terminator. Elements described by a point of the Hilbert cube are coded
//! through their binary digits, linearized with the Cantor pairing.

mod binary;
mod cantor;

pub use binary::{psi_hat, xi_digit, xi_digits, zeta, HilbertCoding, HilbertPoint};
pub use cantor::{cantor_pair, cantor_unpair, Natural};

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::{BigInt, Sign};
use thiserror::Error;

use crate::groups::{FiniteGroup, XorElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("value {0} is outside [0, 1]")]
    OutOfRange(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("code word is empty")]
    EmptyWord,
    #[error("invalid bit character {0:?}")]
    InvalidBit(char),
    #[error("code word {0} does not end in the terminator bit 0")]
    MissingTerminator(String),
    #[error("code words of elements {first} and {second} coincide")]
    NotInjective { first: usize, second: usize },
    #[error("code word of element {element} has length {len}, expected {expected}")]
    LengthMismatch { element: usize, len: usize, expected: usize },
    #[error("coding has {words} words for a group of order {order}")]
    WrongCount { words: usize, order: usize },
}

/// A point of Cantor space, evaluated lazily bit by bit.
#[derive(Clone)]
pub enum BitOracle {
    /// A finite word followed by infinitely many zeros.
    Word(CodeWord),
    Func(Arc<dyn Fn(u64) -> bool + Send + Sync>),
}

impl BitOracle {
    pub fn from_fn(f: impl Fn(u64) -> bool + Send + Sync + 'static) -> Self {
        BitOracle::Func(Arc::new(f))
    }

    pub fn zeros() -> Self {
        BitOracle::from_fn(|_| false)
    }

    pub fn bit(&self, index: u64) -> bool {
        match self {
            BitOracle::Word(w) => w.bit(index),
            BitOracle::Func(f) => f(index),
        }
    }

    /// The finite-support descriptor, when the oracle has one.
    pub fn word(&self) -> Option<&CodeWord> {
        match self {
            BitOracle::Word(w) => Some(w),
            BitOracle::Func(_) => None,
        }
    }

    pub fn prefix(&self, len: u64) -> Vec<bool> {
        (0..len).map(|i| self.bit(i)).collect()
    }
}

impl fmt::Debug for BitOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BitOracle::Word(w) => write!(f, "BitOracle::Word({w})"),
            BitOracle::Func(_) => {
                let prefix: String = self.prefix(16).iter().map(|&b| if b { '1' } else { '0' }).collect();
                write!(f, "BitOracle::Func({prefix}...)")
            }
        }
    }
}

impl From<CodeWord> for BitOracle {
    fn from(word: CodeWord) -> Self {
        BitOracle::Word(word)
    }
}

/// A non-empty finite binary word. Words produced by this module end in the
/// terminator bit `0`; evaluation past the end yields `0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CodeWord {
    bits: Vec<bool>,
}

impl CodeWord {
    pub fn new(bits: Vec<bool>) -> Result<Self, CodecError> {
        if bits.is_empty() {
            return Err(CodecError::EmptyWord);
        }
        Ok(CodeWord { bits })
    }

    /// Appends the terminator to `payload`.
    pub fn terminated(mut payload: Vec<bool>) -> Self {
        payload.push(false);
        CodeWord { bits: payload }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Length including the terminator.
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bit(&self, index: u64) -> bool {
        usize::try_from(index).ok().and_then(|i| self.bits.get(i)).copied().unwrap_or(false)
    }

    pub fn has_terminator(&self) -> bool {
        self.bits.last() == Some(&false)
    }

    /// The word extended with zeros to `len` bits (no-op if already longer).
    pub fn padded(&self, len: usize) -> CodeWord {
        let mut bits = self.bits.clone();
        if bits.len() < len {
            bits.resize(len, false);
        }
        CodeWord { bits }
    }
}

impl fmt::Display for CodeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for CodeWord {
    type Err = CodecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(CodecError::InvalidBit(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        CodeWord::new(bits)
    }
}

/// An assignment of Cantor-space points to group elements.
pub trait Coding<E> {
    fn bit(&self, element: &E, index: u64) -> bool;

    fn oracle(&self, element: &E) -> BitOracle
    where
        Self: Clone + Send + Sync + 'static,
        E: Clone + Send + Sync + 'static,
    {
        let (coding, element) = (self.clone(), element.clone());
        BitOracle::from_fn(move |i| coding.bit(&element, i))
    }
}

impl<E, F: Fn(&E, u64) -> bool> Coding<E> for F {
    fn bit(&self, element: &E, index: u64) -> bool {
        self(element, index)
    }
}

/// Equal-length, pairwise distinct, terminated code words indexed by the
/// elements of a finite group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCoding {
    words: Vec<CodeWord>,
}

impl FiniteCoding {
    pub fn new(words: Vec<CodeWord>) -> Result<Self, CodecError> {
        let expected = words.first().ok_or(CodecError::EmptyWord)?.len();
        for (element, w) in words.iter().enumerate() {
            if w.len() != expected {
                return Err(CodecError::LengthMismatch { element, len: w.len(), expected });
            }
            if !w.has_terminator() {
                return Err(CodecError::MissingTerminator(w.to_string()));
            }
        }
        for first in 0..words.len() {
            if let Some(offset) = words[first + 1..].iter().position(|w| *w == words[first]) {
                return Err(CodecError::NotInjective { first, second: first + 1 + offset });
            }
        }
        Ok(FiniteCoding { words })
    }

    /// Checks that the coding has one word per element of `group`.
    pub fn for_group(self, group: &FiniteGroup) -> Result<Self, CodecError> {
        if self.words.len() != group.order() {
            return Err(CodecError::WrongCount { words: self.words.len(), order: group.order() });
        }
        Ok(self)
    }

    pub fn word(&self, element: usize) -> &CodeWord {
        &self.words[element]
    }

    pub fn words(&self) -> &[CodeWord] {
        &self.words
    }

    /// Common word length, terminator included.
    pub fn word_len(&self) -> usize {
        self.words[0].len()
    }
}

impl Coding<usize> for FiniteCoding {
    fn bit(&self, element: &usize, index: u64) -> bool {
        self.words[*element].bit(index)
    }
}

/// Element `i` is coded by the `L`-bit big-endian binary form of `i`
/// followed by the terminator, with `L = max(1, ceil(log2 order))`.
pub fn finite_psi(group: &FiniteGroup) -> FiniteCoding {
    let order = group.order();
    let width = (usize::BITS - (order.max(2) - 1).leading_zeros()) as usize;
    let words = (0..order)
        .map(|i| CodeWord::terminated((0..width).rev().map(|b| (i >> b) & 1 == 1).collect()))
        .collect();
    FiniteCoding { words }
}

/// Codes a finitely supported sequence by itself.
#[derive(Debug, Clone, Copy, Default)]
pub struct SupportCoding;

impl Coding<XorElement> for SupportCoding {
    fn bit(&self, element: &XorElement, index: u64) -> bool {
        element.contains(&index)
    }
}

/// Codes an integer by the little-endian binary digits of its zigzag image
/// `z >= 0 ↦ 2z`, `z < 0 ↦ -2z - 1`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZigzagCoding;

impl Coding<BigInt> for ZigzagCoding {
    fn bit(&self, element: &BigInt, index: u64) -> bool {
        let natural = match element.sign() {
            Sign::Minus => (-element.clone()) * 2u32 - 1u32,
            _ => element.clone() * 2u32,
        };
        natural.magnitude().bit(index)
    }
}
