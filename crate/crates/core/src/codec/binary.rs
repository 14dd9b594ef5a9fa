use std::fmt::Display;
use std::sync::Arc;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedMul, One, Zero};

use super::{cantor_unpair, BitOracle, CodecError, Coding};

/// The `i`-th fractional binary digit (0-based) of `x ∈ [0, 1]`.
///
/// Dyadic rationals in `(0, 1]` use the expansion ending in repeating ones,
/// so `1/2 = 0.0111…` and `1 = 0.111…`; zero is all zeros.
pub fn xi_digit<T>(x: &Ratio<T>, i: u64) -> Result<bool, CodecError>
where
    T: Integer + Clone + CheckedMul + Display,
{
    if x < &Ratio::zero() || x > &Ratio::one() {
        return Err(CodecError::OutOfRange(x.to_string()));
    }
    if x.is_zero() {
        return Ok(false);
    }
    let q = x.denom();
    // r/q is the left limit of the fractional part of x·2^i, so r ∈ (0, q].
    let a = checked_mod_mul(&x.numer().mod_floor(q), &pow2_mod(i, q)?, q)?;
    let r = if a.is_zero() { q.clone() } else { a };
    Ok(r > q.clone() - r.clone())
}

/// The first `count` digits of `x`, as by [`xi_digit`].
pub fn xi_digits<T>(x: &Ratio<T>, count: u64) -> Result<Vec<bool>, CodecError>
where
    T: Integer + Clone + CheckedMul + Display,
{
    (0..count).map(|i| xi_digit(x, i)).collect()
}

fn checked_mod_mul<T: Integer + Clone + CheckedMul>(a: &T, b: &T, q: &T) -> Result<T, CodecError> {
    a.checked_mul(b).map(|v| v.mod_floor(q)).ok_or(CodecError::Overflow("xi_digit"))
}

fn pow2_mod<T: Integer + Clone + CheckedMul>(mut exp: u64, q: &T) -> Result<T, CodecError> {
    let mut base = (T::one() + T::one()).mod_floor(q);
    let mut acc = T::one().mod_floor(q);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = checked_mod_mul(&acc, &base, q)?;
        }
        base = checked_mod_mul(&base, &base, q)?;
        exp >>= 1;
    }
    Ok(acc)
}

/// Re-indexes a bit array over `ℕ × ℕ` as a sequence via the Cantor pairing.
pub fn zeta(array: impl Fn(u64, u64) -> bool + Send + Sync + 'static) -> BitOracle {
    BitOracle::from_fn(move |p| {
        let (m, n) = cantor_unpair(&u128::from(p)).expect("u128 holds 8p + 1 for every u64 p");
        array(m as u64, n as u64)
    })
}

/// A point of the Hilbert cube with exact rational coordinates.
pub struct HilbertPoint<T> {
    coordinates: Arc<dyn Fn(u64) -> Ratio<T> + Send + Sync>,
}

impl<T> Clone for HilbertPoint<T> {
    fn clone(&self) -> Self {
        HilbertPoint { coordinates: Arc::clone(&self.coordinates) }
    }
}

impl<T: Clone + Integer + Send + Sync + 'static> HilbertPoint<T> {
    pub fn from_fn(f: impl Fn(u64) -> Ratio<T> + Send + Sync + 'static) -> Self {
        HilbertPoint { coordinates: Arc::new(f) }
    }

    /// Finitely many coordinates; the rest are zero.
    pub fn from_coordinates(coords: Vec<Ratio<T>>) -> Self {
        Self::from_fn(move |j| {
            usize::try_from(j).ok().and_then(|j| coords.get(j).cloned()).unwrap_or_else(Ratio::zero)
        })
    }

    pub fn coordinate(&self, j: u64) -> Ratio<T> {
        (self.coordinates)(j)
    }
}

/// Bit `p` of the code of `g`: with `(i, j) = unpair(p)`, the `i`-th binary
/// digit of coordinate `j` of `gamma(g)`.
pub fn psi_hat<E, T>(
    gamma: impl Fn(&E) -> HilbertPoint<T>,
    g: &E,
    p: u64,
) -> Result<bool, CodecError>
where
    T: Integer + Clone + CheckedMul + Display + Send + Sync + 'static,
{
    let (i, j) = cantor_unpair(&u128::from(p))?;
    xi_digit(&gamma(g).coordinate(j as u64), i as u64)
}

type Embedding<E, T> = Arc<dyn Fn(&E) -> HilbertPoint<T> + Send + Sync>;

/// A [`Coding`] built from an injective map into the Hilbert cube.
///
/// `gamma` must take values in `[0, 1]^ℕ`; evaluating a bit whose digit lies
/// outside that range panics. Use [`psi_hat`] for checked evaluation.
pub struct HilbertCoding<E, T> {
    gamma: Embedding<E, T>,
}

impl<E, T> Clone for HilbertCoding<E, T> {
    fn clone(&self) -> Self {
        HilbertCoding { gamma: Arc::clone(&self.gamma) }
    }
}

impl<E, T> HilbertCoding<E, T> {
    pub fn new(gamma: impl Fn(&E) -> HilbertPoint<T> + Send + Sync + 'static) -> Self {
        HilbertCoding { gamma: Arc::new(gamma) }
    }
}

impl<E, T> Coding<E> for HilbertCoding<E, T>
where
    T: Integer + Clone + CheckedMul + Display + Send + Sync + 'static,
{
    fn bit(&self, element: &E, index: u64) -> bool {
        psi_hat(|e| (self.gamma)(e), element, index)
            .unwrap_or_else(|err| panic!("gamma left the Hilbert cube: {err}"))
    }
}
