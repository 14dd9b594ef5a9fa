use num_integer::{Integer, Roots};
use num_traits::{CheckedAdd, CheckedMul, FromPrimitive, Unsigned};

use super::CodecError;

/// Unsigned integer types the pairing works over (`u32`, `u64`, `u128`, `BigUint`).
pub trait Natural: Integer + Unsigned + Roots + Clone + CheckedAdd + CheckedMul + FromPrimitive {}

impl<T> Natural for T where T: Integer + Unsigned + Roots + Clone + CheckedAdd + CheckedMul + FromPrimitive {}

/// `(m + n)(m + n + 1)/2 + n`. Fails only if the result does not fit `T`.
pub fn cantor_pair<T: Natural>(m: &T, n: &T) -> Result<T, CodecError> {
    let overflow = || CodecError::Overflow("cantor_pair");
    let s = m.checked_add(n).ok_or_else(overflow)?;
    let s1 = s.checked_add(&T::one()).ok_or_else(overflow)?;
    // One of s, s + 1 is even; halve it first so the product is exact.
    let two = T::one() + T::one();
    let triangle = if s.is_even() {
        (s / two).checked_mul(&s1)
    } else {
        s.checked_mul(&(s1 / two))
    }
    .ok_or_else(overflow)?;
    triangle.checked_add(n).ok_or_else(overflow)
}

/// Inverse of [`cantor_pair`]. Needs `8p + 1` to fit `T`.
pub fn cantor_unpair<T: Natural>(p: &T) -> Result<(T, T), CodecError> {
    let overflow = || CodecError::Overflow("cantor_unpair");
    let eight = T::from_u8(8).ok_or_else(overflow)?;
    let disc = p.checked_mul(&eight).and_then(|v| v.checked_add(&T::one())).ok_or_else(overflow)?;
    let two = T::one() + T::one();
    let w = (disc.sqrt() - T::one()) / two.clone();
    let triangle = w.clone() * (w.clone() + T::one()) / two;
    let n = p.clone() - triangle;
    let m = w - n.clone();
    Ok((m, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn pair_examples() {
        assert_eq!(cantor_pair(&0u64, &0), Ok(0));
        assert_eq!(cantor_pair(&1u64, &0), Ok(1));
        assert_eq!(cantor_pair(&0u64, &1), Ok(2));
        assert_eq!(cantor_unpair(&2u64), Ok((0, 1)));
    }

    #[test]
    fn grid_roundtrip_small() {
        for m in 0u64..200 {
            for n in 0u64..200 {
                let p = cantor_pair(&m, &n).unwrap();
                assert_eq!(p, (m + n) * (m + n + 1) / 2 + n);
                assert_eq!(cantor_unpair(&p).unwrap(), (m, n));
            }
        }
    }

    #[test]
    fn overflow_is_reported() {
        assert!(cantor_pair(&u64::MAX, &1).is_err());
        assert!(cantor_pair(&(1u64 << 33), &0).is_err());
        assert!(cantor_unpair(&u64::MAX).is_err());
        // u128 handles every u64 index.
        let (m, n) = cantor_unpair(&(u64::MAX as u128)).unwrap();
        assert_eq!(cantor_pair(&m, &n).unwrap(), u64::MAX as u128);
    }

    #[test]
    fn big_naturals() {
        let m = BigUint::from(u64::MAX);
        let n = BigUint::from(12345u32);
        let p = cantor_pair(&m, &n).unwrap();
        assert_eq!(cantor_unpair(&p).unwrap(), (m, n));
    }
}
