use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use super::Group;

/// A finitely supported binary sequence, stored as its support.
pub type XorElement = BTreeSet<u64>;

/// Finitely supported binary sequences under pointwise XOR.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct XorGroup;

impl Group for XorGroup {
    type Elem = XorElement;

    fn identity(&self) -> XorElement {
        BTreeSet::new()
    }

    fn mul(&self, a: &XorElement, b: &XorElement) -> XorElement {
        a.symmetric_difference(b).copied().collect()
    }

    fn inv(&self, a: &XorElement) -> XorElement {
        a.clone()
    }

    fn contains(&self, _: &XorElement) -> bool {
        true
    }

    fn encode(&self, a: &XorElement) -> String {
        let parts: Vec<String> = a.iter().map(u64::to_string).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// The integers under addition.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IntegerGroup;

impl Group for IntegerGroup {
    type Elem = BigInt;

    fn identity(&self) -> BigInt {
        BigInt::zero()
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn inv(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn contains(&self, _: &BigInt) -> bool {
        true
    }

    fn encode(&self, a: &BigInt) -> String {
        a.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_xor(rng: &mut ChaCha8Rng) -> XorElement {
        (0..rng.gen_range(0..6)).map(|_| rng.gen_range(0..20)).collect()
    }

    fn check_axioms<G: Group>(group: &G, mut sample: impl FnMut() -> G::Elem) {
        let e = group.identity();
        for _ in 0..1000 {
            let (a, b, c) = (sample(), sample(), sample());
            assert_eq!(group.mul(&group.mul(&a, &b), &c), group.mul(&a, &group.mul(&b, &c)));
            assert_eq!(group.mul(&e, &a), a);
            assert_eq!(group.mul(&a, &e), a);
            assert_eq!(group.mul(&a, &group.inv(&a)), e);
            assert_eq!(group.mul(&group.inv(&a), &a), e);
            assert_eq!(a == b, group.encode(&a) == group.encode(&b));
        }
    }

    #[test]
    fn xor_group_axioms() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        check_axioms(&XorGroup, || random_xor(&mut rng));
    }

    #[test]
    fn integer_group_axioms() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        check_axioms(&IntegerGroup, || BigInt::from(rng.gen_range(-1_000_000i64..1_000_000)));
    }

    #[test]
    fn xor_encoding() {
        let a: XorElement = [3, 1].into_iter().collect();
        assert_eq!(XorGroup.encode(&a), "{1,3}");
        assert_eq!(XorGroup.encode(&XorGroup.identity()), "{}");
    }
}
