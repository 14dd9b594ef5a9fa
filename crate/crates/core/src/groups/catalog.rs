use std::fmt;
use std::str::FromStr;

use super::{validate_cayley, FiniteGroup, Group, GroupError};

/// Upper bound on the order of any catalog group.
pub const MAX_CATALOG_ORDER: usize = 1024;
const MAX_SYMMETRIC_DEGREE: usize = 5;

/// A catalog group name such as `cyclic:6`, `dihedral:4`, `symmetric:3`,
/// `quaternion8`, `trivial` or `direct_product(cyclic:2,cyclic:4)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Trivial,
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Quaternion8,
    DirectProduct(Box<GroupSpec>, Box<GroupSpec>),
}

impl GroupSpec {
    pub fn order(&self) -> usize {
        match self {
            GroupSpec::Trivial => 1,
            GroupSpec::Cyclic(n) => *n,
            GroupSpec::Dihedral(n) => 2 * n,
            GroupSpec::Symmetric(n) => (1..=*n).product(),
            GroupSpec::Quaternion8 => 8,
            GroupSpec::DirectProduct(a, b) => a.order().saturating_mul(b.order()),
        }
    }

    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        let out_of_range =
            |family: &str, value: usize| GroupError::ParameterOutOfRange { family: family.into(), value };
        let raw = match self {
            GroupSpec::Trivial => vec![vec![0]],
            GroupSpec::Cyclic(n) => {
                if *n == 0 || *n > MAX_CATALOG_ORDER {
                    return Err(out_of_range("cyclic", *n));
                }
                cyclic_table(*n)
            }
            GroupSpec::Dihedral(n) => {
                if *n == 0 || 2 * n > MAX_CATALOG_ORDER {
                    return Err(out_of_range("dihedral", *n));
                }
                dihedral_table(*n)
            }
            GroupSpec::Symmetric(n) => {
                if *n == 0 || *n > MAX_SYMMETRIC_DEGREE {
                    return Err(out_of_range("symmetric", *n));
                }
                symmetric_table(*n)
            }
            GroupSpec::Quaternion8 => quaternion_table(),
            GroupSpec::DirectProduct(a, b) => {
                if self.order() > MAX_CATALOG_ORDER {
                    return Err(out_of_range("direct_product", self.order()));
                }
                product_table(&a.build()?, &b.build()?)
            }
        };
        validate_cayley(&raw)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Trivial => write!(f, "trivial"),
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Symmetric(n) => write!(f, "symmetric:{n}"),
            GroupSpec::Quaternion8 => write!(f, "quaternion8"),
            GroupSpec::DirectProduct(a, b) => write!(f, "direct_product({a},{b})"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix("direct_product(").and_then(|r| r.strip_suffix(')')) {
            let split = top_level_comma(inner).ok_or_else(|| GroupError::UnknownFamily(s.into()))?;
            let (left, right) = (&inner[..split], &inner[split + 1..]);
            return Ok(GroupSpec::DirectProduct(Box::new(left.parse()?), Box::new(right.parse()?)));
        }
        let (family, param) = match s.split_once(':') {
            Some((family, param)) => (family, Some(param)),
            None => (s, None),
        };
        let parameter = |p: Option<&str>| -> Result<usize, GroupError> {
            let p = p.ok_or_else(|| GroupError::UnknownFamily(s.into()))?;
            p.trim().parse().map_err(|_| GroupError::UnknownFamily(s.into()))
        };
        match family {
            "trivial" if param.is_none() => Ok(GroupSpec::Trivial),
            "quaternion8" | "q8" if param.is_none() => Ok(GroupSpec::Quaternion8),
            "cyclic" => Ok(GroupSpec::Cyclic(parameter(param)?)),
            "dihedral" => Ok(GroupSpec::Dihedral(parameter(param)?)),
            "symmetric" => Ok(GroupSpec::Symmetric(parameter(param)?)),
            _ => Err(GroupError::UnknownFamily(s.into())),
        }
    }
}

fn top_level_comma(s: &str) -> Option<usize> {
    let mut depth = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.checked_sub(1)?,
            ',' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

/// Parses and builds a catalog group in one step.
pub fn catalog(name: &str) -> Result<FiniteGroup, GroupError> {
    name.parse::<GroupSpec>()?.build()
}

/// The fourteen groups of order at most 8 used by the realization battery.
pub fn acceptance_catalog() -> Vec<GroupSpec> {
    use GroupSpec::*;
    let z = |n| Box::new(Cyclic(n));
    let mut specs = vec![Trivial];
    specs.extend((2..=8).map(Cyclic));
    specs.push(DirectProduct(z(2), z(2)));
    specs.push(DirectProduct(z(2), Box::new(DirectProduct(z(2), z(2)))));
    specs.push(DirectProduct(z(2), z(4)));
    specs.push(Symmetric(3));
    specs.push(Dihedral(4));
    specs.push(Quaternion8);
    specs
}

fn cyclic_table(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| ((i + j) % n) as i64).collect()).collect()
}

/// Element `r^k s^e` has index `k + n*e`.
fn dihedral_table(n: usize) -> Vec<Vec<i64>> {
    let decode = |i: usize| (i % n, i / n);
    (0..2 * n)
        .map(|a| {
            (0..2 * n)
                .map(|b| {
                    let ((k1, e1), (k2, e2)) = (decode(a), decode(b));
                    let k = if e1 == 0 { (k1 + k2) % n } else { (k1 + n - k2) % n };
                    (k + n * ((e1 + e2) % 2)) as i64
                })
                .collect()
        })
        .collect()
}

/// Permutations of `0..n` in lexicographic order, composed as `(p*q)(i) = p(q(i))`.
fn symmetric_table(n: usize) -> Vec<Vec<i64>> {
    let perms = permutations(n);
    let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
    perms
        .iter()
        .map(|p| {
            perms
                .iter()
                .map(|q| {
                    let composed: Vec<usize> = q.iter().map(|&i| p[i]).collect();
                    index(&composed) as i64
                })
                .collect()
        })
        .collect()
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // Next lexicographic permutation.
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
}

/// Units `±1, ±i, ±j, ±k`; index `2*unit + sign` with unit 0..4 = 1, i, j, k.
fn quaternion_table() -> Vec<Vec<i64>> {
    // UNIT[a][b] = (sign, unit) of unit_a * unit_b.
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    (0..8)
        .map(|a: usize| {
            (0..8)
                .map(|b: usize| {
                    let (sign, unit) = UNIT[a / 2][b / 2];
                    (2 * unit + (sign + a % 2 + b % 2) % 2) as i64
                })
                .collect()
        })
        .collect()
}

/// Pair `(a, b)` has index `a * |H| + b`.
fn product_table(g: &FiniteGroup, h: &FiniteGroup) -> Vec<Vec<i64>> {
    let m = h.order();
    let n = g.order() * m;
    (0..n)
        .map(|x| {
            (0..n)
                .map(|y| (g.mul(&(x / m), &(y / m)) * m + h.mul(&(x % m), &(y % m))) as i64)
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_examples() {
        let z4 = catalog("cyclic:4").unwrap();
        assert_eq!(z4.order(), 4);
        assert_eq!(z4.inv(&1), 3);
        assert_eq!(z4.mul(&1, &3), 0);

        let s3 = catalog("symmetric:3").unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());

        assert_eq!(catalog("dihedral:4").unwrap().order(), 8);
        assert!(!catalog("quaternion8").unwrap().is_abelian());
    }

    #[test]
    fn s3_transpositions_are_involutions() {
        let s3 = catalog("symmetric:3").unwrap();
        let perms = permutations(3);
        for (idx, p) in perms.iter().enumerate() {
            let fixed = p.iter().enumerate().filter(|(i, &v)| *i == v).count();
            if fixed == 1 {
                assert_eq!(s3.mul(&idx, &idx), 0);
            }
        }
    }

    #[test]
    fn quaternion_has_single_involution() {
        let q = catalog("quaternion8").unwrap();
        let involutions = (1..8).filter(|&g| q.mul(&g, &g) == 0).count();
        assert_eq!(involutions, 1);
        // -1 is central.
        assert!((0..8).all(|g| q.mul(&1, &g) == q.mul(&g, &1)));
    }

    #[test]
    fn dihedral_relations() {
        let d = catalog("dihedral:4").unwrap();
        let (r, s) = (1usize, 4usize);
        // s r s = r^-1
        assert_eq!(d.mul(&d.mul(&s, &r), &s), d.inv(&r));
        assert_eq!(d.mul(&s, &s), 0);
    }

    #[test]
    fn parse_and_display_roundtrip() {
        for name in [
            "trivial",
            "cyclic:6",
            "dihedral:4",
            "symmetric:3",
            "quaternion8",
            "direct_product(cyclic:2,direct_product(cyclic:2,cyclic:2))",
        ] {
            let spec: GroupSpec = name.parse().unwrap();
            assert_eq!(spec.to_string(), name);
            assert_eq!(spec.build().unwrap().order(), spec.order());
        }
    }

    #[test]
    fn catalog_errors() {
        assert!(matches!(catalog("alternating:4"), Err(GroupError::UnknownFamily(_))));
        assert!(matches!(catalog("cyclic"), Err(GroupError::UnknownFamily(_))));
        assert!(matches!(catalog("cyclic:x"), Err(GroupError::UnknownFamily(_))));
        assert!(matches!(catalog("symmetric:6"), Err(GroupError::ParameterOutOfRange { .. })));
        assert!(matches!(catalog("cyclic:0"), Err(GroupError::ParameterOutOfRange { .. })));
        assert!(matches!(
            catalog("direct_product(cyclic:64,cyclic:64)"),
            Err(GroupError::ParameterOutOfRange { .. })
        ));
    }

    #[test]
    fn acceptance_catalog_has_fourteen_small_groups() {
        let specs = acceptance_catalog();
        assert_eq!(specs.len(), 14);
        assert!(specs.iter().all(|s| s.order() <= 8));
    }
}
