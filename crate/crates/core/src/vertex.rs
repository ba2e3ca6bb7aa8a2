//! Vertex groups.
//!
//! The [`VertexGroup`] trait is the contract a graph product needs from each
//! vertex. Norm, roots and norm-one generators are optional: torsion groups
//! cannot carry a Dudley norm, so [`CyclicGroup`] leaves them out.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VertexError {
    #[error("modulus mismatch: Z/{0} vs Z/{1}")]
    ModulusMismatch(u64, u64),
    #[error("cyclic modulus must be at least 2 (got {0})")]
    BadModulus(u64),
}

pub trait VertexGroup {
    type Element: Clone + PartialEq + fmt::Debug;

    fn identity(&self) -> Self::Element;
    fn multiply(&self, x: &Self::Element, y: &Self::Element) -> Self::Element;
    fn invert(&self, x: &Self::Element) -> Self::Element;

    fn is_identity(&self, x: &Self::Element) -> bool {
        *x == self.identity()
    }

    fn equal(&self, x: &Self::Element, y: &Self::Element) -> bool {
        x == y
    }

    /// Dudley norm, when the group has one.
    fn norm(&self, _x: &Self::Element) -> Option<u64> {
        None
    }

    /// Every `(h, n)` with `n >= 1` and `h^n = x`.
    fn roots_with_exponents(&self, _x: &Self::Element) -> Option<Vec<(Self::Element, u64)>> {
        None
    }

    fn generators_of_norm_one(&self) -> Option<Vec<Self::Element>> {
        None
    }
}

/// The integers under addition, normed by absolute value.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Integers;

impl VertexGroup for Integers {
    type Element = i64;

    fn identity(&self) -> i64 {
        0
    }

    fn multiply(&self, x: &i64, y: &i64) -> i64 {
        x + y
    }

    fn invert(&self, x: &i64) -> i64 {
        -x
    }

    fn norm(&self, x: &i64) -> Option<u64> {
        Some(x.unsigned_abs())
    }

    fn roots_with_exponents(&self, x: &i64) -> Option<Vec<(i64, u64)>> {
        Some(integer_roots(*x))
    }

    fn generators_of_norm_one(&self) -> Option<Vec<i64>> {
        Some(vec![1, -1])
    }
}

/// All `(h, n)` with `n >= 1` and `n * h = k`, ordered by `n`.
///
/// The identity is reported once, as `(0, 1)`.
pub fn integer_roots(k: i64) -> Vec<(i64, u64)> {
    if k == 0 {
        return vec![(0, 1)];
    }
    let m = k.unsigned_abs();
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            if d * d != m {
                out.push(m / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out.into_iter().map(|n| (k / n as i64, n)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CyclicElement {
    modulus: u64,
    residue: u64,
}

impl CyclicElement {
    pub fn new(modulus: u64, value: i64) -> Result<Self, VertexError> {
        if modulus < 2 {
            return Err(VertexError::BadModulus(modulus));
        }
        Ok(Self {
            modulus,
            residue: value.rem_euclid(modulus as i64) as u64,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }
}

pub fn cyclic_multiply(a: CyclicElement, b: CyclicElement) -> Result<CyclicElement, VertexError> {
    if a.modulus != b.modulus {
        return Err(VertexError::ModulusMismatch(a.modulus, b.modulus));
    }
    Ok(CyclicElement {
        modulus: a.modulus,
        residue: (a.residue + b.residue) % a.modulus,
    })
}

/// `Z/nZ`. Offers no norm and no roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicGroup {
    modulus: u64,
}

impl CyclicGroup {
    pub fn new(modulus: u64) -> Result<Self, VertexError> {
        if modulus < 2 {
            return Err(VertexError::BadModulus(modulus));
        }
        Ok(Self { modulus })
    }

    pub fn element(&self, value: i64) -> CyclicElement {
        CyclicElement::new(self.modulus, value).expect("modulus checked at construction")
    }
}

impl VertexGroup for CyclicGroup {
    type Element = CyclicElement;

    fn identity(&self) -> CyclicElement {
        self.element(0)
    }

    fn multiply(&self, x: &CyclicElement, y: &CyclicElement) -> CyclicElement {
        cyclic_multiply(*x, *y).expect("elements of one cyclic group")
    }

    fn invert(&self, x: &CyclicElement) -> CyclicElement {
        self.element(-(x.residue as i64))
    }
}

/// Vertex group as declared in a group file: `"Z"` or `"Z/n"`.
///
/// Graph products store every syllable as an `i64`: an integer for `Z`, a
/// residue in `[0, n)` for `Z/n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexGroupKind {
    Integers,
    Cyclic(u64),
}

impl VertexGroupKind {
    /// Reduces a raw exponent to the stored representative.
    pub fn reduce(&self, x: i64) -> i64 {
        match self {
            VertexGroupKind::Integers => x,
            VertexGroupKind::Cyclic(n) => x.rem_euclid(*n as i64),
        }
    }

    pub fn has_norm(&self) -> bool {
        matches!(self, VertexGroupKind::Integers)
    }
}

impl VertexGroup for VertexGroupKind {
    type Element = i64;

    fn identity(&self) -> i64 {
        0
    }

    fn multiply(&self, x: &i64, y: &i64) -> i64 {
        self.reduce(x + y)
    }

    fn invert(&self, x: &i64) -> i64 {
        self.reduce(-x)
    }

    fn norm(&self, x: &i64) -> Option<u64> {
        match self {
            VertexGroupKind::Integers => Integers.norm(x),
            VertexGroupKind::Cyclic(_) => None,
        }
    }

    fn roots_with_exponents(&self, x: &i64) -> Option<Vec<(i64, u64)>> {
        match self {
            VertexGroupKind::Integers => Some(integer_roots(*x)),
            VertexGroupKind::Cyclic(_) => None,
        }
    }

    fn generators_of_norm_one(&self) -> Option<Vec<i64>> {
        match self {
            VertexGroupKind::Integers => Integers.generators_of_norm_one(),
            VertexGroupKind::Cyclic(_) => None,
        }
    }
}

impl fmt::Display for VertexGroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexGroupKind::Integers => write!(f, "Z"),
            VertexGroupKind::Cyclic(n) => write!(f, "Z/{n}"),
        }
    }
}

impl FromStr for VertexGroupKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "Z" {
            return Ok(VertexGroupKind::Integers);
        }
        let n = s
            .strip_prefix("Z/")
            .and_then(|n| n.parse::<u64>().ok())
            .filter(|&n| n >= 2)
            .ok_or_else(|| s.to_string())?;
        Ok(VertexGroupKind::Cyclic(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_roots_examples() {
        assert_eq!(integer_roots(4), vec![(4, 1), (2, 2), (1, 4)]);
        assert_eq!(integer_roots(0), vec![(0, 1)]);
        assert_eq!(integer_roots(5), vec![(5, 1), (1, 5)]);
        assert_eq!(integer_roots(-6), vec![(-6, 1), (-3, 2), (-2, 3), (-1, 6)]);
    }

    #[test]
    fn integer_roots_match_naive_scan() {
        for k in -100i64..=100 {
            let mut naive = Vec::new();
            if k == 0 {
                naive.push((0, 1));
            } else {
                for n in 1..=k.unsigned_abs() {
                    for h in -k.abs()..=k.abs() {
                        if h * n as i64 == k {
                            naive.push((h, n));
                        }
                    }
                }
            }
            assert_eq!(integer_roots(k), naive, "k = {k}");
        }
    }

    #[test]
    fn integer_norm_is_dudley() {
        let z = Integers;
        for x in -50i64..=50 {
            assert_eq!(z.norm(&x), z.norm(&z.invert(&x)));
            for y in -50i64..=50 {
                assert!(z.norm(&z.multiply(&x, &y)).unwrap() <= z.norm(&x).unwrap() + z.norm(&y).unwrap());
            }
            if x != 0 {
                for n in 1..=20u64 {
                    let lhs = z.norm(&(x * n as i64)).unwrap();
                    assert!(lhs >= n.max(z.norm(&x).unwrap()));
                }
            }
        }
        assert_eq!(z.norm(&0), Some(0));
    }

    #[test]
    fn cyclic_arithmetic() {
        let a = CyclicElement::new(3, 2).unwrap();
        assert_eq!(cyclic_multiply(a, a).unwrap(), CyclicElement::new(3, 1).unwrap());
        let b = CyclicElement::new(2, 1).unwrap();
        assert_eq!(cyclic_multiply(b, b).unwrap().residue(), 0);
        let c = CyclicElement::new(4, 1).unwrap();
        assert_eq!(
            cyclic_multiply(CyclicElement::new(3, 1).unwrap(), c),
            Err(VertexError::ModulusMismatch(3, 4))
        );
        assert_eq!(CyclicElement::new(1, 0), Err(VertexError::BadModulus(1)));
        let g = CyclicGroup::new(5).unwrap();
        assert_eq!(g.invert(&g.element(2)), g.element(3));
        assert_eq!(g.norm(&g.element(1)), None);
        assert_eq!(g.roots_with_exponents(&g.element(1)), None);
    }

    #[test]
    fn group_axioms_on_samples() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let kinds = [VertexGroupKind::Integers, VertexGroupKind::Cyclic(2), VertexGroupKind::Cyclic(7)];
        for kind in kinds {
            for _ in 0..1000 {
                let [x, y, z] = [(); 3].map(|_| kind.reduce(rng.gen_range(-30..30)));
                assert_eq!(
                    kind.multiply(&kind.multiply(&x, &y), &z),
                    kind.multiply(&x, &kind.multiply(&y, &z))
                );
                assert_eq!(kind.multiply(&x, &kind.identity()), x);
                assert!(kind.is_identity(&kind.multiply(&x, &kind.invert(&x))));
            }
        }
    }

    #[test]
    fn tags_parse() {
        assert_eq!("Z".parse(), Ok(VertexGroupKind::Integers));
        assert_eq!("Z/12".parse(), Ok(VertexGroupKind::Cyclic(12)));
        assert!("Z/1".parse::<VertexGroupKind>().is_err());
        assert!("Q".parse::<VertexGroupKind>().is_err());
        assert_eq!(VertexGroupKind::Cyclic(3).to_string(), "Z/3");
    }
}
