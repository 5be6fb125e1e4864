//! The group `I(n)` on `X ⊕ Y ⊕ (X ⊗ Y)` with product
//! `g₁g₂ = g₁ + g₂ + x₂ ⊗ y₁`.
//!
//! Codes pack an element little-endian as `[x | y | A row-major]`, using
//! `n² + 2n` bits, so `n ≤ 7` keeps every code below `2^63`. The all-zero
//! code is the identity.

use alloc::vec::Vec;

use super::FiniteGroup;
use crate::bitlin::{outer, F2Mat, F2Vec};
use crate::{Error, Result};

/// Largest `n` whose element codes fit in 63 bits.
pub const MAX_IGROUP_DIM: usize = 7;

/// An element `x + y + A` of `I(n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub x: F2Vec,
    pub y: F2Vec,
    pub a: F2Mat,
}

impl GroupElement {
    pub fn identity(n: usize) -> Result<Self> {
        Ok(GroupElement {
            x: F2Vec::zero(n)?,
            y: F2Vec::zero(n)?,
            a: F2Mat::zero(n)?,
        })
    }

    pub fn new(x: F2Vec, y: F2Vec, a: F2Mat) -> Result<Self> {
        if x.dim() != y.dim() || x.dim() != a.dim() {
            return Err(Error::DimensionMismatch {
                left: x.dim(),
                right: if x.dim() != y.dim() { y.dim() } else { a.dim() },
            });
        }
        Ok(GroupElement { x, y, a })
    }

    pub fn dim(&self) -> usize {
        self.x.dim()
    }

    pub fn encode(&self) -> u64 {
        let n = self.dim();
        self.x.bits() | self.y.bits() << n | self.a.bits() << (2 * n)
    }

    pub fn decode(n: usize, code: u64) -> Result<Self> {
        check_igroup_dim(n)?;
        let bits = n * n + 2 * n;
        if code >> bits != 0 {
            return Err(Error::InvalidVertex {
                vertex: code,
                count: 1 << bits,
            });
        }
        let m = (1u64 << n) - 1;
        Ok(GroupElement {
            x: F2Vec::from_bits(n, code & m)?,
            y: F2Vec::from_bits(n, code >> n & m)?,
            a: F2Mat::from_bits(n, code >> (2 * n))?,
        })
    }
}

fn check_igroup_dim(n: usize) -> Result<()> {
    if (1..=MAX_IGROUP_DIM).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidDimension {
            dim: n,
            min: 1,
            max: MAX_IGROUP_DIM,
        })
    }
}

/// `g₁g₂ = (x₁+x₂, y₁+y₂, A₁+A₂+x₂⊗y₁)`.
pub fn mul(g1: &GroupElement, g2: &GroupElement) -> Result<GroupElement> {
    let a = g1.a.try_add(g2.a)?.try_add(outer(g2.x, g1.y)?)?;
    GroupElement::new(g1.x.try_add(g2.x)?, g1.y.try_add(g2.y)?, a)
}

/// `g⁻¹ = g + x ⊗ y`.
pub fn inv(g: &GroupElement) -> GroupElement {
    GroupElement {
        a: g.a + outer(g.x, g.y).expect("element dimensions agree"),
        ..*g
    }
}

/// `[g₁, g₂] = g₁⁻¹ g₂⁻¹ g₁ g₂`, evaluated as a word.
pub fn commutator(g1: &GroupElement, g2: &GroupElement) -> Result<GroupElement> {
    let w = mul(&inv(g1), &inv(g2))?;
    mul(&mul(&w, g1)?, g2)
}

/// `I(n)` acting on packed codes.
#[derive(Clone, Debug)]
pub struct IGroup {
    n: usize,
    vec_mask: u64,
    /// `spread[x]` places bit `i` of `x` at bit `i·n`, so `spread[x] * y`
    /// is the packed tensor `x ⊗ y` (rows never overlap, so no carries).
    spread: Vec<u64>,
}

impl IGroup {
    pub fn new(n: usize) -> Result<Self> {
        check_igroup_dim(n)?;
        let spread = (0..1u64 << n)
            .map(|x| (0..n).filter(|i| x >> i & 1 == 1).map(|i| 1u64 << (i * n)).sum())
            .collect();
        Ok(IGroup {
            n,
            vec_mask: (1 << n) - 1,
            spread,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Number of bits in an element code, `n² + 2n`.
    pub fn code_bits(&self) -> usize {
        self.n * self.n + 2 * self.n
    }

    #[inline]
    pub fn x_part(&self, code: u64) -> u64 {
        code & self.vec_mask
    }

    #[inline]
    pub fn y_part(&self, code: u64) -> u64 {
        code >> self.n & self.vec_mask
    }

    #[inline]
    pub fn tensor_part(&self, code: u64) -> u64 {
        code >> (2 * self.n)
    }

    #[inline]
    fn outer_bits(&self, x: u64, y: u64) -> u64 {
        self.spread[x as usize] * y
    }

    pub fn compose(&self, x: u64, y: u64, a: u64) -> u64 {
        x | y << self.n | a << (2 * self.n)
    }

    pub fn decode(&self, code: u64) -> GroupElement {
        GroupElement::decode(self.n, code).expect("code in range")
    }

    /// Code of the element `x ∈ X`.
    pub fn x_element(&self, x: u64) -> u64 {
        x & self.vec_mask
    }

    /// Code of the element `y ∈ Y`.
    pub fn y_element(&self, y: u64) -> u64 {
        (y & self.vec_mask) << self.n
    }

    /// Code of the central element `x ⊗ y`.
    pub fn tensor_element(&self, x: u64, y: u64) -> u64 {
        self.outer_bits(x, y) << (2 * self.n)
    }

    pub fn x_elements(&self) -> Vec<u64> {
        (0..1u64 << self.n).map(|x| self.x_element(x)).collect()
    }

    pub fn y_elements(&self) -> Vec<u64> {
        (0..1u64 << self.n).map(|y| self.y_element(y)).collect()
    }

    /// `S = (X ∪ Y) \ {0}`, sorted.
    pub fn connection_set(&self) -> Vec<u64> {
        let mut s: Vec<u64> = (1..1u64 << self.n)
            .flat_map(|v| [self.x_element(v), self.y_element(v)])
            .collect();
        s.sort_unstable();
        s
    }

    /// The pure tensors `{(0, 0, A)}`, sorted.
    pub fn tensor_subgroup(&self) -> Vec<u64> {
        (0..1u64 << (self.n * self.n)).map(|a| a << (2 * self.n)).collect()
    }

    /// Image of `code` under `M ∈ GL(X)`: `(Mx, y, M·A)`.
    pub fn apply_x_automorphism(&self, m: F2Mat, code: u64) -> u64 {
        let n = self.n;
        let x = m.apply(F2Vec::from_bits(n, self.x_part(code)).unwrap()).unwrap();
        let a = F2Mat::from_bits(n, self.tensor_part(code)).unwrap();
        self.compose(x.bits(), self.y_part(code), m.try_mul(a).unwrap().bits())
    }

    /// Image of `code` under `N ∈ GL(Y)`: `(x, Ny, A·Nᵀ)`.
    pub fn apply_y_automorphism(&self, m: F2Mat, code: u64) -> u64 {
        let n = self.n;
        let y = m.apply(F2Vec::from_bits(n, self.y_part(code)).unwrap()).unwrap();
        let a = F2Mat::from_bits(n, self.tensor_part(code)).unwrap();
        self.compose(self.x_part(code), y.bits(), a.try_mul(m.transpose()).unwrap().bits())
    }

    /// The swap automorphism: exchanges `e_i` and `f_i` and inverts, so
    /// `(a, b, C) ↦ (b, a, Cᵀ + b ⊗ a)`.
    pub fn delta(&self, code: u64) -> u64 {
        let n = self.n;
        let (x, y) = (self.x_part(code), self.y_part(code));
        let c = F2Mat::from_bits(n, self.tensor_part(code)).unwrap();
        let a = c.transpose().bits() ^ self.outer_bits(y, x);
        self.compose(y, x, a)
    }
}

impl FiniteGroup for IGroup {
    fn order(&self) -> u64 {
        1 << self.code_bits()
    }

    fn identity(&self) -> u64 {
        0
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        a ^ b ^ self.outer_bits(self.x_part(b), self.y_part(a)) << (2 * self.n)
    }

    #[inline]
    fn inv(&self, a: u64) -> u64 {
        a ^ self.outer_bits(self.x_part(a), self.y_part(a)) << (2 * self.n)
    }

    fn x_generators(&self) -> Vec<u64> {
        (0..self.n).map(|i| self.x_element(1 << i)).collect()
    }

    fn y_generators(&self) -> Vec<u64> {
        (0..self.n).map(|i| self.y_element(1 << i)).collect()
    }

    fn commutator(&self, a: u64, b: u64) -> u64 {
        let (x1, y1, x2, y2) = (self.x_part(a), self.y_part(a), self.x_part(b), self.y_part(b));
        (self.outer_bits(x1, y2) ^ self.outer_bits(x2, y1)) << (2 * self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(n: usize, i: usize) -> GroupElement {
        GroupElement::new(
            F2Vec::basis(n, i).unwrap(),
            F2Vec::zero(n).unwrap(),
            F2Mat::zero(n).unwrap(),
        )
        .unwrap()
    }

    fn f(n: usize, j: usize) -> GroupElement {
        GroupElement::new(
            F2Vec::zero(n).unwrap(),
            F2Vec::basis(n, j).unwrap(),
            F2Mat::zero(n).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let h = IGroup::new(2).unwrap();
        for g in 0..h.order() {
            assert_eq!(h.mul(g, 0), g);
            assert_eq!(h.mul(0, g), g);
        }
    }

    #[test]
    fn x_then_y_and_y_then_x() {
        let n = 2;
        let (e1, f1) = (e(n, 0), f(n, 0));
        let xy = mul(&e1, &f1).unwrap();
        assert_eq!((xy.x, xy.y), (e1.x, f1.y));
        assert!(xy.a.is_zero());
        let yx = mul(&f1, &e1).unwrap();
        assert_eq!(yx.a, outer(e1.x, f1.y).unwrap());
    }

    #[test]
    fn inverse_formula() {
        let h = IGroup::new(2).unwrap();
        assert_eq!(inv(&GroupElement::identity(2).unwrap()), GroupElement::identity(2).unwrap());
        for code in 0..h.order() {
            let g = h.decode(code);
            let gi = inv(&g);
            assert_eq!(gi.a, g.a + outer(g.x, g.y).unwrap());
            assert_eq!(mul(&g, &gi).unwrap(), GroupElement::identity(2).unwrap());
            assert_eq!(h.inv(code), gi.encode());
            // Self-inverse exactly when the tensor x ⊗ y vanishes.
            assert_eq!(h.inv(code) == code, outer(g.x, g.y).unwrap().is_zero());
        }
    }

    #[test]
    fn commutator_examples() {
        let n = 2;
        let c = commutator(&e(n, 0), &f(n, 1)).unwrap();
        assert!(c.x.is_zero() && c.y.is_zero());
        assert_eq!(c.a, outer(e(n, 0).x, f(n, 1).y).unwrap());

        let g = GroupElement::decode(n, 0b1011_0110).unwrap();
        assert_eq!(commutator(&g, &g).unwrap(), GroupElement::identity(n).unwrap());

        let e12 = mul(&e(n, 0), &e(n, 1)).unwrap();
        let c = commutator(&e12, &f(n, 0)).unwrap();
        assert_eq!(c.a, outer(e12.x, f(n, 0).y).unwrap());
        assert!(c.x.is_zero() && c.y.is_zero());
    }

    #[test]
    fn associativity_exhaustive_n2() {
        let h = IGroup::new(2).unwrap();
        for a in 0..256 {
            for b in 0..256 {
                let ab = h.mul(a, b);
                for c in 0..256 {
                    assert_eq!(h.mul(ab, c), h.mul(a, h.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn dimension_errors() {
        assert!(IGroup::new(0).is_err());
        assert!(IGroup::new(8).is_err());
        assert!(mul(&e(2, 0), &e(3, 0)).is_err());
        assert!(GroupElement::decode(2, 256).is_err());
    }

    #[test]
    fn delta_on_e1_plus_f1() {
        let h = IGroup::new(2).unwrap();
        let g = h.compose(1, 1, 0);
        assert_eq!(h.delta(g), h.compose(1, 1, h.tensor_part(h.tensor_element(1, 1))));
        for code in 0..h.order() {
            assert_eq!(h.delta(h.delta(code)), code);
        }
    }

    proptest! {
        #[test]
        fn code_matches_struct_arithmetic(n in 1usize..=7, a in any::<u64>(), b in any::<u64>()) {
            let h = IGroup::new(n).unwrap();
            let (a, b) = (a & (h.order() - 1), b & (h.order() - 1));
            let (ga, gb) = (h.decode(a), h.decode(b));
            prop_assert_eq!(ga.encode(), a);
            prop_assert_eq!(h.mul(a, b), mul(&ga, &gb).unwrap().encode());
            prop_assert_eq!(h.inv(a), inv(&ga).encode());
            prop_assert_eq!(h.commutator(a, b), commutator(&ga, &gb).unwrap().encode());
        }

        #[test]
        fn commutator_ignores_tensor_parts(n in 2usize..=4, a in any::<u64>(), b in any::<u64>(), t1 in any::<u64>(), t2 in any::<u64>()) {
            let h = IGroup::new(n).unwrap();
            let mask = h.order() - 1;
            let tmask = ((1u64 << (n * n)) - 1) << (2 * n);
            let (a, b) = (a & mask, b & mask);
            let (a2, b2) = (a ^ (t1 & tmask), b ^ (t2 & tmask));
            prop_assert_eq!(FiniteGroup::commutator(&h, a, b), FiniteGroup::commutator(&h, a2, b2));
        }
    }
}
