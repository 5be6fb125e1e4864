use alloc::vec::Vec;

use super::FiniteGroup;
use crate::{Error, Result};

/// `D_{2m₁} × … × D_{2m_n}` with `X = ⟨x₁,…,x_n⟩` and `Y = ⟨y₁,…,y_n⟩`,
/// where each factor is `⟨x, y | x² = y² = (xy)^m = 1⟩`.
///
/// A factor element `ρᵏ sᶠ` has digit `2k + f`; the group code is the
/// mixed-radix number whose `i`-th digit has radix `2m_i`. The flip is
/// `x_i = s` and `y_i = x_i ρ_i`.
#[derive(Clone, Debug)]
pub struct DihedralProduct {
    ms: Vec<u64>,
    radix: Vec<u64>,
    order: u64,
}

impl DihedralProduct {
    pub fn new(ms: &[u64]) -> Result<Self> {
        if ms.is_empty() || ms.contains(&0) {
            return Err(Error::InvalidDimension {
                dim: ms.len(),
                min: 1,
                max: usize::MAX,
            });
        }
        let mut radix = Vec::with_capacity(ms.len());
        let mut order: u64 = 1;
        for &m in ms {
            radix.push(order);
            order = order
                .checked_mul(2 * m)
                .ok_or(Error::BudgetExceeded {
                    what: "dihedral product order",
                    limit: u64::MAX,
                })?;
        }
        Ok(DihedralProduct {
            ms: ms.to_vec(),
            radix,
            order,
        })
    }

    pub fn factors(&self) -> &[u64] {
        &self.ms
    }

    fn digit(&self, code: u64, i: usize) -> (u64, u64) {
        let d = code / self.radix[i] % (2 * self.ms[i]);
        (d / 2, d % 2)
    }

    fn with_digit(&self, code: u64, i: usize, k: u64, f: u64) -> u64 {
        let (ok, of) = self.digit(code, i);
        code - (2 * ok + of) * self.radix[i] + (2 * k + f) * self.radix[i]
    }

    /// Code of the element with a single non-identity factor `ρᵏ sᶠ` at position `i`.
    pub fn factor_element(&self, i: usize, k: u64, f: u64) -> u64 {
        (2 * (k % self.ms[i]) + (f & 1)) * self.radix[i]
    }
}

impl FiniteGroup for DihedralProduct {
    fn order(&self) -> u64 {
        self.order
    }

    fn identity(&self) -> u64 {
        0
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        let mut out = 0;
        for i in 0..self.ms.len() {
            let m = self.ms[i];
            let (k1, f1) = self.digit(a, i);
            let (k2, f2) = self.digit(b, i);
            // ρ^k1 s^f1 ρ^k2 s^f2 = ρ^(k1 ± k2) s^(f1+f2)
            let k = if f1 == 0 { (k1 + k2) % m } else { (k1 + m - k2) % m };
            out = self.with_digit(out, i, k, f1 ^ f2);
        }
        out
    }

    fn inv(&self, a: u64) -> u64 {
        let mut out = 0;
        for i in 0..self.ms.len() {
            let m = self.ms[i];
            let (k, f) = self.digit(a, i);
            let k = if f == 0 { (m - k) % m } else { k };
            out = self.with_digit(out, i, k, f);
        }
        out
    }

    fn x_generators(&self) -> Vec<u64> {
        (0..self.ms.len()).map(|i| self.factor_element(i, 0, 1)).collect()
    }

    fn y_generators(&self) -> Vec<u64> {
        // x_i ρ_i = s ρ = ρ^{-1} s
        (0..self.ms.len())
            .map(|i| self.factor_element(i, self.ms[i] - 1, 1))
            .collect()
    }
}
