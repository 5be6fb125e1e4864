//! Linear algebra over `F_2` for the small dimensions the group needs.
//!
//! Vectors pack into a `u8` (bit `i` is coordinate `i`) and `n × n` matrices
//! pack row-major into a `u64` with row stride `n`, so a matrix occupies
//! exactly `n²` contiguous bits. That packing is reused verbatim as the
//! `A` block of a group element code.

use alloc::vec::Vec;
use core::fmt;
use core::ops::Add;

use crate::{Error, Result};

/// Largest supported dimension.
pub const MAX_DIM: usize = 8;

fn check_dim(dim: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&dim) {
        Ok(())
    } else {
        Err(Error::InvalidDimension {
            dim,
            min: 1,
            max: MAX_DIM,
        })
    }
}

#[inline]
fn low_mask(bits: usize) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// A vector in `F_2^n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Vec {
    dim: u8,
    bits: u8,
}

impl F2Vec {
    pub fn zero(dim: usize) -> Result<Self> {
        Self::from_bits(dim, 0)
    }

    /// Builds a vector from its low `dim` bits; higher bits must be clear.
    pub fn from_bits(dim: usize, bits: u64) -> Result<Self> {
        check_dim(dim)?;
        if bits & !low_mask(dim) != 0 {
            return Err(Error::Verification(alloc::format!(
                "bits {bits:#x} do not fit in dimension {dim}"
            )));
        }
        Ok(F2Vec {
            dim: dim as u8,
            bits: bits as u8,
        })
    }

    /// The `i`-th standard basis vector (0-indexed).
    pub fn basis(dim: usize, i: usize) -> Result<Self> {
        if i >= dim {
            return Err(Error::DimensionMismatch {
                left: i,
                right: dim,
            });
        }
        Self::from_bits(dim, 1 << i)
    }

    pub fn dim(self) -> usize {
        self.dim as usize
    }

    pub fn bits(self) -> u64 {
        self.bits as u64
    }

    pub fn get(self, i: usize) -> bool {
        i < self.dim() && self.bits >> i & 1 == 1
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    pub fn weight(self) -> u32 {
        self.bits.count_ones()
    }

    pub fn try_add(self, other: F2Vec) -> Result<F2Vec> {
        same_dim(self.dim(), other.dim())?;
        Ok(F2Vec {
            dim: self.dim,
            bits: self.bits ^ other.bits,
        })
    }

    /// Standard dot product over `F_2`.
    pub fn dot(self, other: F2Vec) -> bool {
        (self.bits & other.bits).count_ones() & 1 == 1
    }

    /// All `2^dim` vectors in increasing bit order.
    pub fn all(dim: usize) -> Result<impl Iterator<Item = F2Vec>> {
        check_dim(dim)?;
        Ok((0..1u64 << dim).map(move |b| F2Vec {
            dim: dim as u8,
            bits: b as u8,
        }))
    }
}

fn same_dim(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left, right })
    }
}

impl Add for F2Vec {
    type Output = F2Vec;

    /// Panics on dimension mismatch; use [`F2Vec::try_add`] for a checked sum.
    fn add(self, rhs: F2Vec) -> F2Vec {
        self.try_add(rhs).expect("F2Vec dimensions differ")
    }
}

impl fmt::Debug for F2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for i in 0..self.dim() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", self.get(i) as u8)?;
        }
        f.write_str(")")
    }
}

/// An `n × n` matrix over `F_2`, read as an element of `X ⊗ Y` in the basis
/// `e_i ⊗ f_j` (entry `(i, j)`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Mat {
    dim: u8,
    bits: u64,
}

impl F2Mat {
    pub fn zero(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(F2Mat {
            dim: dim as u8,
            bits: 0,
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zero(dim)?;
        for i in 0..dim {
            m.set(i, i, true);
        }
        Ok(m)
    }

    /// Builds a matrix from its packed row-major bits.
    pub fn from_bits(dim: usize, bits: u64) -> Result<Self> {
        check_dim(dim)?;
        if bits & !low_mask(dim * dim) != 0 {
            return Err(Error::Verification(alloc::format!(
                "bits {bits:#x} do not fit a {dim}x{dim} matrix"
            )));
        }
        Ok(F2Mat {
            dim: dim as u8,
            bits,
        })
    }

    pub fn from_rows(rows: &[F2Vec]) -> Result<Self> {
        let dim = rows.len();
        let mut m = Self::zero(dim)?;
        for (i, r) in rows.iter().enumerate() {
            same_dim(dim, r.dim())?;
            m.bits |= r.bits() << (i * dim);
        }
        Ok(m)
    }

    pub fn dim(self) -> usize {
        self.dim as usize
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn get(self, i: usize, j: usize) -> bool {
        let n = self.dim();
        i < n && j < n && self.bits >> (i * n + j) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let n = self.dim();
        assert!(i < n && j < n, "matrix index out of range");
        let bit = 1u64 << (i * n + j);
        if value {
            self.bits |= bit;
        } else {
            self.bits &= !bit;
        }
    }

    pub fn row(self, i: usize) -> F2Vec {
        let n = self.dim();
        F2Vec {
            dim: self.dim,
            bits: (self.bits >> (i * n) & low_mask(n)) as u8,
        }
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    pub fn try_add(self, other: F2Mat) -> Result<F2Mat> {
        same_dim(self.dim(), other.dim())?;
        Ok(F2Mat {
            dim: self.dim,
            bits: self.bits ^ other.bits,
        })
    }

    pub fn transpose(self) -> F2Mat {
        let n = self.dim();
        let mut t = F2Mat {
            dim: self.dim,
            bits: 0,
        };
        for i in 0..n {
            for j in 0..n {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    /// Matrix product `self · other`.
    pub fn try_mul(self, other: F2Mat) -> Result<F2Mat> {
        same_dim(self.dim(), other.dim())?;
        let n = self.dim();
        let mut out = F2Mat {
            dim: self.dim,
            bits: 0,
        };
        for i in 0..n {
            // Row i of the product is the sum of the rows of `other` selected by row i of `self`.
            let sel = self.row(i).bits();
            let mut acc = 0u64;
            for k in 0..n {
                if sel >> k & 1 == 1 {
                    acc ^= other.row(k).bits();
                }
            }
            out.bits |= acc << (i * n);
        }
        Ok(out)
    }

    /// `M · x` for a column vector `x`.
    pub fn apply(self, x: F2Vec) -> Result<F2Vec> {
        same_dim(self.dim(), x.dim())?;
        let mut bits = 0u64;
        for i in 0..self.dim() {
            if self.row(i).dot(x) {
                bits |= 1 << i;
            }
        }
        F2Vec::from_bits(self.dim(), bits)
    }

    pub fn rank(self) -> usize {
        let n = self.dim();
        let mut rows: Vec<u64> = (0..n).map(|i| self.row(i).bits()).collect();
        let mut rank = 0;
        for col in 0..n {
            let Some(p) = (rank..n).find(|&r| rows[r] >> col & 1 == 1) else {
                continue;
            };
            rows.swap(rank, p);
            for r in 0..n {
                if r != rank && rows[r] >> col & 1 == 1 {
                    rows[r] ^= rows[rank];
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(self) -> bool {
        self.rank() == self.dim()
    }
}

impl Add for F2Mat {
    type Output = F2Mat;

    fn add(self, rhs: F2Mat) -> F2Mat {
        self.try_add(rhs).expect("F2Mat dimensions differ")
    }
}

impl fmt::Debug for F2Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.dim() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{:?}", self.row(i))?;
        }
        f.write_str("]")
    }
}

/// The tensor `x ⊗ y`, with entry `(i, j) = x_i · y_j`.
pub fn outer(x: F2Vec, y: F2Vec) -> Result<F2Mat> {
    same_dim(x.dim(), y.dim())?;
    let n = x.dim();
    let mut bits = 0u64;
    for i in 0..n {
        if x.get(i) {
            bits |= y.bits() << (i * n);
        }
    }
    Ok(F2Mat { dim: x.dim, bits })
}

/// The elementary transvections `T_ij = I + E_ij` (`i ≠ j`), in `(i, j)`
/// lexicographic order. They generate `GL(n, 2)`.
pub fn gl_generators(n: usize) -> Result<Vec<F2Mat>> {
    if !(2..=MAX_DIM).contains(&n) {
        return Err(Error::InvalidDimension {
            dim: n,
            min: 2,
            max: MAX_DIM,
        });
    }
    let mut gens = Vec::with_capacity(n * (n - 1));
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut t = F2Mat::identity(n)?;
                t.set(i, j, true);
                gens.push(t);
            }
        }
    }
    Ok(gens)
}

/// `|GL(n, 2)| = ∏_{i<n} (2^n − 2^i)`.
pub fn gl_order(n: usize) -> u128 {
    (0..n).map(|i| (1u128 << n) - (1u128 << i)).product()
}
