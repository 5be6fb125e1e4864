//! Finite groups with dense integer element codes.
//!
//! Every backend numbers its elements `0..order()`, so an element code is
//! also a vertex index in any Cayley graph built on the group. Closures are
//! computed by worklist BFS over codes, which lets one engine serve `I(n)`,
//! dihedral products and explicit multiplication tables.

mod analysis;
mod dihedral;
mod igroup;
mod table;

pub use analysis::{
    center, cosets, derived_subgroup, is_mixed_dihedral, max_coset_intersection,
    verify_presentation, verify_presentation_in, Abelianization, CosetPartition,
    MixedDihedralFailure, MixedDihedralReport, PresentationReport,
};
pub use dihedral::DihedralProduct;
pub use igroup::{commutator, inv, mul, GroupElement, IGroup, MAX_IGROUP_DIM};
pub use table::TableGroup;

use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::{Budget, Error, Result};

/// A finite group whose elements are the codes `0..order()`.
pub trait FiniteGroup {
    fn order(&self) -> u64;
    fn identity(&self) -> u64;
    fn mul(&self, a: u64, b: u64) -> u64;
    fn inv(&self, a: u64) -> u64;
    /// Generators of the distinguished subgroup `X`.
    fn x_generators(&self) -> Vec<u64>;
    /// Generators of the distinguished subgroup `Y`.
    fn y_generators(&self) -> Vec<u64>;

    /// A generating set for the whole group; `X ∪ Y` unless a backend knows better.
    fn generators(&self) -> Vec<u64> {
        let mut g = self.x_generators();
        g.extend(self.y_generators());
        g
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    fn commutator(&self, a: u64, b: u64) -> u64 {
        let left = self.mul(self.inv(a), self.inv(b));
        self.mul(self.mul(left, a), b)
    }

    /// `g⁻¹ a g`.
    fn conjugate(&self, a: u64, g: u64) -> u64 {
        self.mul(self.mul(self.inv(g), a), g)
    }

    fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn element_order(&self, a: u64) -> u64 {
        let id = self.identity();
        let mut k = 1;
        let mut x = a;
        while x != id {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
}

/// Which backend a group value uses.
#[derive(Clone, Debug)]
pub enum AnyGroup {
    I(IGroup),
    Dihedral(DihedralProduct),
    Table(TableGroup),
}

impl FiniteGroup for AnyGroup {
    fn order(&self) -> u64 {
        match self {
            AnyGroup::I(g) => g.order(),
            AnyGroup::Dihedral(g) => g.order(),
            AnyGroup::Table(g) => g.order(),
        }
    }
    fn identity(&self) -> u64 {
        match self {
            AnyGroup::I(g) => g.identity(),
            AnyGroup::Dihedral(g) => g.identity(),
            AnyGroup::Table(g) => g.identity(),
        }
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        match self {
            AnyGroup::I(g) => g.mul(a, b),
            AnyGroup::Dihedral(g) => g.mul(a, b),
            AnyGroup::Table(g) => g.mul(a, b),
        }
    }
    fn inv(&self, a: u64) -> u64 {
        match self {
            AnyGroup::I(g) => g.inv(a),
            AnyGroup::Dihedral(g) => g.inv(a),
            AnyGroup::Table(g) => g.inv(a),
        }
    }
    fn x_generators(&self) -> Vec<u64> {
        match self {
            AnyGroup::I(g) => g.x_generators(),
            AnyGroup::Dihedral(g) => g.x_generators(),
            AnyGroup::Table(g) => g.x_generators(),
        }
    }
    fn y_generators(&self) -> Vec<u64> {
        match self {
            AnyGroup::I(g) => g.y_generators(),
            AnyGroup::Dihedral(g) => g.y_generators(),
            AnyGroup::Table(g) => g.y_generators(),
        }
    }
    fn generators(&self) -> Vec<u64> {
        match self {
            AnyGroup::I(g) => g.generators(),
            AnyGroup::Dihedral(g) => g.generators(),
            AnyGroup::Table(g) => g.generators(),
        }
    }
}

/// A subgroup stored as its sorted element list together with generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub elements: Vec<u64>,
    pub generators: Vec<u64>,
}

impl Subgroup {
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn contains(&self, g: u64) -> bool {
        self.elements.binary_search(&g).is_ok()
    }
}

fn check_budget<G: FiniteGroup + ?Sized>(group: &G, budget: &Budget) -> Result<()> {
    if group.order() > budget.max_elements {
        return Err(Error::BudgetExceeded {
            what: "group enumeration",
            limit: budget.max_elements,
        });
    }
    Ok(())
}

/// Sorted elements of the subgroup generated by `gens`.
pub fn closure<G: FiniteGroup + ?Sized>(group: &G, gens: &[u64], budget: &Budget) -> Result<Vec<u64>> {
    check_budget(group, budget)?;
    let mut seen = BitSet::new(group.order() as usize);
    let id = group.identity();
    seen.insert(id as usize);
    let mut elements = alloc::vec![id];
    let mut next = 0;
    while next < elements.len() {
        let g = elements[next];
        next += 1;
        for &s in gens {
            let h = group.mul(g, s);
            if seen.insert(h as usize) {
                elements.push(h);
            }
        }
    }
    elements.sort_unstable();
    Ok(elements)
}

/// The subgroup generated by `gens`.
pub fn subgroup<G: FiniteGroup + ?Sized>(group: &G, gens: &[u64], budget: &Budget) -> Result<Subgroup> {
    Ok(Subgroup {
        elements: closure(group, gens, budget)?,
        generators: gens.to_vec(),
    })
}

/// Checks that a sorted, deduplicated element set is closed under multiplication.
pub fn is_closed<G: FiniteGroup + ?Sized>(group: &G, elements: &[u64], budget: &Budget) -> Result<bool> {
    if elements.is_empty() {
        return Ok(false);
    }
    let closed = closure(group, elements, budget)?;
    Ok(closed.as_slice() == elements)
}
