use alloc::format;
use alloc::vec::Vec;

use super::FiniteGroup;
use crate::{Error, Result};

/// A group given by its full multiplication table.
#[derive(Clone, Debug)]
pub struct TableGroup {
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    identity: u32,
    x_gens: Vec<u64>,
    y_gens: Vec<u64>,
}

impl TableGroup {
    /// `table[a * order + b]` is `a·b`. Checks closure, identity, inverses and
    /// associativity.
    pub fn new(order: usize, table: Vec<u32>, x_gens: Vec<u64>, y_gens: Vec<u64>) -> Result<Self> {
        if order == 0 || table.len() != order * order {
            return Err(Error::Verification(format!(
                "table of length {} does not describe a group of order {order}",
                table.len()
            )));
        }
        if table.iter().any(|&c| c as usize >= order) {
            return Err(Error::Verification("table entry out of range".into()));
        }
        let at = |a: usize, b: usize| table[a * order + b] as usize;
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| at(e, g) == g && at(g, e) == g))
            .ok_or_else(|| Error::Verification("no identity".into()))?;
        let mut inverses = Vec::with_capacity(order);
        for g in 0..order {
            let inv = (0..order)
                .find(|&h| at(g, h) == identity)
                .ok_or_else(|| Error::Verification(format!("element {g} has no inverse")))?;
            inverses.push(inv as u32);
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(Error::Verification(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        if x_gens.iter().chain(&y_gens).any(|&g| g as usize >= order) {
            return Err(Error::Verification("generator out of range".into()));
        }
        Ok(TableGroup {
            order,
            table,
            inverses,
            identity: identity as u32,
            x_gens,
            y_gens,
        })
    }

    pub fn trivial() -> Self {
        TableGroup::new(1, alloc::vec![0], Vec::new(), Vec::new()).expect("trivial group")
    }

    /// The cyclic group `C_k` with `X` generated by `1` and `Y` trivial.
    pub fn cyclic(k: usize) -> Result<Self> {
        let table = (0..k * k).map(|i| ((i / k + i % k) % k) as u32).collect();
        TableGroup::new(k, table, alloc::vec![1 % k as u64], Vec::new())
    }
}

impl FiniteGroup for TableGroup {
    fn order(&self) -> u64 {
        self.order as u64
    }
    fn identity(&self) -> u64 {
        self.identity as u64
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.table[a as usize * self.order + b as usize] as u64
    }
    fn inv(&self, a: u64) -> u64 {
        self.inverses[a as usize] as u64
    }
    fn x_generators(&self) -> Vec<u64> {
        self.x_gens.clone()
    }
    fn y_generators(&self) -> Vec<u64> {
        self.y_gens.clone()
    }
}
