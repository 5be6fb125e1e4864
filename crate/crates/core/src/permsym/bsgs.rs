//! Deterministic incremental Schreier-Sims.
//!
//! Transversals are Schreier vectors over a shared list of strong
//! generators. Schreier generators are never multiplied out: a sift only
//! follows the images of the base points through the word
//! `u_p · s · u_{ps}⁻¹ · (transversal inverses)`. With a certified base, on
//! which only the identity of the group acts trivially, a word that fixes
//! every base point is the identity, so permutations are built only for new
//! strong generators. Without certification each surviving word is built
//! and compared with the identity.

use alloc::vec;
use alloc::vec::Vec;
use core::borrow::Borrow;

use super::Permutation;
use crate::{Budget, Error, Result};

const NONE: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;
const INV: u32 = 1 << 31;

/// Base choice for [`Bsgs::new`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BsgsOptions {
    /// Initial base points, used in order. More are added (smallest moved
    /// point first) only when `certified` is false.
    pub base: Vec<u32>,
    /// The caller guarantees that only the identity of the group fixes every
    /// point of `base`, e.g. because the group consists of automorphisms of a
    /// graph and individualizing `base` refines to a discrete partition.
    pub certified: bool,
}

#[derive(Clone, Debug)]
struct Level {
    point: u32,
    gens: Vec<u32>,
    orbit: Vec<u32>,
    /// Strong generator that reached each orbit point from its parent.
    tree: Vec<u32>,
    /// Per orbit position, how many of `gens` have been paired with it.
    checked: Vec<u32>,
    cursor: usize,
}

impl Level {
    fn new(point: u32, degree: usize) -> Self {
        let mut tree = vec![NONE; degree];
        tree[point as usize] = ROOT;
        Level {
            point,
            gens: Vec::new(),
            orbit: vec![point],
            tree,
            checked: vec![0],
            cursor: 0,
        }
    }

    fn add_generator(&mut self, gi: u32, strong: &[Permutation]) {
        self.gens.push(gi);
        self.cursor = 0;
        let old = self.orbit.len();
        for idx in 0..old {
            let q = strong[gi as usize].apply(self.orbit[idx]);
            if self.tree[q as usize] == NONE {
                self.tree[q as usize] = gi;
                self.orbit.push(q);
                self.checked.push(0);
            }
        }
        let mut idx = old;
        while idx < self.orbit.len() {
            let p = self.orbit[idx];
            for &g in &self.gens {
                let q = strong[g as usize].apply(p);
                if self.tree[q as usize] == NONE {
                    self.tree[q as usize] = g;
                    self.orbit.push(q);
                    self.checked.push(0);
                }
            }
            idx += 1;
        }
    }

    fn next_pair(&mut self) -> Option<(u32, u32)> {
        while self.cursor < self.orbit.len() {
            let c = self.checked[self.cursor] as usize;
            if c < self.gens.len() {
                self.checked[self.cursor] += 1;
                return Some((self.orbit[self.cursor], self.gens[c]));
            }
            self.cursor += 1;
        }
        None
    }
}

/// A base and strong generating set.
#[derive(Clone, Debug)]
pub struct Bsgs {
    degree: usize,
    certified: bool,
    strong: Vec<Permutation>,
    strong_inv: Vec<Permutation>,
    levels: Vec<Level>,
    sifts: u64,
}

impl Bsgs {
    pub fn new<P: Borrow<Permutation>>(degree: usize, gens: &[P], opts: &BsgsOptions, budget: &Budget) -> Result<Self> {
        for g in gens {
            if g.borrow().degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: g.borrow().degree(),
                    right: degree,
                });
            }
        }
        let mut b = Bsgs {
            degree,
            certified: opts.certified,
            strong: Vec::new(),
            strong_inv: Vec::new(),
            levels: Vec::new(),
            sifts: 0,
        };
        for &p in &opts.base {
            if p as usize >= degree {
                return Err(Error::InvalidVertex {
                    vertex: p as u64,
                    count: degree,
                });
            }
            if b.levels.iter().all(|l| l.point != p) {
                b.levels.push(Level::new(p, degree));
            }
        }
        for g in gens {
            let g = g.borrow();
            if g.is_identity() || b.strong.contains(g) {
                continue;
            }
            let first = b.levels.iter().position(|l| g.apply(l.point) != l.point);
            let top = match first {
                Some(j) => j,
                None if b.certified => {
                    return Err(Error::Verification(
                        "a non-identity generator fixes the certified base".into(),
                    ))
                }
                None => {
                    let p = g.first_moved().expect("non-identity");
                    b.levels.push(Level::new(p, degree));
                    b.levels.len() - 1
                }
            };
            b.add_strong(g.clone(), 0, top);
        }
        b.schreier_sims(budget)?;
        Ok(b)
    }

    fn add_strong(&mut self, g: Permutation, from: usize, to: usize) {
        let gi = self.strong.len() as u32;
        self.strong_inv.push(g.inverse());
        self.strong.push(g);
        for l in from..=to {
            self.levels[l].add_generator(gi, &self.strong);
        }
    }

    #[inline]
    fn letter(&self, l: u32, x: u32) -> u32 {
        if l & INV == 0 {
            self.strong[l as usize].apply(x)
        } else {
            self.strong_inv[(l & !INV) as usize].apply(x)
        }
    }

    /// Letters of `u_p⁻¹` at level `j`, in application order.
    fn push_inverse_path(&self, j: usize, mut p: u32, word: &mut Vec<u32>) {
        let level = &self.levels[j];
        while p != level.point {
            let gi = level.tree[p as usize];
            word.push(gi | INV);
            p = self.strong_inv[gi as usize].apply(p);
        }
    }

    fn materialize(&self, word: &[u32]) -> Permutation {
        let images = (0..self.degree as u32)
            .map(|x| word.iter().fold(x, |y, &l| self.letter(l, y)))
            .collect();
        Permutation::from_images_unchecked(images)
    }

    /// Sifts the word through levels `from..`. Returns the level at which a
    /// non-trivial residue drops out, with the residue.
    fn sift_word(&self, mut word: Vec<u32>, from: usize) -> Option<(usize, Permutation)> {
        let k = self.levels.len();
        let mut imgs: Vec<u32> = self.levels[from..]
            .iter()
            .map(|l| word.iter().fold(l.point, |y, &w| self.letter(w, y)))
            .collect();
        for j in from..k {
            let level = &self.levels[j];
            let mut p = imgs[j - from];
            if level.tree[p as usize] == NONE {
                return Some((j, self.materialize(&word)));
            }
            while p != level.point {
                let gi = level.tree[p as usize];
                word.push(gi | INV);
                let inv = &self.strong_inv[gi as usize];
                for x in &mut imgs[j - from..] {
                    *x = inv.apply(*x);
                }
                p = imgs[j - from];
            }
        }
        if self.certified {
            return None;
        }
        let h = self.materialize(&word);
        (!h.is_identity()).then_some((k, h))
    }

    fn schreier_sims(&mut self, budget: &Budget) -> Result<()> {
        let mut i = self.levels.len() as isize - 1;
        let mut word = Vec::new();
        while i >= 0 {
            let li = i as usize;
            let Some((p, gi)) = self.levels[li].next_pair() else {
                i -= 1;
                continue;
            };
            let q = self.strong[gi as usize].apply(p);
            let level = &self.levels[li];
            if level.tree[q as usize] == gi && self.strong_inv[gi as usize].apply(q) == p {
                continue;
            }
            self.sifts += 1;
            if self.sifts > budget.max_sifts {
                return Err(Error::BudgetExceeded {
                    what: "Schreier generators",
                    limit: budget.max_sifts,
                });
            }
            // u_p, then s, then u_q⁻¹.
            word.clear();
            let mut x = p;
            while x != level.point {
                let g = level.tree[x as usize];
                word.push(g);
                x = self.strong_inv[g as usize].apply(x);
            }
            word.reverse();
            word.push(gi);
            self.push_inverse_path(li, q, &mut word);
            if li + 1 == self.levels.len() && self.certified {
                continue;
            }
            if let Some((j, h)) = self.sift_word(word.clone(), li + 1) {
                if j == self.levels.len() {
                    let p = h.first_moved().expect("residue is not the identity");
                    self.levels.push(Level::new(p, self.degree));
                }
                self.add_strong(h, li + 1, j);
                i = j as isize;
            }
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<u64> {
        self.levels.iter().map(|l| l.orbit.len() as u64).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Fundamental orbit of level `i`, in discovery order.
    pub fn fundamental_orbit(&self, i: usize) -> &[u32] {
        &self.levels[i].orbit
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    /// Strong generators fixing the first `i` base points; they generate
    /// that pointwise stabilizer.
    pub fn level_generators(&self, i: usize) -> impl Iterator<Item = &Permutation> + '_ {
        self.levels
            .get(i)
            .into_iter()
            .flat_map(move |l| l.gens.iter().map(move |&g| &self.strong[g as usize]))
    }

    /// Number of Schreier generators sifted.
    pub fn sifts(&self) -> u64 {
        self.sifts
    }

    /// Coset representative mapping base point `i` to `p`.
    pub fn transversal(&self, i: usize, p: u32) -> Option<Permutation> {
        let level = &self.levels[i];
        if level.tree[p as usize] == NONE {
            return None;
        }
        let mut word = Vec::new();
        let mut x = p;
        while x != level.point {
            let g = level.tree[x as usize];
            word.push(g);
            x = self.strong_inv[g as usize].apply(x);
        }
        word.reverse();
        Some(self.materialize(&word))
    }

    /// Membership by sifting the full permutation.
    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let mut h = g.clone();
        for level in &self.levels {
            let mut p = h.apply(level.point);
            if level.tree[p as usize] == NONE {
                return false;
            }
            while p != level.point {
                let gi = level.tree[p as usize] as usize;
                h = h.then(&self.strong_inv[gi]);
                p = h.apply(level.point);
            }
        }
        h.is_identity()
    }
}
