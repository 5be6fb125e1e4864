//! Permutation groups acting on graph vertices: orbits, Schreier-Sims,
//! the known automorphisms of `C(I(n), X, Y)` and `Σ`, and the symmetry checks
//! built on them.

mod actions;
mod bsgs;
mod structure;

pub use actions::{aut_hxy_generators, induced_action_on_sigma, quotient_action, right_mult, right_mult_action};
pub use bsgs::{Bsgs, BsgsOptions};
pub use structure::{
    distance_diagram, edge_affine_witness, line_graph_as_cayley, transitivity_report, DiagramCell,
    DistanceDiagram, EdgeAffineWitness, LineCayley, TransitivityReport,
};

use alloc::vec;
use alloc::vec::Vec;
use core::borrow::Borrow;

use crate::graphs::check_bijection;
use crate::Result;

/// A permutation of `0..n`, acting on the right: `(p.then(q)).apply(x) = q.apply(p.apply(x))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        check_bijection(&images, images.len())?;
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(check_bijection(&images, images.len()).is_ok());
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x as u32 == y)
    }

    pub fn first_moved(&self) -> Option<u32> {
        self.images.iter().enumerate().find(|&(x, &y)| x as u32 != y).map(|(x, _)| x as u32)
    }

    /// `g⁻¹ self g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().then(self).then(g)
    }
}

/// The orbit of `point`, in breadth-first order.
pub fn orbit<P: Borrow<Permutation>>(point: u32, gens: &[P], degree: usize) -> Vec<u32> {
    let mut seen = vec![false; degree];
    seen[point as usize] = true;
    let mut out = vec![point];
    let mut head = 0;
    while head < out.len() {
        let x = out[head];
        head += 1;
        for g in gens {
            let y = g.borrow().apply(x);
            if !seen[y as usize] {
                seen[y as usize] = true;
                out.push(y);
            }
        }
    }
    out
}

/// Orbit partition of `0..degree`, each orbit sorted, orbits ordered by least element.
pub fn orbits<P: Borrow<Permutation>>(gens: &[P], degree: usize) -> Vec<Vec<u32>> {
    let mut uf = UnionFind::new(degree);
    for g in gens {
        for x in 0..degree as u32 {
            uf.union(x, g.borrow().apply(x));
        }
    }
    uf.classes()
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
    count: usize,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            count: n,
        }
    }

    pub(crate) fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = p;
            x = p;
        }
        x
    }

    pub(crate) fn union(&mut self, a: u32, b: u32) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a as usize] < self.size[b as usize] {
            core::mem::swap(&mut a, &mut b);
        }
        self.parent[b as usize] = a;
        self.size[a as usize] += self.size[b as usize];
        self.count -= 1;
    }

    pub(crate) fn count(&self) -> usize {
        self.count
    }

    pub(crate) fn classes(&mut self) -> Vec<Vec<u32>> {
        let n = self.parent.len();
        let mut index = vec![u32::MAX; n];
        let mut out: Vec<Vec<u32>> = Vec::new();
        for x in 0..n as u32 {
            let r = self.find(x) as usize;
            if index[r] == u32::MAX {
                index[r] = out.len() as u32;
                out.push(Vec::new());
            }
            out[index[r] as usize].push(x);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_acts_on_the_right() {
        let p = Permutation::from_images(vec![1, 2, 0]).unwrap();
        let q = Permutation::from_images(vec![0, 2, 1]).unwrap();
        assert_eq!(p.then(&q).images(), &[2, 1, 0]);
        assert!(p.then(&p.inverse()).is_identity());
        assert_eq!(p.conjugate_by(&q).then(&q.inverse().then(&p).then(&q).inverse()).first_moved(), None);
        assert!(Permutation::from_images(vec![0, 0]).is_err());
    }

    #[test]
    fn orbit_partitions() {
        assert_eq!(orbits::<Permutation>(&[], 3), [vec![0], vec![1], vec![2]]);
        let p = Permutation::from_images(vec![1, 0, 3, 4, 2]).unwrap();
        assert_eq!(orbits(core::slice::from_ref(&p), 5), [vec![0, 1], vec![2, 3, 4]]);
        assert_eq!(orbit(2, &[p], 5), [2, 3, 4]);
    }
}
