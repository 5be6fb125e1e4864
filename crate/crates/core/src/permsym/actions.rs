use alloc::format;
use alloc::vec::Vec;

use super::Permutation;
use crate::bitlin::gl_generators;
use crate::graphs::{Graph, SigmaGraph};
use crate::group::{FiniteGroup, IGroup};
use crate::{Error, Result};

fn check_vertex_count(order: u64) -> Result<()> {
    if order > u32::MAX as u64 {
        return Err(Error::BudgetExceeded {
            what: "permutation degree",
            limit: u32::MAX as u64,
        });
    }
    Ok(())
}

/// `R(s): x ↦ xs` for each generator `s` of the group.
pub fn right_mult_action<G: FiniteGroup + ?Sized>(group: &G) -> Result<Vec<Permutation>> {
    check_vertex_count(group.order())?;
    Ok(group
        .generators()
        .into_iter()
        .map(|s| right_mult(group, s))
        .collect())
}

/// `R(g)` for a single element.
pub fn right_mult<G: FiniteGroup + ?Sized>(group: &G, g: u64) -> Permutation {
    Permutation::from_images_unchecked((0..group.order()).map(|x| group.mul(x, g) as u32).collect())
}

fn element_map(h: &IGroup, f: impl Fn(u64) -> u64) -> Permutation {
    Permutation::from_images_unchecked((0..h.order()).map(|c| f(c) as u32).collect())
}

/// Automorphisms of `I(n)` preserving `S = (X ∪ Y) \ {0}`, as permutations of
/// the vertices of `gamma = C(I(n), X, Y)`: one lift per transvection acting
/// on `X`, one per transvection acting on `Y`, then the swap `δ`. Each is
/// checked to fix `0`, preserve `S` and preserve every edge of `gamma`.
pub fn aut_hxy_generators(h: &IGroup, gamma: &Graph) -> Result<Vec<Permutation>> {
    check_vertex_count(h.order())?;
    if gamma.vertex_count() as u64 != h.order() {
        return Err(Error::DegreeMismatch {
            left: gamma.vertex_count(),
            right: h.order() as usize,
        });
    }
    let n = h.dim();
    let transvections = if n >= 2 { gl_generators(n)? } else { Vec::new() };
    let mut out = Vec::with_capacity(2 * transvections.len() + 1);
    for &m in &transvections {
        out.push(element_map(h, |c| h.apply_x_automorphism(m, c)));
    }
    for &m in &transvections {
        out.push(element_map(h, |c| h.apply_y_automorphism(m, c)));
    }
    out.push(element_map(h, |c| h.delta(c)));

    let s = h.connection_set();
    for (i, p) in out.iter().enumerate() {
        if p.apply(0) != 0 {
            return Err(Error::Verification(format!("generator {i} moves the identity")));
        }
        let mut image: Vec<u64> = s.iter().map(|&x| p.apply(x as u32) as u64).collect();
        image.sort_unstable();
        if image != s {
            return Err(Error::Verification(format!("generator {i} does not preserve S")));
        }
        if let Some(edge) = gamma.edges().find(|&(u, v)| !gamma.has_edge(p.apply(u), p.apply(v))) {
            return Err(Error::NotAutomorphism { generator: i, edge });
        }
    }
    Ok(out)
}

/// The permutation of `Σ` induced by a permutation of group elements that
/// maps cosets of `X` and `Y` to cosets of `X` or `Y`.
pub fn induced_action_on_sigma(sigma: &SigmaGraph, p: &Permutation) -> Result<Permutation> {
    let n = sigma.graph.vertex_count();
    let mut images = Vec::with_capacity(n);
    for v in 0..n as u32 {
        let members = sigma.coset(v);
        let first = p.apply(members[0] as u32) as u64;
        let xv = sigma.x_vertex(first);
        let yv = sigma.y_vertex(first);
        let image = if members.iter().all(|&m| sigma.x_vertex(p.apply(m as u32) as u64) == xv) {
            xv
        } else if members.iter().all(|&m| sigma.y_vertex(p.apply(m as u32) as u64) == yv) {
            yv
        } else {
            return Err(Error::NotCosetImage { vertex: v });
        };
        images.push(image);
    }
    Permutation::from_images(images)
}

/// The action on blocks of a permutation preserving the partition `block_of`.
pub fn quotient_action(p: &Permutation, block_of: &[u32], blocks: usize) -> Result<Permutation> {
    let mut images = alloc::vec![u32::MAX; blocks];
    for (v, &b) in block_of.iter().enumerate() {
        let ib = block_of[p.apply(v as u32) as usize];
        if images[b as usize] == u32::MAX {
            images[b as usize] = ib;
        } else if images[b as usize] != ib {
            return Err(Error::InvalidPartition(format!("block {b} is not mapped to a single block")));
        }
    }
    Permutation::from_images(images)
}
