use alloc::vec;
use alloc::vec::Vec;

use super::Graph;
use crate::group::{cosets, CosetPartition, FiniteGroup};
use crate::{Budget, Error, Result};

/// `Cay(G, S)` with edges `{g, sg}`; vertex `i` is the element with code `i`.
pub fn cayley_graph<G: FiniteGroup + ?Sized>(group: &G, s: &[u64]) -> Result<Graph> {
    let order = group.order();
    if order > u32::MAX as u64 {
        return Err(Error::BudgetExceeded {
            what: "graph vertices",
            limit: u32::MAX as u64,
        });
    }
    let mut conn = s.to_vec();
    conn.sort_unstable();
    conn.dedup();
    let id = group.identity();
    for &x in &conn {
        if x == id {
            return Err(Error::IdentityInConnectionSet);
        }
        if x >= order {
            return Err(Error::InvalidVertex {
                vertex: x,
                count: order as usize,
            });
        }
        if conn.binary_search(&group.inv(x)).is_err() {
            return Err(Error::NotInverseClosed { element: x });
        }
    }
    let lists = (0..order).map(|g| {
        let mut l: Vec<u32> = conn.iter().map(|&x| group.mul(x, g) as u32).collect();
        l.sort_unstable();
        l
    });
    Ok(Graph::from_sorted_lists(lists))
}

/// `Σ(H, X, Y)`: `X`-cosets (vertices `0..k`) then `Y`-cosets (`k..2k`),
/// with `Xh ~ Yg` when the cosets meet.
#[derive(Clone, Debug)]
pub struct SigmaGraph {
    pub graph: Graph,
    pub x_cosets: CosetPartition,
    pub y_cosets: CosetPartition,
}

impl SigmaGraph {
    /// Vertex of the coset `Xz`.
    pub fn x_vertex(&self, z: u64) -> u32 {
        self.x_cosets.coset_of(z) as u32
    }

    /// Vertex of the coset `Yz`.
    pub fn y_vertex(&self, z: u64) -> u32 {
        (self.x_cosets.len() + self.y_cosets.coset_of(z)) as u32
    }

    /// The edge `φ(z) = {Xz, Yz}`.
    pub fn phi(&self, z: u64) -> (u32, u32) {
        (self.x_vertex(z), self.y_vertex(z))
    }

    /// Number of `X`-coset vertices; `Y`-cosets follow.
    pub fn x_count(&self) -> usize {
        self.x_cosets.len()
    }

    /// Members of the coset at vertex `v`.
    pub fn coset(&self, v: u32) -> &[u64] {
        let k = self.x_cosets.len();
        if (v as usize) < k {
            self.x_cosets.members(v as usize)
        } else {
            self.y_cosets.members(v as usize - k)
        }
    }
}

/// Builds `Σ(H, X, Y)` from the sorted element lists of `X` and `Y`.
pub fn sigma_graph<G: FiniteGroup + ?Sized>(group: &G, x: &[u64], y: &[u64], budget: &Budget) -> Result<SigmaGraph> {
    let x_cosets = cosets(group, x, budget)?;
    let y_cosets = cosets(group, y, budget)?;
    let k = x_cosets.len();
    let mut lists = vec![Vec::new(); k + y_cosets.len()];
    for z in 0..group.order() {
        let (a, b) = (x_cosets.coset_of(z), k + y_cosets.coset_of(z));
        lists[a].push(b as u32);
        lists[b].push(a as u32);
    }
    for l in &mut lists {
        l.sort_unstable();
        l.dedup();
    }
    Ok(SigmaGraph {
        graph: Graph::from_sorted_lists(lists),
        x_cosets,
        y_cosets,
    })
}

/// For each element `z`, the index of the edge `φ(z) = {Xz, Yz}` among the
/// sorted edges `line_edges` of `Σ`. Fails unless `φ` is a bijection onto them.
pub fn phi_map<G: FiniteGroup + ?Sized>(group: &G, sigma: &SigmaGraph, line_edges: &[(u32, u32)]) -> Result<Vec<u32>> {
    let order = group.order() as usize;
    if line_edges.len() != order {
        return Err(Error::Verification(alloc::format!(
            "Σ has {} edges but the group has {order} elements",
            line_edges.len()
        )));
    }
    let mut hit = vec![false; order];
    let mut map = Vec::with_capacity(order);
    for z in 0..order as u64 {
        let e = sigma.phi(z);
        let i = line_edges
            .binary_search(&e)
            .map_err(|_| Error::Verification(alloc::format!("φ({z}) is not an edge of Σ")))?;
        if core::mem::replace(&mut hit[i], true) {
            return Err(Error::Verification(alloc::format!("φ is not injective at {z}")));
        }
        map.push(i as u32);
    }
    Ok(map)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeTag {
    X,
    Y,
}

/// Tags for the edges of a Cayley graph, aligned with [`Graph::edges`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColoring {
    pub tags: Vec<EdgeTag>,
}

impl EdgeColoring {
    pub fn count(&self, tag: EdgeTag) -> usize {
        self.tags.iter().filter(|&&t| t == tag).count()
    }
}

/// Tags each edge `{g, h}` by whether `hg⁻¹` lies in `X` or `Y`, and checks
/// that every triangle is monochromatic.
pub fn edge_coloring<G: FiniteGroup + ?Sized>(gamma: &Graph, group: &G, x: &[u64], y: &[u64]) -> Result<EdgeColoring> {
    let mut tags = Vec::with_capacity(gamma.edge_count());
    let tag_of = |g: u32, h: u32| -> Result<EdgeTag> {
        let d = group.mul(h as u64, group.inv(g as u64));
        if x.binary_search(&d).is_ok() {
            Ok(EdgeTag::X)
        } else if y.binary_search(&d).is_ok() {
            Ok(EdgeTag::Y)
        } else {
            Err(Error::EdgeOutsideConnectionSet { edge: (g, h) })
        }
    };
    for (g, h) in gamma.edges() {
        tags.push(tag_of(g, h)?);
    }
    for (u, v) in gamma.edges() {
        let t = tag_of(u, v)?;
        for &w in gamma.neighbors(v) {
            if w > v && gamma.has_edge(u, w) && (tag_of(u, w)? != t || tag_of(v, w)? != t) {
                return Err(Error::Verification(alloc::format!(
                    "triangle {{{u}, {v}, {w}}} is not monochromatic"
                )));
            }
        }
    }
    Ok(EdgeColoring { tags })
}
