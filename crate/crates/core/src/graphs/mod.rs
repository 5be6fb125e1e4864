//! Simple undirected graphs in compressed sparse row form, and the
//! constructions built on groups: Cayley graphs, coset graphs, clique and
//! line graphs, and normal quotients.

mod cayley;
mod cliques;

pub use cayley::{cayley_graph, edge_coloring, phi_map, sigma_graph, EdgeColoring, EdgeTag, SigmaGraph};
pub use cliques::{clique_graph, coset_clique_graph, line_graph, CliqueGraph, LineGraph};

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// An undirected simple graph on vertices `0..n` with sorted neighbour lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    adj: Vec<u32>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges collapse; loops are rejected.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        if n > u32::MAX as usize {
            return Err(Error::InvalidVertex {
                vertex: n as u64,
                count: u32::MAX as usize,
            });
        }
        let mut lists = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w as usize >= n {
                    return Err(Error::InvalidVertex {
                        vertex: w as u64,
                        count: n,
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { vertex: u });
            }
            lists[u as usize].push(v);
            lists[v as usize].push(u);
        }
        Ok(Self::from_lists(lists))
    }

    /// Builds a graph from neighbour lists, symmetrizing and deduplicating them.
    pub(crate) fn from_lists(mut lists: Vec<Vec<u32>>) -> Self {
        let n = lists.len();
        for u in 0..n {
            for i in 0..lists[u].len() {
                let v = lists[u][i] as usize;
                if !lists[v].contains(&(u as u32)) {
                    lists[v].push(u as u32);
                }
            }
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let mut adj = Vec::new();
        for mut l in lists {
            l.sort_unstable();
            l.dedup();
            adj.extend_from_slice(&l);
            offsets.push(adj.len());
        }
        Graph { offsets, adj }
    }

    /// Builds a graph from lists that are already symmetric, sorted and loop-free.
    pub(crate) fn from_sorted_lists(lists: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let mut offsets = vec![0];
        let mut adj = Vec::new();
        for l in lists {
            debug_assert!(l.windows(2).all(|w| w[0] < w[1]));
            adj.extend_from_slice(&l);
            offsets.push(adj.len());
        }
        Graph { offsets, adj }
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            adj: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.adj.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    #[inline]
    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.vertex_count() as u32)
            .flat_map(move |u| self.neighbors(u).iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// The common degree, if every vertex has the same one.
    pub fn regular_degree(&self) -> Option<usize> {
        let n = self.vertex_count();
        if n == 0 {
            return Some(0);
        }
        let d = self.degree(0);
        (1..n as u32).all(|v| self.degree(v) == d).then_some(d)
    }

    /// For each vertex `u`, the number of edges `(a, b)`, `a < b`, with `a < u`.
    pub fn edge_offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.vertex_count() + 1);
        let mut acc = 0;
        for u in 0..self.vertex_count() as u32 {
            out.push(acc);
            acc += self.neighbors(u).iter().filter(|&&w| w > u).count();
        }
        out.push(acc);
        out
    }

    /// Image graph under the vertex map `v ↦ perm[v]`.
    pub fn relabel(&self, perm: &[u32]) -> Result<Self> {
        check_bijection(perm, self.vertex_count())?;
        let mut lists = vec![Vec::new(); self.vertex_count()];
        for u in 0..self.vertex_count() as u32 {
            let l = &mut lists[perm[u as usize] as usize];
            l.extend(self.neighbors(u).iter().map(|&w| perm[w as usize]));
            l.sort_unstable();
        }
        Ok(Self::from_sorted_lists(lists))
    }

    /// Whether `perm` maps every edge to an edge.
    pub fn is_automorphism(&self, perm: &[u32]) -> bool {
        perm.len() == self.vertex_count()
            && self.edges().all(|(u, v)| self.has_edge(perm[u as usize], perm[v as usize]))
    }

    /// The two colour classes, if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let n = self.vertex_count();
        let mut side = vec![u8::MAX; n];
        let mut queue = Vec::new();
        for s in 0..n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            queue.clear();
            queue.push(s as u32);
            let mut head = 0;
            while head < queue.len() {
                let u = queue[head];
                head += 1;
                for &w in self.neighbors(u) {
                    if side[w as usize] == u8::MAX {
                        side[w as usize] = 1 - side[u as usize];
                        queue.push(w);
                    } else if side[w as usize] == side[u as usize] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }
}

pub(crate) fn check_bijection(map: &[u32], n: usize) -> Result<()> {
    if map.len() != n {
        return Err(Error::DegreeMismatch {
            left: map.len(),
            right: n,
        });
    }
    let mut seen = vec![false; n];
    for &m in map {
        if m as usize >= n || core::mem::replace(&mut seen[m as usize], true) {
            return Err(Error::NotPermutation(format!("image {m} repeated or out of range")));
        }
    }
    Ok(())
}

/// Checks that `map` is an isomorphism from `a` onto `b`, edge by edge.
pub fn verify_isomorphism(a: &Graph, b: &Graph, map: &[u32]) -> Result<()> {
    check_bijection(map, a.vertex_count())?;
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Err(Error::Verification(format!(
            "graphs differ in size: ({}, {}) vs ({}, {})",
            a.vertex_count(),
            a.edge_count(),
            b.vertex_count(),
            b.edge_count()
        )));
    }
    for (u, v) in a.edges() {
        if !b.has_edge(map[u as usize], map[v as usize]) {
            return Err(Error::Verification(format!("edge {{{u}, {v}}} is not mapped to an edge")));
        }
    }
    Ok(())
}

/// Whether two graphs are isomorphic, decided by canonical forms.
pub fn is_isomorphic(a: &Graph, b: &Graph, budget: &crate::Budget) -> Result<bool> {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    let ca = crate::autsearch::canonical_form(a, budget)?;
    let cb = crate::autsearch::canonical_form(b, budget)?;
    Ok(ca.certificate == cb.certificate)
}

/// `K_{m,n}` with parts `[0, m)` and `[m, m + n)`.
pub fn complete_bipartite(m: usize, n: usize) -> Graph {
    let lists = (0..m)
        .map(|_| (m as u32..(m + n) as u32).collect())
        .chain((0..n).map(|_| (0..m as u32).collect()));
    Graph::from_sorted_lists(lists)
}

/// Cycle `C_n` on `0..n`, `n ≥ 3`.
pub fn cycle(n: usize) -> Graph {
    let edges: Vec<(u32, u32)> = (0..n as u32).map(|i| (i, (i + 1) % n as u32)).collect();
    Graph::from_edges(n, &edges).expect("cycle is simple")
}

/// Complete graph `K_n`.
pub fn complete(n: usize) -> Graph {
    Graph::from_sorted_lists((0..n as u32).map(|u| (0..n as u32).filter(|&v| v != u).collect()))
}

/// Breadth-first distances from one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bfs {
    /// Distance per vertex; `u32::MAX` if unreachable.
    pub dist: Vec<u32>,
    /// Number of vertices at each distance.
    pub layers: Vec<usize>,
    pub unreachable: Vec<u32>,
}

impl Bfs {
    /// Largest finite distance.
    pub fn eccentricity(&self) -> usize {
        self.layers.len() - 1
    }

    /// Vertices at distance `d`, ascending.
    pub fn layer(&self, d: u32) -> Vec<u32> {
        (0..self.dist.len() as u32).filter(|&v| self.dist[v as usize] == d).collect()
    }
}

pub fn bfs_layers(g: &Graph, v: u32) -> Result<Bfs> {
    let n = g.vertex_count();
    if v as usize >= n {
        return Err(Error::InvalidVertex {
            vertex: v as u64,
            count: n,
        });
    }
    let mut dist = vec![u32::MAX; n];
    dist[v as usize] = 0;
    let mut queue = Vec::with_capacity(n);
    queue.push(v);
    let mut layers = vec![1];
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        let du = dist[u as usize];
        for &w in g.neighbors(u) {
            if dist[w as usize] == u32::MAX {
                dist[w as usize] = du + 1;
                if layers.len() <= du as usize + 1 {
                    layers.push(0);
                }
                layers[du as usize + 1] += 1;
                queue.push(w);
            }
        }
    }
    let unreachable = (0..n as u32).filter(|&u| dist[u as usize] == u32::MAX).collect();
    Ok(Bfs {
        dist,
        layers,
        unreachable,
    })
}

/// A quotient graph together with the cover test.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub graph: Graph,
    /// Block index of each original vertex.
    pub block_of: Vec<u32>,
    /// Each vertex has its neighbours in distinct blocks, none in its own,
    /// and as many as its block has in the quotient.
    pub valency_preserved: bool,
}

/// The quotient of `g` by a vertex partition, blocks numbered as given.
pub fn normal_quotient(g: &Graph, blocks: &[Vec<u32>]) -> Result<Quotient> {
    let n = g.vertex_count();
    let mut block_of = vec![u32::MAX; n];
    for (b, block) in blocks.iter().enumerate() {
        for &v in block {
            if v as usize >= n {
                return Err(Error::InvalidVertex {
                    vertex: v as u64,
                    count: n,
                });
            }
            if block_of[v as usize] != u32::MAX {
                return Err(Error::InvalidPartition(format!("vertex {v} lies in two blocks")));
            }
            block_of[v as usize] = b as u32;
        }
    }
    if let Some(v) = block_of.iter().position(|&b| b == u32::MAX) {
        return Err(Error::InvalidPartition(format!("vertex {v} is not covered")));
    }
    let mut lists = vec![Vec::new(); blocks.len()];
    let mut valency_preserved = true;
    let mut scratch = Vec::new();
    for u in 0..n as u32 {
        let bu = block_of[u as usize];
        scratch.clear();
        scratch.extend(g.neighbors(u).iter().map(|&w| block_of[w as usize]));
        scratch.sort_unstable();
        let distinct = scratch.windows(2).all(|w| w[0] != w[1]);
        if !distinct || scratch.binary_search(&bu).is_ok() {
            valency_preserved = false;
        }
        lists[bu as usize].extend(scratch.iter().copied().filter(|&b| b != bu));
    }
    for l in &mut lists {
        l.sort_unstable();
        l.dedup();
    }
    let graph = Graph::from_sorted_lists(lists);
    if valency_preserved {
        valency_preserved = (0..n as u32).all(|u| g.degree(u) == graph.degree(block_of[u as usize]));
    }
    Ok(Quotient {
        graph,
        block_of,
        valency_preserved,
    })
}
