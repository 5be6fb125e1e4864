use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{orbits, Bsgs, BsgsOptions, Permutation, UnionFind};
use crate::autsearch::distinguishing_base;
use crate::graphs::{bfs_layers, line_graph, Graph};
use crate::{Budget, Error, Result};

fn check_automorphisms(g: &Graph, gens: &[Permutation]) -> Result<()> {
    for (i, p) in gens.iter().enumerate() {
        if p.degree() != g.vertex_count() {
            return Err(Error::DegreeMismatch {
                left: p.degree(),
                right: g.vertex_count(),
            });
        }
        if let Some(edge) = g.edges().find(|&(u, v)| !g.has_edge(p.apply(u), p.apply(v))) {
            return Err(Error::NotAutomorphism { generator: i, edge });
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramCell {
    pub distance: u32,
    /// Sorted members.
    pub members: Vec<u32>,
}

impl DiagramCell {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn members_min(&self) -> u32 {
        self.members[0]
    }
}

/// Stabilizer orbits labelled by distance, with the number of neighbours a
/// vertex of one cell has in another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceDiagram {
    /// Ordered by distance, then least member.
    pub cells: Vec<DiagramCell>,
    /// `counts[c][d]`: neighbours in cell `d` of any vertex of cell `c`.
    pub counts: Vec<Vec<u32>>,
}

impl DistanceDiagram {
    /// Cell sizes grouped by distance, ascending within each distance.
    pub fn profile(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for c in &self.cells {
            let d = c.distance as usize;
            if out.len() <= d {
                out.resize(d + 1, Vec::new());
            }
            out[d].push(c.size());
        }
        for sizes in &mut out {
            sizes.sort_unstable();
        }
        out
    }

    /// For cell `c`, the neighbour counts summed by the target cell's distance.
    pub fn counts_by_distance(&self, c: usize) -> Vec<u32> {
        let max = self.cells.iter().map(|c| c.distance).max().unwrap_or(0) as usize;
        let mut out = vec![0; max + 1];
        for (d, &k) in self.counts[c].iter().enumerate() {
            out[self.cells[d].distance as usize] += k;
        }
        out
    }
}

/// The orbits of `⟨stab_gens⟩` (which must fix `v`) with BFS distance from
/// `v`, checked to form an equitable partition.
pub fn distance_diagram(g: &Graph, stab_gens: &[Permutation], v: u32) -> Result<DistanceDiagram> {
    check_automorphisms(g, stab_gens)?;
    if let Some(i) = stab_gens.iter().position(|p| p.apply(v) != v) {
        return Err(Error::Verification(format!("generator {i} moves the base vertex {v}")));
    }
    let n = g.vertex_count();
    let bfs = bfs_layers(g, v)?;
    let mut cells: Vec<DiagramCell> = orbits(stab_gens, n)
        .into_iter()
        .map(|members| DiagramCell {
            distance: bfs.dist[members[0] as usize],
            members,
        })
        .collect();
    if let Some(c) = cells.iter().find(|c| c.members.iter().any(|&m| bfs.dist[m as usize] != c.distance)) {
        return Err(Error::Verification(format!(
            "orbit of {} mixes distances",
            c.members_min()
        )));
    }
    cells.sort_by_key(|c| (c.distance, c.members[0]));
    let mut cell_of = vec![0u32; n];
    for (i, c) in cells.iter().enumerate() {
        for &m in &c.members {
            cell_of[m as usize] = i as u32;
        }
    }
    let k = cells.len();
    let mut counts = vec![vec![0u32; k]; k];
    let mut row = vec![0u32; k];
    for (i, c) in cells.iter().enumerate() {
        for (j, &m) in c.members.iter().enumerate() {
            row.iter_mut().for_each(|x| *x = 0);
            for &w in g.neighbors(m) {
                row[cell_of[w as usize] as usize] += 1;
            }
            if j == 0 {
                counts[i].copy_from_slice(&row);
            } else if let Some(t) = (0..k).find(|&t| row[t] != counts[i][t]) {
                return Err(Error::NotEquitable { cell: i, target: t });
            }
        }
    }
    Ok(DistanceDiagram { cells, counts })
}

/// Which transitivity properties `⟨gens⟩` has on a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitivityReport {
    pub group_order: u128,
    pub stabilizer_order: u128,
    pub vertex: bool,
    pub edge: bool,
    pub arc: bool,
    pub two_arc: bool,
    pub two_geodesic: bool,
    /// Entry `i - 1` says whether the vertex stabilizer is transitive on the
    /// vertices at distance `i`, for `i` up to the eccentricity of vertex 0.
    pub distance_layers: Vec<bool>,
}

impl TransitivityReport {
    /// Transitive on ordered pairs at each distance `i ≤ s`.
    pub fn s_distance_transitive(&self, s: usize) -> bool {
        self.vertex && self.distance_layers.iter().take(s).all(|&t| t)
    }

    pub fn distance_transitive(&self) -> bool {
        self.s_distance_transitive(self.distance_layers.len())
    }
}

/// Arc index `offset[u] + position of v in N(u)`.
fn arc_index(g: &Graph, offsets: &[usize], u: u32, v: u32) -> u32 {
    (offsets[u as usize] + g.neighbors(u).binary_search(&v).expect("arc exists")) as u32
}

/// Orbit counts reduced to the stabilizer of vertex 0, whose generators come
/// from a stabilizer chain on a base that starts at 0.
pub fn transitivity_report(g: &Graph, gens: &[Permutation], budget: &Budget) -> Result<TransitivityReport> {
    check_automorphisms(g, gens)?;
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::InvalidVertex { vertex: 0, count: 0 });
    }
    let vertex = orbits(gens, n).len() == 1;

    let mut offsets = Vec::with_capacity(n + 1);
    let mut acc = 0;
    for u in 0..n as u32 {
        offsets.push(acc);
        acc += g.degree(u);
    }
    let arcs = acc;
    let mut arc_uf = UnionFind::new(arcs);
    for p in gens {
        for u in 0..n as u32 {
            for (i, &v) in g.neighbors(u).iter().enumerate() {
                let a = (offsets[u as usize] + i) as u32;
                arc_uf.union(a, arc_index(g, &offsets, p.apply(u), p.apply(v)));
            }
        }
    }
    let arc = arcs > 0 && arc_uf.count() == 1;
    for u in 0..n as u32 {
        for (i, &v) in g.neighbors(u).iter().enumerate() {
            arc_uf.union((offsets[u as usize] + i) as u32, arc_index(g, &offsets, v, u));
        }
    }
    let edge = arcs > 0 && arc_uf.count() == 1;

    let opts = BsgsOptions {
        base: distinguishing_base(g, &[0])?,
        certified: true,
    };
    let chain = Bsgs::new(n, gens, &opts, budget)?;
    let stab: Vec<&Permutation> = chain.level_generators(1).collect();
    let group_order = chain.order();
    let stabilizer_order = group_order / chain.orbit_sizes()[0] as u128;

    let nb = g.neighbors(0);
    let d = nb.len();
    let pos = |w: u32| nb.binary_search(&w).expect("stabilizer preserves N(0)");
    let mut pair_uf = UnionFind::new(d * d);
    for p in &stab {
        for i in 0..d {
            for j in 0..d {
                let (a, b) = (pos(p.apply(nb[i])), pos(p.apply(nb[j])));
                pair_uf.union((i * d + j) as u32, (a * d + b) as u32);
            }
        }
    }
    let mut two_arc_classes = Vec::new();
    let mut geodesic_classes = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if i == j {
                continue;
            }
            let r = pair_uf.find((i * d + j) as u32);
            two_arc_classes.push(r);
            if !g.has_edge(nb[i], nb[j]) {
                geodesic_classes.push(r);
            }
        }
    }
    let single = |mut v: Vec<u32>| {
        v.sort_unstable();
        v.dedup();
        v.len() <= 1
    };
    let two_arc = vertex && single(two_arc_classes);
    let two_geodesic = vertex && single(geodesic_classes);

    let bfs = bfs_layers(g, 0)?;
    let stab_orbits = orbits(&stab, n);
    let mut layer_orbits = vec![0usize; bfs.layers.len()];
    for o in &stab_orbits {
        let dist = bfs.dist[o[0] as usize];
        if dist != u32::MAX {
            layer_orbits[dist as usize] += 1;
        }
    }
    let distance_layers = layer_orbits[1..].iter().map(|&c| c == 1).collect();

    Ok(TransitivityReport {
        group_order,
        stabilizer_order,
        vertex,
        edge,
        arc: vertex && arc,
        two_arc,
        two_geodesic,
        distance_layers,
    })
}

/// A verified edge-affine witness: an elementary abelian normal subgroup that
/// is intransitive on vertices and regular on edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeAffineWitness {
    pub generators: Vec<Permutation>,
    pub order: u128,
    pub edge_count: usize,
    pub vertex_orbits: usize,
}

fn witness_fail(check: &'static str, detail: alloc::string::String) -> Error {
    Error::WitnessFailed { check, detail }
}

/// Checks that `candidate` generates an elementary abelian subgroup of
/// `⟨group⟩` of order `m²`, normalized by every group generator,
/// intransitive on the vertices of `K_{m,m}` and regular on its edges.
/// Checks run in that order and the first failure is reported.
pub fn edge_affine_witness(
    quotient: &Graph,
    group: &[Permutation],
    candidate: &[Permutation],
    budget: &Budget,
) -> Result<EdgeAffineWitness> {
    let nv = quotient.vertex_count();
    let m = nv / 2;
    let side = quotient.bipartition();
    let complete = side.as_ref().is_some_and(|s| s.iter().filter(|&&x| x == 0).count() == m)
        && nv == 2 * m
        && quotient.edge_count() == m * m;
    if !complete {
        return Err(Error::Verification("quotient is not a balanced complete bipartite graph".into()));
    }
    check_automorphisms(quotient, group)?;
    check_automorphisms(quotient, candidate)?;

    let sub = Bsgs::new(nv, candidate, &BsgsOptions::default(), budget)?;
    for (i, g) in group.iter().enumerate() {
        for (j, c) in candidate.iter().enumerate() {
            if !sub.contains(&c.conjugate_by(g)) {
                return Err(witness_fail(
                    "normality",
                    format!("conjugate of candidate {j} by generator {i} lies outside the candidate"),
                ));
            }
        }
    }
    for (i, a) in candidate.iter().enumerate() {
        if !a.then(a).is_identity() {
            return Err(witness_fail("elementary abelian", format!("candidate {i} has order > 2")));
        }
        for (j, b) in candidate.iter().enumerate().skip(i + 1) {
            if a.then(b) != b.then(a) {
                return Err(witness_fail("elementary abelian", format!("candidates {i} and {j} do not commute")));
            }
        }
    }
    let order = sub.order();
    if order != (m * m) as u128 {
        return Err(witness_fail("order", format!("order {order}, expected {}", m * m)));
    }
    let vertex_orbits = orbits(candidate, nv).len();
    if vertex_orbits < 2 {
        return Err(witness_fail("vertex-intransitive", "transitive on vertices".into()));
    }
    let edges: Vec<(u32, u32)> = quotient.edges().collect();
    let mut uf = UnionFind::new(edges.len());
    for c in candidate {
        for (i, &(u, v)) in edges.iter().enumerate() {
            let (a, b) = (c.apply(u), c.apply(v));
            let j = edges.binary_search(&(a.min(b), a.max(b))).expect("automorphism maps edges to edges");
            uf.union(i as u32, j as u32);
        }
    }
    if uf.count() != 1 || order != edges.len() as u128 {
        return Err(witness_fail(
            "edge-regular",
            format!("{} edge orbits, order {order}, {} edges", uf.count(), edges.len()),
        ));
    }
    Ok(EdgeAffineWitness {
        generators: candidate.to_vec(),
        order,
        edge_count: edges.len(),
        vertex_orbits,
    })
}

/// A Cayley graph recovered from an edge-regular action, on edge indices.
#[derive(Clone, Debug)]
pub struct LineCayley {
    /// Sorted edges of the source graph; element `h` is identified with edge `e₀^h`.
    pub edges: Vec<(u32, u32)>,
    pub base_edge: usize,
    /// Edges meeting the base edge, i.e. the connection set.
    pub connection_set: Vec<u32>,
    /// `Cay(H, S)` with vertex `i` the element sending the base edge to `edges[i]`.
    pub graph: Graph,
    pub matches_line_graph: bool,
    /// Elements fixing the first, resp. second, endpoint of the base edge.
    pub stabilizer_u: Vec<u32>,
    pub stabilizer_v: Vec<u32>,
    pub group_order: u128,
}

/// Rebuilds the line graph of `g` as `Cay(H, S)` where `H = ⟨h_gens⟩` acts
/// regularly on edges and `S` is the set of elements moving the base edge to
/// an edge incident with it.
///
/// Elements are never stored as permutations: each is represented by the
/// images of the base edge's endpoints and their neighbours, which is enough
/// to evaluate `sh` for every `s ∈ S`.
pub fn line_graph_as_cayley(
    g: &Graph,
    h_gens: &[Permutation],
    base_edge: (u32, u32),
    budget: &Budget,
) -> Result<LineCayley> {
    check_automorphisms(g, h_gens)?;
    let edges: Vec<(u32, u32)> = g.edges().collect();
    let (u, v) = base_edge;
    let e0 = edges
        .binary_search(&(u.min(v), u.max(v)))
        .map_err(|_| Error::Verification(format!("{{{u}, {v}}} is not an edge")))?;
    let edge_of = |a: u32, b: u32| edges.binary_search(&(a.min(b), a.max(b))).ok();

    let mut q: Vec<u32> = vec![u, v];
    q.extend_from_slice(g.neighbors(u));
    q.extend_from_slice(g.neighbors(v));
    q.sort_unstable();
    q.dedup();
    let w = q.len();
    let qpos = |x: u32| q.binary_search(&x).expect("tracked point");

    let ne = edges.len();
    let mut images = vec![u32::MAX; ne * w];
    images[e0 * w..(e0 + 1) * w].copy_from_slice(&q);
    let mut queue = vec![e0];
    let mut head = 0;
    let (iu, iv) = (qpos(u), qpos(v));
    let mut next = vec![0u32; w];
    while head < queue.len() {
        let e = queue[head];
        head += 1;
        for p in h_gens {
            for t in 0..w {
                next[t] = p.apply(images[e * w + t]);
            }
            let f = edge_of(next[iu], next[iv]).expect("automorphism maps edges to edges");
            if images[f * w] == u32::MAX {
                images[f * w..(f + 1) * w].copy_from_slice(&next);
                queue.push(f);
            } else if images[f * w..(f + 1) * w] != next[..] {
                return Err(Error::NotEdgeRegular(format!(
                    "two elements send the base edge to edge {f} differently"
                )));
            }
        }
    }
    if queue.len() != ne {
        return Err(Error::NotEdgeRegular(format!(
            "base edge orbit has {} of {ne} edges",
            queue.len()
        )));
    }
    let opts = BsgsOptions {
        base: distinguishing_base(g, &[u, v])?,
        certified: true,
    };
    let group_order = Bsgs::new(g.vertex_count(), h_gens, &opts, budget)?.order();
    if group_order != ne as u128 {
        return Err(Error::NotEdgeRegular(format!("group order {group_order} but {ne} edges")));
    }

    let connection_set: Vec<u32> = (0..ne)
        .filter(|&e| {
            let (a, b) = edges[e];
            e != e0 && (a == u || a == v || b == u || b == v)
        })
        .map(|e| e as u32)
        .collect();
    let s_points: Vec<(usize, usize)> = connection_set
        .iter()
        .map(|&e| {
            let (a, b) = edges[e as usize];
            (qpos(a), qpos(b))
        })
        .collect();
    let mut lists = vec![Vec::new(); ne];
    for (h, list) in lists.iter_mut().enumerate() {
        let img = &images[h * w..(h + 1) * w];
        for &(a, b) in &s_points {
            list.push(edge_of(img[a], img[b]).expect("image of an edge") as u32);
        }
    }
    let graph = Graph::from_lists(lists);
    let matches_line_graph = graph == line_graph(g).graph;
    let stabilizer_u = (0..ne as u32).filter(|&h| images[h as usize * w + iu] == u).collect();
    let stabilizer_v = (0..ne as u32).filter(|&h| images[h as usize * w + iv] == v).collect();
    Ok(LineCayley {
        edges,
        base_edge: e0,
        connection_set,
        graph,
        matches_line_graph,
        stabilizer_u,
        stabilizer_v,
        group_order,
    })
}
