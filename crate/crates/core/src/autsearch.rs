//! Automorphism groups and canonical forms by equitable partition refinement
//! with backtracking.
//!
//! The search tree is the usual individualize-and-refine tree. The target cell
//! of a node is its first non-singleton cell of smallest size, and the first
//! path always branches on the smallest vertex of that cell. Every refinement
//! yields a trace hash that depends only on cell positions, sizes and
//! neighbour counts, so isomorphic nodes have equal traces.

use alloc::vec;
use alloc::vec::Vec;

use crate::graphs::Graph;
use crate::permsym::{orbit, Bsgs, BsgsOptions, Permutation};
use crate::{Budget, Error, Result};

/// An ordered partition of `0..n`, stored as a vertex ordering cut into cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedPartition {
    order: Vec<u32>,
    pos: Vec<u32>,
    start_of: Vec<u32>,
    /// `end[s]` is the exclusive end of the cell starting at `s`.
    end: Vec<u32>,
    cells: usize,
}

impl OrderedPartition {
    /// The partition with a single cell.
    pub fn unit(n: usize) -> Self {
        let mut end = vec![0; n];
        if n > 0 {
            end[0] = n as u32;
        }
        OrderedPartition {
            order: (0..n as u32).collect(),
            pos: (0..n as u32).collect(),
            start_of: vec![0; n],
            end,
            cells: usize::from(n > 0),
        }
    }

    pub fn from_cells(n: usize, cells: &[Vec<u32>]) -> Result<Self> {
        let mut seen = vec![false; n];
        let mut p = OrderedPartition {
            order: Vec::with_capacity(n),
            pos: vec![0; n],
            start_of: vec![0; n],
            end: vec![0; n],
            cells: 0,
        };
        for c in cells {
            if c.is_empty() {
                return Err(Error::InvalidPartition("empty cell".into()));
            }
            let s = p.order.len() as u32;
            for &v in c {
                if v as usize >= n || core::mem::replace(&mut seen[v as usize], true) {
                    return Err(Error::InvalidPartition(alloc::format!("vertex {v} repeated or out of range")));
                }
                p.pos[v as usize] = p.order.len() as u32;
                p.start_of[v as usize] = s;
                p.order.push(v);
            }
            p.end[s as usize] = p.order.len() as u32;
            p.cells += 1;
        }
        if p.order.len() != n {
            return Err(Error::InvalidPartition("cells do not cover every vertex".into()));
        }
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn cell_count(&self) -> usize {
        self.cells
    }

    pub fn is_discrete(&self) -> bool {
        self.cells == self.order.len()
    }

    /// Vertices in cell order.
    pub fn order(&self) -> &[u32] {
        &self.order
    }

    /// Position of `v` in [`OrderedPartition::order`].
    pub fn position(&self, v: u32) -> usize {
        self.pos[v as usize] as usize
    }

    fn starts(&self) -> impl Iterator<Item = usize> + '_ {
        let mut s = 0;
        core::iter::from_fn(move || {
            (s < self.order.len()).then(|| {
                let out = s;
                s = self.end[s] as usize;
                out
            })
        })
    }

    /// The cells in order, each listing its members ascending.
    pub fn cells(&self) -> Vec<Vec<u32>> {
        self.starts()
            .map(|s| {
                let mut c = self.order[s..self.end[s] as usize].to_vec();
                c.sort_unstable();
                c
            })
            .collect()
    }

    pub fn cell_sizes(&self) -> Vec<usize> {
        self.starts().map(|s| self.end[s] as usize - s).collect()
    }

    /// Members of the cell containing `v`, in partition order.
    pub fn cell_of(&self, v: u32) -> &[u32] {
        let s = self.start_of[v as usize] as usize;
        &self.order[s..self.end[s] as usize]
    }

    /// Start position of the first non-singleton cell of smallest size.
    pub fn target_cell(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for s in self.starts() {
            let size = self.end[s] as usize - s;
            if size > 1 && best.is_none_or(|(_, b)| size < b) {
                best = Some((s, size));
            }
        }
        best.map(|(s, _)| s)
    }

    fn cell_at(&self, start: usize) -> &[u32] {
        &self.order[start..self.end[start] as usize]
    }

    /// Splits the cell starting at `s` by `key`, fragments in ascending key
    /// order. Returns `(start, len, key)` per fragment.
    fn split_by(&mut self, s: usize, key: impl Fn(u32) -> u64, out: &mut Vec<(u32, u32, u64)>) {
        out.clear();
        let e = self.end[s] as usize;
        self.order[s..e].sort_unstable_by_key(|&v| key(v));
        let mut a = s;
        while a < e {
            let k = key(self.order[a]);
            let mut b = a + 1;
            while b < e && key(self.order[b]) == k {
                b += 1;
            }
            out.push((a as u32, (b - a) as u32, k));
            a = b;
        }
        for &(fs, fl, _) in out.iter() {
            let fe = fs + fl;
            self.end[fs as usize] = fe;
            for p in fs..fe {
                let v = self.order[p as usize];
                self.pos[v as usize] = p;
                self.start_of[v as usize] = fs;
            }
        }
        self.cells += out.len() - 1;
    }

    /// Moves `v` into a singleton cell at the front of its cell; returns that position.
    fn individualize(&mut self, v: u32) -> usize {
        let s = self.start_of[v as usize] as usize;
        let e = self.end[s] as usize;
        if e - s == 1 {
            return s;
        }
        let p = self.pos[v as usize] as usize;
        let w = self.order[s];
        self.order.swap(s, p);
        self.pos[w as usize] = p as u32;
        self.pos[v as usize] = s as u32;
        self.end[s] = s as u32 + 1;
        self.end[s + 1] = e as u32;
        for q in s + 1..e {
            self.start_of[self.order[q] as usize] = s as u32 + 1;
        }
        self.cells += 1;
        s
    }
}

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    (h ^ x).wrapping_mul(0x0000_0100_0000_01b3).rotate_left(23)
}

const TRACE_SEED: u64 = 0xcbf2_9ce4_8422_2325;

/// Scratch space for repeated refinements of partitions of one graph.
pub struct Refiner<'g> {
    g: &'g Graph,
    cnt: Vec<u32>,
    touched: Vec<u32>,
    in_queue: Vec<bool>,
    queue: Vec<u32>,
    members: Vec<u32>,
    cells: Vec<u32>,
    frags: Vec<(u32, u32, u64)>,
    dist: Vec<u32>,
    bfs: Vec<u32>,
}

impl<'g> Refiner<'g> {
    pub fn new(g: &'g Graph) -> Self {
        let n = g.vertex_count();
        Refiner {
            g,
            cnt: vec![0; n],
            touched: Vec::new(),
            in_queue: vec![false; n],
            queue: Vec::new(),
            members: Vec::new(),
            cells: Vec::new(),
            frags: Vec::new(),
            dist: vec![u32::MAX; n],
            bfs: Vec::with_capacity(n),
        }
    }

    fn push(&mut self, s: u32) {
        if !self.in_queue[s as usize] {
            self.in_queue[s as usize] = true;
            self.queue.push(s);
        }
    }

    /// Queues the fragments of a split: all of them if the cell was queued,
    /// otherwise all but the first largest.
    fn queue_fragments(&mut self, was_queued: bool) {
        let frags = core::mem::take(&mut self.frags);
        if was_queued {
            for &(s, _, _) in &frags[1..] {
                self.push(s);
            }
        } else {
            let mut largest = 0;
            for (i, f) in frags.iter().enumerate() {
                if f.1 > frags[largest].1 {
                    largest = i;
                }
            }
            for (i, &(s, _, _)) in frags.iter().enumerate() {
                if i != largest {
                    self.push(s);
                }
            }
        }
        self.frags = frags;
    }

    /// Refines `p` to the coarsest equitable partition finer than it, using
    /// every cell as an initial splitter. Returns the trace.
    pub fn refine(&mut self, p: &mut OrderedPartition) -> u64 {
        let starts: Vec<usize> = p.starts().collect();
        for s in starts {
            self.push(s as u32);
        }
        self.run(p, TRACE_SEED)
    }

    /// Individualizes `v` in an equitable partition, splits cells by distance
    /// from `v`, and refines. Returns the trace.
    pub fn individualize_and_refine(&mut self, p: &mut OrderedPartition, v: u32) -> u64 {
        let s = p.individualize(v);
        let mut h = mix(TRACE_SEED, s as u64);
        self.push(s as u32);

        self.bfs.clear();
        self.bfs.push(v);
        self.dist[v as usize] = 0;
        let mut head = 0;
        while head < self.bfs.len() {
            let u = self.bfs[head];
            head += 1;
            let du = self.dist[u as usize];
            for &w in self.g.neighbors(u) {
                if self.dist[w as usize] == u32::MAX {
                    self.dist[w as usize] = du + 1;
                    self.bfs.push(w);
                }
            }
        }
        let starts: Vec<usize> = p.starts().collect();
        for c in starts {
            let cell = p.cell_at(c);
            if cell.len() == 1 {
                continue;
            }
            let d0 = self.dist[cell[0] as usize];
            if cell.iter().all(|&w| self.dist[w as usize] == d0) {
                continue;
            }
            let dist = &self.dist;
            let mut frags = core::mem::take(&mut self.frags);
            p.split_by(c, |w| dist[w as usize] as u64, &mut frags);
            for &(fs, fl, k) in &frags {
                h = mix(h, (fs as u64) << 40 ^ (fl as u64) << 20 ^ k);
            }
            self.frags = frags;
            let was = self.in_queue[c];
            self.queue_fragments(was);
        }
        for &u in &self.bfs {
            self.dist[u as usize] = u32::MAX;
        }
        self.run(p, h)
    }

    fn run(&mut self, p: &mut OrderedPartition, mut h: u64) -> u64 {
        let mut head = 0;
        while head < self.queue.len() && !p.is_discrete() {
            let w = self.queue[head] as usize;
            head += 1;
            self.in_queue[w] = false;
            self.members.clear();
            self.members.extend_from_slice(p.cell_at(w));
            for &u in &self.members {
                for &v in self.g.neighbors(u) {
                    if self.cnt[v as usize] == 0 {
                        self.touched.push(v);
                    }
                    self.cnt[v as usize] += 1;
                }
            }
            self.cells.clear();
            self.cells.extend(self.touched.iter().map(|&v| p.start_of[v as usize]));
            self.cells.sort_unstable();
            self.cells.dedup();
            h = mix(h, (w as u64) << 32 ^ self.touched.len() as u64);
            for ci in 0..self.cells.len() {
                let c = self.cells[ci] as usize;
                let cell = p.cell_at(c);
                let first = self.cnt[cell[0] as usize];
                if cell.iter().all(|&v| self.cnt[v as usize] == first) {
                    h = mix(h, (c as u64) << 32 ^ first as u64);
                    continue;
                }
                let cnt = &self.cnt;
                let mut frags = core::mem::take(&mut self.frags);
                p.split_by(c, |v| cnt[v as usize] as u64, &mut frags);
                for &(fs, fl, k) in &frags {
                    h = mix(h, (fs as u64) << 40 ^ (fl as u64) << 20 ^ k);
                }
                self.frags = frags;
                let was = self.in_queue[c];
                self.queue_fragments(was);
            }
            for &v in &self.touched {
                self.cnt[v as usize] = 0;
            }
            self.touched.clear();
        }
        for &s in &self.queue {
            self.in_queue[s as usize] = false;
        }
        self.queue.clear();
        mix(h, p.cell_count() as u64)
    }
}

/// Coarsest equitable refinement of `p`, with its trace.
pub fn refine(g: &Graph, p: &OrderedPartition) -> (OrderedPartition, u64) {
    let mut q = p.clone();
    let t = Refiner::new(g).refine(&mut q);
    (q, t)
}

/// `p` with `v` individualized, then refined; with its trace.
pub fn individualize(g: &Graph, p: &OrderedPartition, v: u32) -> (OrderedPartition, u64) {
    let mut q = p.clone();
    let t = Refiner::new(g).individualize_and_refine(&mut q, v);
    (q, t)
}

/// The first path of the search tree, optionally forced through `prefix`.
struct FirstPath {
    base: Vec<u32>,
    /// `partitions[i]` is the node before individualizing `base[i]`; the last is the leaf.
    partitions: Vec<OrderedPartition>,
    /// `traces[i]` is the trace that produced `partitions[i]`.
    traces: Vec<u64>,
    /// Start of the target cell at each level.
    targets: Vec<usize>,
}

fn first_path(g: &Graph, refiner: &mut Refiner<'_>, prefix: &[u32]) -> FirstPath {
    let mut p = OrderedPartition::unit(g.vertex_count());
    let t0 = refiner.refine(&mut p);
    let mut fp = FirstPath {
        base: Vec::new(),
        partitions: vec![p.clone()],
        traces: vec![t0],
        targets: Vec::new(),
    };
    loop {
        let i = fp.base.len();
        let (v, target) = if i < prefix.len() {
            let v = prefix[i];
            (v, p.start_of[v as usize] as usize)
        } else {
            match p.target_cell() {
                Some(t) => (*p.cell_at(t).iter().min().unwrap(), t),
                None => break,
            }
        };
        let t = refiner.individualize_and_refine(&mut p, v);
        fp.base.push(v);
        fp.targets.push(target);
        fp.traces.push(t);
        fp.partitions.push(p.clone());
    }
    fp
}

/// Vertices whose individualization, after `prefix`, leaves a discrete
/// partition. Any automorphism fixing them all is the identity.
pub fn distinguishing_base(g: &Graph, prefix: &[u32]) -> Result<Vec<u32>> {
    if let Some(&v) = prefix.iter().find(|&&v| v as usize >= g.vertex_count()) {
        return Err(Error::InvalidVertex {
            vertex: v as u64,
            count: g.vertex_count(),
        });
    }
    let mut r = Refiner::new(g);
    Ok(first_path(g, &mut r, prefix).base)
}

/// A full automorphism group found by search.
#[derive(Clone, Debug)]
pub struct AutGroup {
    /// Generators sorted by image array: the known ones plus any found.
    pub generators: Vec<Permutation>,
    /// Exact order when `complete`; otherwise the order of `⟨generators⟩`.
    pub order: u128,
    pub complete: bool,
    /// The first-path base; automorphisms fixing it are trivial.
    pub base: Vec<u32>,
    /// Orbit of each base point under the pointwise stabilizer of the earlier ones.
    pub orbit_sizes: Vec<u64>,
    /// Automorphisms found outside the known group.
    pub new_generators: usize,
    pub nodes: u64,
}

struct Exhausted;

struct Searcher<'a, 'g> {
    g: &'g Graph,
    fp: &'a FirstPath,
    refiner: Refiner<'g>,
    nodes: u64,
    max_nodes: u64,
}

impl Searcher<'_, '_> {
    fn tick(&mut self) -> core::result::Result<(), Exhausted> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            Err(Exhausted)
        } else {
            Ok(())
        }
    }

    /// Looks for a leaf under the child `w` of first-path node `i` whose map
    /// from the first leaf is an automorphism.
    fn search(&mut self, i: usize, w: u32) -> core::result::Result<Option<Permutation>, Exhausted> {
        self.tick()?;
        let mut q = self.fp.partitions[i].clone();
        let t = self.refiner.individualize_and_refine(&mut q, w);
        if t != self.fp.traces[i + 1] {
            return Ok(None);
        }
        self.descend(q, i + 1)
    }

    fn descend(&mut self, q: OrderedPartition, depth: usize) -> core::result::Result<Option<Permutation>, Exhausted> {
        if q.is_discrete() {
            let leaf = &self.fp.partitions[self.fp.base.len()];
            if depth != self.fp.base.len() {
                return Ok(None);
            }
            let mut images = vec![0; q.len()];
            for (p, &v) in leaf.order.iter().enumerate() {
                images[v as usize] = q.order[p];
            }
            return Ok(self
                .g
                .is_automorphism(&images)
                .then(|| Permutation::from_images_unchecked(images)));
        }
        let Some(target) = q.target_cell() else {
            return Ok(None);
        };
        if depth >= self.fp.base.len()
            || target != self.fp.targets[depth]
            || q.end[target] != self.fp.partitions[depth].end[target]
        {
            return Ok(None);
        }
        let mut cell = q.cell_at(target).to_vec();
        cell.sort_unstable();
        for u in cell {
            self.tick()?;
            let mut c = q.clone();
            let t = self.refiner.individualize_and_refine(&mut c, u);
            if t != self.fp.traces[depth + 1] {
                continue;
            }
            if let Some(gamma) = self.descend(c, depth + 1)? {
                return Ok(Some(gamma));
            }
        }
        Ok(None)
    }
}

fn check_automorphisms(g: &Graph, gens: &[Permutation]) -> Result<()> {
    for (i, p) in gens.iter().enumerate() {
        if p.degree() != g.vertex_count() {
            return Err(Error::DegreeMismatch {
                left: p.degree(),
                right: g.vertex_count(),
            });
        }
        if let Some((u, v)) = g.edges().find(|&(u, v)| !g.has_edge(p.apply(u), p.apply(v))) {
            return Err(Error::NotAutomorphism {
                generator: i,
                edge: (u, v),
            });
        }
    }
    Ok(())
}

/// The full automorphism group of `g`.
///
/// Levels of the first path are processed from the deepest up. At level `i`
/// the orbit of the base point under the automorphisms known to fix the
/// earlier base points is grown by searching, for each remaining vertex of the
/// target cell, for a leaf equivalent to the first leaf. When `known`
/// generators are given, their stabilizer chain along the first path seeds
/// every orbit, so the search only visits vertices outside the known orbits.
pub fn automorphism_group(g: &Graph, known: Option<&[Permutation]>, budget: &Budget) -> Result<AutGroup> {
    let known = known.unwrap_or(&[]);
    check_automorphisms(g, known)?;
    let mut refiner = Refiner::new(g);
    let fp = first_path(g, &mut refiner, &[]);
    let k = fp.base.len();
    let opts = BsgsOptions {
        base: fp.base.clone(),
        certified: true,
    };
    let known_bsgs = Bsgs::new(g.vertex_count(), known, &opts, budget)?;

    let mut s = Searcher {
        g,
        fp: &fp,
        refiner,
        nodes: 0,
        max_nodes: budget.max_nodes,
    };
    let mut found: Vec<Permutation> = Vec::new();
    let mut orbit_sizes = vec![1u64; k];
    let mut complete = true;
    'levels: for i in (0..k).rev() {
        let mut gens: Vec<&Permutation> = known_bsgs.level_generators(i).collect();
        gens.extend(found.iter());
        let mut orb = orbit(fp.base[i], &gens, g.vertex_count());
        let mut in_orbit = vec![false; g.vertex_count()];
        for &v in &orb {
            in_orbit[v as usize] = true;
        }
        let mut cell = fp.partitions[i].cell_at(fp.targets[i]).to_vec();
        cell.sort_unstable();
        for w in cell {
            if in_orbit[w as usize] {
                continue;
            }
            match s.search(i, w) {
                Err(Exhausted) => {
                    complete = false;
                    break 'levels;
                }
                Ok(None) => {}
                Ok(Some(gamma)) => {
                    found.push(gamma);
                    let mut gens: Vec<&Permutation> = known_bsgs.level_generators(i).collect();
                    gens.extend(found.iter());
                    orb = orbit(fp.base[i], &gens, g.vertex_count());
                    for &v in &orb {
                        in_orbit[v as usize] = true;
                    }
                }
            }
        }
        orbit_sizes[i] = orb.len() as u64;
    }

    let new_generators = found.len();
    let mut generators: Vec<Permutation> = known.to_vec();
    generators.extend(found);
    generators.sort_unstable_by(|a, b| a.images().cmp(b.images()));
    generators.dedup();
    let order = if complete {
        orbit_sizes.iter().map(|&o| o as u128).product()
    } else {
        Bsgs::new(g.vertex_count(), &generators, &opts, budget)?.order()
    };
    Ok(AutGroup {
        generators,
        order,
        complete,
        base: fp.base.clone(),
        orbit_sizes,
        new_generators,
        nodes: s.nodes,
    })
}

/// Largest graph accepted by [`canonical_form`].
pub const CANONICAL_MAX_VERTICES: usize = 512;

/// A canonical labelling: isomorphic graphs get equal certificates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    /// Canonical label of each vertex.
    pub labeling: Vec<u32>,
    /// Sorted edge list `(a, b)`, `a < b`, under the canonical labels.
    pub certificate: Vec<(u32, u32)>,
    /// Automorphisms discovered during the search.
    pub automorphisms: Vec<Permutation>,
}

struct Leaf {
    order: Vec<u32>,
    traces: Vec<u64>,
    cert: Vec<(u32, u32)>,
    path: Vec<u32>,
}

struct Canon<'g> {
    g: &'g Graph,
    refiner: Refiner<'g>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    gens: Vec<Vec<u32>>,
    nodes: u64,
    max_nodes: u64,
}

enum Step {
    Continue,
    /// Return to the node at this depth and move on to its next child.
    JumpTo(usize),
}

impl Canon<'_> {
    fn certificate(&self, q: &OrderedPartition) -> Vec<(u32, u32)> {
        let mut cert: Vec<(u32, u32)> = self
            .g
            .edges()
            .map(|(u, v)| {
                let (a, b) = (q.pos[u as usize], q.pos[v as usize]);
                (a.min(b), a.max(b))
            })
            .collect();
        cert.sort_unstable();
        cert
    }

    fn leaf(&mut self, q: &OrderedPartition, traces: &[u64], path: &[u32]) -> Step {
        let cert = self.certificate(q);
        let Some(first) = &self.first else {
            let leaf = Leaf {
                order: q.order.clone(),
                traces: traces.to_vec(),
                cert,
                path: path.to_vec(),
            };
            self.best = Some(Leaf {
                order: leaf.order.clone(),
                traces: leaf.traces.clone(),
                cert: leaf.cert.clone(),
                path: leaf.path.clone(),
            });
            self.first = Some(leaf);
            return Step::Continue;
        };
        let map_from = |from: &Leaf| -> Vec<u32> {
            let mut images = vec![0; q.len()];
            for (p, &v) in from.order.iter().enumerate() {
                images[v as usize] = q.order[p];
            }
            images
        };
        if first.traces == traces && first.cert == cert {
            let gamma = map_from(first);
            let d = first.path.iter().zip(path).position(|(a, b)| a != b).unwrap_or(path.len());
            self.gens.push(gamma);
            return Step::JumpTo(d);
        }
        let best = self.best.as_ref().expect("best leaf set with first");
        match (traces, &cert).cmp(&(best.traces.as_slice(), &best.cert)) {
            core::cmp::Ordering::Equal => {
                let gamma = map_from(best);
                self.gens.push(gamma);
            }
            core::cmp::Ordering::Less => {
                self.best = Some(Leaf {
                    order: q.order.clone(),
                    traces: traces.to_vec(),
                    cert,
                    path: path.to_vec(),
                });
            }
            core::cmp::Ordering::Greater => {}
        }
        Step::Continue
    }

    fn visit(&mut self, q: &OrderedPartition, traces: &mut Vec<u64>, path: &mut Vec<u32>) -> Result<Step> {
        if q.is_discrete() {
            return Ok(self.leaf(q, traces, path));
        }
        let target = q.target_cell().expect("non-discrete partition has a target");
        let mut cell = q.cell_at(target).to_vec();
        cell.sort_unstable();
        let depth = path.len();
        let mut explored: Vec<u32> = Vec::new();
        for u in cell {
            if !explored.is_empty() && self.equivalent_to_explored(u, &explored, path) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return Err(Error::BudgetExceeded {
                    what: "canonical form search nodes",
                    limit: self.max_nodes,
                });
            }
            let mut c = q.clone();
            let t = self.refiner.individualize_and_refine(&mut c, u);
            traces.push(t);
            path.push(u);
            let prune = self.best.as_ref().is_some_and(|b| {
                let l = traces.len().min(b.traces.len());
                traces[..l] > b.traces[..l]
            }) && self
                .first
                .as_ref()
                .is_some_and(|f| f.traces.len() < traces.len() || f.traces[..traces.len()] != traces[..]);
            let step = if prune { Step::Continue } else { self.visit(&c, traces, path)? };
            traces.pop();
            path.pop();
            explored.push(u);
            if let Step::JumpTo(d) = step {
                if d < depth {
                    return Ok(step);
                }
            }
        }
        Ok(Step::Continue)
    }

    /// Whether some found automorphism fixing `path` pointwise links `u` to an explored sibling.
    fn equivalent_to_explored(&self, u: u32, explored: &[u32], path: &[u32]) -> bool {
        let fixing: Vec<&Vec<u32>> = self
            .gens
            .iter()
            .filter(|g| path.iter().all(|&p| g[p as usize] == p))
            .collect();
        if fixing.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.g.vertex_count()];
        let mut stack = vec![u];
        seen[u as usize] = true;
        while let Some(x) = stack.pop() {
            if explored.contains(&x) {
                return true;
            }
            for g in &fixing {
                let y = g[x as usize];
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        false
    }
}

/// Canonical labelling of a graph with at most [`CANONICAL_MAX_VERTICES`] vertices.
pub fn canonical_form(g: &Graph, budget: &Budget) -> Result<CanonicalForm> {
    if g.vertex_count() > CANONICAL_MAX_VERTICES {
        return Err(Error::BudgetExceeded {
            what: "canonical form vertices",
            limit: CANONICAL_MAX_VERTICES as u64,
        });
    }
    let mut c = Canon {
        g,
        refiner: Refiner::new(g),
        first: None,
        best: None,
        gens: Vec::new(),
        nodes: 0,
        max_nodes: budget.max_nodes,
    };
    let mut root = OrderedPartition::unit(g.vertex_count());
    let t0 = c.refiner.refine(&mut root);
    let mut traces = vec![t0];
    let mut path = Vec::new();
    c.visit(&root, &mut traces, &mut path)?;
    let best = c.best.expect("search reaches a leaf");
    let labeling: Vec<u32> = {
        let mut lab = vec![0; g.vertex_count()];
        for (p, &v) in best.order.iter().enumerate() {
            lab[v as usize] = p as u32;
        }
        lab
    };
    let mut automorphisms: Vec<Permutation> = c.gens.into_iter().map(Permutation::from_images_unchecked).collect();
    automorphisms.sort_unstable_by(|a, b| a.images().cmp(b.images()));
    automorphisms.dedup();
    Ok(CanonicalForm {
        labeling,
        certificate: best.cert,
        automorphisms,
    })
}
