//! Subgroup structure: derived subgroup, centre, cosets, abelianization and
//! the mixed-dihedral predicate.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{closure, is_closed, FiniteGroup, IGroup, Subgroup};
use crate::bitlin::F2Vec;
use crate::{Budget, Error, Result};

/// Greedy generating subset of a sorted subgroup element list.
fn generating_subset<G: FiniteGroup + ?Sized>(group: &G, elements: &[u64], budget: &Budget) -> Result<Vec<u64>> {
    let mut gens = Vec::new();
    let mut current = alloc::vec![group.identity()];
    for &g in elements {
        if current.binary_search(&g).is_err() {
            gens.push(g);
            current = closure(group, &gens, budget)?;
        }
    }
    Ok(gens)
}

/// Smallest normal subgroup containing `seeds`.
pub(crate) fn normal_closure<G: FiniteGroup + ?Sized>(group: &G, seeds: &[u64], budget: &Budget) -> Result<Subgroup> {
    let id = group.identity();
    let mut gens: Vec<u64> = Vec::new();
    for &s in seeds {
        if s != id && !gens.contains(&s) {
            gens.push(s);
        }
    }
    let mut elements = closure(group, &gens, budget)?;
    let conjugators = group.generators();
    let mut i = 0;
    while i < gens.len() {
        for &s in &conjugators {
            let c = group.conjugate(gens[i], s);
            if elements.binary_search(&c).is_err() {
                gens.push(c);
                elements = closure(group, &gens, budget)?;
            }
        }
        i += 1;
    }
    Ok(Subgroup {
        elements,
        generators: gens,
    })
}

/// `G'`, the normal closure of the commutators of generator pairs.
pub fn derived_subgroup<G: FiniteGroup + ?Sized>(group: &G, budget: &Budget) -> Result<Subgroup> {
    let gens = group.generators();
    let mut seeds = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            seeds.push(group.commutator(a, b));
        }
    }
    normal_closure(group, &seeds, budget)
}

/// `Z(G)`: elements commuting with every generator.
pub fn center<G: FiniteGroup + ?Sized>(group: &G, budget: &Budget) -> Result<Subgroup> {
    if group.order() > budget.max_elements {
        return Err(Error::BudgetExceeded {
            what: "group enumeration",
            limit: budget.max_elements,
        });
    }
    let gens = group.generators();
    let elements: Vec<u64> = (0..group.order())
        .filter(|&z| gens.iter().all(|&g| group.mul(z, g) == group.mul(g, z)))
        .collect();
    let generators = generating_subset(group, &elements, budget)?;
    Ok(Subgroup {
        elements,
        generators,
    })
}

/// Right cosets `Sh` of a subgroup, numbered by their least element.
#[derive(Clone, Debug)]
pub struct CosetPartition {
    coset_of: Vec<u32>,
    members: Vec<u64>,
    size: usize,
}

impl CosetPartition {
    pub fn len(&self) -> usize {
        self.members.len() / self.size
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn coset_size(&self) -> usize {
        self.size
    }

    pub fn coset_of(&self, g: u64) -> usize {
        self.coset_of[g as usize] as usize
    }

    /// Sorted members of coset `id`.
    pub fn members(&self, id: usize) -> &[u64] {
        &self.members[id * self.size..(id + 1) * self.size]
    }

    /// The least element of coset `id`.
    pub fn representative(&self, id: usize) -> u64 {
        self.members[id * self.size]
    }
}

/// Right cosets of the subgroup with sorted element list `sub`.
pub fn cosets<G: FiniteGroup + ?Sized>(group: &G, sub: &[u64], budget: &Budget) -> Result<CosetPartition> {
    if !is_closed(group, sub, budget)? {
        return Err(Error::NotSubgroup);
    }
    let order = group.order() as usize;
    let mut coset_of = alloc::vec![u32::MAX; order];
    let mut members = Vec::with_capacity(order);
    let mut id = 0u32;
    // Scanning in code order makes each coset's first unassigned element its minimum.
    for g in 0..order as u64 {
        if coset_of[g as usize] != u32::MAX {
            continue;
        }
        let start = members.len();
        for &s in sub {
            let h = group.mul(s, g);
            coset_of[h as usize] = id;
            members.push(h);
        }
        members[start..].sort_unstable();
        id += 1;
    }
    Ok(CosetPartition {
        coset_of,
        members,
        size: sub.len(),
    })
}

/// Largest `|Ah ∩ Bg|` over all pairs of cosets from two partitions of the same group.
pub fn max_coset_intersection(a: &CosetPartition, b: &CosetPartition) -> usize {
    let mut pairs: Vec<(u32, u32)> = a.coset_of.iter().copied().zip(b.coset_of.iter().copied()).collect();
    pairs.sort_unstable();
    let mut best = 0;
    let mut run = 0;
    for i in 0..pairs.len() {
        run = if i > 0 && pairs[i] == pairs[i - 1] { run + 1 } else { 1 };
        best = best.max(run);
    }
    best
}

/// Outcome of checking a presentation's relations and normal-form count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationReport {
    pub n: usize,
    /// First relation that failed, as text.
    pub failed_relation: Option<String>,
    /// Distinct values of the normal-form products `∏xᵢ^aᵢ ∏yᵢ^bᵢ ∏[xᵢ,yⱼ]^cᵢⱼ`.
    pub normal_form_count: u64,
    pub generated_order: u64,
    pub expected_order: u64,
}

impl PresentationReport {
    pub fn holds(&self) -> bool {
        self.failed_relation.is_none()
            && self.normal_form_count == self.expected_order
            && self.generated_order == self.expected_order
    }
}

/// Checks the defining relations
/// `xᵢ² = yᵢ² = [xᵢ,xⱼ] = [yᵢ,yⱼ] = [xᵢ,yⱼ]² = [[xᵢ,yⱼ],x_k] = [[xᵢ,yⱼ],y_k] = 1`
/// on the given generators, and that they generate `2^{n²+2n}` elements,
/// each reached by exactly one normal-form word.
pub fn verify_presentation_in<G: FiniteGroup + ?Sized>(
    group: &G,
    xs: &[u64],
    ys: &[u64],
    budget: &Budget,
) -> Result<PresentationReport> {
    let n = xs.len();
    if ys.len() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: ys.len(),
        });
    }
    let bits = n * n + 2 * n;
    if bits > 40 {
        return Err(Error::InvalidDimension {
            dim: n,
            min: 1,
            max: 5,
        });
    }
    let expected_order = 1u64 << bits;
    let id = group.identity();
    let mut failed = None;
    let mut fail = |text: String| {
        if failed.is_none() {
            failed = Some(text);
        }
    };
    for i in 0..n {
        if group.mul(xs[i], xs[i]) != id {
            fail(format!("x{}^2", i + 1));
        }
        if group.mul(ys[i], ys[i]) != id {
            fail(format!("y{}^2", i + 1));
        }
        for j in 0..n {
            if group.commutator(xs[i], xs[j]) != id {
                fail(format!("[x{},x{}]", i + 1, j + 1));
            }
            if group.commutator(ys[i], ys[j]) != id {
                fail(format!("[y{},y{}]", i + 1, j + 1));
            }
            let c = group.commutator(xs[i], ys[j]);
            if group.mul(c, c) != id {
                fail(format!("[x{},y{}]^2", i + 1, j + 1));
            }
            for k in 0..n {
                if group.commutator(c, xs[k]) != id {
                    fail(format!("[[x{},y{}],x{}]", i + 1, j + 1, k + 1));
                }
                if group.commutator(c, ys[k]) != id {
                    fail(format!("[[x{},y{}],y{}]", i + 1, j + 1, k + 1));
                }
            }
        }
    }

    let mut gens = xs.to_vec();
    gens.extend_from_slice(ys);
    let generated_order = closure(group, &gens, budget)?.len() as u64;

    // Each factor family is a product over a subset; build the value sets by
    // doubling, then count distinct triple products.
    let subset_products = |factors: &[u64]| -> Vec<u64> {
        let mut out = alloc::vec![id];
        for &f in factors {
            let extra: Vec<u64> = out.iter().map(|&p| group.mul(p, f)).collect();
            out.extend(extra);
        }
        out
    };
    let px = subset_products(xs);
    let py = subset_products(ys);
    let mut comms = Vec::with_capacity(n * n);
    for &x in xs {
        for &y in ys {
            comms.push(group.commutator(x, y));
        }
    }
    let pc = subset_products(&comms);
    let mut seen = crate::bitset::BitSet::new(group.order() as usize);
    let mut normal_form_count = 0;
    if expected_order <= budget.max_elements {
        for &a in &px {
            for &b in &py {
                let ab = group.mul(a, b);
                for &c in &pc {
                    if seen.insert(group.mul(ab, c) as usize) {
                        normal_form_count += 1;
                    }
                }
            }
        }
    } else {
        return Err(Error::BudgetExceeded {
            what: "normal-form enumeration",
            limit: budget.max_elements,
        });
    }

    Ok(PresentationReport {
        n,
        failed_relation: failed,
        normal_form_count,
        generated_order,
        expected_order,
    })
}

/// [`verify_presentation_in`] for `I(n)` with its standard bases.
pub fn verify_presentation(n: usize, budget: &Budget) -> Result<PresentationReport> {
    if n < 2 {
        return Err(Error::InvalidDimension {
            dim: n,
            min: 2,
            max: super::MAX_IGROUP_DIM,
        });
    }
    let h = IGroup::new(n)?;
    verify_presentation_in(&h, &h.x_generators(), &h.y_generators(), budget)
}

/// The first condition a group fails in the mixed-dihedral test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MixedDihedralFailure {
    /// `X` or `Y` is not elementary abelian of order `2^n`.
    NotElementaryAbelian { which: char, order: u64 },
    /// `X ∪ Y` generates a proper subgroup.
    NotGenerated { generated: u64 },
    /// `H/H'` is not `C_2^{2n}`.
    Abelianization { structure: Vec<u64> },
}

impl fmt::Display for MixedDihedralFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MixedDihedralFailure::NotElementaryAbelian { which, order } => {
                write!(f, "{which} is not elementary abelian of order 2^n (order {order})")
            }
            MixedDihedralFailure::NotGenerated { generated } => {
                write!(f, "X and Y generate a subgroup of order {generated}")
            }
            MixedDihedralFailure::Abelianization { structure } => {
                write!(f, "abelianization has invariants {structure:?}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedDihedralReport {
    pub is_mixed_dihedral: bool,
    pub order: u64,
    pub derived_subgroup_order: u64,
    /// Elementary divisors of `H/H'`, ascending.
    pub abelianization_structure: Vec<u64>,
    pub failure: Option<MixedDihedralFailure>,
}

impl MixedDihedralReport {
    pub fn failure_reason(&self) -> Option<String> {
        self.failure.as_ref().map(|f| format!("{f}"))
    }
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Elementary divisors of a finite abelian group given the order of each element.
pub(crate) fn abelian_invariants(element_orders: &[u64]) -> Vec<u64> {
    let size = element_orders.len() as u64;
    let mut out = Vec::new();
    for p in prime_factors(size) {
        // s_k = log_p #{a : a^{p^k} = 1}; factors of order ≥ p^k number s_k − s_{k−1}.
        let mut logs = alloc::vec![0u32];
        let mut pk = 1u64;
        loop {
            pk *= p;
            let count = element_orders.iter().filter(|&&o| pk.is_multiple_of(o)).count() as u64;
            let mut s = 0;
            let mut c = count;
            while c > 1 {
                c /= p;
                s += 1;
            }
            if s == *logs.last().unwrap() {
                break;
            }
            logs.push(s);
        }
        let at_least: Vec<u32> = logs.windows(2).map(|w| w[1] - w[0]).collect();
        for k in 0..at_least.len() {
            let exactly = at_least[k] - at_least.get(k + 1).copied().unwrap_or(0);
            for _ in 0..exactly {
                out.push(p.pow(k as u32 + 1));
            }
        }
    }
    out.sort_unstable();
    out
}

fn quotient_element_orders<G: FiniteGroup + ?Sized>(group: &G, part: &CosetPartition, kernel: &Subgroup) -> Vec<u64> {
    (0..part.len())
        .map(|c| {
            let g = part.representative(c);
            let mut x = g;
            let mut k = 1;
            while !kernel.contains(x) {
                x = group.mul(x, g);
                k += 1;
            }
            k
        })
        .collect()
}

/// Tests whether `H = ⟨X ∪ Y⟩` with `X ≅ Y ≅ C_2^n` and `H/H' ≅ C_2^{2n}`,
/// using the backend's designated `X` and `Y` generators.
pub fn is_mixed_dihedral<G: FiniteGroup + ?Sized>(group: &G, budget: &Budget) -> Result<MixedDihedralReport> {
    let xs = group.x_generators();
    let ys = group.y_generators();
    let n = xs.len();
    let order = group.order();
    let derived = derived_subgroup(group, budget)?;
    let part = cosets(group, &derived.elements, budget)?;
    let abelianization_structure = abelian_invariants(&quotient_element_orders(group, &part, &derived));

    let id = group.identity();
    let mut failure = None;
    for (which, gens) in [('X', &xs), ('Y', &ys)] {
        let sub = closure(group, gens, budget)?;
        let elementary = sub.iter().all(|&g| group.mul(g, g) == id);
        if failure.is_none() && (ys.len() != n || sub.len() as u64 != 1u64 << n || !elementary) {
            failure = Some(MixedDihedralFailure::NotElementaryAbelian {
                which,
                order: sub.len() as u64,
            });
        }
    }
    if failure.is_none() {
        let mut all = xs.clone();
        all.extend_from_slice(&ys);
        let generated = closure(group, &all, budget)?.len() as u64;
        if generated != order {
            failure = Some(MixedDihedralFailure::NotGenerated { generated });
        }
    }
    if failure.is_none() && abelianization_structure != alloc::vec![2; 2 * n] {
        failure = Some(MixedDihedralFailure::Abelianization {
            structure: abelianization_structure.clone(),
        });
    }
    Ok(MixedDihedralReport {
        is_mixed_dihedral: failure.is_none(),
        order,
        derived_subgroup_order: derived.order(),
        abelianization_structure,
        failure,
    })
}

/// The map `H → H/H' ≅ X × Y` of a mixed dihedral group, in coordinates
/// relative to the designated generators.
#[derive(Clone, Debug)]
pub struct Abelianization {
    n: usize,
    part: CosetPartition,
    coords: Vec<(u64, u64)>,
}

impl Abelianization {
    pub fn new<G: FiniteGroup + ?Sized>(group: &G, budget: &Budget) -> Result<Self> {
        let report = is_mixed_dihedral(group, budget)?;
        if let Some(f) = report.failure {
            return Err(Error::NotMixedDihedral(format!("{f}")));
        }
        let xs = group.x_generators();
        let ys = group.y_generators();
        let n = xs.len();
        if n > crate::bitlin::MAX_DIM {
            return Err(Error::InvalidDimension {
                dim: n,
                min: 1,
                max: crate::bitlin::MAX_DIM,
            });
        }
        let derived = derived_subgroup(group, budget)?;
        let part = cosets(group, &derived.elements, budget)?;
        let mut coords = alloc::vec![(u64::MAX, u64::MAX); part.len()];
        let steps: Vec<(u64, (u64, u64))> = xs
            .iter()
            .enumerate()
            .map(|(i, &x)| (x, (1 << i, 0)))
            .chain(ys.iter().enumerate().map(|(i, &y)| (y, (0, 1 << i))))
            .collect();
        let start = part.coset_of(group.identity());
        coords[start] = (0, 0);
        let mut queue = alloc::vec![group.identity()];
        let mut head = 0;
        while head < queue.len() {
            let g = queue[head];
            head += 1;
            let (cx, cy) = coords[part.coset_of(g)];
            for &(s, (dx, dy)) in &steps {
                let h = group.mul(g, s);
                let c = part.coset_of(h);
                if coords[c].0 == u64::MAX {
                    coords[c] = (cx ^ dx, cy ^ dy);
                    queue.push(h);
                }
            }
        }
        Ok(Abelianization { n, part, coords })
    }

    pub fn kernel_order(&self) -> usize {
        self.part.coset_size()
    }

    /// `φ(g)` as `(x-part, y-part)`.
    pub fn coords(&self, g: u64) -> (F2Vec, F2Vec) {
        let (x, y) = self.coords[self.part.coset_of(g)];
        (
            F2Vec::from_bits(self.n, x).expect("coordinates fit"),
            F2Vec::from_bits(self.n, y).expect("coordinates fit"),
        )
    }
}
