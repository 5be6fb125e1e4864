mod common;

use std::sync::OnceLock;

use common::Instance;
use mdg_core::autsearch::{canonical_form, refine, OrderedPartition};
use mdg_core::bitlin::{outer, F2Vec};
use mdg_core::graphs::Graph;
use mdg_core::group::{inv, mul, FiniteGroup, GroupElement, IGroup};
use mdg_core::Budget;
use proptest::prelude::*;

const CASES: u32 = 100_000;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: CASES,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn group(n: usize) -> &'static IGroup {
    static GROUPS: OnceLock<Vec<IGroup>> = OnceLock::new();
    &GROUPS.get_or_init(|| (1..=7).map(|n| IGroup::new(n).unwrap()).collect())[n - 1]
}

fn instance2() -> &'static Instance {
    static INST: OnceLock<Instance> = OnceLock::new();
    INST.get_or_init(|| Instance::new(2))
}

fn element(n: usize) -> impl Strategy<Value = u64> {
    0..1u64 << (n * n + 2 * n)
}

/// A dimension in `3..=7` with three elements of `I(n)`.
fn triple() -> impl Strategy<Value = (usize, u64, u64, u64)> {
    (3usize..=7).prop_flat_map(|n| (Just(n), element(n), element(n), element(n)))
}

/// The defining word `g⁻¹h⁻¹gh`, evaluated with the structured arithmetic.
fn word_commutator(n: usize, a: u64, b: u64) -> u64 {
    let (a, b) = (GroupElement::decode(n, a).unwrap(), GroupElement::decode(n, b).unwrap());
    let left = mul(&inv(&a), &inv(&b)).unwrap();
    mul(&mul(&left, &a).unwrap(), &b).unwrap().encode()
}

/// A random simple graph on up to 10 vertices and a random relabelling.
fn graph_and_perm() -> impl Strategy<Value = (Graph, Vec<u32>)> {
    (1usize..=10).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (
            proptest::collection::vec(any::<bool>(), pairs),
            Just((0..n as u32).collect::<Vec<u32>>()).prop_shuffle(),
        )
            .prop_map(move |(bits, perm)| {
                let mut edges = Vec::new();
                let mut k = 0;
                for u in 0..n as u32 {
                    for v in u + 1..n as u32 {
                        if bits[k] {
                            edges.push((u, v));
                        }
                        k += 1;
                    }
                }
                (Graph::from_edges(n, &edges).unwrap(), perm)
            })
    })
}

#[test]
fn associativity_is_exhaustive_at_n2() {
    let h = group(2);
    for a in 0..256 {
        for b in 0..256 {
            let ab = h.mul(a, b);
            for c in 0..256 {
                assert_eq!(h.mul(ab, c), h.mul(a, h.mul(b, c)));
            }
        }
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn associativity_sampled((n, a, b, c) in triple()) {
        let h = group(n);
        prop_assert_eq!(h.mul(h.mul(a, b), c), h.mul(a, h.mul(b, c)));
    }

    #[test]
    fn inverse_law((n, a, _, _) in triple()) {
        let h = group(n);
        let i = h.inv(a);
        prop_assert_eq!(h.mul(a, i), 0);
        prop_assert_eq!(h.mul(i, a), 0);
        // g⁻¹ = g + x⊗y.
        let x = F2Vec::from_bits(n, h.x_part(a)).unwrap();
        let y = F2Vec::from_bits(n, h.y_part(a)).unwrap();
        prop_assert_eq!(i, a ^ outer(x, y).unwrap().bits() << (2 * n));
    }

    #[test]
    fn commutator_closed_form((n, a, b, _) in triple()) {
        let h = group(n);
        let c = h.commutator(a, b);
        prop_assert_eq!(c, word_commutator(n, a, b));
        let vec = |v: u64| F2Vec::from_bits(n, v).unwrap();
        let t = outer(vec(h.x_part(a)), vec(h.y_part(b))).unwrap().bits()
            ^ outer(vec(h.x_part(b)), vec(h.y_part(a))).unwrap().bits();
        prop_assert_eq!(c, t << (2 * n));
        // Independent of the tensor parts.
        let strip = |g: u64| g & ((1 << (2 * n)) - 1);
        prop_assert_eq!(c, h.commutator(strip(a), strip(b)));
    }

    #[test]
    fn phi_equivariance(z in 0u64..256, g in 0u64..256) {
        let inst = instance2();
        let s = &inst.sigma;
        let (xv, yv) = s.phi(z);
        // Right multiplication by g moves the cosets Xz, Yz to Xzg, Yzg.
        let xg = s.x_vertex(inst.h.mul(s.coset(xv)[0], g));
        let yg = s.y_vertex(inst.h.mul(s.coset(yv)[0], g));
        prop_assert_eq!((xg, yg), s.phi(inst.h.mul(z, g)));
    }

    #[test]
    fn refinement_is_deterministic_and_equivariant((g, perm) in graph_and_perm()) {
        let n = g.vertex_count();
        let (p1, t1) = refine(&g, &OrderedPartition::unit(n));
        let (p2, t2) = refine(&g, &OrderedPartition::unit(n));
        prop_assert_eq!(p1.cells(), p2.cells());
        prop_assert_eq!(t1, t2);
        // Relabelling the graph relabels the cells and keeps the trace.
        let r = g.relabel(&perm).unwrap();
        let (q, tq) = refine(&r, &OrderedPartition::unit(n));
        prop_assert_eq!(t1, tq);
        prop_assert_eq!(p1.cell_sizes(), q.cell_sizes());
        for (a, b) in p1.cells().iter().zip(q.cells()) {
            let mut mapped: Vec<u32> = a.iter().map(|&v| perm[v as usize]).collect();
            mapped.sort_unstable();
            prop_assert_eq!(mapped, b);
        }
    }

    #[test]
    fn canonical_form_ignores_labels((g, perm) in graph_and_perm()) {
        let b = Budget::default();
        let c = canonical_form(&g, &b).unwrap();
        let r = canonical_form(&g.relabel(&perm).unwrap(), &b).unwrap();
        prop_assert_eq!(&c.certificate, &r.certificate);
        // The labelling really produces the certificate.
        let relabelled = g.relabel(&c.labeling).unwrap();
        prop_assert_eq!(relabelled.edges().collect::<Vec<_>>(), c.certificate);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn canonical_form_of_gamma2_ignores_labels(perm in Just((0..256u32).collect::<Vec<u32>>()).prop_shuffle()) {
        let b = Budget::default();
        let g = &instance2().gamma;
        static BASE: OnceLock<Vec<(u32, u32)>> = OnceLock::new();
        let base = BASE.get_or_init(|| canonical_form(g, &Budget::default()).unwrap().certificate);
        let r = canonical_form(&g.relabel(&perm).unwrap(), &b).unwrap();
        prop_assert_eq!(base, &r.certificate);
    }
}
