mod common;

use common::Instance;
use mdg_core::autsearch::{automorphism_group, canonical_form, individualize, refine, OrderedPartition};
use mdg_core::graphs::{bfs_layers, clique_graph, complete, complete_bipartite, cycle, Graph};
use mdg_core::permsym::{Bsgs, BsgsOptions, Permutation};
use mdg_core::Budget;

const FORMULA_2: u128 = 18432;
const FORMULA_3: u128 = 1_849_688_064;

fn check_generators(g: &Graph, gens: &[Permutation]) {
    for p in gens {
        assert!(g.is_automorphism(p.images()));
    }
}

#[test]
fn small_reference_groups() {
    let b = Budget::default();
    assert_eq!(automorphism_group(&Graph::empty(1), None, &b).unwrap().order, 1);
    assert_eq!(automorphism_group(&complete_bipartite(4, 4), None, &b).unwrap().order, 1152);
    assert_eq!(automorphism_group(&cycle(9), None, &b).unwrap().order, 18);
    assert_eq!(automorphism_group(&complete(6), None, &b).unwrap().order, 720);
    // The Petersen graph, as the complement of the line graph of K_5.
    let l = mdg_core::graphs::line_graph(&complete(5));
    let mut edges = Vec::new();
    for u in 0..10u32 {
        for v in u + 1..10 {
            if !l.graph.has_edge(u, v) {
                edges.push((u, v));
            }
        }
    }
    let petersen = Graph::from_edges(10, &edges).unwrap();
    let a = automorphism_group(&petersen, None, &b).unwrap();
    assert_eq!(a.order, 120);
    check_generators(&petersen, &a.generators);
}

#[test]
fn full_search_on_gamma2_and_sigma2() {
    let b = Budget::default();
    let inst = Instance::new(2);
    let g = automorphism_group(&inst.gamma, None, &b).unwrap();
    assert!(g.complete);
    assert_eq!(g.order, FORMULA_2);
    check_generators(&inst.gamma, &g.generators);
    let s = automorphism_group(&inst.sigma.graph, None, &b).unwrap();
    assert!(s.complete);
    assert_eq!(s.order, FORMULA_2);
    check_generators(&inst.sigma.graph, &s.generators);

    // The found generators generate a group of the reported order.
    let chain = Bsgs::new(
        256,
        &g.generators,
        &BsgsOptions {
            base: g.base.clone(),
            certified: true,
        },
        &b,
    )
    .unwrap();
    assert_eq!(chain.order(), FORMULA_2);
}

#[test]
fn known_group_is_certified_as_full() {
    let b = Budget::default();
    let inst = Instance::new(2);
    let known = inst.gamma_generators();
    let a = automorphism_group(&inst.gamma, Some(&known), &b).unwrap();
    assert!(a.complete);
    assert_eq!(a.order, FORMULA_2);
    assert_eq!(a.new_generators, 0);
}

#[test]
fn search_extends_a_proper_subgroup() {
    let b = Budget::default();
    let inst = Instance::new(2);
    // Right multiplications alone give only the regular part.
    let a = automorphism_group(&inst.gamma, Some(&inst.right), &b).unwrap();
    assert!(a.complete);
    assert_eq!(a.order, FORMULA_2);
    assert!(a.new_generators > 0);
    check_generators(&inst.gamma, &a.generators);
}

#[test]
fn exhausted_budget_reports_a_lower_bound() {
    let inst = Instance::new(2);
    let tight = Budget {
        max_nodes: 1,
        ..Budget::default()
    };
    let a = automorphism_group(&inst.gamma, Some(&inst.right), &tight).unwrap();
    assert!(!a.complete);
    assert!(a.order >= 256);
    assert_eq!(FORMULA_2 % a.order, 0);
}

#[test]
fn certification_at_n3() {
    let b = Budget::default();
    let inst = Instance::new(3);
    let a = automorphism_group(&inst.gamma, Some(&inst.gamma_generators()), &b).unwrap();
    assert!(a.complete);
    assert_eq!(a.order, FORMULA_3);
    let s = automorphism_group(&inst.sigma.graph, None, &b).unwrap();
    assert!(s.complete);
    assert_eq!(s.order, FORMULA_3);
    check_generators(&inst.sigma.graph, &s.generators);
}

#[test]
fn search_is_deterministic() {
    let b = Budget::default();
    let inst = Instance::new(2);
    let a = automorphism_group(&inst.sigma.graph, None, &b).unwrap();
    let c = automorphism_group(&inst.sigma.graph, None, &b).unwrap();
    assert_eq!(a.generators, c.generators);
    assert_eq!(a.orbit_sizes, c.orbit_sizes);
}

#[test]
fn individualized_refinement_refines_distance_layers() {
    let inst = Instance::new(2);
    let (p, _) = refine(&inst.gamma, &OrderedPartition::unit(256));
    assert_eq!(p.cell_count(), 1);
    let (p, _) = individualize(&inst.gamma, &p, 0);
    let bfs = bfs_layers(&inst.gamma, 0).unwrap();
    for cell in p.cells() {
        let d = bfs.dist[cell[0] as usize];
        assert!(cell.iter().all(|&v| bfs.dist[v as usize] == d));
    }
    // At least as fine as the stabilizer orbits of the first layers.
    assert!(p.cell_count() >= 7);
}

#[test]
fn canonical_forms() {
    let b = Budget::default();
    let k = canonical_form(&complete_bipartite(4, 4), &b).unwrap();
    let c = canonical_form(&cycle(8), &b).unwrap();
    assert_ne!(k.certificate, c.certificate);

    let inst = Instance::new(2);
    let cliques = clique_graph(&inst.gamma, &b).unwrap();
    let a = canonical_form(&cliques.graph, &b).unwrap();
    let s = canonical_form(&inst.sigma.graph, &b).unwrap();
    assert_eq!(a.certificate, s.certificate);

    let g = canonical_form(&inst.gamma, &b).unwrap();
    assert_eq!(g.certificate.len(), 768);
    // Relabel by reversing and by a multiplicative shuffle.
    for perm in [(0..256u32).rev().collect::<Vec<_>>(), (0..256u32).map(|v| (v * 37 + 11) % 256).collect()] {
        let r = canonical_form(&inst.gamma.relabel(&perm).unwrap(), &b).unwrap();
        assert_eq!(r.certificate, g.certificate);
    }
    assert!(canonical_form(&Graph::empty(513), &b).is_err());
}
