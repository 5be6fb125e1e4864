mod common;

use std::collections::BTreeSet;

use common::Instance;
use mdg_core::autsearch::distinguishing_base;
use mdg_core::bitlin::gl_order;
use mdg_core::graphs::{complete_bipartite, line_graph, normal_quotient, phi_map, verify_isomorphism, Graph};
use mdg_core::group::{derived_subgroup, FiniteGroup};
use mdg_core::permsym::{
    distance_diagram, edge_affine_witness, induced_action_on_sigma, line_graph_as_cayley, orbit, orbits,
    quotient_action, right_mult, transitivity_report, Bsgs, BsgsOptions, Permutation,
};
use mdg_core::{Budget, Error};

fn certified(g: &Graph, gens: &[Permutation]) -> Bsgs {
    let opts = BsgsOptions {
        base: distinguishing_base(g, &[0]).unwrap(),
        certified: true,
    };
    Bsgs::new(g.vertex_count(), gens, &opts, &Budget::default()).unwrap()
}

fn formula(n: usize) -> u128 {
    (1u128 << (n * n + 2 * n)) * gl_order(n) * gl_order(n) * 2
}

#[test]
fn known_group_orders_match_the_formula() {
    assert_eq!(formula(2), 18432);
    assert_eq!(formula(3), 1_849_688_064);
    for n in [2, 3] {
        let inst = Instance::new(n);
        let chain = certified(&inst.gamma, &inst.gamma_generators());
        assert_eq!(chain.order(), formula(n));
        // The vertex stabilizer is exactly Aut(I(n), S).
        let stab = certified(&inst.gamma, &inst.stab);
        assert_eq!(stab.order(), 2 * gl_order(n) * gl_order(n));
        assert_eq!(chain.order() / chain.orbit_sizes()[0] as u128, stab.order());
        // Orbit sizes divide the order.
        for &s in &chain.orbit_sizes() {
            assert_eq!(chain.order() % s as u128, 0);
        }
    }
}

#[test]
fn uncertified_schreier_sims_agrees_at_n2() {
    let inst = Instance::new(2);
    let chain = Bsgs::new(256, &inst.gamma_generators(), &BsgsOptions::default(), &Budget::default()).unwrap();
    assert_eq!(chain.order(), 18432);
    for g in inst.gamma_generators() {
        assert!(chain.contains(&g));
    }
}

#[test]
fn right_multiplication_is_regular() {
    for n in [2, 3] {
        let inst = Instance::new(n);
        let nv = inst.gamma.vertex_count();
        assert_eq!(orbit(0, &inst.right, nv).len(), nv);
        assert_eq!(certified(&inst.gamma, &inst.right).order(), nv as u128);
        assert!(right_mult(&inst.h, 0).is_identity());
        for p in &inst.right {
            assert!(inst.gamma.is_automorphism(p.images()));
        }
    }
}

#[test]
fn aut_hxy_generators_behave() {
    let inst = Instance::new(2);
    let h = &inst.h;
    let delta = inst.stab.last().unwrap();
    assert!(delta.then(delta).is_identity());
    // δ(e₁ + f₁) = e₁ + f₁ + e₁⊗f₁.
    let e1f1 = h.compose(1, 1, 0);
    assert_eq!(delta.apply(e1f1 as u32) as u64, h.compose(1, 1, h.tensor_part(h.tensor_element(1, 1))));
    // Transvection lifts on X fix Y pointwise and permute X \ {0}.
    let count = (inst.stab.len() - 1) / 2;
    for p in &inst.stab[..count] {
        for &y in &inst.y {
            assert_eq!(p.apply(y as u32) as u64, y);
        }
        let mut image: Vec<u64> = inst.x.iter().map(|&x| p.apply(x as u32) as u64).collect();
        image.sort_unstable();
        assert_eq!(image, inst.x);
    }
    let s: BTreeSet<u64> = h.connection_set().into_iter().collect();
    for p in &inst.stab {
        assert_eq!(p.apply(0), 0);
        let image: BTreeSet<u64> = s.iter().map(|&x| p.apply(x as u32) as u64).collect();
        assert_eq!(image, s);
    }
}

#[test]
fn known_automorphisms_preserve_edges_at_n3() {
    let inst = Instance::new(3);
    let edges: Vec<(u32, u32)> = inst.gamma.edges().collect();
    for p in inst.gamma_generators() {
        for &(u, v) in &edges {
            assert!(inst.gamma.has_edge(p.apply(u), p.apply(v)));
        }
    }
}

#[test]
fn distance_diagram_of_gamma2() {
    let inst = Instance::new(2);
    let d = distance_diagram(&inst.gamma, &inst.stab, 0).unwrap();
    let profile = d.profile();
    let expect: Vec<Vec<usize>> = vec![vec![1], vec![6], vec![18], vec![18, 36], vec![9, 36, 72], vec![18, 36], vec![6]];
    assert_eq!(profile, expect);
    let mut sizes: Vec<usize> = d.cells.iter().map(|c| c.size()).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, [1, 6, 6, 9, 18, 18, 18, 36, 36, 36, 72]);
    // Root: all six neighbours forward. First layer: 1 back, 2 within, 3 forward.
    assert_eq!(d.counts_by_distance(0)[..2], [0, 6]);
    assert_eq!(d.counts_by_distance(1)[..3], [1, 2, 3]);
    // Every row sums to the valency.
    for row in &d.counts {
        assert_eq!(row.iter().sum::<u32>(), 6);
    }
    // Cells refine the BFS layers and partition the vertex set.
    let total: usize = d.cells.iter().map(|c| c.size()).sum();
    assert_eq!(total, 256);
}

#[test]
fn diagram_rejects_bad_stabilizers() {
    let inst = Instance::new(2);
    let err = distance_diagram(&inst.gamma, &inst.right, 0).unwrap_err();
    assert!(matches!(err, Error::Verification(_)));
    // A proper subgroup of the stabilizer still gives an equitable, but finer, partition.
    let fine = distance_diagram(&inst.gamma, &inst.stab[..1], 0).unwrap();
    assert!(fine.cells.len() > 11);
    let swap = Permutation::from_images((0..256u32).map(|v| if v < 2 { 1 - v } else { v }).collect()).unwrap();
    let err = distance_diagram(&inst.gamma, &[swap], 0).unwrap_err();
    assert!(matches!(err, Error::NotAutomorphism { .. }));
}

#[test]
fn k44_diagram() {
    let k = complete_bipartite(4, 4);
    let p = |v: &[u32]| Permutation::from_images(v.to_vec()).unwrap();
    let stab = [p(&[0, 2, 1, 3, 4, 5, 6, 7]), p(&[0, 2, 3, 1, 4, 5, 6, 7]), p(&[0, 1, 2, 3, 5, 4, 6, 7]), p(&[0, 1, 2, 3, 5, 6, 7, 4])];
    let d = distance_diagram(&k, &stab, 0).unwrap();
    assert_eq!(d.profile(), [vec![1], vec![4], vec![3]]);
}

#[test]
fn transitivity_of_gamma_and_sigma() {
    for n in [2, 3] {
        let inst = Instance::new(n);
        let b = Budget::default();
        let r = transitivity_report(&inst.gamma, &inst.gamma_generators(), &b).unwrap();
        assert!(r.vertex && r.edge && r.arc && r.two_geodesic);
        assert!(!r.two_arc);
        assert!(r.s_distance_transitive(2));
        assert!(!r.s_distance_transitive(3));
        assert_eq!(r.group_order, formula(n));

        let s = transitivity_report(&inst.sigma.graph, &inst.sigma_generators(), &b).unwrap();
        assert!(s.vertex && s.edge && s.arc && s.two_arc);
        assert_eq!(s.group_order, formula(n));
    }
}

#[test]
fn two_arc_transitivity_by_brute_force_at_n2() {
    // Count orbits on 2-arcs directly: Γ(2) has more than one, Σ(2) exactly one.
    fn two_arc_orbits(g: &Graph, gens: &[Permutation]) -> usize {
        let mut arcs = Vec::new();
        for v in 0..g.vertex_count() as u32 {
            for &u in g.neighbors(v) {
                for &w in g.neighbors(v) {
                    if u != w {
                        arcs.push((u, v, w));
                    }
                }
            }
        }
        arcs.sort_unstable();
        let mut seen = vec![false; arcs.len()];
        let mut count = 0;
        for start in 0..arcs.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                let (u, v, w) = arcs[i];
                for p in gens {
                    let j = arcs.binary_search(&(p.apply(u), p.apply(v), p.apply(w))).unwrap();
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
        count
    }
    let inst = Instance::new(2);
    assert_eq!(two_arc_orbits(&inst.gamma, &inst.gamma_generators()), 2);
    assert_eq!(two_arc_orbits(&inst.sigma.graph, &inst.sigma_generators()), 1);
}

#[test]
fn h_acts_regularly_on_sigma_edges() {
    let inst = Instance::new(2);
    let hs: Vec<Permutation> = inst
        .right
        .iter()
        .map(|p| induced_action_on_sigma(&inst.sigma, p).unwrap())
        .collect();
    let vo = orbits(&hs, 128);
    assert_eq!(vo.len(), 2);
    assert_eq!(vo[0], (0..64).collect::<Vec<u32>>());
    let edges: Vec<(u32, u32)> = inst.sigma.graph.edges().collect();
    let (u, v) = inst.sigma.phi(0);
    let mut seen = BTreeSet::from([(u, v)]);
    let mut stack = vec![(u, v)];
    while let Some((a, b)) = stack.pop() {
        for p in &hs {
            let (c, d) = (p.apply(a), p.apply(b));
            if seen.insert((c.min(d), c.max(d))) {
                stack.push((c.min(d), c.max(d)));
            }
        }
    }
    assert_eq!(seen.len(), edges.len());
    assert_eq!(seen.len(), 256);
    let id = induced_action_on_sigma(&inst.sigma, &Permutation::identity(256)).unwrap();
    assert!(id.is_identity());
}

/// The quotient `Σ/H'` with the actions of `A` and of `H` on it.
fn quotient_setup(n: usize) -> (Graph, Vec<Permutation>, Vec<Permutation>) {
    let inst = Instance::new(n);
    let b = Budget::default();
    let d = derived_subgroup(&inst.h, &b).unwrap();
    let nv = inst.sigma.graph.vertex_count();
    let gens: Vec<Permutation> = d
        .generators
        .iter()
        .map(|&t| induced_action_on_sigma(&inst.sigma, &right_mult(&inst.h, t)).unwrap())
        .collect();
    let blocks = orbits(&gens, nv);
    let q = normal_quotient(&inst.sigma.graph, &blocks).unwrap();
    let down = |p: &Permutation| quotient_action(p, &q.block_of, blocks.len()).unwrap();
    let group: Vec<Permutation> = inst.sigma_generators().iter().map(down).collect();
    let h: Vec<Permutation> = inst
        .right
        .iter()
        .map(|p| down(&induced_action_on_sigma(&inst.sigma, p).unwrap()))
        .collect();
    (q.graph, group, h)
}

#[test]
fn edge_affine_witness_on_the_quotient() {
    for (n, order) in [(2usize, 16u128), (3, 64)] {
        let (q, group, h) = quotient_setup(n);
        let w = edge_affine_witness(&q, &group, &h, &Budget::default()).unwrap();
        assert_eq!(w.order, order);
        assert_eq!(w.edge_count, 1 << (2 * n));
        assert_eq!(w.vertex_orbits, 2);
    }
}

#[test]
fn edge_affine_witness_refutations() {
    let b = Budget::default();
    let k = complete_bipartite(4, 4);
    let p = |v: &[u32]| Permutation::from_images(v.to_vec()).unwrap();
    let wreath = [p(&[1, 0, 2, 3, 4, 5, 6, 7]), p(&[1, 2, 3, 0, 4, 5, 6, 7]), p(&[4, 5, 6, 7, 0, 1, 2, 3])];
    let point_stab = [p(&[0, 2, 1, 3, 4, 5, 6, 7]), p(&[0, 2, 3, 1, 4, 5, 6, 7]), p(&[0, 1, 2, 3, 5, 4, 6, 7]), p(&[0, 1, 2, 3, 5, 6, 7, 4])];
    let err = edge_affine_witness(&k, &wreath, &point_stab, &b).unwrap_err();
    assert!(matches!(err, Error::WitnessFailed { check: "normality", .. }), "{err}");

    // H itself on the quotient is normal and elementary abelian; dropping a
    // generator leaves it too small.
    let (q, group, h) = quotient_setup(2);
    let err = edge_affine_witness(&q, &h, &h[1..], &b).unwrap_err();
    assert!(matches!(err, Error::WitnessFailed { check: "order", .. }), "{err}");
    // Normality against the full group fails for a non-normal subgroup.
    let err = edge_affine_witness(&q, &group, &h[..1], &b).unwrap_err();
    assert!(matches!(err, Error::WitnessFailed { .. }), "{err}");
    // Not complete bipartite.
    assert!(edge_affine_witness(&mdg_core::graphs::cycle(6), &[], &[], &b).is_err());
}

#[test]
fn line_graph_round_trip_recovers_gamma() {
    for n in [2usize, 3] {
        let inst = Instance::new(n);
        let hs: Vec<Permutation> = inst
            .right
            .iter()
            .map(|p| induced_action_on_sigma(&inst.sigma, p).unwrap())
            .collect();
        let (u, v) = inst.sigma.phi(0);
        let lc = line_graph_as_cayley(&inst.sigma.graph, &hs, (u, v), &Budget::default()).unwrap();
        assert_eq!(lc.connection_set.len(), 2 * ((1 << n) - 1));
        assert!(lc.matches_line_graph);
        assert_eq!(lc.group_order, inst.h.order() as u128);

        // Label each recovered vertex by the group element that moves φ(1) there.
        let line = line_graph(&inst.sigma.graph);
        assert_eq!(line.edges, lc.edges);
        let map = phi_map(&inst.h, &inst.sigma, &lc.edges).unwrap();
        let mut element_of = vec![0u64; map.len()];
        for (z, &e) in map.iter().enumerate() {
            element_of[e as usize] = z as u64;
        }
        let s: Vec<u64> = {
            let mut s: Vec<u64> = lc.connection_set.iter().map(|&e| element_of[e as usize]).collect();
            s.sort_unstable();
            s
        };
        assert_eq!(s, inst.h.connection_set());
        verify_isomorphism(&inst.gamma, &lc.graph, &map).unwrap();
        // Identical edge sets once vertices carry their element labels.
        let relabelled: BTreeSet<(u64, u64)> = lc
            .graph
            .edges()
            .map(|(a, b)| {
                let (x, y) = (element_of[a as usize], element_of[b as usize]);
                (x.min(y), x.max(y))
            })
            .collect();
        let gamma_edges: BTreeSet<(u64, u64)> = inst.gamma.edges().map(|(a, b)| (a as u64, b as u64)).collect();
        assert_eq!(relabelled, gamma_edges);

        let hu: Vec<u64> = lc.stabilizer_u.iter().map(|&e| element_of[e as usize]).collect();
        let hv: Vec<u64> = lc.stabilizer_v.iter().map(|&e| element_of[e as usize]).collect();
        let sorted = |mut v: Vec<u64>| {
            v.sort_unstable();
            v
        };
        assert_eq!(sorted(hu), inst.x);
        assert_eq!(sorted(hv), inst.y);
    }
}

#[test]
fn round_trip_rejects_a_non_regular_action() {
    let inst = Instance::new(2);
    let gens = inst.sigma_generators();
    let err = line_graph_as_cayley(&inst.sigma.graph, &gens, inst.sigma.phi(0), &Budget::default()).unwrap_err();
    assert!(matches!(err, Error::NotEdgeRegular(_)));
}
