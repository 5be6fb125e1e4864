//! One line per acceptance criterion, each run against its time limit.
//! Exits non-zero if any gating criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use mdg::construct::{aut_formula, certified_chain, Construction};
use mdg::reference::{diff, reference};
use mdg_core::autsearch::{automorphism_group, canonical_form, refine, OrderedPartition};
use mdg_core::bitlin::{gl_order, outer, F2Vec};
use mdg_core::graphs::{
    complete_bipartite, coset_clique_graph, is_isomorphic, line_graph, phi_map, verify_isomorphism, Graph,
};
use mdg_core::group::{
    center, closure, derived_subgroup, inv, is_mixed_dihedral, mul, verify_presentation, FiniteGroup, GroupElement,
    IGroup,
};
use mdg_core::permsym::{
    distance_diagram, edge_affine_witness, induced_action_on_sigma, line_graph_as_cayley, right_mult,
    transitivity_report,
};
use mdg_core::Budget;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

struct Runner {
    failures: usize,
}

impl Runner {
    /// Runs `f`, adding `setup` (time spent building shared inputs) to the
    /// measured time before comparing with `limit`.
    fn criterion(&mut self, id: &str, title: &str, limit: Duration, setup: Duration, gating: bool, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let out = f();
        let elapsed = start.elapsed() + setup;
        let (ok, detail) = match out {
            Ok(d) if elapsed <= limit => (true, d),
            Ok(d) => (false, format!("{d}; over the time limit")),
            Err(e) => (false, e),
        };
        let verdict = match (ok, gating) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "MISS",
        };
        println!(
            "criterion {id:<3} {verdict}  {title}  [{:.2} s of {} s]  {detail}",
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
        if !ok && gating {
            self.failures += 1;
        }
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn main() -> ExitCode {
    let budget = Budget::default();
    let b = &budget;
    let mut r = Runner { failures: 0 };

    r.criterion("1", "group order", secs(1), Duration::ZERO, true, || {
        let mut seen = Vec::new();
        for (n, order) in [(2usize, 256u64), (3, 32768)] {
            let h = IGroup::new(n).map_err(err)?;
            ensure(h.order() == order && order == 1 << (n * n + 2 * n), format!("|I({n})| = {}", h.order()))?;
            let reached = closure(&h, &h.generators(), b).map_err(err)?.len() as u64;
            ensure(reached == order, format!("generators reach {reached} elements at n = {n}"))?;
            seen.push(order);
        }
        Ok(format!("orders {seen:?}"))
    });

    r.criterion("2", "presentation", secs(1), Duration::ZERO, true, || {
        for n in [2, 3] {
            let p = verify_presentation(n, b).map_err(err)?;
            ensure(p.holds(), format!("n = {n}: {p:?}"))?;
        }
        Ok("relations hold, 256 and 32768 normal forms".into())
    });

    r.criterion("3", "derived subgroup, center, abelianization", secs(5), Duration::ZERO, true, || {
        for n in [2usize, 3] {
            let h = IGroup::new(n).map_err(err)?;
            let d = derived_subgroup(&h, b).map_err(err)?;
            let z = center(&h, b).map_err(err)?;
            let tensors: Vec<u64> = (0..1u64 << (n * n)).map(|a| a << (2 * n)).collect();
            ensure(d.elements == z.elements && d.elements == tensors, format!("n = {n}: H' != Z != tensors"))?;
            let m = is_mixed_dihedral(&h, b).map_err(err)?;
            ensure(m.abelianization_structure == vec![2; 2 * n], format!("n = {n}: H/H' = {:?}", m.abelianization_structure))?;
        }
        Ok("H' = Z(H) = tensors of order 16 and 512; H/H' elementary abelian".into())
    });

    let start = Instant::now();
    let i2 = Construction::new(2, b).expect("n = 2 builds");
    let setup2 = start.elapsed();
    let start = Instant::now();
    let i3 = Construction::new(3, b).expect("n = 3 builds");
    let setup3 = start.elapsed();
    let both = setup2 + setup3;

    r.criterion("4", "vertex, valency and edge counts", secs(10), both, true, || {
        let counts = |c: &Construction| {
            (
                c.gamma.vertex_count(),
                c.gamma.regular_degree(),
                c.sigma.graph.vertex_count(),
                c.sigma.graph.regular_degree(),
                c.sigma.graph.edge_count(),
            )
        };
        ensure(counts(&i2) == (256, Some(6), 128, Some(4), 256), format!("n = 2: {:?}", counts(&i2)))?;
        ensure(counts(&i3) == (32768, Some(14), 8192, Some(8), 32768), format!("n = 3: {:?}", counts(&i3)))?;
        for c in [&i2, &i3] {
            let n = c.n;
            ensure(c.sigma.graph.vertex_count() == 1 << (n * n + n + 1), "Σ(n) has 2^(n^2+n+1) vertices")?;
        }
        Ok("Γ(2) 256/6, Σ(2) 128/4/256, Σ(3) 8192/8".into())
    });

    r.criterion("5", "clique graph and line graph isomorphisms", secs(120), both, true, || {
        for c in [&i2, &i3] {
            let cg = coset_clique_graph(&c.gamma, &c.sigma, 1).map_err(err)?;
            ensure(cg.graph == c.sigma.graph, format!("n = {}: clique graph differs from Σ", c.n))?;
            let line = line_graph(&c.sigma.graph);
            let map = phi_map(&c.h, &c.sigma, &line.edges).map_err(err)?;
            verify_isomorphism(&c.gamma, &line.graph, &map).map_err(err)?;
        }
        let generic = mdg_core::graphs::clique_graph(&i2.gamma, b).map_err(err)?;
        ensure(is_isomorphic(&generic.graph, &i2.sigma.graph, b).map_err(err)?, "generic clique graph at n = 2")?;
        Ok("every vertex and edge checked at n = 2 and 3".into())
    });

    r.criterion("6", "normal cover of K_{m,m}", secs(30), both, true, || {
        for c in [&i2, &i3] {
            let m = 1usize << c.n;
            let q = c.quotient(b).map_err(err)?;
            ensure(q.quotient.valency_preserved, "valency not preserved")?;
            ensure(is_isomorphic(&q.quotient.graph, &complete_bipartite(m, m), b).map_err(err)?, "quotient is not K_{m,m}")?;
            let (d, _) = c.derived_on_sigma(b).map_err(err)?;
            let nv = c.sigma.graph.vertex_count() as u32;
            for &t in &d.elements[1..] {
                let p = induced_action_on_sigma(&c.sigma, &right_mult(&c.h, t)).map_err(err)?;
                ensure((0..nv).all(|v| p.apply(v) != v), "H' not semiregular")?;
            }
        }
        Ok("Σ/H' ≅ K_{4,4}, K_{8,8}; H' semiregular".into())
    });

    r.criterion("7", "edge-affine witness", secs(10), both, true, || {
        let mut orders = Vec::new();
        for c in [&i2, &i3] {
            let q = c.quotient(b).map_err(err)?;
            let w = edge_affine_witness(&q.quotient.graph, &q.group, &q.h, b).map_err(err)?;
            ensure(w.order == 1 << (2 * c.n) && w.vertex_orbits == 2, format!("{w:?}"))?;
            orders.push(w.order);
        }
        Ok(format!("normal elementary abelian subgroups of order {orders:?}"))
    });

    r.criterion("8", "distance diagram of Γ(2)", secs(5), setup2, true, || {
        let d = distance_diagram(&i2.gamma, &i2.stab, 0).map_err(err)?;
        let differences = diff(&d, &reference());
        ensure(differences.is_empty(), format!("{differences:?}"))?;
        ensure(d.counts_by_distance(1)[..3] == [1, 2, 3], "first layer profile")?;
        Ok(format!("cells {:?}", d.profile()))
    });

    r.criterion("9", "transitivity", secs(60), both, true, || {
        for c in [&i2, &i3] {
            let g = transitivity_report(&c.gamma, &c.gamma_generators(), b).map_err(err)?;
            ensure(
                g.vertex && g.edge && g.arc && g.two_geodesic && g.s_distance_transitive(2),
                format!("Γ({}) {g:?}", c.n),
            )?;
            ensure(!g.two_arc && !g.s_distance_transitive(3), format!("Γ({}) too transitive", c.n))?;
            let sg = c.sigma_generators().map_err(err)?;
            let s = transitivity_report(&c.sigma.graph, &sg, b).map_err(err)?;
            ensure(s.two_arc, format!("Σ({}) not 2-arc-transitive", c.n))?;
        }
        Ok("Γ: 2-geodesic and 2-distance but not 2-arc or 3-distance transitive; Σ: 2-arc-transitive".into())
    });

    r.criterion("10", "full automorphism search at n = 2", secs(300), setup2, true, || {
        let g = automorphism_group(&i2.gamma, None, b).map_err(err)?;
        let s = automorphism_group(&i2.sigma.graph, None, b).map_err(err)?;
        ensure(g.complete && s.complete, "search incomplete")?;
        ensure(g.order == 18432 && s.order == 18432, format!("{} and {}", g.order, s.order))?;
        ensure(Some(g.order) == aut_formula(2), "formula")?;
        Ok(format!("|Aut Γ(2)| = |Aut Σ(2)| = 18432 in {} and {} nodes", g.nodes, s.nodes))
    });

    r.criterion("10s", "full automorphism search at n = 3 (stretch)", secs(3600), setup3, false, || {
        let hs = i3.h_on_sigma().map_err(err)?;
        let g = automorphism_group(&i3.gamma, Some(&i3.right), b).map_err(err)?;
        let s = automorphism_group(&i3.sigma.graph, Some(&hs), b).map_err(err)?;
        ensure(g.complete && s.complete, "search incomplete")?;
        ensure(g.order == 1_849_688_064 && s.order == 1_849_688_064, format!("{} and {}", g.order, s.order))?;
        Ok(format!("|Aut Γ(3)| = |Aut Σ(3)| = 1849688064 from the regular action in {} and {} nodes", g.nodes, s.nodes))
    });

    r.criterion("11", "BSGS order of the known group", secs(120), both, true, || {
        for c in [&i2, &i3] {
            let order = certified_chain(&c.gamma, &c.gamma_generators(), b).map_err(err)?.order();
            let formula = (1u128 << (c.n * c.n + 2 * c.n)) * gl_order(c.n) * gl_order(c.n) * 2;
            ensure(Some(order) == aut_formula(c.n) && order == formula, format!("n = {}: {order}", c.n))?;
        }
        Ok("18432 and 1849688064".into())
    });

    r.criterion("12", "Cayley graph from the edge-regular action", secs(10), setup2, true, || {
        let hs = i2.h_on_sigma().map_err(err)?;
        let lc = line_graph_as_cayley(&i2.sigma.graph, &hs, i2.sigma.phi(0), b).map_err(err)?;
        ensure(lc.connection_set.len() == 6 && lc.matches_line_graph, "connection set or line graph")?;
        let map = phi_map(&i2.h, &i2.sigma, &lc.edges).map_err(err)?;
        let mut element_of = vec![0u64; map.len()];
        for (z, &e) in map.iter().enumerate() {
            element_of[e as usize] = z as u64;
        }
        let mut s: Vec<u64> = lc.connection_set.iter().map(|&e| element_of[e as usize]).collect();
        s.sort_unstable();
        ensure(s == i2.h.connection_set(), format!("recovered S = {s:?}"))?;
        let edges: BTreeSet<(u64, u64)> = lc
            .graph
            .edges()
            .map(|(a, c)| {
                let (x, y) = (element_of[a as usize], element_of[c as usize]);
                (x.min(y), x.max(y))
            })
            .collect();
        let gamma: BTreeSet<(u64, u64)> = i2.gamma.edges().map(|(a, c)| (a as u64, c as u64)).collect();
        ensure(edges == gamma, "edge sets differ")?;
        Ok("S of size 6 recovered; graph identical to Γ(2)".into())
    });

    r.criterion("13", "property suites", secs(600), Duration::ZERO, true, || properties(&i2));

    if r.failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{} gating criteria failed", r.failures);
        ExitCode::FAILURE
    }
}

const CASES: u32 = 100_000;

fn runner() -> TestRunner {
    TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    })
}

fn triple() -> impl Strategy<Value = (usize, u64, u64, u64)> {
    (3usize..=7).prop_flat_map(|n| {
        let e = 0..1u64 << (n * n + 2 * n);
        (Just(n), e.clone(), e.clone(), e)
    })
}

fn graph_and_perm() -> impl Strategy<Value = (Graph, Vec<u32>)> {
    (1usize..=10).prop_flat_map(|n| {
        (
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2),
            Just((0..n as u32).collect::<Vec<u32>>()).prop_shuffle(),
        )
            .prop_map(move |(bits, perm)| {
                let pairs = (0..n as u32).flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)));
                let edges: Vec<(u32, u32)> = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
                (Graph::from_edges(n, &edges).expect("simple graph"), perm)
            })
    })
}

fn tensor(n: usize, x: u64, y: u64) -> u64 {
    outer(F2Vec::from_bits(n, x).unwrap(), F2Vec::from_bits(n, y).unwrap()).unwrap().bits()
}

/// Every suite runs `CASES` random cases; associativity at `n = 2` is exhaustive.
fn properties(i2: &Construction) -> Outcome {
    let groups: Vec<IGroup> = (1..=7).map(|n| IGroup::new(n).unwrap()).collect();
    let h2 = &groups[1];
    for a in 0..256 {
        for c in 0..256 {
            let ac = h2.mul(a, c);
            for d in 0..256 {
                ensure(h2.mul(ac, d) == h2.mul(a, h2.mul(c, d)), "associativity at n = 2")?;
            }
        }
    }
    let mut suites = 0;
    let mut run = |name: &str, res: Result<(), String>| -> Result<(), String> {
        suites += 1;
        res.map_err(|e| format!("{name}: {e}"))
    };

    run(
        "associativity",
        runner()
            .run(&triple(), |(n, a, c, d)| {
                let h = &groups[n - 1];
                prop_assert_eq!(h.mul(h.mul(a, c), d), h.mul(a, h.mul(c, d)));
                Ok(())
            })
            .map_err(err),
    )?;
    run(
        "inverse",
        runner()
            .run(&triple(), |(n, a, _, _)| {
                let h = &groups[n - 1];
                let i = h.inv(a);
                prop_assert_eq!(h.mul(a, i), 0);
                prop_assert_eq!(i, a ^ tensor(n, h.x_part(a), h.y_part(a)) << (2 * n));
                Ok(())
            })
            .map_err(err),
    )?;
    run(
        "commutator",
        runner()
            .run(&triple(), |(n, a, c, _)| {
                let h = &groups[n - 1];
                let (ga, gc) = (GroupElement::decode(n, a).unwrap(), GroupElement::decode(n, c).unwrap());
                let word = mul(&mul(&mul(&inv(&ga), &inv(&gc)).unwrap(), &ga).unwrap(), &gc).unwrap().encode();
                let closed = (tensor(n, h.x_part(a), h.y_part(c)) ^ tensor(n, h.x_part(c), h.y_part(a))) << (2 * n);
                prop_assert_eq!(h.commutator(a, c), word);
                prop_assert_eq!(word, closed);
                Ok(())
            })
            .map_err(err),
    )?;
    run(
        "phi equivariance",
        runner()
            .run(&(0u64..256, 0u64..256), |(z, g)| {
                let s = &i2.sigma;
                let (xv, yv) = s.phi(z);
                let moved = (s.x_vertex(i2.h.mul(s.coset(xv)[0], g)), s.y_vertex(i2.h.mul(s.coset(yv)[0], g)));
                prop_assert_eq!(moved, s.phi(i2.h.mul(z, g)));
                Ok(())
            })
            .map_err(err),
    )?;
    run(
        "refinement",
        runner()
            .run(&graph_and_perm(), |(g, perm)| {
                let n = g.vertex_count();
                let (p1, t1) = refine(&g, &OrderedPartition::unit(n));
                let (p2, t2) = refine(&g, &OrderedPartition::unit(n));
                prop_assert_eq!(p1.cells(), p2.cells());
                prop_assert_eq!(t1, t2);
                let (q, tq) = refine(&g.relabel(&perm).unwrap(), &OrderedPartition::unit(n));
                prop_assert_eq!(t1, tq);
                for (a, c) in p1.cells().iter().zip(q.cells()) {
                    let mut mapped: Vec<u32> = a.iter().map(|&v| perm[v as usize]).collect();
                    mapped.sort_unstable();
                    prop_assert_eq!(mapped, c);
                }
                Ok(())
            })
            .map_err(err),
    )?;
    run(
        "canonical form",
        runner()
            .run(&graph_and_perm(), |(g, perm)| {
                let bud = Budget::default();
                let c = canonical_form(&g, &bud).unwrap();
                let r = canonical_form(&g.relabel(&perm).unwrap(), &bud).unwrap();
                prop_assert_eq!(c.certificate, r.certificate);
                Ok(())
            })
            .map_err(err),
    )?;
    Ok(format!("{suites} sampled suites x {CASES} cases and 2^24 exhaustive triples, no failures"))
}
