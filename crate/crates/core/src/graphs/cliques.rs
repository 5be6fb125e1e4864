use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{Graph, SigmaGraph};
use crate::{Budget, Error, Result};

/// Maximal cliques, sorted, and the graph on them where two cliques are
/// adjacent when they share a vertex.
#[derive(Clone, Debug)]
pub struct CliqueGraph {
    pub graph: Graph,
    pub cliques: Vec<Vec<u32>>,
}

fn intersect(a: &[u32], nb: &[u32]) -> Vec<u32> {
    a.iter().copied().filter(|v| nb.binary_search(v).is_ok()).collect()
}

/// Bron-Kerbosch without pivoting.
fn bron_kerbosch(
    g: &Graph,
    r: &mut Vec<u32>,
    p: Vec<u32>,
    mut x: Vec<u32>,
    out: &mut Vec<Vec<u32>>,
    limit: u64,
) -> Result<()> {
    if p.is_empty() && x.is_empty() {
        if out.len() as u64 >= limit {
            return Err(Error::BudgetExceeded {
                what: "maximal cliques",
                limit,
            });
        }
        let mut c = r.clone();
        c.sort_unstable();
        out.push(c);
        return Ok(());
    }
    for (i, &v) in p.iter().enumerate() {
        let nb = g.neighbors(v);
        r.push(v);
        bron_kerbosch(g, r, intersect(&p[i + 1..], nb), intersect(&x, nb), out, limit)?;
        r.pop();
        x.push(v);
    }
    Ok(())
}

/// Maximal cliques containing `v` whose other members all exceed `v`
/// when `only_lowest` is set, otherwise all maximal cliques through `v`.
fn cliques_at(g: &Graph, v: u32, only_lowest: bool, out: &mut Vec<Vec<u32>>, limit: u64) -> Result<()> {
    let nb = g.neighbors(v);
    let (p, x): (Vec<u32>, Vec<u32>) = if only_lowest {
        nb.iter().partition(|&&w| w > v)
    } else {
        (nb.to_vec(), Vec::new())
    };
    let mut r = vec![v];
    bron_kerbosch(g, &mut r, p, x, out, limit)
}

fn intersection_graph(n: usize, cliques: &[Vec<u32>]) -> Graph {
    let mut incident = vec![Vec::new(); n];
    for (i, c) in cliques.iter().enumerate() {
        for &v in c {
            incident[v as usize].push(i as u32);
        }
    }
    let mut lists = vec![Vec::new(); cliques.len()];
    for inc in &incident {
        for &a in inc {
            for &b in inc {
                if a != b {
                    lists[a as usize].push(b);
                }
            }
        }
    }
    for l in &mut lists {
        l.sort_unstable();
        l.dedup();
    }
    Graph::from_sorted_lists(lists)
}

/// The clique graph, enumerating maximal cliques from each vertex in turn.
pub fn clique_graph(g: &Graph, budget: &Budget) -> Result<CliqueGraph> {
    if let Some(v) = (0..g.vertex_count() as u32).find(|&v| g.degree(v) > 64) {
        return Err(Error::BudgetExceeded {
            what: "clique enumeration degree",
            limit: g.degree(v) as u64,
        });
    }
    let mut cliques = Vec::new();
    for v in 0..g.vertex_count() as u32 {
        cliques_at(g, v, true, &mut cliques, budget.max_cliques)?;
    }
    cliques.sort_unstable();
    let graph = intersection_graph(g.vertex_count(), &cliques);
    Ok(CliqueGraph { graph, cliques })
}

/// The clique graph of `C(H, X, Y)` taking the `X`- and `Y`-cosets as the
/// maximal cliques. The cosets are checked to be cliques, and at every
/// `stride`-th vertex the generic enumeration must produce exactly the two
/// cosets through it. Clique `i` corresponds to vertex `i` of `Σ`.
pub fn coset_clique_graph(gamma: &Graph, sigma: &SigmaGraph, stride: usize) -> Result<CliqueGraph> {
    let n = gamma.vertex_count();
    let cliques: Vec<Vec<u32>> = (0..sigma.graph.vertex_count() as u32)
        .map(|v| sigma.coset(v).iter().map(|&z| z as u32).collect())
        .collect();
    for c in &cliques {
        for (i, &a) in c.iter().enumerate() {
            if c[i + 1..].iter().any(|&b| !gamma.has_edge(a, b)) {
                return Err(Error::Verification(format!("coset through {a} is not a clique")));
            }
        }
    }
    let stride = stride.max(1);
    for v in (0..n as u32).step_by(stride) {
        let mut found = Vec::new();
        cliques_at(gamma, v, false, &mut found, u64::MAX)?;
        found.sort_unstable();
        let mut expect = vec![
            cliques[sigma.x_vertex(v as u64) as usize].clone(),
            cliques[sigma.y_vertex(v as u64) as usize].clone(),
        ];
        expect.sort_unstable();
        if found != expect {
            return Err(Error::Verification(format!(
                "maximal cliques through {v} are not its two cosets"
            )));
        }
    }
    let graph = intersection_graph(n, &cliques);
    Ok(CliqueGraph { graph, cliques })
}

/// The line graph and the edge behind each of its vertices.
#[derive(Clone, Debug)]
pub struct LineGraph {
    pub graph: Graph,
    /// Edges of the source graph, sorted; vertex `i` is `edges[i]`.
    pub edges: Vec<(u32, u32)>,
}

impl LineGraph {
    pub fn vertex_of(&self, u: u32, v: u32) -> Option<u32> {
        let e = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search(&e).ok().map(|i| i as u32)
    }
}

pub fn line_graph(g: &Graph) -> LineGraph {
    let edges: Vec<(u32, u32)> = g.edges().collect();
    let mut incident = vec![Vec::new(); g.vertex_count()];
    for (i, &(u, v)) in edges.iter().enumerate() {
        incident[u as usize].push(i as u32);
        incident[v as usize].push(i as u32);
    }
    let mut lists = vec![Vec::new(); edges.len()];
    for inc in &incident {
        for &a in inc {
            lists[a as usize].extend(inc.iter().copied().filter(|&b| b != a));
        }
    }
    for l in &mut lists {
        l.sort_unstable();
        l.dedup();
    }
    LineGraph {
        graph: Graph::from_sorted_lists(lists),
        edges,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete, complete_bipartite, cycle};

    #[test]
    fn triangle_has_one_clique() {
        let c = clique_graph(&complete(3), &Budget::default()).unwrap();
        assert_eq!(c.cliques, [vec![0, 1, 2]]);
        assert_eq!(c.graph.edge_count(), 0);
    }

    #[test]
    fn cycle_cliques_are_edges() {
        let c = clique_graph(&cycle(5), &Budget::default()).unwrap();
        assert_eq!(c.cliques.len(), 5);
        assert_eq!(c.graph.regular_degree(), Some(2));
    }

    #[test]
    fn line_graph_examples() {
        let k3 = line_graph(&complete(3));
        assert_eq!(k3.graph, complete(3));
        let star = line_graph(&complete_bipartite(1, 3));
        assert_eq!(star.graph, complete(3));
        assert_eq!(star.vertex_of(2, 0), Some(1));
    }

    #[test]
    fn clique_budget() {
        let b = Budget {
            max_cliques: 2,
            ..Budget::default()
        };
        assert!(clique_graph(&cycle(5), &b).is_err());
    }
}
