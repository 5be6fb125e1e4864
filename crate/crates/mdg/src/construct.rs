//! The groups and graphs every command works on, built once per run.

use mdg_core::autsearch::distinguishing_base;
use mdg_core::bitlin::gl_order;
use mdg_core::graphs::{cayley_graph, normal_quotient, sigma_graph, Graph, Quotient, SigmaGraph};
use mdg_core::group::{derived_subgroup, IGroup, Subgroup};
use mdg_core::permsym::{
    aut_hxy_generators, induced_action_on_sigma, orbits, quotient_action, right_mult, right_mult_action, Bsgs,
    BsgsOptions, Permutation,
};
use mdg_core::Budget;

use crate::error::{MdgError, Result};

/// Largest `n` for which graphs are built: `Γ(4)` already has 2^24 vertices.
pub const MAX_GRAPH_N: usize = 3;

/// `|I(n)| · |GL(n,2)|² · 2`, the order of the automorphism group of both
/// graphs, or `None` once it overflows `u128` (from `n = 7`).
pub fn aut_formula(n: usize) -> Option<u128> {
    let g = gl_order(n);
    1u128
        .checked_shl((n * n + 2 * n) as u32)
        .filter(|_| n * n + 2 * n < 128)?
        .checked_mul(g)?
        .checked_mul(g)?
        .checked_mul(2)
}

/// A JSON number when it fits in `u64`, a decimal string otherwise.
pub fn big(v: u128) -> serde_json::Value {
    match u64::try_from(v) {
        Ok(v) => v.into(),
        Err(_) => v.to_string().into(),
    }
}

pub fn check_graph_n(n: usize) -> Result<()> {
    if (2..=MAX_GRAPH_N).contains(&n) {
        Ok(())
    } else {
        Err(MdgError::Unsupported(format!(
            "graphs are built for 2 <= n <= {MAX_GRAPH_N}, got n = {n}"
        )))
    }
}

/// `I(n)` with `Γ = C(H, X, Y)`, `Σ = Σ(H, X, Y)` and known automorphisms.
pub struct Construction {
    pub n: usize,
    pub h: IGroup,
    pub x: Vec<u64>,
    pub y: Vec<u64>,
    pub gamma: Graph,
    pub sigma: SigmaGraph,
    /// Right multiplications by the generators of `I(n)`.
    pub right: Vec<Permutation>,
    /// Lifts of `Aut(I(n), S)`, all fixing the identity vertex.
    pub stab: Vec<Permutation>,
}

impl Construction {
    pub fn new(n: usize, budget: &Budget) -> Result<Self> {
        check_graph_n(n)?;
        let h = IGroup::new(n)?;
        let gamma = cayley_graph(&h, &h.connection_set())?;
        let x = h.x_elements();
        let y = h.y_elements();
        let sigma = sigma_graph(&h, &x, &y, budget)?;
        let right = right_mult_action(&h)?;
        let stab = aut_hxy_generators(&h, &gamma)?;
        Ok(Construction {
            n,
            h,
            x,
            y,
            gamma,
            sigma,
            right,
            stab,
        })
    }

    pub fn gamma_generators(&self) -> Vec<Permutation> {
        self.right.iter().chain(&self.stab).cloned().collect()
    }

    pub fn sigma_generators(&self) -> Result<Vec<Permutation>> {
        self.gamma_generators()
            .iter()
            .map(|p| induced_action_on_sigma(&self.sigma, p).map_err(Into::into))
            .collect()
    }

    /// `I(n)` acting on `Σ` by right multiplication.
    pub fn h_on_sigma(&self) -> Result<Vec<Permutation>> {
        self.right
            .iter()
            .map(|p| induced_action_on_sigma(&self.sigma, p).map_err(Into::into))
            .collect()
    }

    /// `H'` and its generators acting on `Σ`.
    pub fn derived_on_sigma(&self, budget: &Budget) -> Result<(Subgroup, Vec<Permutation>)> {
        let d = derived_subgroup(&self.h, budget)?;
        let gens = d
            .generators
            .iter()
            .map(|&t| induced_action_on_sigma(&self.sigma, &right_mult(&self.h, t)))
            .collect::<mdg_core::Result<Vec<_>>>()?;
        Ok((d, gens))
    }

    /// `Σ/H'` together with the images of the known automorphisms and of `H`.
    pub fn quotient(&self, budget: &Budget) -> Result<QuotientSetup> {
        let (_, gens) = self.derived_on_sigma(budget)?;
        let blocks = orbits(&gens, self.sigma.graph.vertex_count());
        let quotient = normal_quotient(&self.sigma.graph, &blocks)?;
        let down = |p: &Permutation| quotient_action(p, &quotient.block_of, blocks.len());
        let group = self
            .sigma_generators()?
            .iter()
            .map(down)
            .collect::<mdg_core::Result<Vec<_>>>()?;
        let h = self
            .h_on_sigma()?
            .iter()
            .map(down)
            .collect::<mdg_core::Result<Vec<_>>>()?;
        Ok(QuotientSetup { quotient, blocks, group, h })
    }

    /// Order of the group generated by the known automorphisms of `Γ`.
    pub fn known_order(&self, budget: &Budget) -> Result<u128> {
        Ok(certified_chain(&self.gamma, &self.gamma_generators(), budget)?.order())
    }
}

pub struct QuotientSetup {
    pub quotient: Quotient,
    pub blocks: Vec<Vec<u32>>,
    /// Known automorphisms of `Σ`, acting on the blocks.
    pub group: Vec<Permutation>,
    /// `I(n)` acting on the blocks.
    pub h: Vec<Permutation>,
}

/// Schreier-Sims on a base fixed only by the identity automorphism, which
/// lets every sift be decided on the base images alone.
pub fn certified_chain(g: &Graph, gens: &[Permutation], budget: &Budget) -> Result<Bsgs> {
    let opts = BsgsOptions {
        base: distinguishing_base(g, &[0])?,
        certified: true,
    };
    Ok(Bsgs::new(g.vertex_count(), gens, &opts, budget)?)
}
