#![allow(dead_code)]

use mdg_core::graphs::{cayley_graph, sigma_graph, Graph, SigmaGraph};
use mdg_core::group::IGroup;
use mdg_core::permsym::{aut_hxy_generators, induced_action_on_sigma, right_mult_action, Permutation};
use mdg_core::Budget;

/// `I(n)` with its Cayley graph, coset graph and the known symmetries of both.
pub struct Instance {
    pub h: IGroup,
    pub x: Vec<u64>,
    pub y: Vec<u64>,
    pub gamma: Graph,
    pub sigma: SigmaGraph,
    /// Right multiplications by the generators of `I(n)`.
    pub right: Vec<Permutation>,
    /// Automorphisms of `I(n)` preserving `S`, as vertex permutations of `Γ`.
    pub stab: Vec<Permutation>,
}

impl Instance {
    pub fn new(n: usize) -> Self {
        let h = IGroup::new(n).unwrap();
        let gamma = cayley_graph(&h, &h.connection_set()).unwrap();
        let x = h.x_elements();
        let y = h.y_elements();
        let sigma = sigma_graph(&h, &x, &y, &Budget::default()).unwrap();
        let right = right_mult_action(&h).unwrap();
        let stab = aut_hxy_generators(&h, &gamma).unwrap();
        Instance { h, x, y, gamma, sigma, right, stab }
    }

    pub fn gamma_generators(&self) -> Vec<Permutation> {
        self.right.iter().chain(&self.stab).cloned().collect()
    }

    pub fn sigma_generators(&self) -> Vec<Permutation> {
        self.gamma_generators()
            .iter()
            .map(|p| induced_action_on_sigma(&self.sigma, p).unwrap())
            .collect()
    }
}
