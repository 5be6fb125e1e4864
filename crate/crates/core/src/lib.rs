//! Mixed dihedral groups and the graphs they define.
//!
//! This crate builds the 2-group `I(n)` on `F_2^n ⊕ F_2^n ⊕ (F_2^n ⊗ F_2^n)`,
//! its Cayley graph `C(H, X, Y)` and the bipartite coset graph `Σ(H, X, Y)`,
//! and provides the machinery needed to check their structure and symmetry:
//! subgroup closures, quotients, clique and line graphs, permutation groups
//! with a base and strong generating set, distance diagrams, and a
//! partition-refinement automorphism search.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, reports and
//! the command line live in the companion `mdg` crate.
//!
//! ```
//! use mdg_core::group::{FiniteGroup, IGroup};
//! use mdg_core::graphs::cayley_graph;
//!
//! let h = IGroup::new(2).unwrap();
//! assert_eq!(h.order(), 256);
//! let gamma = cayley_graph(&h, &h.connection_set()).unwrap();
//! assert_eq!(gamma.regular_degree(), Some(6));
//! ```

#![no_std]
#![deny(rust_2018_idioms)]

extern crate alloc;

pub mod autsearch;
pub mod bitlin;
mod bitset;
mod error;
pub mod graphs;
pub mod group;
pub mod permsym;

pub use error::{Error, Result};

/// Resource limits shared by the enumeration-heavy operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest group (or element set) that will be enumerated.
    pub max_elements: u64,
    /// Search-tree nodes for automorphism and canonical-form searches.
    pub max_nodes: u64,
    /// Sifted elements during Schreier-Sims.
    pub max_sifts: u64,
    /// Maximal cliques reported by Bron-Kerbosch.
    pub max_cliques: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_elements: 1 << 24,
            max_nodes: 1 << 22,
            max_sifts: 1 << 26,
            max_cliques: 1 << 22,
        }
    }
}
