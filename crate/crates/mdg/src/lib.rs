//! Verification reports, graph export and the distance diagram for the
//! mixed dihedral graphs built by `mdg-core`.
//!
//! The `mdg` binary is a thin front end over [`commands`]; every command
//! returns its output as data so that tests can drive it directly.

pub mod commands;
pub mod construct;
pub mod edgelist;
pub mod error;
pub mod graph6;
pub mod reference;
pub mod report;
pub mod settings;

pub use error::{MdgError, Result};
pub use settings::Settings;
