//! One function per subcommand.

mod aut;
mod diagram;
mod export;
mod graphs;
mod group;

pub use aut::{aut, AutOptions, Target};
pub use diagram::{diagram, DiagramOutput};
pub use export::{export, ExportTarget, Format};
pub use graphs::verify_graphs;
pub use group::{verify_group, GroupSpec};

use std::time::Instant;

use crate::report::Claim;

/// Runs `f` and stamps every claim it returns with the elapsed time.
pub(crate) fn timed(f: impl FnOnce() -> Vec<Claim>) -> Vec<Claim> {
    let start = Instant::now();
    let mut claims = f();
    let ms = start.elapsed().as_millis() as u64;
    for c in &mut claims {
        c.runtime_ms = ms;
    }
    claims
}
