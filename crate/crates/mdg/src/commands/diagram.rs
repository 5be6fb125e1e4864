use std::fmt::Write as _;

use serde::Serialize;

use mdg_core::permsym::distance_diagram;

use crate::construct::Construction;
use crate::error::Result;
use crate::reference::{diff, reference};
use crate::report::SCHEMA_VERSION;
use crate::settings::Settings;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub distance: u32,
    pub size: usize,
    pub members_min: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReferenceCheck {
    pub matches: bool,
    pub differences: Vec<String>,
}

/// The orbits of the identity's stabilizer on `Γ(n)`, with neighbour counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramOutput {
    pub schema: u32,
    pub n: usize,
    pub vertex: u32,
    pub cells: Vec<Cell>,
    /// `counts[i][j]`: neighbours a vertex of cell `i` has in cell `j`.
    pub counts: Vec<Vec<u32>>,
    /// Present only when reference data exists for `n`.
    pub reference: Option<ReferenceCheck>,
}

impl DiagramOutput {
    pub fn matches_reference(&self) -> bool {
        self.reference.as_ref().is_none_or(|r| r.matches)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagram serializes")
    }

    /// Fixed-width table, one row per cell, listing its non-zero counts.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:>4} {:>4} {:>6} {:>6}  neighbours (cell:count)", "cell", "dist", "size", "min");
        for (i, c) in self.cells.iter().enumerate() {
            let _ = write!(out, "{i:>4} {:>4} {:>6} {:>6} ", c.distance, c.size, c.members_min);
            for (j, &k) in self.counts[i].iter().enumerate().filter(|(_, &k)| k > 0) {
                let _ = write!(out, " {j}:{k}");
            }
            out.push('\n');
        }
        match &self.reference {
            Some(r) if r.matches => out.push_str("reference: match\n"),
            Some(r) => {
                for d in &r.differences {
                    let _ = writeln!(out, "reference: {d}");
                }
            }
            None => out.push_str("reference: none for this n\n"),
        }
        out
    }
}

pub fn diagram(n: usize, settings: &Settings) -> Result<DiagramOutput> {
    let c = Construction::new(n, &settings.budget())?;
    let d = distance_diagram(&c.gamma, &c.stab, 0)?;
    let reference = (n == 2).then(|| {
        let differences = diff(&d, &reference());
        ReferenceCheck {
            matches: differences.is_empty(),
            differences,
        }
    });
    Ok(DiagramOutput {
        schema: SCHEMA_VERSION,
        n,
        vertex: 0,
        cells: d
            .cells
            .iter()
            .map(|c| Cell {
                distance: c.distance,
                size: c.size(),
                members_min: c.members_min(),
            })
            .collect(),
        counts: d.counts,
        reference,
    })
}
