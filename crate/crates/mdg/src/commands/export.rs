use mdg_core::graphs::Graph;

use crate::construct::Construction;
use crate::error::Result;
use crate::settings::Settings;
use crate::{edgelist, graph6};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportTarget {
    Gamma,
    Sigma,
    /// `Σ` modulo the orbits of the derived subgroup.
    Quotient,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Graph6,
    Edgelist,
}

/// The graph serialized in `format`, newline-terminated.
pub fn export(n: usize, target: ExportTarget, format: Format, settings: &Settings) -> Result<String> {
    let budget = settings.budget();
    let c = Construction::new(n, &budget)?;
    let quotient;
    let g: &Graph = match target {
        ExportTarget::Gamma => &c.gamma,
        ExportTarget::Sigma => &c.sigma.graph,
        ExportTarget::Quotient => {
            quotient = c.quotient(&budget)?.quotient.graph;
            &quotient
        }
    };
    Ok(match format {
        Format::Graph6 => graph6::encode(g) + "\n",
        Format::Edgelist => edgelist::encode(g),
    })
}
