//! Reference distance diagram for `C(I(2), X, Y)`, shipped as data.

use serde::{Deserialize, Serialize};

use mdg_core::permsym::DistanceDiagram;

const RAW: &str = include_str!("../data/reference_diagram.json");

/// A cell is named by its distance from the base vertex and its size, which
/// is unambiguous for every cell an edge count is pinned on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellKey(pub u32, pub usize);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeCount {
    pub from: CellKey,
    pub to: CellKey,
    pub count: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceDiagram {
    pub version: u32,
    pub graph: String,
    pub source: String,
    /// Cell sizes at each distance, ascending.
    pub cells_by_distance: Vec<Vec<usize>>,
    pub edge_counts: Vec<EdgeCount>,
}

pub fn reference() -> ReferenceDiagram {
    serde_json::from_str(RAW).expect("embedded reference data is valid")
}

/// Differences between a computed diagram and the reference, empty when they agree.
pub fn diff(d: &DistanceDiagram, r: &ReferenceDiagram) -> Vec<String> {
    let mut out = Vec::new();
    let profile = d.profile();
    if profile != r.cells_by_distance {
        out.push(format!("cell sizes {profile:?} differ from {:?}", r.cells_by_distance));
    }
    let find = |k: CellKey| {
        let mut it = d.cells.iter().enumerate().filter(|(_, c)| c.distance == k.0 && c.size() == k.1);
        match (it.next(), it.next()) {
            (Some((i, _)), None) => Some(i),
            _ => None,
        }
    };
    for e in &r.edge_counts {
        match (find(e.from), find(e.to)) {
            (Some(a), Some(b)) if d.counts[a][b] == e.count => {}
            (Some(a), Some(b)) => out.push(format!(
                "cell {:?} has {} neighbours in cell {:?}, expected {}",
                e.from, d.counts[a][b], e.to, e.count
            )),
            _ => out.push(format!("cells {:?} and {:?} are not both unique", e.from, e.to)),
        }
    }
    out
}
