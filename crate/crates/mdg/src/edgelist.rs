//! Plain edge lists: one `u v` pair per line, 0-indexed, `u < v`, sorted.

use std::fmt::Write as _;

use mdg_core::graphs::Graph;

use crate::error::{MdgError, Result};

pub fn encode(g: &Graph) -> String {
    let mut out = String::with_capacity(g.edge_count() * 12);
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to a String");
    }
    out
}

/// Parses an edge list. Blank lines and lines starting with `#` are
/// skipped. The vertex count is `vertices` when given, otherwise one more
/// than the largest endpoint.
pub fn decode(text: &str, vertices: Option<usize>) -> Result<Graph> {
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| MdgError::Parse { line: i + 1, message };
        let mut parts = line.split_whitespace();
        let mut next = || -> Result<u32> {
            let tok = parts.next().ok_or_else(|| err("expected two vertices".into()))?;
            tok.parse().map_err(|_| err(format!("`{tok}` is not a vertex index")))
        };
        let (u, v) = (next()?, next()?);
        if parts.next().is_some() {
            return Err(err("trailing tokens".into()));
        }
        edges.push((u, v));
    }
    let n = vertices.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) as usize + 1).max().unwrap_or(0));
    Ok(Graph::from_edges(n, &edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use mdg_core::graphs::cycle;

    #[test]
    fn round_trip() {
        let g = cycle(6);
        let text = encode(&g);
        assert_eq!(text.lines().count(), 6);
        assert!(text.starts_with("0 1\n0 5\n"));
        assert_eq!(decode(&text, None).unwrap(), g);
    }

    #[test]
    fn comments_and_errors() {
        let g = decode("# triangle\n0 1\n\n1 2\n0 2\n", Some(4)).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 3));
        assert!(matches!(decode("0 1\n1 x\n", None), Err(MdgError::Parse { line: 2, .. })));
        assert!(decode("0 0\n", None).is_err());
        assert!(decode("0 1 2\n", None).is_err());
    }
}
