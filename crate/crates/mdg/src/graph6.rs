//! The graph6 text format: a size header followed by the upper triangle of
//! the adjacency matrix, column by column, six bits per printable byte.

use mdg_core::graphs::Graph;

use crate::error::{MdgError, Result};

const BIAS: u8 = 63;

fn push_size(out: &mut String, n: usize) {
    if n < 63 {
        out.push((n as u8 + BIAS) as char);
    } else if n < 258_048 {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift & 63) as u8 + BIAS) as char);
        }
    } else {
        out.push_str("~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift & 63) as u8 + BIAS) as char);
        }
    }
}

/// Encodes without the optional `>>graph6<<` header or trailing newline.
pub fn encode(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out = String::with_capacity(8 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    push_size(&mut out, n);
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n as u32 {
        let nb = g.neighbors(j);
        let mut k = 0;
        for i in 0..j {
            while k < nb.len() && nb[k] < i {
                k += 1;
            }
            let bit = k < nb.len() && nb[k] == i;
            acc = acc << 1 | bit as u8;
            bits += 1;
            if bits == 6 {
                out.push((acc + BIAS) as char);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push(((acc << (6 - bits)) + BIAS) as char);
    }
    out
}

fn parse_err(message: impl Into<String>) -> MdgError {
    MdgError::Parse {
        line: 1,
        message: message.into(),
    }
}

/// Decodes one graph6 string; a `>>graph6<<` prefix and surrounding
/// whitespace are accepted.
pub fn decode(text: &str) -> Result<Graph> {
    let text = text.trim();
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(parse_err(format!("byte {b} outside the graph6 range")));
    }
    let six = |b: u8| (b - BIAS) as usize;
    let (n, body) = match bytes {
        [126, 126, rest @ ..] if rest.len() >= 6 => (rest[..6].iter().fold(0, |a, &b| a << 6 | six(b)), &rest[6..]),
        [126, rest @ ..] if rest.len() >= 3 => (rest[..3].iter().fold(0, |a, &b| a << 6 | six(b)), &rest[3..]),
        [b, rest @ ..] if *b != 126 => (six(*b), rest),
        _ => return Err(parse_err("truncated size header")),
    };
    let pairs = n * n.saturating_sub(1) / 2;
    if body.len() != pairs.div_ceil(6) {
        return Err(parse_err(format!(
            "expected {} data bytes for {n} vertices, found {}",
            pairs.div_ceil(6),
            body.len()
        )));
    }
    let mut edges = Vec::new();
    let mut idx = 0;
    for j in 1..n as u32 {
        for i in 0..j {
            if six(body[idx / 6]) >> (5 - idx % 6) & 1 == 1 {
                edges.push((i, j));
            }
            idx += 1;
        }
    }
    Ok(Graph::from_edges(n, &edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use mdg_core::graphs::{complete, complete_bipartite, cycle};

    #[test]
    fn known_strings() {
        assert_eq!(encode(&complete_bipartite(4, 4)), "G?~vf_");
        assert_eq!(encode(&complete(4)), "C~");
        assert_eq!(encode(&Graph::empty(0)), "?");
        assert_eq!(encode(&Graph::empty(1)), "@");
    }

    #[test]
    fn round_trips_across_header_sizes() {
        for g in [cycle(5), complete(10), cycle(70), Graph::empty(63)] {
            assert_eq!(decode(&encode(&g)).unwrap(), g);
        }
        assert_eq!(decode(">>graph6<<G?~vf_\n").unwrap(), complete_bipartite(4, 4));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(decode("G?~v").is_err());
        assert!(decode("").is_err());
        assert!(decode("G?~vf_ \x01").is_err());
    }
}
