//! graph6 codec (the dense format from the nauty distribution).
//!
//! Decoding tolerates a leading `>>graph6<<` header and a trailing newline.
//! sparse6 (`:`) and digraph6 (`&`) inputs are rejected rather than guessed.
//! Nonzero padding bits are rejected so that every accepted string is the
//! canonical encoding of the graph it decodes to.

use crate::error::GraphError;
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";

fn malformed(msg: impl Into<String>) -> GraphError {
    GraphError::MalformedGraph6(msg.into())
}

pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    encode_order(n, &mut out);
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    String::from_utf8(out).expect("graph6 is printable ascii")
}

fn encode_order(n: usize, out: &mut Vec<u8>) {
    let groups = if n <= 62 {
        out.push(n as u8 + 63);
        return;
    } else if n <= 258_047 {
        out.push(126);
        3
    } else {
        out.extend([126, 126]);
        6
    };
    for k in (0..groups).rev() {
        out.push(((n >> (6 * k)) & 0x3f) as u8 + 63);
    }
}

pub fn decode(text: &str) -> Result<Graph, GraphError> {
    let line = text.strip_suffix('\n').unwrap_or(text);
    let line = line.strip_suffix('\r').unwrap_or(line);
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    if line.starts_with(">>sparse6<<") || line.starts_with(':') {
        return Err(GraphError::UnsupportedFormat("sparse6".into()));
    }
    if line.starts_with(">>digraph6<<") || line.starts_with('&') {
        return Err(GraphError::UnsupportedFormat("digraph6".into()));
    }
    let bytes = line.as_bytes();
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(malformed(format!("byte {:#04x} at offset {pos} outside 63..=126", bytes[pos])));
    }
    let (n, rest) = decode_order(bytes)?;
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if rest.len() != expected {
        return Err(malformed(format!("n={n} needs {expected} data bytes, found {}", rest.len())));
    }
    let mut adj = vec![Vec::new(); n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = rest[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                adj[i].push(j);
                adj[j].push(i);
            }
            k += 1;
        }
    }
    let pad = expected * 6 - bits;
    if pad > 0 && (rest[expected - 1] - 63) & ((1 << pad) - 1) != 0 {
        return Err(malformed("nonzero padding bits"));
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    Ok(Graph::from_sorted_adjacency(adj))
}

fn decode_order(bytes: &[u8]) -> Result<(usize, &[u8]), GraphError> {
    let read = |chunk: &[u8]| chunk.iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
    match bytes {
        [] => Err(malformed("empty input")),
        [126, 126, rest @ ..] if rest.len() >= 6 => Ok((read(&rest[..6]), &rest[6..])),
        [126, 126, ..] => Err(malformed("truncated 8-byte order")),
        [126, rest @ ..] if rest.len() >= 3 => Ok((read(&rest[..3]), &rest[3..])),
        [126, ..] => Err(malformed("truncated 4-byte order")),
        [b, rest @ ..] => Ok(((b - 63) as usize, rest)),
    }
}

/// Decodes every non-empty line; errors carry 1-based line numbers.
pub fn decode_lines(text: &str) -> Vec<(usize, Result<Graph, GraphError>)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, decode(l.trim_end())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_roundtrip() {
        let g = decode("C~").unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_count(), 6);
        assert!(g.is_cubic());
        assert_eq!(encode(&g), "C~");
    }

    #[test]
    fn tolerates_newline_and_header() {
        assert_eq!(decode("C~\n").unwrap().edge_count(), 6);
        assert_eq!(decode("C~\r\n").unwrap().edge_count(), 6);
        assert_eq!(decode(">>graph6<<C~").unwrap().edge_count(), 6);
    }

    #[test]
    fn rejects_other_formats() {
        assert!(matches!(decode(":Fa@x^"), Err(GraphError::UnsupportedFormat(_))));
        assert!(matches!(decode("&C~"), Err(GraphError::UnsupportedFormat(_))));
        assert!(matches!(decode(">>sparse6<<:Fa@x^"), Err(GraphError::UnsupportedFormat(_))));
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(decode(""), Err(GraphError::MalformedGraph6(_))));
        assert!(matches!(decode("C~~"), Err(GraphError::MalformedGraph6(_))));
        assert!(matches!(decode("C"), Err(GraphError::MalformedGraph6(_))));
        assert!(matches!(decode("C~ "), Err(GraphError::MalformedGraph6(_))));
        // n=3 has 3 bits, so the low 3 bits of the data byte are padding.
        assert!(decode("Bw").is_ok());
        assert!(matches!(decode("Bx"), Err(GraphError::MalformedGraph6(_))));
    }

    #[test]
    fn empty_and_single_vertex() {
        assert_eq!(decode("?").unwrap().n(), 0);
        assert_eq!(decode("@").unwrap().n(), 1);
        assert_eq!(encode(&decode("@").unwrap()), "@");
    }

    #[test]
    fn large_order_header() {
        let g = Graph::new(63, &[(0, 62)], false).unwrap();
        let s = encode(&g);
        assert!(s.starts_with("~??~"));
        assert_eq!(decode(&s).unwrap(), g);
    }
}
