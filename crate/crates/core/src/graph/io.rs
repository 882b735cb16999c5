//! graph6 and plain edge-list formats.

use super::{Edge, Graph, GraphError};

const HEADER: &str = ">>graph6<<";

fn g6_err(offset: usize, reason: impl Into<String>) -> GraphError {
    GraphError::MalformedGraph6 { offset, reason: reason.into() }
}

/// Parses one graph6 string. An optional `>>graph6<<` header and trailing
/// newline are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let mut start = 0;
    let mut s = text.trim_end_matches(['\n', '\r']).as_bytes();
    if text.starts_with(HEADER) {
        start = HEADER.len();
        s = &s[HEADER.len()..];
    }
    if let Some(pos) = s.iter().position(|b| !(63..=126).contains(b)) {
        return Err(g6_err(start + pos, format!("byte {:#04x} outside 63..=126", s[pos])));
    }
    let (n, header_len) = match s {
        [] => return Err(g6_err(start, "empty input")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(g6_err(start + 2, "truncated 36-bit vertex count"));
            }
            (rest[..6].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize), 8)
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(g6_err(start + 1, "truncated 18-bit vertex count"));
            }
            (rest[..3].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize), 4)
        }
        [b, ..] => ((b - 63) as usize, 1),
    };
    if n == 0 {
        return Err(g6_err(start, "graph has no vertices"));
    }
    let bits = n * (n - 1) / 2;
    let body = &s[header_len..];
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(g6_err(
            start + header_len + body.len().min(expected),
            format!("expected {expected} data bytes for n={n}, found {}", body.len()),
        ));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let pad_mask = (1u8 << (6 - bits % 6)) - 1;
        if (body[expected - 1] - 63) & pad_mask != 0 {
            return Err(g6_err(start + header_len + expected - 1, "non-zero padding bits"));
        }
    }
    Graph::from_edges(n, &edges).map_err(|e| g6_err(start, e.to_string()))
}

/// graph6 encoding without header or newline.
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Parses `u v` pairs, one per line. Blank lines and `#` comments are
/// skipped; an optional first line `n=<k>` fixes the vertex count so that
/// isolated vertices can be expressed. Without it, `n` is one more than the
/// largest index.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let err = |offset: usize, reason: String| GraphError::MalformedEdgeList { offset, reason };
    let mut declared: Option<(usize, usize)> = None;
    let mut edges: Vec<Edge> = Vec::new();
    let mut offset = 0;
    let mut seen_content = false;
    for raw in text.split_inclusive('\n') {
        let line_start = offset;
        offset += raw.len();
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let col = line_start + raw.find(line).unwrap_or(0);
        if let Some(rest) = line.strip_prefix("n=") {
            if seen_content {
                return Err(err(col, "n=<k> header must come first".into()));
            }
            let n: usize = rest.trim().parse().map_err(|_| err(col, format!("bad vertex count {rest:?}")))?;
            declared = Some((n, col));
            seen_content = true;
            continue;
        }
        seen_content = true;
        let mut parts = line.split_whitespace();
        let mut next = || -> Result<usize, GraphError> {
            let tok = parts.next().ok_or_else(|| err(col, "expected two vertex indices".into()))?;
            tok.parse().map_err(|_| err(col, format!("bad vertex index {tok:?}")))
        };
        let (u, v) = (next()?, next()?);
        if parts.next().is_some() {
            return Err(err(col, "trailing tokens after edge".into()));
        }
        if u == v {
            return Err(err(col, format!("self-loop at {u}")));
        }
        if let Some((n, _)) = declared {
            if u.max(v) >= n {
                return Err(err(col, format!("vertex {} out of range for n={n}", u.max(v))));
            }
        }
        edges.push((u, v));
    }
    let n = match declared {
        Some((n, col)) if n == 0 => return Err(err(col, "graph has no vertices".into())),
        Some((n, _)) => n,
        None => match edges.iter().map(|&(u, v)| u.max(v)).max() {
            Some(m) => m + 1,
            None => return Err(err(0, "no edges and no n=<k> header".into())),
        },
    };
    Graph::from_edges(n, &edges).map_err(|e| err(0, e.to_string()))
}
