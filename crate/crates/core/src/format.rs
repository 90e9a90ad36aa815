//! Graph text formats: a diff-friendly edge list and the standard graph6
//! byte encoding.
//!
//! Edge list: first non-comment line is the vertex count, each following
//! line is one edge "u v". Lines starting with '#' are comments. Loops and
//! duplicate edges are rejected.

use crate::graph::Graph;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Graph6,
}

impl std::str::FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edgelist" | "edge-list" => Ok(GraphFormat::EdgeList),
            "graph6" | "g6" => Ok(GraphFormat::Graph6),
            other => Err(Error::Parse(format!("unknown graph format '{other}'"))),
        }
    }
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Graph6 => parse_graph6(text.trim()),
    }
}

pub fn serialize_graph(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::EdgeList => to_edge_list(g),
        GraphFormat::Graph6 => to_graph6(g),
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty edge-list input".into()))?;
    let n: usize = header
        .parse()
        .map_err(|_| Error::Parse(format!("malformed vertex-count header '{header}'")))?;
    let mut g = Graph::empty(n);
    for line in lines {
        let mut it = line.split_whitespace();
        let (u, v) = match (it.next(), it.next(), it.next()) {
            (Some(u), Some(v), None) => (u, v),
            _ => return Err(Error::Parse(format!("malformed edge line '{line}'"))),
        };
        let u: usize = u
            .parse()
            .map_err(|_| Error::Parse(format!("bad vertex '{u}'")))?;
        let v: usize = v
            .parse()
            .map_err(|_| Error::Parse(format!("bad vertex '{v}'")))?;
        g.add_edge(u, v)?;
    }
    Ok(g)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

// graph6: N(n) followed by the upper triangle of the adjacency matrix in
// column order x(0,1), x(0,2), x(1,2), x(0,3), ..., packed 6 bits per byte,
// each byte offset by 63.

pub fn parse_graph6(line: &str) -> Result<Graph> {
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Parse("empty graph6 input".into()));
    }
    let (n, body) = decode_g6_size(bytes)?;
    let bits_needed = n * n.saturating_sub(1) / 2;
    let bytes_needed = bits_needed.div_ceil(6);
    if body.len() != bytes_needed {
        return Err(Error::Parse(format!(
            "graph6 body has {} bytes, expected {bytes_needed} for n = {n}",
            body.len()
        )));
    }
    let mut g = Graph::empty(n);
    let mut idx = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[idx / 6];
            if !(63..=126).contains(&byte) {
                return Err(Error::Parse(format!("invalid graph6 byte {byte}")));
            }
            let chunk = byte - 63;
            let bit = (chunk >> (5 - (idx % 6))) & 1;
            if bit == 1 {
                g.add_edge(i, j)?;
            }
            idx += 1;
        }
    }
    // Padding bits must be zero.
    while idx < bytes_needed * 6 {
        let chunk = body[idx / 6] - 63;
        if (chunk >> (5 - (idx % 6))) & 1 != 0 {
            return Err(Error::Parse("nonzero padding bits in graph6".into()));
        }
        idx += 1;
    }
    Ok(g)
}

fn decode_g6_size(bytes: &[u8]) -> Result<(usize, &[u8])> {
    if bytes[0] == 126 {
        if bytes.len() >= 4 && bytes[1] != 126 {
            let mut n = 0usize;
            for &b in &bytes[1..4] {
                if !(63..=126).contains(&b) {
                    return Err(Error::Parse("invalid graph6 size byte".into()));
                }
                n = (n << 6) | (b - 63) as usize;
            }
            Ok((n, &bytes[4..]))
        } else {
            Err(Error::Parse(
                "graph6 sizes above 258047 are not supported".into(),
            ))
        }
    } else {
        if !(63..=125).contains(&bytes[0]) {
            return Err(Error::Parse(format!(
                "invalid graph6 size byte {}",
                bytes[0]
            )));
        }
        Ok(((bytes[0] - 63) as usize, &bytes[1..]))
    }
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else {
        assert!(n <= 258047, "graph6 encoder supports n <= 258047");
        out.push(126);
        out.push(63 + ((n >> 12) & 63) as u8);
        out.push(63 + ((n >> 6) & 63) as u8);
        out.push(63 + (n & 63) as u8);
    }
    let bits_needed = n * n.saturating_sub(1) / 2;
    let mut body = vec![0u8; bits_needed.div_ceil(6)];
    let mut idx = 0usize;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(i, j) {
                body[idx / 6] |= 1 << (5 - (idx % 6));
            }
            idx += 1;
        }
    }
    out.extend(body.into_iter().map(|b| b + 63));
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}
