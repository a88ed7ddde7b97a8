//! graph6 and plain edge-list readers/writers.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};

/// Largest order representable with the 4-byte graph6 header.
pub const GRAPH6_MAX_ORDER: usize = 258_047;

const GRAPH6_HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("graph6: {msg} at byte {offset}")]
    Graph6 { offset: usize, msg: String },
    #[error("edge list: {msg} at line {line}")]
    EdgeList { line: usize, msg: String },
}

fn g6_err(offset: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Graph6 {
        offset,
        msg: msg.into(),
    }
}

fn el_err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::EdgeList {
        line,
        msg: msg.into(),
    }
}

/// Decodes one graph6 string. An optional `>>graph6<<` header and a trailing
/// line break are accepted; anything else outside the encoding is an error.
pub fn parse_graph6(text: &str) -> Result<Graph, ParseError> {
    let text = text.trim_end_matches(['\n', '\r']);
    let skip = if text.starts_with(GRAPH6_HEADER) {
        GRAPH6_HEADER.len()
    } else {
        0
    };
    let bytes = &text.as_bytes()[skip..];
    let at = |i: usize| skip + i;

    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(g6_err(at(i), format!("byte {b} outside 63..=126")));
        }
    }
    let (n, header_len) = match bytes {
        [] => return Err(g6_err(at(0), "empty input")),
        [126, 126, ..] => return Err(g6_err(at(0), "orders above 258047 are not supported")),
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(g6_err(at(bytes.len()), "truncated order header"));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
            if n < 63 {
                return Err(g6_err(at(0), format!("order {n} must use the short header")));
            }
            (n, 4)
        }
        [b, ..] => ((b - 63) as usize, 1),
    };
    if n == 0 {
        return Err(g6_err(at(0), "order 0 graph"));
    }
    let bit_count = n * (n - 1) / 2;
    let data_len = bit_count.div_ceil(6);
    let data = &bytes[header_len..];
    if data.len() < data_len {
        return Err(g6_err(
            at(bytes.len()),
            format!("expected {data_len} data bytes, found {}", data.len()),
        ));
    }
    if data.len() > data_len {
        return Err(g6_err(at(header_len + data_len), "trailing bytes"));
    }

    let bit = |k: usize| (data[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let pad_start = bit_count;
    if let Some(k) = (pad_start..data_len * 6).find(|&k| bit(k)) {
        return Err(g6_err(at(header_len + k / 6), "nonzero padding bits"));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edges(n, edges).expect("graph6 bits describe a simple graph"))
}

/// Encodes a graph as graph6 (no header, no newline).
///
/// Panics if the order exceeds [`GRAPH6_MAX_ORDER`].
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.order();
    assert!(n <= GRAPH6_MAX_ORDER, "graph6 order limit exceeded");
    let mut out = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.extend([(n >> 12) & 63, (n >> 6) & 63, n & 63].map(|x| x as u8 + 63));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
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

/// Parses `n` on the first line followed by one `u v` pair per line.
/// Blank lines are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (first, header) = lines.next().ok_or_else(|| el_err(1, "missing vertex count"))?;
    let n: usize = header
        .parse()
        .map_err(|_| el_err(first, format!("invalid vertex count {header:?}")))?;
    if n == 0 {
        return Err(el_err(first, "vertex count must be positive"));
    }
    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (line, l) in lines {
        let mut fields = l.split_whitespace();
        let mut next_id = || -> Result<usize, ParseError> {
            let f = fields.next().ok_or_else(|| el_err(line, "expected two vertex ids"))?;
            f.parse()
                .map_err(|_| el_err(line, format!("invalid vertex id {f:?}")))
        };
        let (u, v) = (next_id()?, next_id()?);
        if fields.next().is_some() {
            return Err(el_err(line, "trailing fields"));
        }
        if u >= n || v >= n {
            return Err(el_err(line, format!("vertex {} out of range", u.max(v))));
        }
        if u == v {
            return Err(el_err(line, "loop"));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(el_err(line, "duplicate edge"));
        }
        edges.push((u, v));
    }
    Graph::from_edges(n, edges).map_err(|e: GraphError| el_err(0, e.to_string()))
}

pub fn encode_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.order());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Input format selector for text that may be either encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InputFormat {
    #[default]
    Auto,
    Graph6,
    EdgeList,
}

impl FromStr for InputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Self::Auto),
            "graph6" | "g6" => Ok(Self::Graph6),
            "edge-list" | "edgelist" => Ok(Self::EdgeList),
            other => Err(format!("unknown input format {other:?}")),
        }
    }
}

/// Parses `text` in the given format. `Auto` picks edge-list when the first
/// non-blank character is an ASCII digit and graph6 otherwise.
pub fn parse_graph(text: &str, format: InputFormat) -> Result<Graph, ParseError> {
    match format {
        InputFormat::Graph6 => parse_graph6(text.trim()),
        InputFormat::EdgeList => parse_edge_list(text),
        InputFormat::Auto => {
            let trimmed = text.trim_start();
            if trimmed.starts_with(|c: char| c.is_ascii_digit()) {
                parse_edge_list(text)
            } else {
                parse_graph6(trimmed.trim_end())
            }
        }
    }
}
