//! Plain-text edge lists.
//!
//! ```text
//! n m
//! u v [w]      (m lines, 1-based vertices, weight defaults to 1)
//! ```
//! Blank lines are ignored. Error line numbers refer to physical lines.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() != 2 {
        return Err(parse_err(hline, "header must be \"n m\""));
    }
    let n: usize = head[0]
        .parse()
        .map_err(|_| parse_err(hline, format!("bad vertex count {:?}", head[0])))?;
    let m: usize = head[1]
        .parse()
        .map_err(|_| parse_err(hline, format!("bad edge count {:?}", head[1])))?;
    if n == 0 {
        return Err(parse_err(hline, "vertex count must be positive"));
    }

    let mut edges = Vec::with_capacity(m);
    let mut seen = HashSet::with_capacity(m);
    let mut last_line = hline;
    for (line, body) in lines {
        last_line = line;
        if edges.len() == m {
            return Err(parse_err(line, format!("more than {m} edge lines")));
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields.len() != 2 && fields.len() != 3 {
            return Err(parse_err(line, "expected \"u v [w]\""));
        }
        let vertex = |s: &str| -> Result<usize> {
            let x: usize = s
                .parse()
                .map_err(|_| parse_err(line, format!("bad vertex {s:?}")))?;
            if x == 0 || x > n {
                return Err(parse_err(line, format!("vertex {x} out of range 1..={n}")));
            }
            Ok(x - 1)
        };
        let u = vertex(fields[0])?;
        let v = vertex(fields[1])?;
        if u == v {
            return Err(parse_err(line, format!("self-loop at vertex {}", u + 1)));
        }
        let w = match fields.get(2) {
            Some(s) => s
                .parse::<f64>()
                .ok()
                .filter(|w| w.is_finite())
                .ok_or_else(|| parse_err(line, format!("bad weight {s:?}")))?,
            None => 1.0,
        };
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(parse_err(
                line,
                format!("duplicate edge ({}, {})", u + 1, v + 1),
            ));
        }
        edges.push((u, v, w));
    }
    if edges.len() != m {
        return Err(parse_err(
            last_line,
            format!("header promises {m} edges, found {}", edges.len()),
        ));
    }
    Graph::from_edges(n, edges)
}

/// Shortest round-trip float formatting, so `parse(emit(g)) == g` exactly.
pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(16 * (g.m() + 1));
    let _ = writeln!(out, "{} {}", g.n(), g.m());
    for (u, v, w) in g.edges() {
        let _ = writeln!(out, "{} {} {}", u + 1, v + 1, w);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_of(e: Error) -> usize {
        match e {
            Error::Parse { line, .. } => line,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn parses_k3() {
        let g = parse_edge_list("3 3\n1 2 1\n1 3 1\n2 3 1").unwrap();
        let k3 = Graph::from_edges(3, [(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)]).unwrap();
        assert_eq!(g, k3);
    }

    #[test]
    fn parses_single_edge_and_default_weight() {
        let g = parse_edge_list("2 1\n1 2 5").unwrap();
        assert_eq!(g.weight(0, 1), Some(5.0));
        let g = parse_edge_list("2 1\n2 1\n").unwrap();
        assert_eq!(g.weight(0, 1), Some(1.0));
    }

    #[test]
    fn reports_line_numbers() {
        let e = parse_edge_list("3 1\n1 1 2").unwrap_err();
        assert!(e.to_string().contains("self-loop"));
        assert_eq!(line_of(e), 2);
        assert_eq!(line_of(parse_edge_list("3 2\n1 2\n2 1").unwrap_err()), 3);
        assert_eq!(line_of(parse_edge_list("3 1\n1 4").unwrap_err()), 2);
        assert_eq!(line_of(parse_edge_list("3 1\n\n1 x").unwrap_err()), 3);
        assert_eq!(line_of(parse_edge_list("3 2\n1 2").unwrap_err()), 2);
        assert_eq!(line_of(parse_edge_list("3 1\n1 2\n2 3").unwrap_err()), 3);
        assert_eq!(line_of(parse_edge_list("3 1\n1 2 inf").unwrap_err()), 2);
        assert_eq!(line_of(parse_edge_list("").unwrap_err()), 1);
    }

    #[test]
    fn round_trip_keeps_awkward_floats() {
        let g = Graph::from_edges(
            4,
            [(0, 1, 0.1 + 0.2), (1, 3, -1e-300), (2, 3, 123_456_789.123_456_78)],
        )
        .unwrap();
        assert_eq!(parse_edge_list(&emit_edge_list(&g)).unwrap(), g);
    }
}
