//! Line-oriented instance format.
//!
//! ```text
//! c comment
//! p rsp <n> <m>
//! a <src> <dst> <cost> <resource>     (exactly m lines, 1-based ids)
//! q <s> <t> <R>                       (optional)
//! ```
//!
//! The header must be the first non-comment line. Blank lines are ignored.

use std::fmt::Write as _;

use rsp_core::{Edge, Graph, Query};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub graph: Graph,
    pub query: Option<Query>,
}

fn parse_count(tok: &str, what: &str, line: usize) -> Result<usize, ParseError> {
    tok.parse()
        .or_else(|_| err(line, format!("{what} `{tok}` is not a nonnegative integer")))
}

fn parse_vertex(tok: &str, n: usize, line: usize) -> Result<usize, ParseError> {
    let v = parse_count(tok, "vertex id", line)?;
    if v == 0 || v > n {
        return err(line, format!("vertex {v} out of range 1..={n}"));
    }
    Ok(v - 1)
}

fn parse_weight(tok: &str, what: &str, line: usize) -> Result<f64, ParseError> {
    match tok.parse::<f64>() {
        Ok(x) if x.is_finite() && x >= 0.0 => Ok(x),
        _ => err(
            line,
            format!("{what} `{tok}` is not a finite nonnegative number"),
        ),
    }
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut query = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        let Some(&kind) = toks.first() else {
            continue;
        };
        match kind {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return err(line, "duplicate problem line");
                }
                if toks.len() != 4 || toks[1] != "rsp" {
                    return err(line, "expected `p rsp <n> <m>`");
                }
                let n = parse_count(toks[2], "vertex count", line)?;
                if n == 0 {
                    return err(line, "vertex count must be positive");
                }
                header = Some((n, parse_count(toks[3], "edge count", line)?));
            }
            "a" | "q" => {
                let Some((n, m)) = header else {
                    return err(line, "problem line `p rsp <n> <m>` must come first");
                };
                if kind == "a" {
                    if toks.len() != 5 {
                        return err(line, "expected `a <src> <dst> <cost> <resource>`");
                    }
                    if edges.len() == m {
                        return err(line, format!("more than {m} edge lines"));
                    }
                    edges.push(Edge::new(
                        parse_vertex(toks[1], n, line)?,
                        parse_vertex(toks[2], n, line)?,
                        parse_weight(toks[3], "cost", line)?,
                        parse_weight(toks[4], "resource", line)?,
                    ));
                } else {
                    if toks.len() != 4 {
                        return err(line, "expected `q <s> <t> <R>`");
                    }
                    if query.is_some() {
                        return err(line, "duplicate query line");
                    }
                    let s = parse_vertex(toks[1], n, line)?;
                    let t = parse_vertex(toks[2], n, line)?;
                    let r = parse_weight(toks[3], "resource bound", line)?;
                    query = Some(Query::new(s, t, r).or_else(|e| err(line, e.to_string()))?);
                }
            }
            other => return err(line, format!("unknown line type `{other}`")),
        }
    }

    let Some((n, m)) = header else {
        return err(last_line.max(1), "missing problem line `p rsp <n> <m>`");
    };
    if edges.len() != m {
        return err(
            last_line,
            format!("header announces {m} edges, found {}", edges.len()),
        );
    }
    let graph = Graph::new(n, edges).or_else(|e| err(last_line, e.to_string()))?;
    Ok(Instance { graph, query })
}

/// Writes an instance in the format accepted by [`parse_instance`]. Weights
/// use Rust's shortest round-tripping float formatting.
pub fn write_instance(g: &Graph, query: Option<&Query>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p rsp {} {}", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        let _ = writeln!(
            out,
            "a {} {} {} {}",
            e.src + 1,
            e.dst + 1,
            e.cost,
            e.resource
        );
    }
    if let Some(q) = query {
        let _ = writeln!(out, "q {} {} {}", q.source + 1, q.target + 1, q.bound);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rsp_core::fixtures;

    pub const EXAMPLE: &str = "\
c six vertices with a zero-cost cycle b -> c -> d -> b
p rsp 6 8
a 1 2 2 1
a 2 3 1 5
a 1 3 1 8
a 2 5 2 7
a 3 4 0 2
a 4 5 0 1
a 5 3 0 2
a 5 6 1 6
q 1 6 15
";

    #[test]
    fn parses_example() {
        let inst = parse_instance(EXAMPLE).unwrap();
        assert_eq!(inst.graph, fixtures::zero_cost_cycle_graph());
        assert_eq!(inst.query, Some(Query::new(0, 5, 15.0).unwrap()));
    }

    #[test]
    fn reports_out_of_range_vertex() {
        let text = EXAMPLE.replace("a 5 6 1 6", "a 1 7 1 1");
        let e = parse_instance(&text).unwrap_err();
        assert_eq!(e.line, 10);
        assert!(e.message.contains("out of range"), "{e}");
    }

    #[test]
    fn query_is_optional() {
        let text = EXAMPLE.replace("q 1 6 15\n", "");
        assert_eq!(parse_instance(&text).unwrap().query, None);
    }

    #[test]
    fn malformed_inputs() {
        let cases = [
            ("a 1 2 1 1\n", 1),
            ("p rsp 2 1\np rsp 2 1\n", 2),
            ("p sp 2 1\n", 1),
            ("p rsp 2 2\na 1 2 1 1\n", 2),
            ("p rsp 2 1\na 1 2 1 1\na 2 1 1 1\n", 3),
            ("p rsp 2 1\na 1 2 -1 1\n", 2),
            ("p rsp 2 1\na 1 2 1 x\n", 2),
            ("p rsp 2 1\na 1 2 1 1\nq 1 1 3\n", 3),
            ("p rsp 2 1\nz\n", 2),
            ("", 1),
        ];
        for (text, line) in cases {
            let e = parse_instance(text).unwrap_err();
            assert_eq!(e.line, line, "{text:?}: {e}");
        }
    }

    #[test]
    fn self_loop_lines_count_but_are_dropped() {
        let inst = parse_instance("p rsp 2 2\na 1 1 1 1\na 1 2 1 1\n").unwrap();
        assert_eq!(inst.graph.edge_count(), 1);
        assert_eq!(inst.graph.dropped_self_loops(), 1);
    }

    proptest! {
        #[test]
        fn round_trip(
            n in 2usize..8,
            raw in prop::collection::vec((0usize..8, 0usize..8, 0f64..1e3, 0f64..1e3), 0..20),
            bound in 0f64..1e4,
        ) {
            let edges: Vec<Edge> = raw
                .into_iter()
                .map(|(s, d, c, r)| Edge::new(s % n, d % n, c, r))
                .collect();
            let g = Graph::new(n, edges).unwrap();
            let q = Query::new(0, n - 1, bound).unwrap();
            let text = write_instance(&g, Some(&q));
            let back = parse_instance(&text).unwrap();
            prop_assert_eq!(back.graph.vertex_count(), g.vertex_count());
            prop_assert_eq!(back.graph.edges(), g.edges());
            prop_assert_eq!(back.query, Some(q));
            prop_assert_eq!(write_instance(&back.graph, back.query.as_ref()), text);
        }
    }
}
