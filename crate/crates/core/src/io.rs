//! Plain-text edge-list instances.
//!
//! ```text
//! # optional comments
//! 4          <- vertex count
//! 0 1        <- one edge per line
//! 1 2
//! ```
//!
//! When every label is a non-negative integer the labels are taken as vertex
//! ids and must be below the header count. Otherwise labels are arbitrary
//! tokens numbered densely in order of first appearance; vertices that never
//! appear in an edge get the placeholder label `~<id>`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{GraphError, IoError, ParseError};
use crate::graph::{Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedInstance {
    pub graph: Graph,
    /// External label of each vertex id.
    pub labels: Vec<String>,
}

impl ParsedInstance {
    pub fn label_of(&self, v: Vertex) -> &str {
        &self.labels[v]
    }
}

pub fn parse_instance(text: &str) -> Result<ParsedInstance, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let n: usize = header.parse().map_err(|_| ParseError::Malformed {
        line: header_line,
        message: format!("expected a vertex count, found '{header}'"),
    })?;

    let mut raw = Vec::new();
    for (line, content) in lines {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let [a, b] = tokens[..] else {
            return Err(ParseError::Malformed {
                line,
                message: format!("expected two vertex labels, found '{content}'"),
            });
        };
        raw.push((line, a, b));
    }

    let numeric: Option<Vec<(usize, usize, usize)>> = raw
        .iter()
        .map(|&(line, a, b)| Some((line, a.parse().ok()?, b.parse().ok()?)))
        .collect();

    let (edges, labels) = match numeric {
        Some(edges) => (edges, (0..n).map(|v| v.to_string()).collect::<Vec<_>>()),
        None => {
            let mut ids: HashMap<&str, usize> = HashMap::new();
            let mut labels: Vec<String> = Vec::new();
            let mut edges = Vec::with_capacity(raw.len());
            for &(line, a, b) in &raw {
                let u = intern(&mut ids, &mut labels, a, n, line)?;
                let v = intern(&mut ids, &mut labels, b, n, line)?;
                edges.push((line, u, v));
            }
            labels.extend((labels.len()..n).map(|v| format!("~{v}")));
            (edges, labels)
        }
    };

    for &(line, u, v) in &edges {
        let check = if u >= n || v >= n {
            Err(GraphError::EndpointOutOfRange {
                vertex: u.max(v),
                n,
            })
        } else if u == v {
            Err(GraphError::SelfLoop(u))
        } else {
            Ok(())
        };
        check.map_err(|source| ParseError::Graph { line, source })?;
    }

    let graph =
        Graph::new(n, edges.iter().map(|&(_, u, v)| (u, v))).expect("edges validated above");
    Ok(ParsedInstance { graph, labels })
}

fn intern<'a>(
    ids: &mut HashMap<&'a str, usize>,
    labels: &mut Vec<String>,
    label: &'a str,
    n: usize,
    line: usize,
) -> Result<usize, ParseError> {
    if let Some(&id) = ids.get(label) {
        return Ok(id);
    }
    if labels.len() == n {
        return Err(ParseError::Malformed {
            line,
            message: format!("more than {n} distinct vertex labels"),
        });
    }
    labels.push(label.to_string());
    ids.insert(label, labels.len() - 1);
    Ok(labels.len() - 1)
}

/// Writes `graph` in the numeric edge-list format.
pub fn export_instance(graph: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{}", graph.vertex_count()).unwrap();
    for (u, v) in graph.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn read_instance(path: &Path) -> Result<ParsedInstance, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::File {
        path: path.display().to_string(),
        source,
    })?;
    parse_instance(&text).map_err(|source| IoError::Parse {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_path() {
        let parsed = parse_instance("3\n0 1\n1 2\n").unwrap();
        assert_eq!(parsed.graph, Graph::new(3, [(0, 1), (1, 2)]).unwrap());
        assert_eq!(parsed.labels, ["0", "1", "2"]);
    }

    #[test]
    fn skips_comments_and_blank_lines() {
        let text = "# a path\n\n3\n# edges follow\n0 1\n\n1 2\n";
        let parsed = parse_instance(text).unwrap();
        assert_eq!(parsed.graph.edge_count(), 2);
    }

    #[test]
    fn rejects_out_of_range_endpoint() {
        let err = parse_instance("2\n0 3\n").unwrap_err();
        assert!(matches!(
            err,
            ParseError::Graph {
                line: 2,
                source: GraphError::EndpointOutOfRange { vertex: 3, n: 2 }
            }
        ));
    }

    #[test]
    fn rejects_self_loop_and_malformed_lines() {
        assert!(matches!(
            parse_instance("3\n0 1\n2 2\n").unwrap_err(),
            ParseError::Graph {
                line: 3,
                source: GraphError::SelfLoop(2)
            }
        ));
        assert!(matches!(
            parse_instance("3\n0 1 2\n").unwrap_err(),
            ParseError::Malformed { line: 2, .. }
        ));
        assert!(matches!(
            parse_instance("three\n").unwrap_err(),
            ParseError::Malformed { line: 1, .. }
        ));
        assert!(matches!(
            parse_instance("# only a comment\n").unwrap_err(),
            ParseError::MissingHeader
        ));
    }

    #[test]
    fn renumbers_symbolic_labels() {
        let parsed = parse_instance("4\nbob alice\nalice carol\ncarol bob\n").unwrap();
        assert_eq!(parsed.labels, ["bob", "alice", "carol", "~3"]);
        assert!(parsed.graph.is_adjacent(0, 1));
        assert!(parsed.graph.is_adjacent(1, 2));
        assert_eq!(parsed.graph.degree(3), 0);

        assert!(matches!(
            parse_instance("2\na b\nb c\n").unwrap_err(),
            ParseError::Malformed { line: 3, .. }
        ));
        assert!(matches!(
            parse_instance("2\na a\n").unwrap_err(),
            ParseError::Graph { line: 2, .. }
        ));
    }

    #[test]
    fn duplicate_edges_collapse() {
        let parsed = parse_instance("2\n0 1\n1 0\n0 1\n").unwrap();
        assert_eq!(parsed.graph.edge_count(), 1);
    }
}
