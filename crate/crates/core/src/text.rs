//! Plain-text hypergraph files.
//!
//! Line 1 is `r n`. Every later line that is neither empty nor a `#` comment
//! holds one edge as r space-separated 0-based indices, entry `i` on side `i`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph};

#[derive(Debug, Clone)]
pub struct ParsedHypergraph {
    pub graph: Hypergraph,
    /// Comment lines, verbatim including the leading `#`.
    pub comments: Vec<String>,
    pub duplicates: usize,
}

impl ParsedHypergraph {
    /// Canonical text with the comments placed right after the header line.
    pub fn to_text(&self) -> String {
        write_hypergraph(&self.graph, &self.comments)
    }
}

pub fn parse_hypergraph(text: &str) -> Result<ParsedHypergraph> {
    let mut lines = text.split('\n').enumerate();
    let (r, n) = loop {
        let Some((no, line)) = lines.next() else {
            return Err(Error::Parse {
                line: 1,
                message: "missing `r n` header".into(),
            });
        };
        let line = line.strip_suffix('\r').unwrap_or(line);
        if no == 0 {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|_| Error::Parse {
                    line: 1,
                    message: format!("bad integer `{s}` in header"),
                })
            };
            if parts.len() != 2 {
                return Err(Error::Parse {
                    line: 1,
                    message: format!("expected `r n`, got `{line}`"),
                });
            }
            break (parse(parts[0])?, parse(parts[1])?);
        }
    };

    let mut comments = Vec::new();
    let mut edges = Vec::new();
    for (no, line) in lines {
        let line = line.strip_suffix('\r').unwrap_or(line);
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('#') {
            comments.push(trimmed.to_string());
            continue;
        }
        let idx = trimmed
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>().map_err(|_| Error::Parse {
                    line: no + 1,
                    message: format!("bad integer `{t}`"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if idx.len() != r {
            return Err(Error::Parse {
                line: no + 1,
                message: format!("expected {r} entries, got {}", idx.len()),
            });
        }
        if let Some(v) = idx.iter().find(|&&v| v >= n) {
            return Err(Error::Parse {
                line: no + 1,
                message: format!("index {v} outside 0..{n}"),
            });
        }
        edges.push(Edge::new(idx));
    }
    let (graph, duplicates) = Hypergraph::with_duplicate_count(r, n, edges).map_err(|e| {
        Error::Parse {
            line: 1,
            message: e.to_string(),
        }
    })?;
    Ok(ParsedHypergraph {
        graph,
        comments,
        duplicates,
    })
}

pub fn write_hypergraph(h: &Hypergraph, comments: &[String]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", h.r(), h.n());
    for c in comments {
        if c.starts_with('#') {
            let _ = writeln!(out, "{c}");
        } else {
            let _ = writeln!(out, "# {c}");
        }
    }
    for e in h.edges() {
        let parts: Vec<String> = e.as_slice().iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", parts.join(" "));
    }
    out
}

impl Hypergraph {
    pub fn to_text(&self) -> String {
        write_hypergraph(self, &[])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_blank_lines_and_duplicates() {
        let text = "3 2\n# parity\n\n1 1 1\n0 0 1\n0 0 1\r\n";
        let p = parse_hypergraph(text).unwrap();
        assert_eq!(p.graph.r(), 3);
        assert_eq!(p.graph.edge_count(), 2);
        assert_eq!(p.duplicates, 1);
        assert_eq!(p.comments, vec!["# parity".to_string()]);
        assert_eq!(p.to_text(), "3 2\n# parity\n0 0 1\n1 1 1\n");
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(parse_hypergraph(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_hypergraph("3\n"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_hypergraph("3 2\n0 0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_hypergraph("3 2\n0 0 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_hypergraph("3 2\n0 x 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn canonical_text_round_trips() {
        let text = "2 2\n# hi\n0 1\n1 0\n";
        assert_eq!(parse_hypergraph(text).unwrap().to_text(), text);
    }
}
