//! Edge-list text format: one edge per line as two whitespace-separated
//! 0-based vertex ids, `#` starts a comment line, and an optional header
//! `n <count>` declares the vertex count (needed for trailing isolated
//! vertices). Writing is canonical, so equal graphs produce identical bytes.
//!
//! Family files reuse the same edge syntax; blank lines separate the
//! edge sets.

use crate::graph::{Graph, GraphError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EdgeListError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
}

fn parse_edge_line(line_no: usize, line: &str) -> Result<(u32, u32), EdgeListError> {
    let mut it = line.split_whitespace();
    let a = it.next().ok_or_else(|| EdgeListError::Parse {
        line: line_no,
        msg: "expected two vertex ids".into(),
    })?;
    let b = it.next().ok_or_else(|| EdgeListError::Parse {
        line: line_no,
        msg: "expected two vertex ids".into(),
    })?;
    if it.next().is_some() {
        return Err(EdgeListError::Parse {
            line: line_no,
            msg: "expected exactly two vertex ids".into(),
        });
    }
    let u: u32 = a.parse().map_err(|e| EdgeListError::Parse {
        line: line_no,
        msg: format!("bad vertex id {a:?}: {e}"),
    })?;
    let v: u32 = b.parse().map_err(|e| EdgeListError::Parse {
        line: line_no,
        msg: format!("bad vertex id {b:?}: {e}"),
    })?;
    Ok((u, v))
}

pub fn parse_edge_list(text: &str) -> Result<Graph, EdgeListError> {
    let mut declared_n: Option<usize> = None;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut max_id: Option<u32> = None;
    let mut first_edge_line = 1;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("n ").or_else(|| line.strip_prefix("n\t")) {
            if declared_n.is_some() || !edges.is_empty() {
                return Err(EdgeListError::Parse {
                    line: line_no,
                    msg: "header must appear once, before any edge".into(),
                });
            }
            let n: usize = rest.trim().parse().map_err(|e| EdgeListError::Parse {
                line: line_no,
                msg: format!("bad vertex count {rest:?}: {e}"),
            })?;
            declared_n = Some(n);
            continue;
        }
        let (u, v) = parse_edge_line(line_no, line)?;
        if edges.is_empty() {
            first_edge_line = line_no;
        }
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
        edges.push((u, v));
    }
    let n = declared_n.unwrap_or_else(|| max_id.map_or(0, |m| m as usize + 1));
    Graph::from_edges(n, &edges).map_err(|source| EdgeListError::Graph {
        line: first_edge_line,
        source,
    })
}

/// Canonical writer: header line, then edges as `u v` with u < v in
/// lexicographic order.
pub fn format_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(16 + g.m() * 8);
    out.push_str(&format!("n {}\n", g.n()));
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Parse a family file: blocks of edge lines separated by one or more blank
/// lines. Comment lines are allowed anywhere. Returns the raw edge pairs per
/// member; validation against a board happens in [`crate::games`].
pub fn parse_family_file(text: &str) -> Result<Vec<Vec<(u32, u32)>>, EdgeListError> {
    let mut members: Vec<Vec<(u32, u32)>> = Vec::new();
    let mut current: Vec<(u32, u32)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            if !current.is_empty() {
                members.push(std::mem::take(&mut current));
            }
            continue;
        }
        current.push(parse_edge_line(line_no, line)?);
    }
    if !current.is_empty() {
        members.push(current);
    }
    Ok(members)
}

pub fn format_family_file(members: &[Vec<(u32, u32)>]) -> String {
    let mut out = String::new();
    for (i, member) in members.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        for &(u, v) in member {
            out.push_str(&format!("{u} {v}\n"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_header_and_comments() {
        let g = parse_edge_list("# a path plus an isolated vertex\nn 4\n0 1\n1 2\n").unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.m(), 2);
        assert_eq!(g.degree(3), 0);
    }

    #[test]
    fn infers_n_without_header() {
        let g = parse_edge_list("0 1\n2 1\n").unwrap();
        assert_eq!(g.n(), 3);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_edge_list("0 1\nx 2\n").unwrap_err();
        assert!(err.to_string().starts_with("line 2:"), "{err}");
        let err = parse_edge_list("n 2\n0 1\n0 1\n").unwrap_err();
        assert!(err.to_string().contains("duplicate edge"), "{err}");
    }

    #[test]
    fn round_trip_is_canonical() {
        let g = parse_edge_list("n 5\n3 1\n0 1\n2 0\n").unwrap();
        let text = format_edge_list(&g);
        assert_eq!(text, "n 5\n0 1\n0 2\n1 3\n");
        let g2 = parse_edge_list(&text).unwrap();
        assert_eq!(g, g2);
    }

    #[test]
    fn family_blocks() {
        let members =
            parse_family_file("0 1\n1 2\n\n# second member\n2 3\n\n\n0 3\n").unwrap();
        assert_eq!(members.len(), 3);
        assert_eq!(members[1], vec![(2, 3)]);
    }
}
