//! The `.ftcy` line format.
//!
//! ```text
//! # comment
//! vertex v0
//! edge e1 v0 u1 p=(1,0) f=(0,1)
//! edge e2 u2 v0 p=(1,1) f=(0,1) fr=(-1,0)
//! ```
//!
//! `p` is the position of the declared orientation (from the first
//! vertex to the second); the reverse orientation is implicit with
//! the negated position. `f` frames the declared orientation and is
//! required exactly when its terminal vertex is uni- or bivalent;
//! `fr` frames the reverse orientation under the same rule.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{FtcyGraph, LatticeVector, Violation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormatError {
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    Invalid(Vec<Violation>),
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Syntax {
                line,
                column,
                message,
            } => write!(f, "line {line}, column {column}: {message}"),
            FormatError::Invalid(violations) => {
                write!(f, "graph fails validation:")?;
                for v in violations {
                    write!(f, " [{v}]")?;
                }
                Ok(())
            }
        }
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn parse_vector(token: &str, line: usize, column: usize) -> Result<LatticeVector, FormatError> {
    let inner = token
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| syntax(line, column, format!("expected (a,b), got {token:?}")))?;
    let mut it = inner.split(',');
    let mut next = || -> Result<i64, FormatError> {
        it.next()
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| syntax(line, column, format!("expected (a,b), got {token:?}")))
    };
    let x = next()?;
    let y = next()?;
    if it.next().is_some() {
        return Err(syntax(line, column, format!("expected (a,b), got {token:?}")));
    }
    Ok(LatticeVector::new(x, y))
}

struct EdgeLine {
    line: usize,
    id: String,
    from: String,
    to: String,
    position: LatticeVector,
    framing_fwd: Option<LatticeVector>,
    framing_rev: Option<LatticeVector>,
}

/// Parses without running validation; used by tests that exercise
/// validation separately.
pub fn parse_graph_raw(text: &str) -> Result<FtcyGraph, FormatError> {
    let mut vertices: Vec<(usize, String)> = Vec::new();
    let mut edges: Vec<EdgeLine> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let col_of = |tok: &str| raw.find(tok).map(|b| b + 1).unwrap_or(1);
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "vertex" => {
                if tokens.len() != 2 {
                    return Err(syntax(lineno, 1, "expected: vertex <id>"));
                }
                let id = tokens[1];
                if vertices.iter().any(|(_, v)| v == id) {
                    return Err(syntax(lineno, col_of(id), format!("duplicate vertex id {id:?}")));
                }
                vertices.push((lineno, String::from(id)));
            }
            "edge" => {
                if tokens.len() < 5 {
                    return Err(syntax(
                        lineno,
                        1,
                        "expected: edge <id> <from> <to> p=(a,b) [f=(c,d)] [fr=(c,d)]",
                    ));
                }
                let id = tokens[1];
                if edges.iter().any(|e| e.id == id) {
                    return Err(syntax(lineno, col_of(id), format!("duplicate edge id {id:?}")));
                }
                let mut position = None;
                let mut framing_fwd = None;
                let mut framing_rev = None;
                for tok in &tokens[4..] {
                    let col = col_of(tok);
                    if let Some(rest) = tok.strip_prefix("fr=") {
                        if framing_rev.is_some() {
                            return Err(syntax(lineno, col, "duplicate fr= clause"));
                        }
                        framing_rev = Some(parse_vector(rest, lineno, col)?);
                    } else if let Some(rest) = tok.strip_prefix("f=") {
                        if framing_fwd.is_some() {
                            return Err(syntax(lineno, col, "duplicate f= clause"));
                        }
                        framing_fwd = Some(parse_vector(rest, lineno, col)?);
                    } else if let Some(rest) = tok.strip_prefix("p=") {
                        if position.is_some() {
                            return Err(syntax(lineno, col, "duplicate p= clause"));
                        }
                        position = Some(parse_vector(rest, lineno, col)?);
                    } else {
                        return Err(syntax(lineno, col, format!("unknown clause {tok:?}")));
                    }
                }
                let Some(position) = position else {
                    return Err(syntax(lineno, 1, "edge is missing its p=(a,b) clause"));
                };
                edges.push(EdgeLine {
                    line: lineno,
                    id: String::from(id),
                    from: String::from(tokens[2]),
                    to: String::from(tokens[3]),
                    position,
                    framing_fwd,
                    framing_rev,
                });
            }
            other => {
                return Err(syntax(
                    lineno,
                    col_of(other),
                    format!("unknown directive {other:?}"),
                ));
            }
        }
    }
    let mut g = FtcyGraph::new();
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    for (_, id) in &vertices {
        index.insert(id.clone(), g.add_vertex(id.clone()));
    }
    for e in edges {
        let from = *index
            .get(&e.from)
            .ok_or_else(|| syntax(e.line, 1, format!("unknown vertex {:?}", e.from)))?;
        let to = *index
            .get(&e.to)
            .ok_or_else(|| syntax(e.line, 1, format!("unknown vertex {:?}", e.to)))?;
        g.add_edge(e.id, from, to, e.position, e.framing_fwd, e.framing_rev);
    }
    Ok(g)
}

/// Parses and validates.
pub fn parse_graph(text: &str) -> Result<FtcyGraph, FormatError> {
    let g = parse_graph_raw(text)?;
    g.validate().map_err(FormatError::Invalid)?;
    Ok(g)
}

pub fn serialize_graph(g: &FtcyGraph) -> String {
    let mut out = String::new();
    for v in 0..g.vertex_count() {
        out.push_str(&format!("vertex {}\n", g.vertex_id(v)));
    }
    for k in 0..g.edge_count() {
        let r = g.edge_record(k);
        out.push_str(&format!(
            "edge {} {} {} p={}",
            r.id,
            g.vertex_id(r.from),
            g.vertex_id(r.to),
            r.position
        ));
        if let Some(f) = r.framing_fwd {
            out.push_str(&format!(" f={f}"));
        }
        if let Some(f) = r.framing_rev {
            out.push_str(&format!(" fr={f}"));
        }
        out.push('\n');
    }
    out
}
