//! Plain-text edge-list format.
//!
//! Header line `n m`, then `m` lines `u v` with 0-indexed endpoints,
//! whitespace-separated. Emission is canonical: arcs in lexicographic order,
//! single-space separators, `\n` line endings. `parse(emit(g)) == g`.

use thiserror::Error;

use crate::graph::{build_digraph, Digraph, GraphError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("missing header line")]
    MissingHeader,
    #[error("malformed header {0:?}: expected \"n m\"")]
    MalformedHeader(String),
    #[error("malformed arc line {0:?}: expected \"u v\"")]
    MalformedArc(String),
    #[error("arc count mismatch: header says {expected}, found {found}")]
    ArcCountMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut tokens = line.split_whitespace();
    let a = tokens.next()?.parse().ok()?;
    let b = tokens.next()?.parse().ok()?;
    if tokens.next().is_some() {
        return None;
    }
    Some((a, b))
}

pub fn parse_edge_list(text: &str) -> Result<Digraph, ParseError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or(ParseError::MissingHeader)?;
    let (n, m) =
        parse_pair(header).ok_or_else(|| ParseError::MalformedHeader(header.to_string()))?;
    let mut arcs = Vec::with_capacity(m.min(1 << 20));
    let mut found = 0usize;
    for line in lines {
        found += 1;
        if found > m {
            continue; // keep counting so the error can report the real total
        }
        let arc = parse_pair(line).ok_or_else(|| ParseError::MalformedArc(line.to_string()))?;
        arcs.push(arc);
    }
    if found != m {
        return Err(ParseError::ArcCountMismatch { expected: m, found });
    }
    Ok(build_digraph(n, &arcs)?)
}

pub fn emit_edge_list(g: &Digraph) -> String {
    let mut out = String::with_capacity(12 + 8 * g.arc_count());
    out.push_str(&format!("{} {}\n", g.n(), g.arc_count()));
    for (u, v) in g.arcs() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
