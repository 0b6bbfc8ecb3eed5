//! DIMACS ASCII edge format (`.clq`).
//!
//! ```text
//! c optional comments
//! p edge <n> <m>
//! e <u> <v>          1 <= u, v <= n
//! ```
//!
//! `p col` is accepted as a synonym for `p edge`. Self-loop lines are dropped
//! and repeated edges collapse into one. The declared edge count is only
//! compared against the recomputed one and a mismatch becomes a warning.

use std::fmt::Write as _;
use std::io::BufRead;
use std::path::Path;

use super::{Graph, GraphBuilder};
use crate::error::DimacsError;

/// A parsed instance plus anything worth telling the user about it.
#[derive(Debug, Clone)]
pub struct ParsedDimacs {
    pub graph: Graph,
    pub declared_edges: usize,
    pub warnings: Vec<String>,
}

pub fn parse_dimacs_str(text: &str) -> Result<ParsedDimacs, DimacsError> {
    parse_dimacs(text.as_bytes())
}

pub fn read_dimacs_file(path: impl AsRef<Path>) -> Result<ParsedDimacs, DimacsError> {
    let path = path.as_ref();
    if path.extension().is_some_and(|e| e == "b") {
        return Err(DimacsError::BinaryFormat);
    }
    let bytes = std::fs::read(path).map_err(|source| DimacsError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let parsed = parse_dimacs(bytes.as_slice())?;
    for w in &parsed.warnings {
        log::warn!("{}: {w}", path.display());
    }
    Ok(parsed)
}

pub fn parse_dimacs<R: BufRead>(mut reader: R) -> Result<ParsedDimacs, DimacsError> {
    let mut builder: Option<GraphBuilder> = None;
    let mut declared_edges = 0usize;
    let mut warnings = Vec::new();
    let mut self_loops = 0usize;
    let mut seen_content = false;
    let mut raw = Vec::new();
    let mut lineno = 0usize;

    loop {
        raw.clear();
        if reader.read_until(b'\n', &mut raw)? == 0 {
            break;
        }
        lineno += 1;
        let Ok(line) = std::str::from_utf8(&raw) else {
            return Err(DimacsError::BinaryFormat);
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let kind = tokens.next().unwrap_or_default();

        // Binary instances open with a bare preamble length.
        if !seen_content && kind.bytes().all(|b| b.is_ascii_digit()) {
            return Err(DimacsError::BinaryFormat);
        }
        seen_content = true;

        match kind {
            "c" => {}
            "p" => {
                if builder.is_some() {
                    return Err(DimacsError::DuplicateProblemLine { line: lineno });
                }
                let format = tokens
                    .next()
                    .ok_or_else(|| syntax(lineno, "missing format in problem line"))?;
                if format != "edge" && format != "col" {
                    return Err(syntax(lineno, format!("unsupported problem format `{format}`")));
                }
                let n: usize = number(tokens.next(), lineno, "vertex count")?;
                declared_edges = number(tokens.next(), lineno, "edge count")?;
                if let Some(extra) = tokens.next() {
                    return Err(syntax(lineno, format!("unexpected token `{extra}`")));
                }
                builder = Some(GraphBuilder::new(n));
            }
            "e" => {
                let b = builder
                    .as_mut()
                    .ok_or(DimacsError::EdgeBeforeProblemLine { line: lineno })?;
                let n = b.n();
                let u: u64 = number(tokens.next(), lineno, "edge endpoint")?;
                let v: u64 = number(tokens.next(), lineno, "edge endpoint")?;
                if let Some(extra) = tokens.next() {
                    return Err(syntax(lineno, format!("unexpected token `{extra}`")));
                }
                for x in [u, v] {
                    if x == 0 || x > n as u64 {
                        return Err(DimacsError::VertexOutOfRange {
                            line: lineno,
                            vertex: x,
                            n,
                        });
                    }
                }
                if u == v {
                    self_loops += 1;
                } else {
                    b.add_edge(u as usize - 1, v as usize - 1);
                }
            }
            other => return Err(syntax(lineno, format!("unknown line type `{other}`"))),
        }
    }

    let graph = builder.ok_or(DimacsError::MissingProblemLine)?.build();
    if self_loops > 0 {
        warnings.push(format!("ignored {self_loops} self-loop line(s)"));
    }
    if graph.edge_count() != declared_edges {
        warnings.push(format!(
            "problem line declares {declared_edges} edges but {} distinct edges were read",
            graph.edge_count()
        ));
    }
    Ok(ParsedDimacs {
        graph,
        declared_edges,
        warnings,
    })
}

fn syntax(line: usize, message: impl Into<String>) -> DimacsError {
    DimacsError::Syntax {
        line,
        message: message.into(),
    }
}

fn number<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, DimacsError> {
    let tok = tok.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| syntax(line, format!("malformed {what} `{tok}`")))
}

/// Canonical text: the problem line, then edges `u < v` (1-based) in
/// lexicographic order.
pub fn write_dimacs(g: &Graph) -> String {
    let mut out = String::with_capacity(16 + g.edge_count() * 12);
    let _ = writeln!(out, "p edge {} {}", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<Graph, DimacsError> {
        parse_dimacs_str(s).map(|p| p.graph)
    }

    #[test]
    fn triangle() {
        let g = parse("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(g, Graph::complete(3));
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn edgeless() {
        let g = parse("c nothing here\np edge 2 0\n").unwrap();
        assert_eq!((g.n(), g.edge_count()), (2, 0));
    }

    #[test]
    fn loops_duplicates_and_miscount_warn() {
        let p = parse_dimacs_str("p edge 3 5\ne 1 2\ne 2 1\ne 3 3\n").unwrap();
        assert_eq!(p.graph.edge_count(), 1);
        assert_eq!(p.declared_edges, 5);
        assert_eq!(p.warnings.len(), 2);
    }

    #[test]
    fn p_col_accepted() {
        assert_eq!(parse("p col 2 1\ne 1 2").unwrap().edge_count(), 1);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert!(matches!(
            parse("c x\ne 1 2\n"),
            Err(DimacsError::EdgeBeforeProblemLine { line: 2 })
        ));
        assert!(matches!(
            parse("p edge 2 1\np edge 2 1\n"),
            Err(DimacsError::DuplicateProblemLine { line: 2 })
        ));
        assert!(matches!(parse("c only\n"), Err(DimacsError::MissingProblemLine)));
        assert!(matches!(
            parse("p edge 2 1\ne 1 3\n"),
            Err(DimacsError::VertexOutOfRange {
                line: 2,
                vertex: 3,
                n: 2
            })
        ));
        assert!(matches!(
            parse("p edge 2 1\ne 0 1\n"),
            Err(DimacsError::VertexOutOfRange { vertex: 0, .. })
        ));
        assert!(matches!(
            parse("p edge 2 1\ne 1 x\n"),
            Err(DimacsError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse("p edge 2 1\ne 1\n"),
            Err(DimacsError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse("p edge two 1\n"),
            Err(DimacsError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse("p edge 2 1\nq 1 2\n"),
            Err(DimacsError::Syntax { line: 2, .. })
        ));
        assert!(matches!(parse("p matrix 2 1\n"), Err(DimacsError::Syntax { .. })));
    }

    #[test]
    fn binary_format_rejected() {
        assert!(matches!(
            parse("1234\nc preamble\np edge 4 2\n"),
            Err(DimacsError::BinaryFormat)
        ));
        let bytes: &[u8] = b"p edge 2 1\n\xff\xfe\n";
        assert!(matches!(parse_dimacs(bytes), Err(DimacsError::BinaryFormat)));
        let err = read_dimacs_file("whatever.clq.b").unwrap_err();
        assert!(matches!(err, DimacsError::BinaryFormat));
    }

    #[test]
    fn write_is_canonical() {
        assert_eq!(write_dimacs(&Graph::complete(3)), "p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n");
        assert_eq!(write_dimacs(&Graph::edgeless(2)), "p edge 2 0\n");
        let g = parse("p edge 4 3\ne 4 1\ne 3 2\ne 2 1\n").unwrap();
        assert_eq!(write_dimacs(&g), "p edge 4 3\ne 1 2\ne 1 4\ne 2 3\n");
    }
}
