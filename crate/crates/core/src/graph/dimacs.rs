//! DIMACS edge format.
//!
//! ```text
//! c optional comment lines
//! p edge <n> <m>
//! e <i> <j>        (m lines, 1-indexed)
//! ```

use std::io::{BufRead, Write};

use crate::error::{Error, Result};

use super::DenseGraph;

/// Writes `g` as DIMACS text, one `e i j` line per edge with `i < j`.
pub fn export_dimacs<W: Write>(g: &DenseGraph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "p edge {} {}", g.vertex_count(), g.edge_count())?;
    for (i, j) in g.edges() {
        writeln!(out, "e {} {}", i + 1, j + 1)?;
    }
    out.flush()
}

pub fn to_dimacs_string(g: &DenseGraph) -> String {
    let mut buf = Vec::new();
    export_dimacs(g, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("DIMACS output is ASCII")
}

/// Reads a DIMACS edge-format graph. Repeated edge lines are accepted, but
/// the number of `e` lines must equal the header's edge count.
pub fn import_dimacs<R: BufRead>(source: R) -> Result<DenseGraph> {
    let mut graph: Option<(DenseGraph, usize, usize)> = None;
    let mut edge_lines = 0usize;

    for (idx, line) in source.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let mut fields = line.split_whitespace();
        match fields.next() {
            None | Some("c") => continue,
            Some("p") => {
                if graph.is_some() {
                    return Err(Error::parse(lineno, "duplicate problem line"));
                }
                if fields.next() != Some("edge") {
                    return Err(Error::parse(
                        lineno,
                        "malformed header, expected \"p edge <n> <m>\"",
                    ));
                }
                let n = parse_count(fields.next(), lineno, "vertex count")?;
                let m = parse_count(fields.next(), lineno, "edge count")?;
                if fields.next().is_some() {
                    return Err(Error::parse(lineno, "trailing fields in header"));
                }
                graph = Some((DenseGraph::empty(n), m, lineno));
            }
            Some("e") => {
                let Some((g, _, _)) = graph.as_mut() else {
                    return Err(Error::parse(lineno, "edge line before header"));
                };
                let n = g.vertex_count();
                let u = parse_vertex(fields.next(), n, lineno)?;
                let v = parse_vertex(fields.next(), n, lineno)?;
                if fields.next().is_some() {
                    return Err(Error::parse(lineno, "trailing fields in edge line"));
                }
                if u == v {
                    return Err(Error::parse(lineno, "self-loop"));
                }
                g.add_edge(u, v);
                edge_lines += 1;
            }
            Some(other) => {
                return Err(Error::parse(lineno, format!("unknown line type {other:?}")));
            }
        }
    }

    let (g, m, header_line) = graph.ok_or_else(|| Error::parse(0, "missing \"p edge\" header"))?;
    if edge_lines != m {
        return Err(Error::parse(
            header_line,
            format!("edge count mismatch: header declares {m}, found {edge_lines} edge lines"),
        ));
    }
    Ok(g)
}

pub fn parse_dimacs(text: &str) -> Result<DenseGraph> {
    import_dimacs(text.as_bytes())
}

fn parse_count(field: Option<&str>, line: usize, what: &str) -> Result<usize> {
    field
        .and_then(|f| f.parse().ok())
        .ok_or_else(|| Error::parse(line, format!("malformed header, bad {what}")))
}

fn parse_vertex(field: Option<&str>, n: usize, line: usize) -> Result<usize> {
    let v: usize = field
        .and_then(|f| f.parse().ok())
        .ok_or_else(|| Error::parse(line, "malformed edge line"))?;
    if v == 0 || v > n {
        return Err(Error::parse(
            line,
            format!("vertex index out of range: {v}"),
        ));
    }
    Ok(v - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_circulant;

    #[test]
    fn export_k3() {
        let text = to_dimacs_string(&DenseGraph::complete(3));
        assert_eq!(text, "p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n");
    }

    #[test]
    fn export_headers() {
        let g = build_circulant(8, &[1, 4]).unwrap();
        assert!(to_dimacs_string(g.graph()).starts_with("p edge 8 12\n"));
        assert_eq!(to_dimacs_string(&DenseGraph::empty(2)), "p edge 2 0\n");
    }

    #[test]
    fn round_trip_paley_17() {
        let g = build_circulant(17, &[1, 2, 4, 8]).unwrap().into_graph();
        assert_eq!(parse_dimacs(&to_dimacs_string(&g)).unwrap(), g);
    }

    #[test]
    fn import_single_edge_with_comments() {
        let g = parse_dimacs("c hello\n\np edge 2 1\ne 1 2\n").unwrap();
        assert_eq!(g, DenseGraph::from_edges(2, [(0, 1)]));
    }

    #[test]
    fn duplicate_edges_are_idempotent() {
        let g = parse_dimacs("p edge 3 3\ne 1 2\ne 2 1\ne 1 2\n").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn import_errors() {
        let err = parse_dimacs("p edge 4 1\ne 1 5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(err.to_string().contains("vertex index out of range"));

        for (text, line) in [
            ("p col 4 1\n", 1),
            ("p edge x 1\n", 1),
            ("e 1 2\n", 1),
            ("p edge 3 2\ne 1 2\n", 1),
            ("p edge 3 1\ne 1 1\n", 2),
            ("p edge 3 1\ne 1\n", 2),
            ("p edge 3 1\nq 1 2\n", 2),
        ] {
            match parse_dimacs(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
        assert!(parse_dimacs("c nothing\n").is_err());
    }
}
