//! Plain-text graph format.
//!
//! ```text
//! c optional comment lines
//! p lpp <u|d> <n> <m>
//! e <u> <v>        (exactly m edge lines, 1 <= u, v <= n)
//! ```
//!
//! Lines are LF-terminated. Blank lines are ignored. The writer emits edges
//! in ascending order.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use lpath_core::Graph;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("missing `p lpp` header")]
    MissingHeader,
    #[error("malformed header: {0}")]
    BadHeader(String),
    #[error("malformed edge line: {0}")]
    BadEdge(String),
    #[error("unexpected line before header or unknown line type: {0}")]
    UnexpectedLine(String),
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("declared {declared} edges, found {found}")]
    EdgeCount { declared: usize, found: usize },
    #[error("graph is not connected")]
    Disconnected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseOptions {
    pub require_connected: bool,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            require_connected: true,
        }
    }
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    parse_graph_with(text, ParseOptions::default())
}

pub fn parse_graph_with(text: &str, opts: ParseOptions) -> Result<Graph, ParseError> {
    let err = |line: usize, kind| ParseError { line, kind };
    let mut header: Option<(usize, bool, usize, usize)> = None;
    let mut edges = Vec::new();
    let mut seen = BTreeSet::new();
    let mut last_line = 0;

    for (idx, raw) in text.split('\n').enumerate() {
        let line = idx + 1;
        if raw.is_empty() {
            continue;
        }
        last_line = line;
        if raw == "c" || raw.starts_with("c ") {
            continue;
        }
        let fields: Vec<&str> = raw.split(' ').filter(|f| !f.is_empty()).collect();
        match fields.first().copied() {
            Some("p") => {
                if header.is_some() {
                    return Err(err(line, ParseErrorKind::BadHeader("second header".into())));
                }
                let [_, "lpp", kind, n, m] = fields[..] else {
                    return Err(err(line, ParseErrorKind::BadHeader(raw.into())));
                };
                let directed = match kind {
                    "u" => false,
                    "d" => true,
                    _ => return Err(err(line, ParseErrorKind::BadHeader(raw.into()))),
                };
                let parse = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| err(line, ParseErrorKind::BadHeader(raw.into())))
                };
                header = Some((line, directed, parse(n)?, parse(m)?));
            }
            Some("e") => {
                let Some((_, directed, n, _)) = header else {
                    return Err(err(line, ParseErrorKind::MissingHeader));
                };
                let [_, u, v] = fields[..] else {
                    return Err(err(line, ParseErrorKind::BadEdge(raw.into())));
                };
                let parse = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| err(line, ParseErrorKind::BadEdge(raw.into())))
                };
                let (u, v) = (parse(u)?, parse(v)?);
                for w in [u, v] {
                    if w == 0 || w > n {
                        return Err(err(line, ParseErrorKind::VertexOutOfRange { vertex: w, n }));
                    }
                }
                if u == v {
                    return Err(err(line, ParseErrorKind::SelfLoop(u)));
                }
                let key = if directed { (u, v) } else { (u.min(v), u.max(v)) };
                if !seen.insert(key) {
                    return Err(err(line, ParseErrorKind::DuplicateEdge(u, v)));
                }
                edges.push((u, v));
            }
            _ => return Err(err(line, ParseErrorKind::UnexpectedLine(raw.into()))),
        }
    }

    let Some((header_line, directed, n, m)) = header else {
        return Err(err(last_line.max(1), ParseErrorKind::MissingHeader));
    };
    if edges.len() != m {
        return Err(err(
            last_line,
            ParseErrorKind::EdgeCount {
                declared: m,
                found: edges.len(),
            },
        ));
    }
    let g = Graph::new(n, directed, edges)
        .map_err(|e| err(header_line, ParseErrorKind::BadHeader(e.to_string())))?;
    if opts.require_connected && !g.is_connected() {
        return Err(err(header_line, ParseErrorKind::Disconnected));
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    let kind = if g.is_directed() { 'd' } else { 'u' };
    writeln!(out, "p lpp {kind} {} {}", g.n(), g.edge_count()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let p3 = parse_graph("p lpp u 3 2\ne 1 2\ne 2 3").unwrap();
        assert_eq!((p3.n(), p3.is_directed(), p3.edges()), (3, false, &[(1, 2), (2, 3)][..]));
        let chain = parse_graph("p lpp d 3 2\ne 1 2\ne 2 3\n").unwrap();
        assert!(chain.is_directed());
        assert!(chain.has_edge(1, 2) && !chain.has_edge(2, 1));
        let e = parse_graph("p lpp u 2 1\ne 1 1").unwrap_err();
        assert_eq!(e, ParseError { line: 2, kind: ParseErrorKind::SelfLoop(1) });
    }

    #[test]
    fn comments_and_orientation() {
        let g = parse_graph("c hello\nc\np lpp u 3 2\nc mid\ne 3 2\ne 2 1\n").unwrap();
        assert_eq!(g.edges(), &[(1, 2), (2, 3)]);
        assert_eq!(write_graph(&g), "p lpp u 3 2\ne 1 2\ne 2 3\n");
    }

    #[test]
    fn error_lines() {
        let cases: &[(&str, usize)] = &[
            ("p lpp x 3 2\ne 1 2\ne 2 3", 1),
            ("p lp u 3 2", 1),
            ("e 1 2\np lpp u 2 1", 1),
            ("p lpp u 3 2\ne 1 2\ne 2 4", 3),
            ("p lpp u 3 2\ne 1 2\ne 2 1", 3),
            ("p lpp u 3 2\ne 1 2 3\ne 2 3", 2),
            ("p lpp u 3 2\ne 1 2", 2),
            ("p lpp u 4 2\ne 1 2\ne 3 4", 1),
            ("p lpp u 3 2\nx\ne 1 2\ne 2 3", 2),
            ("p lpp u 3 2\ne 1 2\r\ne 2 3", 2),
        ];
        for &(text, line) in cases {
            let e = parse_graph(text).unwrap_err();
            assert_eq!(e.line, line, "{text:?}: {e}");
        }
        assert_eq!(parse_graph("").unwrap_err().kind, ParseErrorKind::MissingHeader);
    }

    #[test]
    fn disconnected_allowed_by_flag() {
        let text = "p lpp u 4 2\ne 1 2\ne 3 4\n";
        assert_eq!(parse_graph(text).unwrap_err().kind, ParseErrorKind::Disconnected);
        let g = parse_graph_with(text, ParseOptions { require_connected: false }).unwrap();
        assert!(!g.is_connected());
    }
}
