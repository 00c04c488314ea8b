//! Edge-list text format and DOT emission.
//!
//! The edge-list format is line oriented: blank lines and lines starting
//! with `#` are ignored, a line `vertices: t1 t2 ...` declares vertices
//! (typically isolated ones), and every other line holds exactly two
//! whitespace-separated vertex tokens. Tokens use the textual label syntax,
//! so functor images and products round-trip.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::Graph;
use crate::label::{LabelError, VertexLabel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: bad vertex token: {source}")]
    Label {
        line: usize,
        #[source]
        source: LabelError,
    },
    #[error("line {line}: loop edge at {vertex}")]
    LoopEdge { line: usize, vertex: VertexLabel },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. }
            | ParseError::Label { line, .. }
            | ParseError::LoopEdge { line, .. } => *line,
        }
    }
}

const HEADER: &str = "vertices:";

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut vertices = BTreeSet::new();
    let mut edges = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let token = |t: &str| {
            t.parse::<VertexLabel>()
                .map_err(|source| ParseError::Label { line, source })
        };
        if let Some(rest) = trimmed.strip_prefix(HEADER) {
            for t in rest.split_whitespace() {
                vertices.insert(token(t)?);
            }
            continue;
        }
        let parts: Vec<&str> = trimmed.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(ParseError::Syntax {
                line,
                message: format!("expected two vertex tokens, found {}", parts.len()),
            });
        }
        let (a, b) = (token(parts[0])?, token(parts[1])?);
        if a == b {
            return Err(ParseError::LoopEdge { line, vertex: a });
        }
        vertices.insert(a.clone());
        vertices.insert(b.clone());
        edges.push((a, b));
    }
    Ok(Graph::new(vertices, edges).expect("endpoints were inserted as vertices"))
}

/// Canonical text: isolated vertices in a header line, then one edge per
/// line, all in canonical label order.
pub fn serialize_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    let isolated: Vec<String> = (0..g.order())
        .filter(|&i| g.degree(i) == 0)
        .map(|i| g.label(i).to_string())
        .collect();
    if !isolated.is_empty() {
        let _ = writeln!(out, "{HEADER} {}", isolated.join(" "));
    }
    for (a, b) in g.edge_labels() {
        let _ = writeln!(out, "{a} {b}");
    }
    out
}

/// Optional highlighting for DOT output. Edges are index pairs `(i, j)`, `i < j`.
#[derive(Debug, Clone, Default)]
pub struct Decorations {
    pub title: Option<String>,
    /// Drawn bold, e.g. the edges of a perfect matching.
    pub bold: BTreeSet<(usize, usize)>,
    /// Palette index per edge, e.g. one color per Steiner triple.
    pub colors: BTreeMap<(usize, usize), usize>,
}

const PALETTE: &[&str] = &[
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#999999",
];

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn to_dot(g: &Graph, deco: &Decorations) -> String {
    let mut out = String::from("graph {\n");
    if let Some(title) = &deco.title {
        let _ = writeln!(out, "  label={};", quote(title));
    }
    for v in g.vertices() {
        let _ = writeln!(out, "  {};", quote(&v.to_string()));
    }
    for &(i, j) in g.edges() {
        let mut attrs = Vec::new();
        if deco.bold.contains(&(i, j)) {
            attrs.push("penwidth=3".to_owned());
        }
        if let Some(c) = deco.colors.get(&(i, j)) {
            attrs.push(format!("color={}", quote(PALETTE[c % PALETTE.len()])));
        }
        let attrs = if attrs.is_empty() {
            String::new()
        } else {
            format!(" [{}]", attrs.join(", "))
        };
        let _ = writeln!(
            out,
            "  {} -- {}{};",
            quote(&g.label(i).to_string()),
            quote(&g.label(j).to_string()),
            attrs
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::atom;
    use proptest::prelude::*;

    #[test]
    fn path_graph() {
        let g = parse_edge_list("a b\nb c").unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(
            g.edge_labels()
                .map(|(a, b)| format!("{a}{b}"))
                .collect::<Vec<_>>(),
            ["ab", "bc"]
        );
    }

    #[test]
    fn loop_reports_line() {
        let err = parse_edge_list("a a").unwrap_err();
        assert_eq!(
            err,
            ParseError::LoopEdge {
                line: 1,
                vertex: atom("a")
            }
        );
        let err = parse_edge_list("# c\n\na b\nb b\n").unwrap_err();
        assert_eq!(err.line(), 4);
    }

    #[test]
    fn syntax_errors_report_line() {
        assert_eq!(parse_edge_list("a b c").unwrap_err().line(), 1);
        assert_eq!(parse_edge_list("a b\nq").unwrap_err().line(), 2);
        assert!(matches!(
            parse_edge_list("a {b").unwrap_err(),
            ParseError::Label { line: 1, .. }
        ));
    }

    #[test]
    fn header_and_comments() {
        let g = parse_edge_list("# square\nvertices: z y\n\nb a\n").unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(serialize_edge_list(&g), "vertices: y z\na b\n");
    }

    #[test]
    fn canonical_form() {
        let t = "c b\n# x\nb a\nb c\n";
        assert_eq!(serialize_edge_list(&parse_edge_list(t).unwrap()), "a b\nb c\n");
        assert_eq!(serialize_edge_list(&Graph::empty()), "");
    }

    #[test]
    fn structured_tokens_round_trip() {
        let t = "(a,x)~1 {u,v}\n";
        let g = parse_edge_list(t).unwrap();
        assert_eq!(parse_edge_list(&serialize_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn dot_lists_in_canonical_order() {
        let g = parse_edge_list("b c\na b").unwrap();
        let mut deco = Decorations::default();
        deco.bold.insert((0, 1));
        let dot = to_dot(&g, &deco);
        assert_eq!(
            dot,
            "graph {\n  \"a\";\n  \"b\";\n  \"c\";\n  \"a\" -- \"b\" [penwidth=3];\n  \"b\" -- \"c\";\n}\n"
        );
    }

    proptest! {
        #[test]
        fn serialize_parse_round_trip(n in 0usize..7, bits in any::<u32>()) {
            let names: Vec<_> = (0..n).map(|i| atom(&format!("v{i}"))).collect();
            let mut edges = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits >> (k % 32) & 1 == 1 {
                        edges.push((names[i].clone(), names[j].clone()));
                    }
                    k += 1;
                }
            }
            let g = Graph::new(names, edges).unwrap();
            let text = serialize_edge_list(&g);
            prop_assert_eq!(&parse_edge_list(&text).unwrap(), &g);
            prop_assert_eq!(serialize_edge_list(&g), text);
        }
    }
}
