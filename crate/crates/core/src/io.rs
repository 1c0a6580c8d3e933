//! Edge-list input and result output.
//!
//! Edge lists are line oriented:
//!
//! ```text
//! # comment
//! p 3        optional vertex count
//! v a        declares a vertex (needed for isolated ones)
//! e a b      declares an edge; endpoints are declared on the fly
//! ```
//!
//! Fields are separated by runs of spaces or tabs; LF and CRLF line endings
//! are both accepted.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::relabel::Representation;
use crate::words::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: self-loop on `{label}`")]
    SelfLoop { line: usize, label: String },
    #[error("declared {declared} vertices but found {found}")]
    CountMismatch { declared: usize, found: usize },
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut g = Graph::empty();
    let mut declared: Option<usize> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let syntax = |message: String| ParseError::Syntax { line, message };
        let fields: Vec<&str> = raw
            .split([' ', '\t', '\r'])
            .filter(|f| !f.is_empty())
            .collect();
        let Some(&head) = fields.first() else {
            continue;
        };
        if head.starts_with('#') {
            continue;
        }
        match (head, &fields[1..]) {
            ("p", [count]) => {
                if declared.is_some() {
                    return Err(syntax("repeated `p` line".into()));
                }
                let count = count
                    .parse()
                    .map_err(|_| syntax(format!("`{count}` is not a vertex count")))?;
                declared = Some(count);
            }
            ("v", [label]) => {
                g.ensure_vertex(label);
            }
            ("e", [a, b]) => {
                let u = g.ensure_vertex(a);
                let v = g.ensure_vertex(b);
                g.add_edge(u, v).map_err(|e| match e {
                    GraphError::SelfLoop(label) => ParseError::SelfLoop { line, label },
                    other => syntax(other.to_string()),
                })?;
            }
            ("p" | "v" | "e", rest) => {
                return Err(syntax(format!(
                    "`{head}` takes {} field(s), got {}",
                    if head == "e" { 2 } else { 1 },
                    rest.len()
                )));
            }
            _ => return Err(syntax(format!("unknown line type `{head}`"))),
        }
    }
    if let Some(declared) = declared {
        if declared != g.len() {
            return Err(ParseError::CountMismatch {
                declared,
                found: g.len(),
            });
        }
    }
    Ok(g)
}

/// Writes `g` in the edge-list format. Every vertex gets a `v` line, so the
/// vertex order survives a round trip.
pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p {}", g.len()).unwrap();
    for label in g.labels() {
        writeln!(out, "v {label}").unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", g.label(u), g.label(v)).unwrap();
    }
    out
}

/// Parses a whitespace-separated word; `#` starts a comment line.
pub fn parse_word(text: &str) -> Word {
    text.lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .flat_map(str::split_whitespace)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Plain,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmitError {
    #[error("refusing to emit a representation that failed verification")]
    UnverifiedRepresentation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub m: usize,
    pub k_full: usize,
    pub m_minus_k_plus_1: usize,
    /// `m - k_full + 1` when `k_full >= 1`, else `m`.
    pub bound: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelabelEntry {
    pub vertex: String,
    pub c: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub input: crate::relabel::InputDigest,
    pub word: Vec<String>,
    /// `w_1..w_{m+1}`; empty arrays are empty words.
    pub permutations: Vec<Vec<String>>,
    pub perm_count: usize,
    pub bounds: Bounds,
    pub verified: bool,
    pub policy: String,
    pub relabel_map: Vec<RelabelEntry>,
    pub isolated: Vec<String>,
}

impl ResultDocument {
    pub fn from_representation(rep: &Representation) -> Result<Self, EmitError> {
        if !rep.verified.ok {
            return Err(EmitError::UnverifiedRepresentation);
        }
        Ok(ResultDocument {
            input: rep.input,
            word: rep.word.letters().to_vec(),
            permutations: rep
                .permutations
                .iter()
                .map(|p| p.letters().to_vec())
                .collect(),
            perm_count: rep.perm_count,
            bounds: Bounds {
                m: rep.bounds.m,
                k_full: rep.bounds.k_full,
                m_minus_k_plus_1: rep.bounds.m + 1 - rep.bounds.k_full,
                bound: rep.bounds.bound,
            },
            verified: rep.verified.ok,
            policy: rep.policy.clone(),
            relabel_map: rep
                .relabel_map
                .iter()
                .map(|(v, c)| RelabelEntry {
                    vertex: v.clone(),
                    c: c.to_string(),
                })
                .collect(),
            isolated: rep.isolated.clone(),
        })
    }
}

pub fn emit_result(rep: &Representation, format: OutputFormat) -> Result<String, EmitError> {
    let doc = ResultDocument::from_representation(rep)?;
    Ok(match format {
        OutputFormat::Plain => format!("{}\n", rep.word),
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&doc).expect("document serializes");
            s.push('\n');
            s
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::reference_graph;
    use crate::graph::{complete_bipartite, crown, random_bipartite};
    use crate::relabel::{represent_bipartite, represent_graph, OrderingPolicy};
    use crate::words::verify;

    pub(crate) const REFERENCE_GRAPH: &str = "\
# nine-vertex reference graph
e a1 b1\ne a1 b2\ne a1 b3\ne a1 b4\ne a1 b5
e a2 b1\ne a2 b2\ne a2 b3
e a3 b1\ne a3 b2\ne a3 b3\ne a3 b4\ne a3 b5
e a4 b2\ne a4 b3
";

    #[test]
    fn parse_single_edge() {
        let g = parse_edge_list("e a b").unwrap();
        assert_eq!((g.len(), g.edge_count()), (2, 1));
    }

    #[test]
    fn parse_with_isolated() {
        let g = parse_edge_list("p 3\nv a\nv b\nv c\ne a b").unwrap();
        assert_eq!(g.labels(), ["a", "b", "c"]);
        assert_eq!(g.edge_count(), 1);
        assert!(g.is_isolated(2));
    }

    #[test]
    fn parse_reference_graph() {
        let g = parse_edge_list(REFERENCE_GRAPH).unwrap();
        assert_eq!((g.len(), g.edge_count()), (9, 15));
        assert_eq!(g.bipartition().unwrap().m(), 4);
    }

    #[test]
    fn parse_tolerates_crlf_and_tabs() {
        let g = parse_edge_list("p 2\r\ne\ta   \t b\r\n\r\n").unwrap();
        assert_eq!(g, parse_edge_list("e a b").unwrap());
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            parse_edge_list("e a a"),
            Err(ParseError::SelfLoop {
                line: 1,
                label: "a".into()
            })
        );
        assert_eq!(
            parse_edge_list("p 3\ne a b"),
            Err(ParseError::CountMismatch {
                declared: 3,
                found: 2
            })
        );
        assert!(matches!(
            parse_edge_list("e a b\nx y"),
            Err(ParseError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("e a"),
            Err(ParseError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_edge_list("p x"),
            Err(ParseError::Syntax { line: 1, .. })
        ));
    }

    #[test]
    fn edge_list_round_trip() {
        let mut with_iso = crown(3).unwrap();
        with_iso.add_vertex("lonely").unwrap();
        let corpus = [
            reference_graph(),
            crown(4).unwrap(),
            complete_bipartite(2, 3).unwrap(),
            random_bipartite(3, 4, 0.4, 11).unwrap(),
            with_iso,
        ];
        for g in corpus {
            assert_eq!(parse_edge_list(&emit_edge_list(&g)).unwrap(), g);
        }
    }

    #[test]
    fn plain_output() {
        let rep = represent_bipartite(&reference_graph(), &OrderingPolicy::PaperExample).unwrap();
        assert_eq!(
            emit_result(&rep, OutputFormat::Plain).unwrap(),
            "a1 a3 a2 b5 b4 b1 a4 b3 b2 a4 a3 a1 b4 b5 a2 b2 b3 b1 a4 a2 a3 a1 b2 b3 b1 b4 b5\n"
        );
        let k11 = represent_bipartite(
            &complete_bipartite(1, 1).unwrap(),
            &OrderingPolicy::PaperExample,
        )
        .unwrap();
        assert_eq!(
            emit_result(&k11, OutputFormat::Plain).unwrap(),
            "a1 b1 a1 b1\n"
        );
    }

    #[test]
    fn unverified_is_refused() {
        let mut rep =
            represent_bipartite(&reference_graph(), &OrderingPolicy::PaperExample).unwrap();
        rep.verified.ok = false;
        assert_eq!(
            emit_result(&rep, OutputFormat::Json),
            Err(EmitError::UnverifiedRepresentation)
        );
    }

    #[test]
    fn json_round_trip() {
        let mut g = reference_graph();
        g.add_vertex("z").unwrap();
        let rep = represent_graph(&g, &OrderingPolicy::PaperExample).unwrap();
        let text = emit_result(&rep, OutputFormat::Json).unwrap();
        let doc: ResultDocument = serde_json::from_str(&text).unwrap();
        assert!(doc.verified);
        assert_eq!(doc.permutations.len(), 5);
        assert!(doc.permutations[2].is_empty());
        let joined: Vec<String> = doc.permutations.concat();
        assert_eq!(joined, doc.word);
        let word = parse_word(&doc.word.join(" "));
        assert!(verify(&word, &g).ok);
        assert_eq!(doc.bounds.m_minus_k_plus_1, 3);
        assert_eq!(
            doc.relabel_map[0],
            RelabelEntry {
                vertex: "a1".into(),
                c: "c4".into()
            }
        );
        assert_eq!(doc.isolated, ["z"]);
    }

    #[test]
    fn word_parsing() {
        assert_eq!(parse_word("# header\na b\n  c\n"), "a b c".parse().unwrap());
    }
}
