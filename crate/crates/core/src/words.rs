//! Words over vertex labels and the alternation machinery that ties them to
//! graphs: two vertices are adjacent exactly when their letters alternate.

// Pairwise loops index symmetric matrices; iterator forms obscure that.
#![allow(clippy::needless_range_loop)]

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("alternation needs two distinct letters, got `{0}` twice")]
    SameLetter(String),
    #[error("subscript {0} appears more than once")]
    DuplicateSubscript(u32),
    #[error("the empty word has no letters")]
    EmptyWord,
    #[error("`{0}` is not a relabeled vertex name (expected c<number>)")]
    BadCLabel(String),
}

/// A finite sequence of vertex labels. Labels may be multi-character, so the
/// textual form separates letters by whitespace.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word {
    letters: Vec<String>,
}

impl Word {
    pub fn new(letters: Vec<String>) -> Self {
        Word { letters }
    }

    pub fn empty() -> Self {
        Word::default()
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, letter: impl Into<String>) {
        self.letters.push(letter.into());
    }

    pub fn extend(&mut self, other: &Word) {
        self.letters.extend_from_slice(&other.letters);
    }

    pub fn concat<'a>(parts: impl IntoIterator<Item = &'a Word>) -> Word {
        let mut w = Word::empty();
        for p in parts {
            w.extend(p);
        }
        w
    }

    /// Distinct letters in order of first occurrence.
    pub fn alphabet(&self) -> Vec<&str> {
        let mut seen = BTreeSet::new();
        self.letters
            .iter()
            .filter(|l| seen.insert(l.as_str()))
            .map(String::as_str)
            .collect()
    }

    pub fn count(&self, letter: &str) -> usize {
        self.letters.iter().filter(|l| *l == letter).count()
    }

    /// Whether `pattern` occurs in `self` as a (not necessarily contiguous)
    /// subsequence.
    pub fn contains_subword<S: AsRef<str>>(&self, pattern: &[S]) -> bool {
        let mut it = self.letters.iter();
        pattern.iter().all(|p| it.by_ref().any(|l| l == p.as_ref()))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.letters.join(" "))
    }
}

impl FromStr for Word {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Word::new(
            s.split_whitespace().map(str::to_string).collect(),
        ))
    }
}

impl<S: Into<String>> FromIterator<S> for Word {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        Word::new(iter.into_iter().map(Into::into).collect())
    }
}

/// A relabeled vertex `c_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CLabel(pub u32);

impl fmt::Display for CLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", self.0)
    }
}

impl FromStr for CLabel {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.strip_prefix('c')
            .and_then(|d| d.parse().ok())
            .map(CLabel)
            .ok_or_else(|| WordError::BadCLabel(s.to_string()))
    }
}

/// Renders a word over relabeled vertices as `c4c3c2...`.
pub fn c_word_string(w: &[CLabel]) -> String {
    w.iter().map(ToString::to_string).collect()
}

/// Whether `a` and `b` alternate in `w`. A letter that does not occur never
/// alternates with anything.
pub fn alternate(w: &Word, a: &str, b: &str) -> Result<bool, WordError> {
    if a == b {
        return Err(WordError::SameLetter(a.to_string()));
    }
    let mut last: Option<&str> = None;
    let (mut seen_a, mut seen_b) = (false, false);
    for l in w.letters() {
        let l = l.as_str();
        if l != a && l != b {
            continue;
        }
        if last == Some(l) {
            return Ok(false);
        }
        seen_a |= l == a;
        seen_b |= l == b;
        last = Some(l);
    }
    Ok(seen_a && seen_b)
}

/// `Dec(A)`: every label of `set` once, subscripts strictly decreasing.
pub fn dec(set: &[CLabel]) -> Result<Vec<CLabel>, WordError> {
    let mut out = set.to_vec();
    out.sort_unstable_by(|x, y| y.cmp(x));
    if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
        return Err(WordError::DuplicateSubscript(w[0].0));
    }
    Ok(out)
}

pub fn reversal(w: &Word) -> Word {
    Word::new(w.letters().iter().rev().cloned().collect())
}

/// `Some(k)` if every letter of `w` occurs exactly `k` times.
pub fn uniformity(w: &Word) -> Result<Option<usize>, WordError> {
    let first = w.letters().first().ok_or(WordError::EmptyWord)?;
    let k = w.count(first);
    let counts = letter_counts(w);
    Ok(counts.values().all(|&c| c == k).then_some(k))
}

fn letter_counts(w: &Word) -> HashMap<&str, usize> {
    let mut counts = HashMap::new();
    for l in w.letters() {
        *counts.entry(l.as_str()).or_insert(0) += 1;
    }
    counts
}

/// Adjacency matrix of the graph a word represents, over the word's index
/// encoding. One pass keeps, for every letter, the position of its last
/// occurrence; a pair stops alternating as soon as one of its letters recurs
/// before the other has shown up in between.
fn alternation_matrix(letters: &[usize], size: usize) -> Vec<Vec<bool>> {
    let mut alt = vec![vec![true; size]; size];
    let mut last: Vec<Option<usize>> = vec![None; size];
    for (pos, &x) in letters.iter().enumerate() {
        if let Some(prev) = last[x] {
            for y in 0..size {
                if y != x && last[y].is_none_or(|ly| ly < prev) {
                    alt[x][y] = false;
                    alt[y][x] = false;
                }
            }
        }
        last[x] = Some(pos);
    }
    for x in 0..size {
        alt[x][x] = false;
        if last[x].is_none() {
            for y in 0..size {
                alt[x][y] = false;
                alt[y][x] = false;
            }
        }
    }
    alt
}

/// The graph represented by `w`: its distinct letters, in order of first
/// occurrence, with an edge between every alternating pair.
pub fn graph_of_word(w: &Word) -> Result<Graph, WordError> {
    if w.is_empty() {
        return Err(WordError::EmptyWord);
    }
    let mut g = Graph::empty();
    let encoded: Vec<usize> = w.letters().iter().map(|l| g.ensure_vertex(l)).collect();
    let alt = alternation_matrix(&encoded, g.len());
    for u in 0..g.len() {
        for v in u + 1..g.len() {
            if alt[u][v] {
                g.add_edge(u, v).expect("u != v");
            }
        }
    }
    Ok(g)
}

/// Outcome of checking a word against a graph.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub ok: bool,
    /// Adjacent in the graph, but not alternating in the word.
    pub missing_edges: Vec<(String, String)>,
    /// Alternating in the word, but not adjacent in the graph.
    pub extra_edges: Vec<(String, String)>,
    /// Graph vertices that never occur in the word.
    pub uncovered_vertices: Vec<String>,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return writeln!(f, "ok: word represents the graph");
        }
        writeln!(f, "FAILED: word does not represent the graph")?;
        for (a, b) in &self.missing_edges {
            writeln!(f, "  missing edge {a} {b} (adjacent, not alternating)")?;
        }
        for (a, b) in &self.extra_edges {
            writeln!(f, "  extra edge {a} {b} (alternating, not adjacent)")?;
        }
        for v in &self.uncovered_vertices {
            writeln!(f, "  uncovered vertex {v}")?;
        }
        Ok(())
    }
}

/// Checks that `w` represents `g` on `g`'s vertex set. Letters of `w` that
/// are not vertices of `g` are ignored.
pub fn verify(w: &Word, g: &Graph) -> VerificationReport {
    let encoded: Vec<usize> = w.letters().iter().filter_map(|l| g.index_of(l)).collect();
    let alt = alternation_matrix(&encoded, g.len());
    let mut report = VerificationReport::default();
    let mut present = vec![false; g.len()];
    for &x in &encoded {
        present[x] = true;
    }
    report.uncovered_vertices = (0..g.len())
        .filter(|&v| !present[v])
        .map(|v| g.label(v).to_string())
        .collect();
    for u in 0..g.len() {
        for v in u + 1..g.len() {
            let pair = || (g.label(u).to_string(), g.label(v).to_string());
            match (g.has_edge(u, v), alt[u][v]) {
                (true, false) => report.missing_edges.push(pair()),
                (false, true) => report.extra_edges.push(pair()),
                _ => {}
            }
        }
    }
    report.ok = report.missing_edges.is_empty()
        && report.extra_edges.is_empty()
        && report.uncovered_vertices.is_empty();
    report
}

/// `Some(k)` if `w` splits into `k` consecutive blocks, each a permutation
/// of `alphabet`.
pub fn is_permutation_concatenation<S: AsRef<str>>(w: &Word, alphabet: &[S]) -> Option<usize> {
    let letters: BTreeSet<&str> = alphabet.iter().map(AsRef::as_ref).collect();
    let size = letters.len();
    if size == 0 {
        return w.is_empty().then_some(0);
    }
    if !w.len().is_multiple_of(size) {
        return None;
    }
    for block in w.letters().chunks(size) {
        let got: BTreeSet<&str> = block.iter().map(String::as_str).collect();
        if got != letters {
            return None;
        }
    }
    Some(w.len() / size)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::reference_graph;

    pub(crate) const REFERENCE_WORD: &str =
        "a1 a3 a2 b5 b4 b1 a4 b3 b2 a4 a3 a1 b4 b5 a2 b2 b3 b1 a4 a2 a3 a1 b2 b3 b1 b4 b5";

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn chars(s: &str) -> Word {
        s.chars().map(String::from).collect()
    }

    #[test]
    fn alternation_basics() {
        assert!(alternate(&chars("abab"), "a", "b").unwrap());
        assert!(!alternate(&chars("abba"), "a", "b").unwrap());
        assert!(alternate(&chars("aba"), "a", "b").unwrap());
        assert!(!alternate(&chars("aab"), "a", "b").unwrap());
        assert!(!alternate(&chars("aaa"), "a", "b").unwrap());
        assert_eq!(
            alternate(&chars("ab"), "a", "a"),
            Err(WordError::SameLetter("a".into()))
        );
        assert!(!alternate(&w(REFERENCE_WORD), "a4", "b5").unwrap());
        assert!(alternate(&w(REFERENCE_WORD), "a4", "b2").unwrap());
    }

    #[test]
    fn dec_orders_by_subscript() {
        let got = dec(&[CLabel(5), CLabel(6), CLabel(7)]).unwrap();
        assert_eq!(c_word_string(&got), "c7c6c5");
        assert_eq!(dec(&[CLabel(9)]).unwrap(), [CLabel(9)]);
        assert!(dec(&[]).unwrap().is_empty());
        // subscript order, not lexicographic label order
        assert_eq!(
            c_word_string(&dec(&[CLabel(9), CLabel(10)]).unwrap()),
            "c10c9"
        );
        assert_eq!(
            dec(&[CLabel(3), CLabel(3)]),
            Err(WordError::DuplicateSubscript(3))
        );
    }

    #[test]
    fn clabel_parse() {
        assert_eq!("c12".parse::<CLabel>().unwrap(), CLabel(12));
        assert!("b12".parse::<CLabel>().is_err());
        assert!("c".parse::<CLabel>().is_err());
    }

    #[test]
    fn reversal_cases() {
        assert_eq!(reversal(&chars("abc")), chars("cba"));
        assert_eq!(reversal(&Word::empty()), Word::empty());
        assert_eq!(reversal(&chars("aa")), chars("aa"));
    }

    #[test]
    fn uniformity_cases() {
        assert_eq!(uniformity(&chars("abab")), Ok(Some(2)));
        assert_eq!(uniformity(&chars("aab")), Ok(None));
        assert_eq!(uniformity(&w(REFERENCE_WORD)), Ok(Some(3)));
        assert_eq!(uniformity(&Word::empty()), Err(WordError::EmptyWord));
    }

    #[test]
    fn graph_of_word_cases() {
        let k2 = graph_of_word(&chars("ab")).unwrap();
        assert_eq!(k2, Graph::build(&["a", "b"], &[("a", "b")]).unwrap());
        let k3 = graph_of_word(&chars("abcabc")).unwrap();
        assert_eq!(k3.edge_count(), 3);
        let fig = graph_of_word(&w(REFERENCE_WORD)).unwrap();
        let expect = reference_graph();
        assert_eq!(fig.len(), expect.len());
        for u in 0..expect.len() {
            for v in 0..expect.len() {
                if u == v {
                    continue;
                }
                let fu = fig.index_of(expect.label(u)).unwrap();
                let fv = fig.index_of(expect.label(v)).unwrap();
                assert_eq!(fig.has_edge(fu, fv), expect.has_edge(u, v));
            }
        }
        assert_eq!(graph_of_word(&Word::empty()), Err(WordError::EmptyWord));
    }

    #[test]
    fn verify_cases() {
        assert!(verify(&w(REFERENCE_WORD), &reference_graph()).ok);
        let k2 = Graph::build(&["a", "b"], &[("a", "b")]).unwrap();
        assert!(verify(&chars("abab"), &k2).ok);
        let bad = verify(&chars("abba"), &k2);
        assert!(!bad.ok);
        assert_eq!(bad.missing_edges, [("a".to_string(), "b".to_string())]);
        assert!(bad.extra_edges.is_empty());

        let partial = verify(&chars("a"), &k2);
        assert!(!partial.ok);
        assert_eq!(partial.uncovered_vertices, ["b"]);
        assert_eq!(partial.missing_edges.len(), 1);

        let edgeless = Graph::build(&["a", "b"], &[] as &[(&str, &str)]).unwrap();
        let extra = verify(&chars("ab"), &edgeless);
        assert_eq!(extra.extra_edges, [("a".to_string(), "b".to_string())]);
    }

    #[test]
    fn permutation_concatenation() {
        assert_eq!(
            is_permutation_concatenation(&chars("abcbca"), &["a", "b", "c"]),
            Some(2)
        );
        assert_eq!(
            is_permutation_concatenation(&chars("abca"), &["a", "b", "c"]),
            None
        );
        assert_eq!(
            is_permutation_concatenation(&chars("abcaab"), &["a", "b", "c"]),
            None
        );
        assert_eq!(
            is_permutation_concatenation(&w(REFERENCE_WORD), reference_graph().labels()),
            Some(3)
        );
        assert_eq!(
            is_permutation_concatenation(&Word::empty(), &["a"]),
            Some(0)
        );
    }

    #[test]
    fn contains_subword() {
        let word = chars("aabbaba");
        assert!(word.contains_subword(&["a", "b", "a", "a"]));
        assert!(!word.contains_subword(&["b", "b", "b", "b"]));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_word() -> impl Strategy<Value = Word> {
            prop::collection::vec(0u8..5, 0..24)
                .prop_map(|v| v.into_iter().map(|x| format!("v{x}")).collect())
        }

        fn permutation_tuple() -> impl Strategy<Value = Vec<Vec<usize>>> {
            (1usize..6, 1usize..5).prop_flat_map(|(n, k)| {
                prop::collection::vec(Just((0..n).collect::<Vec<_>>()).prop_shuffle(), k)
            })
        }

        proptest! {
            #[test]
            fn alternation_is_symmetric_and_reversal_invariant(word in small_word(), a in 0u8..5, b in 0u8..5) {
                prop_assume!(a != b);
                let (a, b) = (format!("v{a}"), format!("v{b}"));
                let ab = alternate(&word, &a, &b).unwrap();
                prop_assert_eq!(ab, alternate(&word, &b, &a).unwrap());
                prop_assert_eq!(ab, alternate(&reversal(&word), &a, &b).unwrap());
            }

            #[test]
            fn scan_agrees_with_pairwise(word in small_word()) {
                prop_assume!(!word.is_empty());
                let g = graph_of_word(&word).unwrap();
                for u in 0..g.len() {
                    for v in u + 1..g.len() {
                        prop_assert_eq!(
                            g.has_edge(u, v),
                            alternate(&word, g.label(u), g.label(v)).unwrap()
                        );
                    }
                }
                prop_assert!(verify(&word, &g).ok);
            }

            #[test]
            fn repeated_permutation_is_complete(perm in Just((0..5).collect::<Vec<usize>>()).prop_shuffle(), k in 2usize..5) {
                let block: Word = perm.iter().map(|x| format!("v{x}")).collect();
                let word = Word::concat(std::iter::repeat_n(&block, k));
                let g = graph_of_word(&word).unwrap();
                prop_assert_eq!(g.edge_count(), 10);
                prop_assert_eq!(uniformity(&word).unwrap(), Some(k));
            }

            #[test]
            fn permutation_concatenations(tuple in permutation_tuple()) {
                let n = tuple[0].len();
                let word: Word = tuple.iter().flatten().map(|x| format!("v{x}")).collect();
                let alphabet: Vec<String> = (0..n).map(|x| format!("v{x}")).collect();
                prop_assert_eq!(uniformity(&word).unwrap(), Some(tuple.len()));
                prop_assert_eq!(is_permutation_concatenation(&word, &alphabet), Some(tuple.len()));
                let g = graph_of_word(&word).unwrap();
                let report = verify(&word, &g);
                prop_assert!(report.ok);
            }
        }
    }
}
