//! The relabeling construction: a bipartite graph without isolated vertices
//! is represented by a concatenation of at most `m` permutations of its
//! vertices, where `m` is the size of the smaller side.
//!
//! The vertices of `V1` become `c_1..c_m` and those of `V2` become
//! `c_{m+1}..c_{m+n}`, grouped by the first `c_i` they are not adjacent to.
//! One permutation is then produced for `c_1`, one for every other `c_i`
//! with a non-neighbor, and a closing permutation if some `c_i` sees all of
//! `V2`. Complete bipartite graphs bypass the relabeling and get a fixed
//! two-permutation word.
//!
//! Subscript order alone does not separate every pair of `V2` vertices: a
//! vertex whose only neighbor is `c_1` precedes a vertex adjacent to all of
//! `V1` in every block. When both kinds occur, the former are placed last in
//! `w_1`. The path on five vertices is the smallest graph where this matters.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Bipartition, Graph, GraphError};
use crate::words::{self, dec, CLabel, VerificationReport, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelabelError {
    #[error("graph is not bipartite: odd cycle {}", .0.join(" - "))]
    NotBipartite(Vec<String>),
    #[error("graph has isolated vertices: {}", .0.join(", "))]
    HasIsolated(Vec<String>),
    #[error("graph has no edges")]
    NoEdges,
    #[error("graph is complete bipartite; no relabeling applies")]
    CompleteBipartite,
    #[error("constructed word does not represent the graph\n{0}")]
    VerificationFailed(Box<VerificationReport>),
    #[error("unknown ordering policy `{0}`")]
    UnknownPolicy(String),
}

impl From<GraphError> for RelabelError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::NotBipartite { cycle } => RelabelError::NotBipartite(cycle),
            GraphError::Empty | GraphError::AllIsolated => RelabelError::NoEdges,
            other => unreachable!("bipartition does not raise {other:?}"),
        }
    }
}

/// How ties left open by the construction are resolved: the choice of
/// `c_1`, the order of `c_2..c_m`, and the order inside each group of
/// `V2` vertices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub enum OrderingPolicy {
    /// Ascending degree, ties broken by descending vertex index.
    #[default]
    PaperExample,
    /// Ascending vertex index.
    IndexAscending,
    /// Listed labels first, in list order; the rest by ascending index.
    Custom(Vec<String>),
}

impl OrderingPolicy {
    pub fn builtins() -> [OrderingPolicy; 2] {
        [OrderingPolicy::PaperExample, OrderingPolicy::IndexAscending]
    }

    /// Sorts `vs` into policy order. Always a total order.
    pub fn sort(&self, g: &Graph, vs: &mut [usize]) {
        match self {
            OrderingPolicy::PaperExample => {
                vs.sort_by(|&x, &y| g.degree(x).cmp(&g.degree(y)).then(y.cmp(&x)))
            }
            OrderingPolicy::IndexAscending => vs.sort_unstable(),
            OrderingPolicy::Custom(order) => {
                let rank = |v: usize| {
                    order
                        .iter()
                        .position(|l| l == g.label(v))
                        .unwrap_or(order.len())
                };
                vs.sort_by_key(|&v| (rank(v), v));
            }
        }
    }
}

impl fmt::Display for OrderingPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderingPolicy::PaperExample => f.write_str("paper-example"),
            OrderingPolicy::IndexAscending => f.write_str("index-ascending"),
            OrderingPolicy::Custom(order) => write!(f, "custom:{}", order.join(",")),
        }
    }
}

impl FromStr for OrderingPolicy {
    type Err = RelabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paper-example" => Ok(OrderingPolicy::PaperExample),
            "index-ascending" => Ok(OrderingPolicy::IndexAscending),
            _ => match s.strip_prefix("custom:") {
                Some(list) => Ok(OrderingPolicy::Custom(
                    list.split(',')
                        .map(str::trim)
                        .filter(|l| !l.is_empty())
                        .map(str::to_string)
                        .collect(),
                )),
                None => Err(RelabelError::UnknownPolicy(s.to_string())),
            },
        }
    }
}

/// Bijection between vertex indices and subscripts `1..=m+n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabeling {
    to_c: Vec<u32>,
    from_c: Vec<usize>,
    /// `k_i = |A_i|`, the number of `V2` vertices first claimed by `c_i`.
    pub k_counts: Vec<usize>,
    pub m: usize,
    pub n: usize,
}

impl Relabeling {
    pub fn c_of(&self, v: usize) -> CLabel {
        CLabel(self.to_c[v])
    }

    pub fn vertex_of(&self, c: CLabel) -> usize {
        self.from_c[c.0 as usize - 1]
    }

    /// `(original label, c label)` in vertex order.
    pub fn mapping(&self, g: &Graph) -> Vec<(String, CLabel)> {
        (0..g.len())
            .map(|v| (g.label(v).to_string(), self.c_of(v)))
            .collect()
    }

    fn neighborhood(&self, g: &Graph, i: u32) -> BTreeSet<CLabel> {
        g.neighborhood(self.vertex_of(CLabel(i)))
            .iter()
            .map(|&v| self.c_of(v))
            .collect()
    }
}

/// Relabels `g` into `c_1..c_{m+n}`.
pub fn relabel(
    g: &Graph,
    bp: &Bipartition,
    policy: &OrderingPolicy,
) -> Result<Relabeling, RelabelError> {
    let isolated: Vec<String> = (0..g.len())
        .filter(|&v| g.is_isolated(v))
        .map(|v| g.label(v).to_string())
        .collect();
    if !isolated.is_empty() {
        return Err(RelabelError::HasIsolated(isolated));
    }
    let (m, n) = (bp.m(), bp.n());
    let mut v1 = bp.v1.clone();
    policy.sort(g, &mut v1);
    let first = v1
        .iter()
        .position(|&a| g.degree(a) < n)
        .ok_or(RelabelError::CompleteBipartite)?;
    let c1 = v1.remove(first);
    v1.insert(0, c1);

    let mut from_c = v1;
    let mut remaining = bp.v2.clone();
    policy.sort(g, &mut remaining);
    let mut k_counts = Vec::with_capacity(m);
    for i in 0..m {
        let ci = from_c[i];
        let (claimed, rest): (Vec<usize>, Vec<usize>) =
            remaining.iter().partition(|&&b| !g.has_edge(ci, b));
        k_counts.push(claimed.len());
        from_c.extend(claimed);
        remaining = rest;
    }
    from_c.extend(remaining);

    let mut to_c = vec![0u32; g.len()];
    for (i, &v) in from_c.iter().enumerate() {
        to_c[v] = i as u32 + 1;
    }
    Ok(Relabeling {
        to_c,
        from_c,
        k_counts,
        m,
        n,
    })
}

/// Produces the `m + 1` blocks `w_1..w_{m+1}` over relabeled vertices. Empty
/// blocks stand for the empty word.
pub fn build_permutations(r: &Relabeling, g: &Graph) -> Vec<Vec<CLabel>> {
    let (m, n) = (r.m as u32, r.n as u32);
    let c = CLabel;
    let v2: BTreeSet<CLabel> = (m + 1..=m + n).map(c).collect();
    let k1 = r.k_counts[0] as u32;
    let mut blocks = Vec::with_capacity(r.m + 1);

    let mut w1: Vec<CLabel> = (2..=m).rev().map(c).collect();
    w1.extend((m + 1..=m + k1).map(c));
    w1.push(c(1));
    // A V2 vertex seen only by c_1 is ordered before every later V2 vertex in
    // all other blocks, so against a vertex adjacent to all of V1 it would
    // alternate with no edge. Moving such pendants to the end of w_1 supplies
    // the missing order; nothing else depends on their place in w_1.
    let tail = m + k1 + 1..=m + n;
    let universal = tail.clone().any(|j| r.neighborhood(g, j).len() == r.m);
    let pendant = |j: &u32| universal && r.neighborhood(g, *j) == BTreeSet::from([c(1)]);
    let (late, early): (Vec<u32>, Vec<u32>) = tail.partition(pendant);
    w1.extend(early.into_iter().chain(late).map(c));
    blocks.push(w1);

    let mut any_full = false;
    for i in 2..=m {
        let nbrs = r.neighborhood(g, i);
        if nbrs == v2 {
            any_full = true;
            blocks.push(Vec::new());
            continue;
        }
        let non_nbrs: Vec<CLabel> = v2.difference(&nbrs).copied().collect();
        let nbrs: Vec<CLabel> = nbrs.into_iter().collect();
        let mut wi: Vec<CLabel> = (1..=m).filter(|&j| j != i).map(c).collect();
        wi.extend(dec(&non_nbrs).expect("distinct subscripts"));
        wi.push(c(i));
        wi.extend(dec(&nbrs).expect("distinct subscripts"));
        blocks.push(wi);
    }

    let closing = if any_full {
        (1..=m).chain((m + 1..=m + n).rev()).map(c).collect()
    } else {
        Vec::new()
    };
    blocks.push(closing);
    blocks
}

/// Function producing the relabeled blocks; swappable for fault injection.
pub type PermutationBuilder = fn(&Relabeling, &Graph) -> Vec<Vec<CLabel>>;

/// `m`, the number `k_full` of `V1` vertices adjacent to all of `V2`, and the
/// resulting bound: `m - k_full + 1` if `k_full >= 1`, otherwise `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub m: usize,
    pub k_full: usize,
    pub bound: usize,
}

pub fn bound_report(g: &Graph, bp: &Bipartition) -> BoundReport {
    let v2: BTreeSet<usize> = bp.v2.iter().copied().collect();
    let k_full = bp.v1.iter().filter(|&&a| *g.neighborhood(a) == v2).count();
    let m = bp.m();
    let bound = if k_full >= 1 { m - k_full + 1 } else { m };
    BoundReport { m, k_full, bound }
}

/// Vertex and edge counts of the graph a representation was built for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub vertices: usize,
    pub edges: usize,
}

/// A verified permutational representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub word: Word,
    /// `w_1..w_{m+1}` over original labels, empty words included. For a
    /// complete bipartite graph these are the two blocks of the fixed word.
    pub permutations: Vec<Word>,
    /// The same blocks over `c` labels, when a relabeling took place.
    pub relabeled: Option<Vec<Vec<CLabel>>>,
    pub relabeling: Option<Relabeling>,
    pub relabel_map: Vec<(String, CLabel)>,
    pub perm_count: usize,
    pub bound_m: usize,
    pub bounds: BoundReport,
    pub policy: String,
    pub isolated: Vec<String>,
    pub input: InputDigest,
    pub verified: VerificationReport,
}

fn check_verified(word: &Word, g: &Graph) -> Result<VerificationReport, RelabelError> {
    let report = words::verify(word, g);
    if report.ok {
        Ok(report)
    } else {
        Err(RelabelError::VerificationFailed(Box::new(report)))
    }
}

/// Represents a bipartite graph without isolated vertices.
pub fn represent_bipartite(
    g: &Graph,
    policy: &OrderingPolicy,
) -> Result<Representation, RelabelError> {
    represent_bipartite_with(g, policy, build_permutations)
}

/// [`represent_bipartite`] with a caller-chosen block builder.
pub fn represent_bipartite_with(
    g: &Graph,
    policy: &OrderingPolicy,
    builder: PermutationBuilder,
) -> Result<Representation, RelabelError> {
    if g.edge_count() == 0 {
        return Err(RelabelError::NoEdges);
    }
    let bp = g.bipartition()?;
    let bounds = bound_report(g, &bp);
    let label_word = |vs: &mut dyn Iterator<Item = usize>| -> Word {
        vs.map(|v| g.label(v).to_string()).collect()
    };

    let (permutations, relabeled, relabeling) = match relabel(g, &bp, policy) {
        Ok(r) => {
            let blocks = builder(&r, g);
            let perms = blocks
                .iter()
                .map(|b| label_word(&mut b.iter().map(|&c| r.vertex_of(c))))
                .collect();
            (perms, Some(blocks), Some(r))
        }
        Err(RelabelError::CompleteBipartite) => {
            let forward = label_word(&mut bp.v1.iter().chain(&bp.v2).copied());
            let backward = label_word(&mut bp.v1.iter().rev().chain(bp.v2.iter().rev()).copied());
            (vec![forward, backward], None, None)
        }
        Err(e) => return Err(e),
    };

    let word = Word::concat(&permutations);
    let verified = check_verified(&word, g)?;
    let relabel_map = relabeling
        .as_ref()
        .map(|r| r.mapping(g))
        .unwrap_or_default();
    Ok(Representation {
        perm_count: permutations.iter().filter(|p| !p.is_empty()).count(),
        word,
        permutations,
        relabeled,
        relabeling,
        relabel_map,
        bound_m: bp.m(),
        bounds,
        policy: policy.to_string(),
        isolated: Vec::new(),
        input: InputDigest {
            vertices: g.len(),
            edges: g.edge_count(),
        },
        verified,
    })
}

/// Splices isolated vertices `u = x_1..x_t` into nonempty blocks
/// `w_1..w_k`: odd-numbered blocks become `w_j u`, even-numbered ones
/// `r(u) w_j`, so the whole word reads `w_1 u r(u) w_2 w_3 u r(u) w_4 ...`.
/// A single block is first doubled, since `w_1 u` would make each isolated
/// vertex alternate with everything.
pub fn wrap_blocks(blocks: &[Word], isolated: &[String]) -> Vec<Word> {
    let mut blocks = blocks.to_vec();
    if blocks.len() == 1 {
        blocks.push(blocks[0].clone());
    }
    let u: Word = isolated.iter().cloned().collect();
    let ru = words::reversal(&u);
    blocks
        .iter()
        .enumerate()
        .map(|(i, b)| {
            if i % 2 == 0 {
                Word::concat([b, &u])
            } else {
                Word::concat([&ru, b])
            }
        })
        .collect()
}

/// Wraps isolated vertices into a representation of `core` given by its
/// nonempty blocks, and verifies the result against `core` plus the
/// isolated vertices.
pub fn wrap_isolated(
    core: &Graph,
    blocks: &[Word],
    isolated: &[String],
) -> Result<Word, RelabelError> {
    let mut full = core.clone();
    for x in isolated {
        full.add_vertex(x)
            .map_err(|_| RelabelError::HasIsolated(vec![x.clone()]))?;
    }
    let word = Word::concat(&wrap_blocks(blocks, isolated));
    check_verified(&word, &full)?;
    Ok(word)
}

/// Represents any bipartite graph with at least one edge, splicing isolated
/// vertices back in after representing the rest.
pub fn represent_graph(g: &Graph, policy: &OrderingPolicy) -> Result<Representation, RelabelError> {
    let (core, isolated) = g.split_isolated()?;
    let mut rep = represent_bipartite(&core, policy)?;
    if isolated.is_empty() {
        return Ok(rep);
    }
    // bipartiteness of the whole graph is decided by the core
    let nonempty: Vec<Word> = rep
        .permutations
        .iter()
        .filter(|p| !p.is_empty())
        .cloned()
        .collect();
    let mut wrapped = wrap_blocks(&nonempty, &isolated).into_iter();
    let mut permutations: Vec<Word> = rep
        .permutations
        .iter()
        .map(|p| {
            if p.is_empty() {
                Word::empty()
            } else {
                wrapped.next().unwrap()
            }
        })
        .collect();
    permutations.extend(wrapped);

    rep.word = Word::concat(&permutations);
    rep.verified = check_verified(&rep.word, g)?;
    rep.perm_count = permutations.iter().filter(|p| !p.is_empty()).count();
    rep.permutations = permutations;
    rep.isolated = isolated;
    rep.input = InputDigest {
        vertices: g.len(),
        edges: g.edge_count(),
    };
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::reference_graph;
    use crate::graph::{complete_bipartite, crown, random_bipartite};
    use crate::words::{
        alternate, c_word_string, is_permutation_concatenation, uniformity, verify,
    };

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn reference_graph_relabeling() {
        let g = reference_graph();
        let bp = g.bipartition().unwrap();
        let r = relabel(&g, &bp, &OrderingPolicy::PaperExample).unwrap();
        let got: Vec<String> = r
            .mapping(&g)
            .into_iter()
            .map(|(l, c)| format!("{l}->{c}"))
            .collect();
        assert_eq!(
            got,
            [
                "a1->c4", "a2->c2", "a3->c3", "a4->c1", "b1->c7", "b2->c9", "b3->c8", "b4->c6",
                "b5->c5"
            ]
        );
        assert_eq!(r.k_counts, [3, 0, 0, 0]);
    }

    #[test]
    fn reference_graph_blocks() {
        let g = reference_graph();
        let bp = g.bipartition().unwrap();
        let r = relabel(&g, &bp, &OrderingPolicy::PaperExample).unwrap();
        let blocks: Vec<String> = build_permutations(&r, &g)
            .iter()
            .map(|b| c_word_string(b))
            .collect();
        assert_eq!(
            blocks,
            [
                "c4c3c2c5c6c7c1c8c9",
                "c1c3c4c6c5c2c9c8c7",
                "",
                "",
                "c1c2c3c4c9c8c7c6c5"
            ]
        );
    }

    #[test]
    fn reference_graph_word() {
        let rep = represent_bipartite(&reference_graph(), &OrderingPolicy::PaperExample).unwrap();
        assert_eq!(
            rep.word,
            w("a1 a3 a2 b5 b4 b1 a4 b3 b2 a4 a3 a1 b4 b5 a2 b2 b3 b1 a4 a2 a3 a1 b2 b3 b1 b4 b5")
        );
        assert_eq!(rep.perm_count, 3);
        assert_eq!(
            rep.bounds,
            BoundReport {
                m: 4,
                k_full: 2,
                bound: 3
            }
        );
        assert!(rep.verified.ok);
    }

    #[test]
    fn complete_bipartite_is_rejected_by_relabel() {
        let g = complete_bipartite(2, 2).unwrap();
        let bp = g.bipartition().unwrap();
        assert_eq!(
            relabel(&g, &bp, &OrderingPolicy::PaperExample),
            Err(RelabelError::CompleteBipartite)
        );
    }

    #[test]
    fn crown2_trace() {
        let g = crown(2).unwrap();
        let bp = g.bipartition().unwrap();
        let r = relabel(&g, &bp, &OrderingPolicy::IndexAscending).unwrap();
        let cs: Vec<u32> = (0..4).map(|v| r.c_of(v).0).collect();
        assert_eq!(cs, [1, 2, 3, 4]);
        assert_eq!(r.k_counts, [1, 1]);
        let blocks: Vec<String> = build_permutations(&r, &g)
            .iter()
            .map(|b| c_word_string(b))
            .collect();
        assert_eq!(blocks, ["c2c3c1c4", "c1c4c2c3", ""]);
    }

    #[test]
    fn relabel_rejects_isolated() {
        let mut g = crown(2).unwrap();
        g.add_vertex("z").unwrap();
        let bp = g.bipartition().unwrap();
        assert_eq!(
            relabel(&g, &bp, &OrderingPolicy::IndexAscending),
            Err(RelabelError::HasIsolated(vec!["z".into()]))
        );
    }

    #[test]
    fn complete_bipartite_words() {
        let rep = represent_bipartite(
            &complete_bipartite(2, 3).unwrap(),
            &OrderingPolicy::PaperExample,
        )
        .unwrap();
        assert_eq!(rep.word, w("a1 a2 b1 b2 b3 a2 a1 b3 b2 b1"));
        assert_eq!(uniformity(&rep.word), Ok(Some(2)));
        assert!(rep.relabeling.is_none());
        assert_eq!(rep.permutations.len(), 2);

        let rep = represent_bipartite(
            &complete_bipartite(1, 1).unwrap(),
            &OrderingPolicy::PaperExample,
        )
        .unwrap();
        assert_eq!(rep.word, w("a1 b1 a1 b1"));
    }

    #[test]
    fn represent_errors() {
        let tri = Graph::build(&["x", "y", "z"], &[("x", "y"), ("y", "z"), ("x", "z")]).unwrap();
        assert!(matches!(
            represent_bipartite(&tri, &OrderingPolicy::PaperExample),
            Err(RelabelError::NotBipartite(_))
        ));
        let mut g = crown(3).unwrap();
        g.add_vertex("z").unwrap();
        assert_eq!(
            represent_bipartite(&g, &OrderingPolicy::PaperExample),
            Err(RelabelError::HasIsolated(vec!["z".into()]))
        );
        let e = Graph::build(&["x"], &[] as &[(&str, &str)]).unwrap();
        assert_eq!(
            represent_bipartite(&e, &OrderingPolicy::PaperExample),
            Err(RelabelError::NoEdges)
        );
        assert_eq!(
            represent_graph(&e, &OrderingPolicy::PaperExample),
            Err(RelabelError::NoEdges)
        );
    }

    #[test]
    fn bound_reports() {
        let g = reference_graph();
        assert_eq!(
            bound_report(&g, &g.bipartition().unwrap()),
            BoundReport {
                m: 4,
                k_full: 2,
                bound: 3
            }
        );
        for n in 2..6 {
            let h = crown(n).unwrap();
            assert_eq!(
                bound_report(&h, &h.bipartition().unwrap()),
                BoundReport {
                    m: n,
                    k_full: 0,
                    bound: n
                }
            );
        }
        let k = complete_bipartite(3, 4).unwrap();
        assert_eq!(
            bound_report(&k, &k.bipartition().unwrap()),
            BoundReport {
                m: 3,
                k_full: 3,
                bound: 1
            }
        );
    }

    #[test]
    fn broken_builder_is_caught() {
        // c_1 ahead of its non-neighbors in every block
        fn c1_first(r: &Relabeling, g: &Graph) -> Vec<Vec<CLabel>> {
            let mut blocks = build_permutations(r, g);
            blocks[0].retain(|&c| c != CLabel(1));
            blocks[0].insert(0, CLabel(1));
            blocks
        }
        let res = represent_bipartite_with(
            &crown(3).unwrap(),
            &OrderingPolicy::IndexAscending,
            c1_first,
        );
        assert!(matches!(res, Err(RelabelError::VerificationFailed(_))));
    }

    #[test]
    fn policy_parsing() {
        assert_eq!("paper-example".parse(), Ok(OrderingPolicy::PaperExample));
        assert_eq!(
            "index-ascending".parse(),
            Ok(OrderingPolicy::IndexAscending)
        );
        assert_eq!(
            "custom:b,a".parse(),
            Ok(OrderingPolicy::Custom(vec!["b".into(), "a".into()]))
        );
        assert!("nope".parse::<OrderingPolicy>().is_err());
        for p in OrderingPolicy::builtins() {
            assert_eq!(p.to_string().parse(), Ok(p));
        }
    }

    #[test]
    fn custom_policy_picks_c1() {
        let g = crown(3).unwrap();
        let bp = g.bipartition().unwrap();
        let policy = OrderingPolicy::Custom(vec!["a3".into(), "b3".into()]);
        let r = relabel(&g, &bp, &policy).unwrap();
        assert_eq!(r.vertex_of(CLabel(1)), g.index_of("a3").unwrap());
        let rep = represent_bipartite(&g, &policy).unwrap();
        assert_eq!(rep.perm_count, 3);
    }

    #[test]
    fn wrap_single_block_is_doubled() {
        let k2 = Graph::build(&["a", "b"], &[("a", "b")]).unwrap();
        let word = wrap_isolated(&k2, &[w("a b")], &["c".into()]).unwrap();
        assert_eq!(word, w("a b c c a b"));
    }

    #[test]
    fn wrap_two_and_three_blocks() {
        let k2 = Graph::build(&["a", "b"], &[("a", "b")]).unwrap();
        let word = wrap_isolated(&k2, &[w("a b"), w("a b")], &["c".into()]).unwrap();
        assert_eq!(word, w("a b c c a b"));

        let h2 = crown(2).unwrap();
        let rep = represent_bipartite(&h2, &OrderingPolicy::IndexAscending).unwrap();
        let mut blocks: Vec<Word> = rep
            .permutations
            .iter()
            .filter(|p| !p.is_empty())
            .cloned()
            .collect();
        blocks.push(blocks[0].clone());
        let iso = ["c".to_string(), "d".to_string()];
        let word = wrap_isolated(&h2, &blocks, &iso).unwrap();
        let expect = Word::concat([&blocks[0], &w("c d d c"), &blocks[1], &blocks[2], &w("c d")]);
        assert_eq!(word, expect);
    }

    #[test]
    fn represent_graph_with_isolated() {
        let mut g = reference_graph();
        g.add_vertex("z1").unwrap();
        g.add_vertex("z2").unwrap();
        let rep = represent_graph(&g, &OrderingPolicy::PaperExample).unwrap();
        assert!(rep.verified.ok);
        assert_eq!(rep.isolated, ["z1", "z2"]);
        assert_eq!(rep.perm_count, 3);
        assert_eq!(rep.permutations.len(), 5);
        assert!(rep.permutations[2].is_empty() && rep.permutations[3].is_empty());
        assert_eq!(is_permutation_concatenation(&rep.word, g.labels()), Some(3));
        for x in ["z1", "z2"] {
            for y in g.labels() {
                if y != x {
                    assert!(!alternate(&rep.word, x, y).unwrap());
                }
            }
        }
    }

    /// Non-edges of the relabeled graph fall into the three cases of the
    /// correctness argument; each case names two blocks, one containing
    /// `a b` and one containing `b a` as subwords. Pairs touching a V2 vertex
    /// that was moved to the end of `w_1` are only checked for having both
    /// orders somewhere, and counted in the last slot.
    fn check_case_witnesses(g: &Graph, policy: &OrderingPolicy) -> [usize; 5] {
        let bp = g.bipartition().unwrap();
        let r = relabel(g, &bp, policy).unwrap();
        let blocks = build_permutations(&r, g);
        let m = r.m as u32;
        let sub = |i: usize, x: CLabel, y: CLabel| {
            let pos = |z| blocks[i - 1].iter().position(|&c| c == z);
            matches!((pos(x), pos(y)), (Some(px), Some(py)) if px < py)
        };
        let anywhere = |x, y| (1..=blocks.len()).any(|i| sub(i, x, y));
        let full = |i: u32| g.degree(r.vertex_of(CLabel(i))) == r.n;
        let adjacent = |x: u32, y: u32| g.has_edge(r.vertex_of(CLabel(x)), r.vertex_of(CLabel(y)));
        let holders = |b: u32| (1..=m).filter(move |&q| adjacent(q, b));
        let w1_v2: Vec<u32> = blocks[0].iter().map(|c| c.0).filter(|&c| c > m).collect();
        let moved = |x: u32| x > m && w1_v2.iter().skip_while(|&&y| y != x).any(|&y| y < x);
        let mut seen = [0usize; 5];
        let total = m + r.n as u32;
        for p in 1..=total {
            for q in 1..p {
                if adjacent(p, q) {
                    continue;
                }
                let (a, b) = (CLabel(p), CLabel(q));
                if moved(p) || moved(q) {
                    seen[4] += 1;
                    assert!(anywhere(a, b) && anywhere(b, a), "moved pair ({a},{b})");
                    continue;
                }
                match (p <= m, q <= m) {
                    (true, true) => {
                        seen[0] += 1;
                        assert!(sub(1, a, b));
                        let wp = if full(p) { r.m + 1 } else { p as usize };
                        assert!(sub(wp, b, a), "case 1 ({a},{b})");
                    }
                    (false, true) if q == 1 => {
                        seen[1] += 1;
                        assert!(sub(1, a, b), "c_1 after its non-neighbor");
                        for h in holders(p) {
                            let wq = if full(h) { r.m + 1 } else { h as usize };
                            assert!(sub(wq, b, a), "case 2.1 ({b},{a}) via c{h}");
                        }
                    }
                    (false, true) => {
                        seen[2] += 1;
                        assert!(sub(1, b, a));
                        assert!(sub(q as usize, a, b), "case 2.2 ({b},{a})");
                    }
                    (false, false) => {
                        seen[3] += 1;
                        assert!(sub(1, b, a));
                        // w_1 has no Dec structure, so only holders past c_1 witness
                        for h in holders(q).filter(|&h| h > 1) {
                            let wr = if full(h) { r.m + 1 } else { h as usize };
                            assert!(sub(wr, a, b), "case 3 ({a},{b}) via c{h}");
                        }
                        assert!(anywhere(a, b), "case 3 ({a},{b})");
                    }
                    (true, false) => unreachable!("p > q"),
                }
            }
        }
        seen
    }

    #[test]
    fn pendant_of_c1_against_universal_vertex() {
        // path b4 - a1 - b2 - a2 - b1: b4 is seen only by c_1 = a1, b2 by all of V1
        let g = Graph::build(
            &["a1", "a2", "b1", "b2", "b4"],
            &[("a1", "b2"), ("a1", "b4"), ("a2", "b1"), ("a2", "b2")],
        )
        .unwrap();
        let bp = g.bipartition().unwrap();
        let r = relabel(&g, &bp, &OrderingPolicy::IndexAscending).unwrap();
        let blocks: Vec<String> = build_permutations(&r, &g)
            .iter()
            .map(|b| c_word_string(b))
            .collect();
        assert_eq!(blocks, ["c2c3c1c5c4", "c1c4c2c5c3", ""]);

        // with b4 = c4 left in subscript order, c4 and c5 alternate in w_1 w_2
        let literal = Word::from_iter(
            ["a2", "b1", "a1", "b4", "b2", "a1", "b4", "a2", "b2", "b1"].map(String::from),
        );
        assert_eq!(
            verify(&literal, &g).extra_edges,
            [("b2".to_string(), "b4".to_string())]
        );

        let seen = check_case_witnesses(&g, &OrderingPolicy::IndexAscending);
        assert!(seen[4] > 0);
        for policy in OrderingPolicy::builtins() {
            assert_eq!(represent_bipartite(&g, &policy).unwrap().perm_count, 2);
        }
    }

    #[test]
    fn case_witnesses_reference_and_crowns() {
        let seen = check_case_witnesses(&reference_graph(), &OrderingPolicy::PaperExample);
        assert!(seen[..4].iter().all(|&s| s > 0), "{seen:?}");
        assert_eq!(seen[4], 0);
        for n in 2..=6 {
            for policy in OrderingPolicy::builtins() {
                check_case_witnesses(&crown(n).unwrap(), &policy);
            }
        }
    }

    #[test]
    fn case_witnesses_random() {
        let mut covered = [0usize; 5];
        for seed in 0..200 {
            let g = random_bipartite(4, 5, 0.55, seed).unwrap();
            let Ok((core, _)) = g.split_isolated() else {
                continue;
            };
            let bp = core.bipartition().unwrap();
            if core.is_complete_bipartite(&bp) {
                continue;
            }
            for policy in OrderingPolicy::builtins() {
                let seen = check_case_witnesses(&core, &policy);
                for i in 0..5 {
                    covered[i] += seen[i];
                }
            }
        }
        assert!(covered.iter().all(|&s| s > 0), "{covered:?}");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn block_structure(m in 1usize..5, n in 1usize..6, p in 0.2f64..0.9, seed: u64) {
                let g = random_bipartite(m, n, p, seed).unwrap();
                let Ok((core, _)) = g.split_isolated() else { return Ok(()) };
                let bp = core.bipartition().unwrap();
                prop_assume!(!core.is_complete_bipartite(&bp));
                let r = relabel(&core, &bp, &OrderingPolicy::PaperExample).unwrap();
                prop_assert!(r.k_counts[0] >= 1);
                prop_assert!(r.k_counts.iter().sum::<usize>() <= r.n);
                for i in 1..=r.m {
                    prop_assert_eq!(bp.in_v1(r.vertex_of(CLabel(i as u32))), true);
                }
                let blocks = build_permutations(&r, &core);
                prop_assert_eq!(blocks.len(), r.m + 1);
                let all: BTreeSet<CLabel> = (1..=(r.m + r.n) as u32).map(CLabel).collect();
                for (i, b) in blocks.iter().enumerate() {
                    if b.is_empty() { continue; }
                    prop_assert_eq!(b.iter().copied().collect::<BTreeSet<_>>(), all.clone());
                    prop_assert_eq!(b.len(), all.len());
                    if i >= 1 && i < r.m {
                        // V2 part of w_i: Dec(V2 \ N(c_i)) c_i Dec(N(c_i))
                        let ci = CLabel(i as u32 + 1);
                        let tail: Vec<CLabel> = b.iter().copied().filter(|c| c.0 as usize > r.m || *c == ci).collect();
                        let at = tail.iter().position(|&c| c == ci).unwrap();
                        let nbrs = r.neighborhood(&core, ci.0);
                        prop_assert!(tail[..at].windows(2).all(|x| x[0] > x[1]));
                        prop_assert!(tail[at + 1..].windows(2).all(|x| x[0] > x[1]));
                        prop_assert!(tail[at + 1..].iter().all(|c| nbrs.contains(c)));
                        prop_assert!(tail[..at].iter().all(|c| !nbrs.contains(c)));
                        prop_assert_eq!(tail.len(), r.n + 1);
                    }
                }
            }

            #[test]
            fn always_verifies(m in 1usize..7, n in 1usize..9, p in 0.1f64..0.95, seed: u64) {
                let g = random_bipartite(m, n, p, seed).unwrap();
                let Ok((core, _)) = g.split_isolated() else { return Ok(()) };
                let bp = core.bipartition().unwrap();
                for policy in OrderingPolicy::builtins() {
                    let rep = represent_bipartite(&core, &policy).unwrap();
                    let b = bound_report(&core, &bp);
                    if !core.is_complete_bipartite(&bp) {
                        prop_assert!(rep.perm_count <= b.bound);
                    }
                }
            }

            #[test]
            fn wrapping_keeps_core_alternation(m in 1usize..4, n in 1usize..5, p in 0.3f64..1.0, seed: u64, t in 1usize..4) {
                let g = random_bipartite(m, n, p, seed).unwrap();
                let Ok((core, _)) = g.split_isolated() else { return Ok(()) };
                let rep = represent_bipartite(&core, &OrderingPolicy::IndexAscending).unwrap();
                let blocks: Vec<Word> = rep.permutations.iter().filter(|b| !b.is_empty()).cloned().collect();
                let iso: Vec<String> = (0..t).map(|i| format!("z{i}")).collect();
                let word = wrap_isolated(&core, &blocks, &iso).unwrap();
                for x in core.labels().iter().chain(&iso) {
                    for y in core.labels().iter().chain(&iso) {
                        if x >= y { continue; }
                        let now = alternate(&word, x, y).unwrap();
                        if iso.contains(x) || iso.contains(y) {
                            prop_assert!(!now);
                        } else {
                            prop_assert_eq!(now, alternate(&rep.word, x, y).unwrap());
                        }
                    }
                }
            }
        }
    }
}
