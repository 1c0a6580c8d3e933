//! Exhaustive ground truth for tiny graphs: the exact permutation
//! representation number, the exact representation number, and the
//! dimension of the height-one poset of a bipartite graph.
//!
//! Every search is bounded by an explicit [`OracleBudget`] and returns its
//! witness so callers can re-check it independently.

use std::collections::BTreeSet;

use itertools::Itertools;
use thiserror::Error;

use crate::graph::{Bipartition, Graph};
use crate::words::Word;

/// Bitmask over requirement indices. Caps the searchable sizes.
type Mask = u128;
const MASK_BITS: usize = Mask::BITS as usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search budget exceeded after {explored} candidates")]
    BudgetExceeded { explored: u64 },
    #[error("{size} vertices exceed the oracle limit of {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("no representation with at most {max_k} copies/permutations")]
    ExceedsMaxK { max_k: usize },
    #[error("poset has no linear extension")]
    NoLinearExtension,
    #[error("edge {0} - {1} does not cross the bipartition")]
    NotBipartite(String, String),
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("budget limits must be positive")]
    InvalidBudget,
    #[error("graph has no vertices")]
    EmptyGraph,
}

/// Limits for one oracle call. `max_vertices` guards the input size,
/// `max_k` the largest count tried, `max_candidates` the number of search
/// nodes visited before giving up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_k: usize,
    pub max_candidates: u64,
}

impl OracleBudget {
    pub fn new(
        max_vertices: usize,
        max_k: usize,
        max_candidates: u64,
    ) -> Result<Self, OracleError> {
        if max_vertices == 0 || max_k == 0 || max_candidates == 0 {
            return Err(OracleError::InvalidBudget);
        }
        Ok(OracleBudget {
            max_vertices,
            max_k,
            max_candidates,
        })
    }

    pub fn permutations() -> Self {
        OracleBudget {
            max_vertices: 6,
            max_k: 3,
            max_candidates: 200_000_000,
        }
    }

    pub fn words() -> Self {
        OracleBudget {
            max_vertices: 5,
            max_k: 3,
            max_candidates: 200_000_000,
        }
    }

    pub fn dimension() -> Self {
        OracleBudget {
            max_vertices: 8,
            max_k: 4,
            max_candidates: 200_000_000,
        }
    }

    fn check_size(&self, size: usize, hard_limit: usize) -> Result<(), OracleError> {
        let limit = self.max_vertices.min(hard_limit);
        if size > limit {
            return Err(OracleError::TooLarge { size, limit });
        }
        Ok(())
    }
}

struct Meter {
    used: u64,
    limit: u64,
}

impl Meter {
    fn new(budget: &OracleBudget) -> Self {
        Meter {
            used: 0,
            limit: budget.max_candidates,
        }
    }

    fn tick(&mut self) -> Result<(), OracleError> {
        self.used += 1;
        if self.used > self.limit {
            return Err(OracleError::BudgetExceeded {
                explored: self.limit,
            });
        }
        Ok(())
    }
}

/// Picks at most `depth` masks whose union contains `need`. Branches on the
/// lowest uncovered bit, so every chosen mask makes progress.
fn cover(
    need: Mask,
    masks: &[Mask],
    depth: usize,
    chosen: &mut Vec<usize>,
    meter: &mut Meter,
) -> Result<bool, OracleError> {
    if need == 0 {
        return Ok(true);
    }
    if depth == 0 {
        return Ok(false);
    }
    let bit = need & need.wrapping_neg();
    for (i, &m) in masks.iter().enumerate() {
        if m & bit == 0 {
            continue;
        }
        meter.tick()?;
        chosen.push(i);
        if cover(need & !m, masks, depth - 1, chosen, meter)? {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}

/// Keeps one representative per inclusion-maximal mask.
fn maximal_masks<T>(items: Vec<(Mask, T)>) -> Vec<(Mask, T)> {
    let mut out: Vec<(Mask, T)> = Vec::new();
    for (m, t) in items {
        if out.iter().any(|(o, _)| o & m == m) {
            continue;
        }
        out.retain(|(o, _)| o & m != *o);
        out.push((m, t));
    }
    out
}

/// Enumerates linear extensions of the strict order `before[x][y]` ("x must
/// precede y") by repeatedly choosing a minimal element, smallest index
/// first.
fn linear_extensions(
    before: &[Vec<bool>],
    meter: &mut Meter,
    mut visit: impl FnMut(&[usize]),
) -> Result<(), OracleError> {
    let n = before.len();
    let mut indegree: Vec<usize> = (0..n)
        .map(|y| (0..n).filter(|&x| before[x][y]).count())
        .collect();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);

    fn rec(
        before: &[Vec<bool>],
        indegree: &mut [usize],
        placed: &mut [bool],
        order: &mut Vec<usize>,
        meter: &mut Meter,
        visit: &mut dyn FnMut(&[usize]),
    ) -> Result<(), OracleError> {
        let n = before.len();
        if order.len() == n {
            visit(order);
            return Ok(());
        }
        for x in 0..n {
            if placed[x] || indegree[x] != 0 {
                continue;
            }
            meter.tick()?;
            placed[x] = true;
            order.push(x);
            for y in 0..n {
                if before[x][y] {
                    indegree[y] -= 1;
                }
            }
            rec(before, indegree, placed, order, meter, visit)?;
            for y in 0..n {
                if before[x][y] {
                    indegree[y] += 1;
                }
            }
            order.pop();
            placed[x] = false;
        }
        Ok(())
    }

    rec(
        before,
        &mut indegree,
        &mut placed,
        &mut order,
        meter,
        &mut visit,
    )
}

fn positions(order: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; order.len()];
    for (i, &x) in order.iter().enumerate() {
        pos[x] = i;
    }
    pos
}

/// A minimum set of permutations representing a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermWitness {
    pub k: usize,
    pub permutations: Vec<Word>,
}

/// Whether to skip first permutations that are reversals of ones already
/// covered. Reversing every permutation of a representation yields another
/// representation, so the reduced search only tries first permutations
/// whose first vertex index is below their last.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Reduced,
    Unreduced,
}

/// Smallest `k` such that a concatenation of `k` permutations of the
/// vertices represents `g`.
pub fn min_perm_representation(
    g: &Graph,
    budget: &OracleBudget,
) -> Result<PermWitness, OracleError> {
    min_perm_representation_with(g, budget, Symmetry::Reduced)
}

/// In a concatenation of permutations two letters alternate exactly when
/// every permutation orders them the same way. The search therefore fixes
/// the first permutation, orients every edge by it, and looks for `k - 1`
/// linear extensions of that orientation that together reverse every
/// non-adjacent pair.
pub fn min_perm_representation_with(
    g: &Graph,
    budget: &OracleBudget,
    symmetry: Symmetry,
) -> Result<PermWitness, OracleError> {
    let n = g.len();
    if n == 0 {
        return Err(OracleError::EmptyGraph);
    }
    budget.check_size(n, 16)?;
    let non_edges: Vec<(usize, usize)> = (0..n)
        .tuple_combinations()
        .filter(|&(u, v)| !g.has_edge(u, v))
        .collect();
    let to_word =
        |order: &[usize]| -> Word { order.iter().map(|&v| g.label(v).to_string()).collect() };
    if non_edges.is_empty() {
        let identity: Vec<usize> = (0..n).collect();
        return Ok(PermWitness {
            k: 1,
            permutations: vec![to_word(&identity)],
        });
    }
    debug_assert!(non_edges.len() <= MASK_BITS);
    let need: Mask = if non_edges.len() == MASK_BITS {
        Mask::MAX
    } else {
        (1 << non_edges.len()) - 1
    };

    let mut meter = Meter::new(budget);
    for k in 2..=budget.max_k {
        for first in (0..n).permutations(n) {
            if symmetry == Symmetry::Reduced && first[0] > first[n - 1] {
                continue;
            }
            meter.tick()?;
            let pos1 = positions(&first);
            let mut before = vec![vec![false; n]; n];
            for (u, v) in g.edges() {
                if pos1[u] < pos1[v] {
                    before[u][v] = true;
                } else {
                    before[v][u] = true;
                }
            }
            let mut found: Vec<(Mask, Vec<usize>)> = Vec::new();
            linear_extensions(&before, &mut meter, |ext| {
                let pos = positions(ext);
                let mask = non_edges
                    .iter()
                    .enumerate()
                    .filter(|(_, &(u, v))| (pos[u] < pos[v]) != (pos1[u] < pos1[v]))
                    .fold(0, |acc, (i, _)| acc | (1 << i));
                if mask != 0 {
                    found.push((mask, ext.to_vec()));
                }
            })?;
            if found.iter().fold(0, |acc, (m, _)| acc | m) != need {
                continue;
            }
            let found = maximal_masks(found);
            let masks: Vec<Mask> = found.iter().map(|(m, _)| *m).collect();
            let mut chosen = Vec::new();
            if cover(need, &masks, k - 1, &mut chosen, &mut meter)? {
                let mut permutations = vec![to_word(&first)];
                permutations.extend(chosen.iter().map(|&i| to_word(&found[i].1)));
                return Ok(PermWitness {
                    k: permutations.len(),
                    permutations,
                });
            }
        }
    }
    Err(OracleError::ExceedsMaxK {
        max_k: budget.max_k,
    })
}

/// A minimum-uniformity representing word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformWitness {
    pub k: usize,
    pub word: Word,
}

/// Smallest `k` such that some `k`-uniform word represents `g`.
///
/// Rotating a uniform representing word keeps it representing, so every
/// candidate starts with vertex 0. Adjacent pairs are checked as the word
/// grows; non-adjacent pairs once it is complete.
pub fn min_representation(g: &Graph, budget: &OracleBudget) -> Result<UniformWitness, OracleError> {
    let n = g.len();
    if n == 0 {
        return Err(OracleError::EmptyGraph);
    }
    budget.check_size(n, usize::MAX)?;
    let non_edges: Vec<(usize, usize)> = (0..n)
        .tuple_combinations()
        .filter(|&(u, v)| !g.has_edge(u, v))
        .collect();
    let mut meter = Meter::new(budget);
    for k in 1..=budget.max_k {
        let mut search = UniformSearch {
            g,
            k,
            non_edges: &non_edges,
            word: Vec::with_capacity(n * k),
            counts: vec![0; n],
            last: vec![None; n],
        };
        search.counts[0] = 1;
        search.last[0] = Some(0);
        search.word.push(0);
        if search.extend(&mut meter)? {
            let word = search
                .word
                .iter()
                .map(|&v| g.label(v).to_string())
                .collect();
            return Ok(UniformWitness { k, word });
        }
    }
    Err(OracleError::ExceedsMaxK {
        max_k: budget.max_k,
    })
}

struct UniformSearch<'a> {
    g: &'a Graph,
    k: usize,
    non_edges: &'a [(usize, usize)],
    word: Vec<usize>,
    counts: Vec<usize>,
    last: Vec<Option<usize>>,
}

impl UniformSearch<'_> {
    fn extend(&mut self, meter: &mut Meter) -> Result<bool, OracleError> {
        let n = self.g.len();
        if self.word.len() == n * self.k {
            return Ok(self.non_edges.iter().all(|&(u, v)| !self.alternates(u, v)));
        }
        for x in 0..n {
            if self.counts[x] == self.k {
                continue;
            }
            if let Some(prev) = self.last[x] {
                // x would repeat with some neighbor missing in between
                let breaks = self
                    .g
                    .neighborhood(x)
                    .iter()
                    .any(|&y| self.last[y].is_none_or(|ly| ly < prev));
                if breaks {
                    continue;
                }
            }
            meter.tick()?;
            let saved = self.last[x];
            self.last[x] = Some(self.word.len());
            self.counts[x] += 1;
            self.word.push(x);
            if self.extend(meter)? {
                return Ok(true);
            }
            self.word.pop();
            self.counts[x] -= 1;
            self.last[x] = saved;
        }
        Ok(false)
    }

    fn alternates(&self, u: usize, v: usize) -> bool {
        let mut prev = None;
        for &x in &self.word {
            if x == u || x == v {
                if prev == Some(x) {
                    return false;
                }
                prev = Some(x);
            }
        }
        true
    }
}

/// A finite strict partial order over labeled elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    pub elements: Vec<String>,
    /// `(x, y)` means `x < y`.
    pub less_than: BTreeSet<(usize, usize)>,
}

impl Poset {
    /// Checks irreflexivity, antisymmetry and transitivity.
    pub fn new(
        elements: Vec<String>,
        less_than: BTreeSet<(usize, usize)>,
    ) -> Result<Self, OracleError> {
        let n = elements.len();
        for &(x, y) in &less_than {
            if x >= n || y >= n {
                return Err(OracleError::InvalidPoset(format!(
                    "relation ({x}, {y}) out of range"
                )));
            }
            if x == y {
                return Err(OracleError::InvalidPoset(format!(
                    "{} < itself",
                    elements[x]
                )));
            }
            if less_than.contains(&(y, x)) {
                return Err(OracleError::InvalidPoset(format!(
                    "{} and {} are mutually below each other",
                    elements[x], elements[y]
                )));
            }
        }
        for &(x, y) in &less_than {
            for &(y2, z) in less_than.range((y, 0)..(y + 1, 0)) {
                debug_assert_eq!(y, y2);
                if !less_than.contains(&(x, z)) {
                    return Err(OracleError::InvalidPoset(format!(
                        "{} < {} < {} but not {} < {}",
                        elements[x], elements[y], elements[z], elements[x], elements[z]
                    )));
                }
            }
        }
        Ok(Poset {
            elements,
            less_than,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn less(&self, x: usize, y: usize) -> bool {
        self.less_than.contains(&(x, y))
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        x == y || self.less(x, y) || self.less(y, x)
    }

    fn matrix(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        let mut m = vec![vec![false; n]; n];
        for &(x, y) in &self.less_than {
            m[x][y] = true;
        }
        m
    }

    /// `(a, b)` incomparable with everything below `a` also below `b`, and
    /// everything above `b` also above `a`. Reversing all of them suffices
    /// to realize the order.
    fn critical_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .cartesian_product(0..n)
            .filter(|&(a, b)| !self.comparable(a, b))
            .filter(|&(a, b)| {
                (0..n).all(|z| !self.less(z, a) || self.less(z, b))
                    && (0..n).all(|z| !self.less(b, z) || self.less(a, z))
            })
            .collect()
    }
}

/// Height-one poset of a bipartite graph: `x < y` iff `x` is in `V1`, `y`
/// in `V2` and `xy` is an edge. Isolated vertices are incomparable to all.
pub fn bipartite_poset(g: &Graph, bp: &Bipartition) -> Result<Poset, OracleError> {
    let mut less_than = BTreeSet::new();
    for (u, v) in g.edges() {
        match (bp.in_v1(u), bp.in_v1(v)) {
            (true, false) => less_than.insert((u, v)),
            (false, true) => less_than.insert((v, u)),
            _ => {
                return Err(OracleError::NotBipartite(
                    g.label(u).to_string(),
                    g.label(v).to_string(),
                ))
            }
        };
    }
    Poset::new(g.labels().to_vec(), less_than)
}

/// A minimum realizer: `d` linear extensions whose intersection is the order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionWitness {
    pub d: usize,
    pub extensions: Vec<Vec<String>>,
}

/// Whether the intersection of `extensions` (label sequences) is exactly `p`.
pub fn realizes(p: &Poset, extensions: &[Vec<String>]) -> bool {
    let n = p.len();
    let mut positions = Vec::with_capacity(extensions.len());
    for ext in extensions {
        if ext.len() != n {
            return false;
        }
        let mut pos = vec![usize::MAX; n];
        for (i, label) in ext.iter().enumerate() {
            match p.elements.iter().position(|e| e == label) {
                Some(x) if pos[x] == usize::MAX => pos[x] = i,
                _ => return false,
            }
        }
        positions.push(pos);
    }
    (0..n)
        .cartesian_product(0..n)
        .filter(|(x, y)| x != y)
        .all(|(x, y)| {
            let all_before = positions.iter().all(|pos| pos[x] < pos[y]);
            all_before == p.less(x, y)
        })
}

/// Dimension of `p`: the fewest linear extensions whose intersection is `p`.
pub fn poset_dimension(p: &Poset, budget: &OracleBudget) -> Result<DimensionWitness, OracleError> {
    let requirements = p.critical_pairs();
    dimension_search(p, budget, requirements)
}

fn dimension_search(
    p: &Poset,
    budget: &OracleBudget,
    requirements: Vec<(usize, usize)>,
) -> Result<DimensionWitness, OracleError> {
    let n = p.len();
    budget.check_size(n, usize::MAX)?;
    if requirements.len() > MASK_BITS {
        return Err(OracleError::TooLarge {
            size: n,
            limit: n - 1,
        });
    }
    let label =
        |ext: &[usize]| -> Vec<String> { ext.iter().map(|&x| p.elements[x].clone()).collect() };
    let mut meter = Meter::new(budget);
    let mut found: Vec<(Mask, Vec<usize>)> = Vec::new();
    linear_extensions(&p.matrix(), &mut meter, |ext| {
        let pos = positions(ext);
        let mask = requirements
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| pos[b] < pos[a])
            .fold(0, |acc, (i, _)| acc | (1 << i));
        found.push((mask, ext.to_vec()));
    })?;
    if found.is_empty() && n > 0 {
        return Err(OracleError::NoLinearExtension);
    }
    if requirements.is_empty() {
        let ext = found.first().map(|(_, e)| label(e)).unwrap_or_default();
        return Ok(DimensionWitness {
            d: 1,
            extensions: vec![ext],
        });
    }
    let need: Mask = if requirements.len() == MASK_BITS {
        Mask::MAX
    } else {
        (1 << requirements.len()) - 1
    };
    let found = maximal_masks(found);
    let masks: Vec<Mask> = found.iter().map(|(m, _)| *m).collect();
    for d in 1..=budget.max_k {
        let mut chosen = Vec::new();
        if cover(need, &masks, d, &mut chosen, &mut meter)? {
            let extensions: Vec<Vec<String>> = chosen.iter().map(|&i| label(&found[i].1)).collect();
            if !realizes(p, &extensions) {
                return Err(OracleError::InvalidPoset(
                    "realizer check failed; relation is not a partial order".into(),
                ));
            }
            return Ok(DimensionWitness {
                d: extensions.len(),
                extensions,
            });
        }
    }
    Err(OracleError::ExceedsMaxK {
        max_k: budget.max_k,
    })
}

/// Both sides of the equivalence between permutational representations and
/// poset dimension, as computed by two separate searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Equivalence {
    pub perm_representation: usize,
    pub dimension: usize,
}

impl Equivalence {
    pub fn holds(&self) -> bool {
        self.perm_representation == self.dimension
    }
}

pub fn check_equivalence(
    g: &Graph,
    bp: &Bipartition,
    budget: &OracleBudget,
) -> Result<Equivalence, OracleError> {
    let perm = min_perm_representation(g, budget)?;
    let dim = poset_dimension(&bipartite_poset(g, bp)?, budget)?;
    Ok(Equivalence {
        perm_representation: perm.k,
        dimension: dim.d,
    })
}
