//! Simple undirected graphs over string labels, bipartition detection and
//! generators for the graph families used throughout the crate.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),
    #[error("edge endpoint `{0}` is not a declared vertex")]
    UnknownEndpoint(String),
    #[error("self-loop on `{0}`")]
    SelfLoop(String),
    #[error("graph has no vertices")]
    Empty,
    #[error("graph is not bipartite: odd cycle {}", .cycle.join(" - "))]
    NotBipartite { cycle: Vec<String> },
    #[error("graph has no edges; every vertex is isolated")]
    AllIsolated,
    #[error("both sides of a complete bipartite graph need at least one vertex")]
    ZeroSide,
    #[error("crown graphs need n >= 2, got {0}")]
    TooSmall(usize),
    #[error("edge probability {0} is outside [0, 1]")]
    BadProbability(f64),
}

/// A simple undirected graph. Vertices are addressed by dense indices in
/// declaration order; the string label is the vertex identity.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    /// Builds a graph from distinct labels and label pairs. Repeated edges
    /// collapse into one.
    pub fn build<S, P>(labels: &[S], edge_pairs: &[(P, P)]) -> Result<Self, GraphError>
    where
        S: AsRef<str>,
        P: AsRef<str>,
    {
        let mut g = Graph::empty();
        for label in labels {
            g.add_vertex(label.as_ref())?;
        }
        for (a, b) in edge_pairs {
            let u = g
                .index_of(a.as_ref())
                .ok_or_else(|| GraphError::UnknownEndpoint(a.as_ref().to_string()))?;
            let v = g
                .index_of(b.as_ref())
                .ok_or_else(|| GraphError::UnknownEndpoint(b.as_ref().to_string()))?;
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn empty() -> Self {
        Graph {
            labels: Vec::new(),
            index: HashMap::new(),
            adj: Vec::new(),
        }
    }

    /// Appends a vertex and returns its index.
    pub fn add_vertex(&mut self, label: &str) -> Result<usize, GraphError> {
        if self.index.contains_key(label) {
            return Err(GraphError::DuplicateLabel(label.to_string()));
        }
        let idx = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), idx);
        self.adj.push(BTreeSet::new());
        Ok(idx)
    }

    /// Returns the index of `label`, adding it if absent.
    pub fn ensure_vertex(&mut self, label: &str) -> usize {
        match self.index.get(label) {
            Some(&i) => i,
            None => self.add_vertex(label).expect("label checked absent"),
        }
    }

    /// Adds the edge `u`–`v`. Adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        assert!(
            u < self.len() && v < self.len(),
            "vertex index out of range"
        );
        if u == v {
            return Err(GraphError::SelfLoop(self.labels[u].clone()));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// N(v), in ascending index order.
    pub fn neighborhood(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.adj[v].is_empty()
    }

    /// Induced subgraph on `keep`, preserving the relative vertex order.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut sorted = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut g = Graph::empty();
        for &v in &sorted {
            g.add_vertex(&self.labels[v]).expect("labels are unique");
        }
        for (u, v) in self.edges() {
            if let (Some(a), Some(b)) = (g.index_of(&self.labels[u]), g.index_of(&self.labels[v])) {
                g.add_edge(a, b).expect("no self loops in source");
            }
        }
        g
    }

    /// Splits off isolated vertices. The core is the induced subgraph on the
    /// remaining vertices; isolated labels keep their original order.
    pub fn split_isolated(&self) -> Result<(Graph, Vec<String>), GraphError> {
        if self.edge_count() == 0 {
            return Err(GraphError::AllIsolated);
        }
        let (isolated, core): (Vec<usize>, Vec<usize>) =
            (0..self.len()).partition(|&v| self.is_isolated(v));
        let isolated = isolated
            .into_iter()
            .map(|v| self.labels[v].clone())
            .collect();
        Ok((self.induced(&core), isolated))
    }

    /// Two-colors the graph by breadth-first search.
    ///
    /// Components are visited in ascending order of their smallest vertex
    /// index, and that vertex is always put on the first side. Isolated
    /// vertices are placed afterwards on the larger side, and the sides are
    /// finally oriented so that `m <= n`; on a tie the side holding the
    /// lowest-indexed vertex becomes `V1`.
    pub fn bipartition(&self) -> Result<Bipartition, GraphError> {
        if self.is_empty() {
            return Err(GraphError::Empty);
        }
        let n = self.len();
        let mut color: Vec<Option<bool>> = vec![None; n];
        let mut parent: Vec<usize> = (0..n).collect();
        let mut depth = vec![0usize; n];
        let mut queue = VecDeque::new();

        for root in 0..n {
            if color[root].is_some() || self.is_isolated(root) {
                continue;
            }
            color[root] = Some(true);
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &v in &self.adj[u] {
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            parent[v] = u;
                            depth[v] = depth[u] + 1;
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => {
                            return Err(GraphError::NotBipartite {
                                cycle: self.odd_cycle(u, v, &parent, &depth),
                            });
                        }
                        Some(_) => {}
                    }
                }
            }
        }

        let mut first: Vec<usize> = (0..n).filter(|&v| color[v] == Some(true)).collect();
        let mut second: Vec<usize> = (0..n).filter(|&v| color[v] == Some(false)).collect();
        let first_wins_tie = first.first().copied().unwrap_or(usize::MAX)
            < second.first().copied().unwrap_or(usize::MAX);
        if first.len() > second.len() || (first.len() == second.len() && !first_wins_tie) {
            std::mem::swap(&mut first, &mut second);
        }
        // `second` is now the larger (or tie-losing) side; isolated vertices join it.
        second.extend((0..n).filter(|&v| color[v].is_none()));
        second.sort_unstable();
        Ok(Bipartition {
            v1: first,
            v2: second,
        })
    }

    fn odd_cycle(&self, u: usize, v: usize, parent: &[usize], depth: &[usize]) -> Vec<String> {
        let (mut a, mut b) = (u, v);
        let mut left = vec![a];
        let mut right = vec![b];
        while depth[a] > depth[b] {
            a = parent[a];
            left.push(a);
        }
        while depth[b] > depth[a] {
            b = parent[b];
            right.push(b);
        }
        while a != b {
            a = parent[a];
            b = parent[b];
            left.push(a);
            right.push(b);
        }
        right.pop();
        left.extend(right.into_iter().rev());
        left.into_iter().map(|x| self.labels[x].clone()).collect()
    }

    /// Whether the graph is complete bipartite with respect to `bp`.
    pub fn is_complete_bipartite(&self, bp: &Bipartition) -> bool {
        bp.v1.iter().all(|&a| self.degree(a) == bp.n())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .map(|(u, v)| format!("{}-{}", self.labels[u], self.labels[v]))
            .collect();
        f.debug_struct("Graph")
            .field("vertices", &self.labels)
            .field("edges", &edges)
            .finish()
    }
}

/// The two sides `{V1, V2}` of a bipartite graph, `m = |V1| <= |V2| = n`.
/// Both sides hold vertex indices in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub v1: Vec<usize>,
    pub v2: Vec<usize>,
}

impl Bipartition {
    pub fn m(&self) -> usize {
        self.v1.len()
    }

    pub fn n(&self) -> usize {
        self.v2.len()
    }

    pub fn in_v1(&self, v: usize) -> bool {
        self.v1.binary_search(&v).is_ok()
    }
}

fn side_labels(prefix: char, count: usize) -> impl Iterator<Item = String> {
    (1..=count).map(move |i| format!("{prefix}{i}"))
}

/// K_{m,n} on vertices `a1..am, b1..bn`.
pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph, GraphError> {
    if m == 0 || n == 0 {
        return Err(GraphError::ZeroSide);
    }
    Ok(bipartite_from_fn(m, n, |_, _| true))
}

/// The crown graph H_{n,n}: K_{n,n} without the matching `ai`–`bi`.
pub fn crown(n: usize) -> Result<Graph, GraphError> {
    if n < 2 {
        return Err(GraphError::TooSmall(n));
    }
    Ok(bipartite_from_fn(n, n, |i, j| i != j))
}

/// Random bipartite graph on `a1..am, b1..bn`; every cross pair becomes an
/// edge with probability `p`. Vertices left without edges are kept.
pub fn random_bipartite(m: usize, n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::BadProbability(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(bipartite_from_fn(m, n, |_, _| rng.gen_bool(p)))
}

/// Bipartite graph on `a1..am, b1..bn` with `ai`–`bj` present iff
/// `edge(i, j)` (zero-based). Pairs are queried in row-major order.
pub fn bipartite_from_fn(m: usize, n: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Graph {
    let mut g = Graph::empty();
    for label in side_labels('a', m).chain(side_labels('b', n)) {
        g.add_vertex(&label).expect("generated labels are unique");
    }
    for i in 0..m {
        for j in 0..n {
            if edge(i, j) {
                g.add_edge(i, m + j).expect("cross edges are never loops");
            }
        }
    }
    g
}
