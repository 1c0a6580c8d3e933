//! Exhaustive self-check over all small labeled bipartite graphs.

use std::fmt;

use crate::graph::{bipartite_from_fn, Graph};
use crate::io::emit_edge_list;
use crate::oracle::{self, OracleBudget};
use crate::relabel::{
    build_permutations, represent_bipartite_with, OrderingPolicy, PermutationBuilder,
};
use crate::words::is_permutation_concatenation;

#[derive(Debug, Clone)]
pub struct SelftestConfig {
    pub max_m: usize,
    pub max_n: usize,
    /// Graphs with at most this many vertices are also checked against the
    /// oracles.
    pub oracle_max_vertices: usize,
    pub builder: PermutationBuilder,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            max_m: 3,
            max_n: 4,
            oracle_max_vertices: 5,
            builder: build_permutations,
        }
    }
}

/// Every graph on `a1..am, b1..bn` whose edges form a subset of K_{m,n} and
/// which has no isolated vertex, in increasing edge-mask order.
pub fn bipartite_graphs(m: usize, n: usize) -> impl Iterator<Item = Graph> {
    let cells = m * n;
    assert!(cells < 64, "K_{{{m},{n}}} is too large to enumerate");
    (0u64..1 << cells).filter_map(move |mask| {
        let g = bipartite_from_fn(m, n, |i, j| mask >> (i * n + j) & 1 == 1);
        (0..g.len()).all(|v| !g.is_isolated(v)).then_some(g)
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Row {
    pub m: usize,
    pub n: usize,
    pub graphs: usize,
    pub representations: usize,
    pub oracle_checked: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub reason: String,
    pub edge_list: String,
}

#[derive(Debug, Clone, Default)]
pub struct Summary {
    pub rows: Vec<Row>,
    pub failures: Vec<Failure>,
}

impl Summary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:>3} {:>3} {:>8} {:>8} {:>8}",
            "m", "n", "graphs", "words", "oracle"
        )?;
        for r in &self.rows {
            writeln!(
                f,
                "{:>3} {:>3} {:>8} {:>8} {:>8}",
                r.m, r.n, r.graphs, r.representations, r.oracle_checked
            )?;
        }
        writeln!(f, "failures: {}", self.failures.len())?;
        for fail in &self.failures {
            writeln!(f, "--- {}", fail.reason)?;
            write!(f, "{}", fail.edge_list)?;
        }
        Ok(())
    }
}

/// Represents every enumerated graph under every built-in policy and checks
/// the result verifies, is a concatenation of `perm_count` permutations and
/// respects the permutation-count bound. Complete bipartite graphs take the
/// fixed two-permutation word, so for them exactly two permutations are
/// expected. Small graphs are additionally compared with the oracles.
pub fn run(config: &SelftestConfig) -> Summary {
    let mut summary = Summary::default();
    for m in 1..=config.max_m {
        for n in m..=config.max_n {
            let mut row = Row {
                m,
                n,
                ..Row::default()
            };
            for g in bipartite_graphs(m, n) {
                row.graphs += 1;
                let mut fail = |reason: String| {
                    summary.failures.push(Failure {
                        reason,
                        edge_list: emit_edge_list(&g),
                    })
                };
                let mut max_count = 0;
                for policy in OrderingPolicy::builtins() {
                    let rep = match represent_bipartite_with(&g, &policy, config.builder) {
                        Ok(rep) => rep,
                        Err(e) => {
                            fail(format!("{policy}: {e}"));
                            continue;
                        }
                    };
                    row.representations += 1;
                    max_count = max_count.max(rep.perm_count);
                    if is_permutation_concatenation(&rep.word, g.labels()) != Some(rep.perm_count) {
                        fail(format!(
                            "{policy}: word is not {} permutations",
                            rep.perm_count
                        ));
                    }
                    let complete = rep.bounds.k_full == rep.bounds.m;
                    let expected_ok = if complete {
                        rep.perm_count == 2
                    } else {
                        rep.perm_count <= rep.bounds.bound && rep.perm_count <= rep.bounds.m
                    };
                    if !expected_ok {
                        fail(format!(
                            "{policy}: {} permutations against bound {:?}",
                            rep.perm_count, rep.bounds
                        ));
                    }
                }
                if g.len() <= config.oracle_max_vertices && max_count > 0 {
                    row.oracle_checked += 1;
                    if let Err(reason) = oracle_check(&g, max_count) {
                        fail(reason);
                    }
                }
            }
            summary.rows.push(row);
        }
    }
    summary
}

fn oracle_check(g: &Graph, perm_count: usize) -> Result<(), String> {
    let budget = OracleBudget::permutations();
    let bp = g.bipartition().map_err(|e| e.to_string())?;
    let eq = oracle::check_equivalence(g, &bp, &budget).map_err(|e| format!("oracle: {e}"))?;
    if !eq.holds() {
        return Err(format!(
            "permutation number {} differs from poset dimension {}",
            eq.perm_representation, eq.dimension
        ));
    }
    if eq.perm_representation > perm_count {
        return Err(format!(
            "oracle minimum {} exceeds constructed {perm_count}",
            eq.perm_representation
        ));
    }
    Ok(())
}
