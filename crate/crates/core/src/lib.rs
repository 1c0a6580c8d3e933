//! Permutational word-representations of bipartite graphs.
//!
//! A graph is represented by a word over its vertices when two vertices are
//! adjacent exactly if their letters alternate. [`relabel`] builds such a
//! word for any bipartite graph as a concatenation of at most `m`
//! permutations (`m` the smaller side), [`words`] checks representations,
//! and [`oracle`] provides exhaustive ground truth for tiny graphs.

pub mod graph;
pub mod io;
pub mod oracle;
pub mod relabel;
pub mod selftest;
pub mod words;

pub use graph::{Bipartition, Graph, GraphError};
pub use relabel::{
    represent_bipartite, represent_graph, OrderingPolicy, RelabelError, Representation,
};
pub use words::{verify, VerificationReport, Word};
