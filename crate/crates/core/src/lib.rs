//! Greedy MAX-CUT heuristics built on signed relation trees.
//!
//! A cut of a weighted graph is described by a spanning tree of `K_n` whose
//! edges carry `-1` (endpoints on opposite sides) or `+1` (same side).
//! Prim-class heuristics ([`prim`]) grow the tree one vertex at a time;
//! Kruskal-class heuristics ([`kruskal`]) pick one edge at a time and
//! contract it. [`stabilizer`] recasts two of them as Pauli-operator
//! bookkeeping and cross-checks the results, [`oracle`] gives exact optima for
//! small graphs and [`bench`] runs instance sweeps.
//!
//! ```
//! use relcut::{Graph, kruskal, oracle};
//!
//! let g = Graph::from_edges(3, [(0, 1, 3.0), (0, 2, 2.0), (1, 2, 1.0)]).unwrap();
//! let cut = kruskal::sec(&g).unwrap();
//! assert_eq!(cut.weight, 5.0);
//! assert_eq!(oracle::brute_force(&g).unwrap().optimum, 5.0);
//! ```

pub mod algorithm;
pub mod bench;
mod contraction;
pub mod edgelist;
pub mod error;
pub mod generate;
pub mod graph;
pub mod kruskal;
pub mod oracle;
pub mod par;
pub mod prim;
pub mod rng;
pub mod stabilizer;
pub mod tree;

pub use algorithm::{run, Algorithm, CutResult, Init, RunOptions};
pub use edgelist::{emit_edge_list, parse_edge_list};
pub use error::{Error, Result};
pub use generate::{gen_instance, Family, InstanceSpec};
pub use graph::{cut_weight, total_weight, Graph, SpinAssignment};
pub use par::Exec;
pub use tree::{scan, tree_cut_weight, RelationTree};
