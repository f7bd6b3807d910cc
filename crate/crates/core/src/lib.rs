//! Deciding when a shift of finite type on sequences or on `d`-ary trees is
//! conjugate to a Hom shift.
//!
//! A shift is given by an [`EdgeTreeAutomaton`]: states, and for each state
//! a multiplicity for every `d`-tuple of child states. Its infinite runs form
//! an edge tree shift. Merging states with equal columns until nothing merges
//! gives the total amalgamation, a conjugacy invariant that determines the
//! conjugacy class. The shift is conjugate to
//!
//! * an undirected Hom shift exactly when the amalgamation is regular:
//!   each row is a constant multiple of a full product `S(p)^d` with
//!   symmetric supports ([`decide_hom`]);
//! * a directed Hom tree-shift exactly when each row of the amalgamation is
//!   a sum of indicators of cubes `R^d` ([`decide_directed_hom`]).
//!
//! On a YES both return a witness graph whose Hom shift is conjugate to the
//! input; on a NO they name the offending state and tuple.
//!
//! ```
//! use homshift::{catalog, decide_hom, total_amalgamation};
//!
//! let a = catalog::sequence_example();
//! let k = total_amalgamation(&a);
//! assert_eq!(k.to_matrix(), Some(vec![vec![3, 3], vec![1, 0]]));
//! let decision = decide_hom(&a).unwrap();
//! assert_eq!(decision.witness().unwrap().graph.edge_count(), 9);
//! ```
//!
//! Forbidden-block presentations are compiled with [`compile`], conjugacy of
//! two automata is decided by [`decide_conjugacy`], and [`io::Document`]
//! reads and writes the JSON interchange format used by the `homshift`
//! binary.

pub mod amalgamation;
pub mod automaton;
pub mod block;
pub mod catalog;
pub mod cli;
pub mod compiler;
pub mod conjugacy;
pub mod error;
pub mod gen;
pub mod graph;
pub mod homdecide;
pub mod io;
pub mod oracle;

pub use amalgamation::{general_amalgamation, out_split, random_split_walk, total_amalgamation};
pub use automaton::EdgeTreeAutomaton;
pub use block::{count_blocks, enumerate_blocks, Block};
pub use compiler::{compile, SftPresentation};
pub use conjugacy::{automaton_isomorphic, decide_conjugacy, graph_isomorphic};
pub use error::{Error, Result};
pub use graph::{DirectedSimpleGraph, HomGraph, UndirectedGraph};
pub use homdecide::{decide_directed_hom, decide_hom, HomDecision};
