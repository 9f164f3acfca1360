//! Impartial selection mechanisms on vote digraphs.
//!
//! Agents vote for each other along the arcs of a loopless simple digraph;
//! the goal is to elect a vertex of near-maximum in-degree through a rule
//! under which no agent's own votes influence her chance of winning. This
//! crate implements four randomized mechanisms with that property
//! (2-partition, permutation, slicing, multi-winner slicing) plus a
//! non-impartial max-in-degree baseline, and the machinery to measure them:
//!
//! - exact expectation oracles by exhaustive enumeration of permutations or
//!   bipartitions, in rational arithmetic;
//! - a seeded Monte-Carlo estimator of the approximation ratio
//!   `E[deg(winner)] / max-degree`;
//! - a coupling impartiality tester that replays one random tape on two
//!   graphs differing in a single vertex's votes;
//! - empirical checkers for the concentration facts the mechanisms rely on
//!   (balanced prefixes of random permutations, hypergeometric tails, the
//!   Chernoff bound).
//!
//! All randomness flows through [`tape::RandomTape`], which keys every coin
//! by `(seed, purpose, vertex)` so that runs are replayable and couplings
//! are exact.

pub mod analysis;
pub mod edgelist;
pub mod graph;
pub mod mechanisms;
mod rng;
pub mod tape;

pub use graph::{build_digraph, Digraph, GraphError, VertexId};
pub use mechanisms::{MechanismKind, Selection};
pub use tape::RandomTape;
