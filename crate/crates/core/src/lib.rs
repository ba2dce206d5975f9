//! Graph toolkit built around one dichotomy: a bounded-degree graph that is
//! globally dense but locally sparse either yields a small dense vertex set
//! or a linearly sized induced expander, and the expander can be found with
//! spectral sweep cuts. The crate has the extraction algorithm itself plus
//! the desk-scale instruments used to check it: exact Cheeger constants and
//! vertex expansion on small graphs, minimum separators, clique minors,
//! seeded G(n,p) experiments, and engines for three biased positional games
//! on the edges of K_n.
//!
//! Modules:
//! * [`graph`] — immutable graphs, vertex sets, counting primitives.
//! * [`io`] — the edge-list text format and family files.
//! * [`spectral`] — normalized-Laplacian λ₁, sweep cuts, exact Cheeger.
//! * [`extraction`] — the expander-or-dense-witness algorithm and the
//!   exhaustive existential route at toy scale.
//! * [`sparsity`] — local-sparsity and edge-touch verifiers.
//! * [`expansion`] — exact vertex expansion and minimum separators.
//! * [`minors`] — clique-minor search, exact and greedy.
//! * [`random`] — seeded G(n,p), Monte-Carlo experiments, the giant
//!   component pipeline.
//! * [`games`] — Maker–Breaker, Avoider–Enforcer and Client–Waiter engines
//!   with potential-based strategies.

pub mod expansion;
pub mod extraction;
pub mod games;
pub mod graph;
pub mod io;
pub mod minors;
pub mod random;
pub mod rational;
pub mod sparsity;
pub mod spectral;

pub use graph::{Graph, GraphError, SubsetStats, VertexSet};
pub use rational::{parse_decimal, rat, Rat, RatRepr};
