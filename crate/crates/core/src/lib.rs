//! Star-free regular languages and geodesic languages of groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`automaton`]: complete DFAs, boolean operations, concatenation,
//!   minimization and transition monoids.
//! * [`starfree`]: aperiodicity of the syntactic monoid, powered circuits
//!   in the minimal automaton, and the witnesses both produce.
//! * [`expr`]: star-free expressions and their compilation to DFAs.
//! * [`group`]: presentations, small cancellation checks and exact
//!   word-problem oracles.
//! * [`geodesics`]: Cayley balls, geodesic tests, alternation probes, and
//!   geodesic automata for abelian, virtually abelian and graph-product
//!   groups.
//! * [`catalog`] and [`repro`]: the concrete groups and languages used in
//!   the reproduction report.

pub mod automaton;
pub mod catalog;
pub mod error;
pub mod expr;
pub mod geodesics;
pub mod group;
pub mod repro;
pub mod starfree;

pub use automaton::{Alphabet, BoolOp, Dfa, StateMap, TransitionMonoid};
pub use error::{Error, Result};
pub use expr::StarFreeExpr;

/// A word is a sequence of letter indices into an [`Alphabet`].
pub type Word = Vec<usize>;
