//! Exact Lin-Lu-Yau Ollivier-Ricci curvature engine for graphs of bounded degree.
//!
//! Everything in this crate is computed in exact rational arithmetic: the
//! transportation distance between the lazy random-walk measures of an edge's
//! endpoints is solved as an integer min-cost flow with certified primal and
//! dual optima, so curvature values and flatness decisions are exact
//! equalities, never tolerance checks.
//!
//! The crate is `no_std` (alloc required). IO, file formats beyond plain
//! string codecs, reporting and parallel drivers live in the companion CLI
//! crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod canon;
pub mod catalog;
pub mod codec;
pub mod curvature;
pub mod cycles;
pub mod graph;
pub mod rational;
pub mod search;
pub mod structure;
pub mod transport;

pub use graph::{EdgeRef, Graph, GraphError};
pub use rational::Rational;
