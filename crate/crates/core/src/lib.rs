//! Exact Kirchhoff-index toolkit for polygonal chains.
//!
//! A polygonal chain is a row of polygons `H_1..H_n`, each of size at least
//! four, where consecutive polygons share one edge. Chains are encoded by the
//! number of subdivision vertices placed on the top edge of every interior
//! square of a ladder (see [`chain`]).
//!
//! Resistance distances are computed by two independent engines:
//!
//! * [`kirchhoff`] grounds one node and inverts the reduced weighted Laplacian
//!   by fraction-free elimination, giving exact rationals;
//! * [`circuit`] collapses a network with series, parallel and Δ-Y
//!   transformations until only the terminals are left.
//!
//! On top of those, [`isomer`] implements S,T-isomer flips and the transmission
//! checks used to compare neighbouring encodings, and [`extremal`] enumerates
//! whole families to locate the chains with minimum and maximum Kirchhoff index.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod chain;
pub mod circuit;
pub mod extremal;
pub mod graph;
pub mod isomer;
pub mod kirchhoff;
pub mod number;

pub use chain::{ChainError, ChainGraph, ChainSpec, Side, ValidatedChainSpec, Vertex};
pub use circuit::{CircuitError, Node, ReductionStep, ReductionTrace, ResistorNetwork, Weight};
pub use extremal::{ExtremalError, ExtremalReport, Verdict};
pub use isomer::{IsomerCut, IsomerError, LemmaReport};
pub use kirchhoff::{KirchhoffError, MetricReport, ResistanceOracle};
pub use number::Rational;
