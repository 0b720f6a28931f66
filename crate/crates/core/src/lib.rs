//! Combinatorics and linear algebra around toroidal compactifications with
//! simple normal crossing boundary.
//!
//! The crate covers equivariant subdivision of lattice fans into SNC
//! position, homology of the quotient Δ-complexes those fans produce,
//! the weight spectral sequence over formal Hodge data, and the
//! Hodge-stairs vanishing regions with their dimension bookkeeping.

pub mod cli;
pub mod corank_report;
pub mod delta_complex;
pub mod exact_linalg;
pub mod fans;
pub mod json;
pub mod mhs;
pub mod registry;
pub mod stairs;
pub mod weight_ss;
