//! Domination-type invariants and 2-packings of Kneser graphs K(n,r).
//!
//! - [`kneser`]: vertices as r-subsets, adjacency, occurrence statistics.
//! - [`certify`]: certificate checks for k-domination, k-tuple (total)
//!   domination and 2-packings.
//! - [`construct`]: explicit families, lifts and packing normalization.
//! - [`solve`]: exact branch-and-bound solvers and brute-force oracles.
//! - [`cli`]: document format, table reproduction and the command-line front end.

pub mod certify;
pub mod cli;
pub mod construct;
pub mod error;
pub mod kneser;
pub mod solve;

pub use certify::{InvariantKind, VerificationReport, Violation};
pub use error::{Error, Result};
pub use kneser::{ElementSet, KneserParams, Vertex, VertexFamily};
