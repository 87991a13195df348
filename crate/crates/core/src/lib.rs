//! Exact positivity toolkit for polynomial rings ordered by a finitely
//! generated cone, with the facet forms of a compact polytope as the main
//! case.
//!
//! The crate decides and certifies cone membership by exact linear
//! programming, computes order units and order-ideal membership, analyses
//! face ideals of polytopes, recognises products of simplices, and runs
//! order-unit cancellation experiments.

pub mod combinatorics;
pub mod cone;
pub mod error;
pub mod experiment;
pub mod fixtures;
pub mod gallery;
pub mod ideal;
pub mod linalg;
pub mod lp;
pub mod par;
pub mod poly;
pub mod polytope;
pub mod rational;
pub mod structure;
pub mod toy;

pub use error::{Error, Result};
pub use rational::Rational;
