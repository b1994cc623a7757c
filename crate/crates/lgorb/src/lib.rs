//! Exact computation of twisted sector algebras for graded potentials
//! with a finite diagonal symmetry group.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod scalar;
pub mod poly;
pub mod report;
pub mod parse;
pub mod group;
pub mod checks;
pub mod groebner;
pub mod koszul;
pub mod kunneth;
pub mod model;
pub mod surface;
pub mod clifford;
pub mod milnor;
pub mod orbifold;
pub mod twisted_jacobian;

pub use error::{Error, Result};
