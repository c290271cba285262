//! Operator-level verification of Pauli, Dirac and supersymmetric
//! Hamiltonians with an extra spatial dimension.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod clifford;
pub mod dirac5d;
pub mod error;
pub mod fieldexpr;
pub mod fields;
pub mod galilean;
pub mod grid;
pub mod matrix;
pub mod pauli;
pub mod susy;

pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, C64};
