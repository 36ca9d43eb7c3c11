//! Exact computations around `V_L⁺` module categories: lattices from codes,
//! theta and eta series, the F₂ fusion space with its quadratic form, and
//! orthogonal-group orbit counts.

pub mod cli;
pub mod constructions;
pub mod error;
pub mod f2algebra;
pub mod lattice;
pub mod matrix;
pub mod modcat;
pub mod permgroup;
pub mod qseries;
pub mod reports;

pub use error::{Error, Result};
