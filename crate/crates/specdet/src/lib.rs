//! Zeta-regularized spectral determinants of operators whose eigenvalues
//! lie on parametric curves in the complex plane, with an explicit,
//! user-chosen branch cut of the logarithm.
//!
//! The crate answers three questions for a given eigenvalue distribution:
//! does the spectral zeta function exist, does the determinant
//! `exp(-zeta_A'(0))` exist, and how does its value change as the branch
//! cut moves. Closed forms are assembled per eigenvalue family and
//! validated against brute-force eigenvalue sums in the [`oracle`] module.

pub mod branchlog;
pub mod cli;
pub mod determinant;
pub mod oracle;
pub mod spectrum;
pub mod zetafuncs;

mod error;

pub use error::{Error, Result};
