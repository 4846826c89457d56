//! Numerical and structural toolkit for general Dirichlet series
//! `Σ a_n e^{-λ_n s}`: frequency diagnostics, abscissas of convergence, Riesz
//! summation, Köthe-matrix nuclearity and structure verdicts.

// `!(x > 0.0)` style checks are deliberate: they reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod abscissa;
pub mod cli;
pub mod error;
pub mod frequency;
pub mod koethe;
pub mod numeric;
pub mod primes;
pub mod quad;
pub mod report;
pub mod series;
pub mod spaces;
pub mod summation;
pub mod verdict;

pub use error::{Error, Result};
pub use frequency::Frequency;
pub use series::{DirichletPolynomial, DirichletSeries};
pub use verdict::{ThreeValued, Verdict, Witness};
