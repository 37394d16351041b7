//! Numerical toolkit for β-Laguerre processes and the Markov kernels that
//! intertwine them.
//!
//! The crate is organised bottom-up:
//!
//! * [`partitions`] – integer partitions, the index set for everything else.
//! * [`numerics`] – RNG streams, Gamma/Dirichlet sampling, Gauss–Jacobi
//!   quadrature, secular-equation roots, log-gamma, matrix exponentials and
//!   the [`Scalar`] abstraction that lets the algebraic parts run in exact
//!   rational arithmetic.
//! * [`jack`] – Jack polynomials in the monomial basis, generalised binomial
//!   coefficients and the matrices of `E₀, E₁, D₁, D₂` on the Jack basis.
//! * [`kernels`] – the Dixon–Anderson kernel, the two-parameter kernel on the
//!   nonnegative chamber, their composition and their eigenvalues.
//! * [`semigroup`] – generator matrices, polynomial semigroups, intertwining
//!   residuals and an Euler–Maruyama simulator for the particle systems.
//! * [`special_functions`] – multivariate Laguerre polynomials and truncated
//!   hypergeometric series of Jack type.
//! * [`rmt`] – real and complex random-matrix realisations of the kernels.
//! * [`verify`] – the named checks and their JSON-lines reports.

// Parameter checks are written `!(x > 0.0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod jack;
pub mod kernels;
pub mod numerics;
pub mod parallel;
pub mod partitions;
pub mod rmt;
pub mod semigroup;
pub mod special_functions;
pub mod stats;
pub mod verify;

pub use error::{Error, Result};
pub use numerics::scalar::Scalar;
pub use partitions::Partition;
