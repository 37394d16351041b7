//! Shared numerical kernel.

pub mod expm;
pub mod matrix;
pub mod quadrature;
pub mod rng;
pub mod scalar;
pub mod secular;
pub mod special;

pub use expm::{expm, expm_nilpotent, graded_expm};
pub use matrix::DenseMatrix;
pub use quadrature::{gauss_jacobi, gauss_legendre, JacobiRule};
pub use rng::{derive_seed, RngStream};
pub use scalar::{Rational, Scalar};
pub use secular::secular_roots;
pub use special::{ln_gamma, logpoch, rising};
