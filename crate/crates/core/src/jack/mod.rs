//! Jack polynomials `P_λ^θ` in the monomial basis and the actions of
//! `E₀ = Σ∂_i`, `E₁ = Σx_i∂_i`, `D₁` and `D₂` on the Jack basis.
//!
//! All algebra is generic over [`Scalar`], so the same code produces `f64`
//! values and exact rationals. The free functions here are `f64`
//! conveniences over a process-wide cache.

pub mod context;
pub mod explicit;
pub mod operators;
pub mod sympoly;

pub use context::{shared_context, shared_exact_context, JackContext};
pub use operators::{GradedMatrix, JackCoeffs, Operator};
pub use sympoly::{monomial_eval, SymPoly};

use crate::error::{Error, Result};
use crate::numerics::special::logpoch;
use crate::numerics::Scalar;
use crate::partitions::Partition;

/// Size limits on the Jack-basis spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_degree: usize,
    pub max_vars: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_degree: 12, max_vars: 8 }
    }
}

impl Caps {
    pub fn check(&self, degree: usize, n_vars: usize) -> Result<()> {
        if degree > self.max_degree || n_vars > self.max_vars {
            return Err(Error::SizeCap { degree, n_vars, max_degree: self.max_degree, max_vars: self.max_vars });
        }
        Ok(())
    }
}

pub fn jack_monomial(lambda: &Partition, n_vars: usize, theta: f64) -> Result<SymPoly<f64>> {
    Ok((*shared_context(n_vars, theta)?.jack(lambda)?).clone())
}

/// `P_λ^θ(x)` with `N = x.len()`.
pub fn jack_eval(lambda: &Partition, x: &[f64], theta: f64) -> Result<f64> {
    Ok(shared_context(x.len(), theta)?.jack(lambda)?.eval(x))
}

/// `P_λ(1_N) = ∏_{i<j} (λ_i − λ_j + θ(j−i))_θ · ∏_k Γ(θ)/Γ(θk)`, in log space.
pub fn jack_at_ones(lambda: &Partition, n_vars: usize, theta: f64) -> Result<f64> {
    if lambda.len() > n_vars {
        return Err(Error::TooManyParts { partition: lambda.clone(), len: lambda.len(), n_vars });
    }
    if !(theta > 0.0) {
        return Err(Error::InvalidParameter(format!("θ must be positive, got {theta}")));
    }
    let mut log = 0.0;
    for i in 0..n_vars {
        for j in i + 1..n_vars {
            let x = lambda.part(i) as f64 - lambda.part(j) as f64 + theta * (j - i) as f64;
            log += logpoch(x, theta)?.ln_abs;
        }
    }
    let (lg_theta, _) = crate::numerics::ln_gamma(theta);
    for k in 1..=n_vars {
        log += lg_theta - crate::numerics::ln_gamma(theta * k as f64).0;
    }
    Ok(log.exp())
}

pub fn gen_binomial(lambda: &Partition, rho: &Partition, n_vars: usize, theta: f64) -> Result<f64> {
    shared_context(n_vars, theta)?.binomial(lambda, rho)
}

pub fn op_matrix(which: Operator, lambda_max: &Partition, n_vars: usize, theta: f64) -> Result<GradedMatrix<f64>> {
    shared_context(n_vars, theta)?.op_matrix(which, lambda_max)
}

/// `F`-valued `P_λ(1_N)` from the monomial expansion; agrees with
/// [`jack_at_ones`] and is exact for rationals.
pub fn at_ones_generic<F: Scalar>(ctx: &JackContext<F>, lambda: &Partition) -> Result<F> {
    ctx.at_ones(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;

    #[test]
    fn evaluation_examples() {
        assert!((jack_eval(&part![1], &[2.0, 3.5], 0.3).unwrap() - 5.5).abs() < 1e-15);
        assert!((jack_eval(&part![1, 1], &[2.0, 3.5], 0.3).unwrap() - 7.0).abs() < 1e-15);
        // m_2(1,1) = 2, m_11(1,1) = 1, coefficient 2θ/(θ+1) = 4/3
        assert!((jack_eval(&part![2], &[1.0, 1.0], 2.0).unwrap() - 10.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn at_ones_examples() {
        assert!((jack_at_ones(&part![1], 4, 0.7).unwrap() - 4.0).abs() < 1e-13);
        assert!((jack_at_ones(&part![1, 1], 2, 1.9).unwrap() - 1.0).abs() < 1e-14);
        assert!((jack_at_ones(&part![2], 2, 1.0).unwrap() - 3.0).abs() < 1e-14);
        assert!((jack_at_ones(&Partition::empty(), 3, 2.5).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn caps_are_enforced() {
        let ctx = JackContext::with_caps(2, 1.0, Caps { max_degree: 3, max_vars: 2 }).unwrap();
        assert!(matches!(ctx.jack(&part![4]), Err(Error::SizeCap { .. })));
        assert!(JackContext::new(9, 1.0).is_err());
    }
}
