//! Multivariate Laguerre polynomials in the Jack basis, the Rodrigues
//! construction, the action of `Λ` on them, `C`-normalised Jack polynomials
//! and truncated hypergeometric series `ₚF_q`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::jack::{shared_context, GradedMatrix, JackCoeffs, JackContext, SymPoly};
use crate::kernels::{c_eigenvalue_exact, lambda_law, KernelParams};
use crate::numerics::special::rising;
use crate::numerics::{expm_nilpotent, Scalar};
use crate::partitions::{partitions_of, partitions_up_to, Partition};
use crate::semigroup::{generator_matrix_in, lambda_matrix_in, GeneratorKind};

/// Laguerre parameter `a` with `θ` and `N`; `a = θ(α+1) − 1` links it to the
/// kernel parameter `α`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LaguerreParams {
    pub a: f64,
    pub theta: f64,
    pub n: usize,
}

impl LaguerreParams {
    pub fn new(a: f64, theta: f64, n: usize) -> Result<Self> {
        if !(theta > 0.0) || n == 0 || !a.is_finite() {
            return Err(Error::InvalidParameter(format!("invalid Laguerre parameters a={a}, θ={theta}, N={n}")));
        }
        Ok(LaguerreParams { a, theta, n })
    }

    pub fn from_alpha(theta: f64, alpha: f64, n: usize) -> Result<Self> {
        Self::new(theta * (alpha + 1.0) - 1.0, theta, n)
    }

    pub fn alpha(&self) -> f64 {
        (self.a + 1.0) / self.theta - 1.0
    }
}

fn factorial<F: Scalar>(n: usize) -> F {
    rising(&F::one(), n)
}

/// Coefficients of `L_λ^a` on `{P_μ : μ ⊆ λ}`:
///
/// ```text
/// (1/|λ|!) (−1)^{|μ|} binom(λ, μ)_θ ∏_i (a+1+θ(N−i))_{λ_i} / (a+1+θ(N−i))_{μ_i} / P_μ(1_N)
/// ```
pub fn laguerre_jack_coeffs_in<F: Scalar>(ctx: &JackContext<F>, lambda: &Partition, a: &F) -> Result<JackCoeffs<F>> {
    let n = ctx.n_vars();
    let basis = ctx.basis(lambda)?;
    let shift = |i: usize| a.clone() + F::one() + ctx.theta().clone() * F::from_count(n - i);
    let mut top = F::one();
    for i in 1..=n {
        top = top * rising(&shift(i), lambda.part(i - 1));
    }
    let norm = F::one() / factorial::<F>(lambda.weight());
    let mut values = Vec::with_capacity(basis.len());
    for mu in &basis {
        let mut bottom = F::one();
        for i in 1..=n {
            bottom = bottom * rising(&shift(i), mu.part(i - 1));
            if bottom.is_zero() {
                return Err(Error::Pole(format!("Pochhammer factor vanishes at i={i}, μ={mu}")));
            }
        }
        let sign = if mu.weight() % 2 == 0 { F::one() } else { -F::one() };
        let v = norm.clone() * sign * ctx.binomial(lambda, mu)? * top.clone() / bottom / ctx.at_ones(mu)?;
        values.push(v);
    }
    Ok(JackCoeffs { basis, values, n_vars: n, theta: ctx.theta().clone() })
}

pub fn laguerre_jack_coeffs(lambda: &Partition, p: &LaguerreParams) -> Result<JackCoeffs<f64>> {
    laguerre_jack_coeffs_in(&*shared_context(p.n, p.theta)?, lambda, &p.a)
}

/// `((−1)^{|λ|}/|λ|!) · exp(−D₁ − (a+1)E₀) P_λ / P_λ(1_N)`; the exponential
/// is a terminating series because the operator lowers degree.
pub fn rodrigues_laguerre_in<F: Scalar>(ctx: &JackContext<F>, lambda: &Partition, a: &F) -> Result<JackCoeffs<F>> {
    // D₁ + (a+1)E₀ is the Laguerre generator at α with θ(α+1) = a+1
    let alpha = (a.clone() + F::one()) / ctx.theta().clone() - F::one();
    let m = generator_matrix_in(ctx, GeneratorKind::Laguerre, &alpha, lambda)?;
    let e = expm_nilpotent(&m.matrix, &-F::one()).expect("degree-lowering operator");
    let k = m.index_of(lambda).expect("λ is in its own basis");
    let sign = if lambda.weight().is_multiple_of(2) { F::one() } else { -F::one() };
    let scale = sign / factorial::<F>(lambda.weight()) / ctx.at_ones(lambda)?;
    let values = e.row(k).iter().map(|v| v.clone() * scale.clone()).collect();
    Ok(JackCoeffs { basis: m.basis, values, n_vars: ctx.n_vars(), theta: ctx.theta().clone() })
}

pub fn rodrigues_laguerre(lambda: &Partition, p: &LaguerreParams) -> Result<JackCoeffs<f64>> {
    rodrigues_laguerre_in(&*shared_context(p.n, p.theta)?, lambda, &p.a)
}

/// Max-abs residual of `(D₁ + (a+1)E₀ − E₁) L_λ^a + |λ| L_λ^a`.
pub fn laguerre_eigen_residual_in<F: Scalar>(ctx: &JackContext<F>, lambda: &Partition, a: &F) -> Result<F> {
    let coeffs = laguerre_jack_coeffs_in(ctx, lambda, a)?;
    let alpha = (a.clone() + F::one()) / ctx.theta().clone() - F::one();
    let m = generator_matrix_in(ctx, GeneratorKind::LaguerreOu, &alpha, lambda)?;
    let image = m.apply(&coeffs.values);
    let w = F::from_count(lambda.weight());
    Ok(max_abs(image.iter().zip(&coeffs.values).map(|(l, v)| l.clone() + w.clone() * v.clone())))
}

fn max_abs<F: Scalar>(it: impl Iterator<Item = F>) -> F {
    it.map(|v| v.abs()).fold(F::zero(), |m, v| if v > m { v } else { m })
}

/// `Λ L_λ^a = c(λ, N, θ; α) L_λ^{a+θ}` with `a = θ(α+1) − 1`: returns the
/// coefficients of `L_λ^{a+θ}` and the factor `c`.
pub fn lambda_on_laguerre(lambda: &Partition, params: &KernelParams) -> Result<(JackCoeffs<f64>, f64)> {
    let ctx = shared_context(params.n, params.theta)?;
    let a_up = params.theta * (params.alpha + 2.0) - 1.0;
    let coeffs = laguerre_jack_coeffs_in(&ctx, lambda, &a_up)?;
    let c = c_eigenvalue_exact(lambda, params.n, &params.theta, &params.alpha)?;
    Ok((coeffs, c))
}

/// Residual of `Λ L_λ^a − c · L_λ^{a+θ}` with `Λ` applied through its
/// diagonal matrix, in any scalar field.
pub fn lambda_on_laguerre_residual_in<F: Scalar>(ctx: &JackContext<F>, lambda: &Partition, alpha: &F) -> Result<F> {
    let theta = ctx.theta().clone();
    let a = theta.clone() * (alpha.clone() + F::one()) - F::one();
    let before = laguerre_jack_coeffs_in(ctx, lambda, &a)?;
    let after = laguerre_jack_coeffs_in(ctx, lambda, &(a + theta))?;
    let m1: GradedMatrix<F> = lambda_matrix_in(ctx, alpha, lambda)?;
    let image = m1.apply(&before.values);
    let c = c_eigenvalue_exact(lambda, ctx.n_vars(), ctx.theta(), alpha)?;
    Ok(max_abs(image.iter().zip(&after.values).map(|(l, r)| l.clone() - c.clone() * r.clone())))
}

/// `(a)_λ = ∏_i (a − θ(i−1))_{λ_i}`.
pub fn generalized_pochhammer<F: Scalar>(a: &F, lambda: &Partition, theta: &F) -> F {
    lambda.parts().iter().enumerate().fold(F::one(), |acc, (i, &k)| acc * rising(&(a.clone() - theta.clone() * F::from_count(i)), k))
}

/// `r_λ` for all `|λ| = n`, `ℓ(λ) ≤ N`, defined by `(p₁)^n = Σ r_λ P_λ`.
pub fn c_normalization_in<F: Scalar>(ctx: &JackContext<F>, n: usize) -> Result<BTreeMap<Partition, F>> {
    let mut power = SymPoly::zero(ctx.n_vars());
    let total: F = factorial(n);
    for mu in partitions_of(n, ctx.n_vars()) {
        let denom = mu.parts().iter().fold(F::one(), |acc, &k| acc * factorial::<F>(k));
        power.add_term(mu, total.clone() / denom)?;
    }
    ctx.to_jack_basis(&power)
}

/// `C_λ = r_λ P_λ` with `Σ_{|λ|=n} C_λ = (x_1 + … + x_N)^n`.
pub fn c_normalized_jack(lambda: &Partition, n_vars: usize, theta: f64) -> Result<f64> {
    let ctx = shared_context(n_vars, theta)?;
    ctx.check_partition(lambda)?;
    Ok(c_normalization_in(&ctx, lambda.weight())?.get(lambda).copied().unwrap_or(0.0))
}

#[derive(Clone, Debug, PartialEq)]
pub struct HypergeometricSpec {
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
    pub theta: f64,
    pub n: usize,
    pub max_degree: usize,
}

/// A truncated series and the magnitude of its last shell `|λ| = max_degree`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub last_shell: f64,
}

impl HypergeometricSpec {
    /// `Π(a_i)_λ / Π(b_j)_λ / |λ|! · r_λ`: the coefficient of `P_λ` in the
    /// series.
    fn term_coefficients(&self) -> Result<Vec<(Partition, f64)>> {
        let ctx = shared_context(self.n, self.theta)?;
        let mut out = Vec::new();
        for d in 0..=self.max_degree {
            let r = c_normalization_in(&ctx, d)?;
            let fact: f64 = factorial(d);
            for (lambda, rl) in r {
                let mut coef = rl / fact;
                for a in &self.upper {
                    coef *= generalized_pochhammer(a, &lambda, &self.theta);
                }
                for b in &self.lower {
                    let p = generalized_pochhammer(b, &lambda, &self.theta);
                    if p == 0.0 {
                        return Err(Error::Pole(format!("({b})_{lambda} vanishes in a lower parameter")));
                    }
                    coef /= p;
                }
                out.push((lambda, coef));
            }
        }
        Ok(out)
    }
}

/// Partial sum of `ₚF_q(a; b; x) = Σ_λ (a)_λ/(b)_λ · C_λ(x)/|λ|!` over
/// `|λ| ≤ max_degree`.
pub fn pfq_truncated(spec: &HypergeometricSpec, x: &[f64]) -> Result<SeriesValue> {
    if x.len() != spec.n {
        return Err(Error::InvalidPoint(format!("expected {} coordinates, got {}", spec.n, x.len())));
    }
    let ctx = shared_context(spec.n, spec.theta)?;
    let mut value = 0.0;
    let mut last_shell = 0.0;
    for (lambda, coef) in spec.term_coefficients()? {
        let term = coef * ctx.jack(&lambda)?.eval(x);
        value += term;
        if lambda.weight() == spec.max_degree {
            last_shell += term;
        }
    }
    Ok(SeriesValue { value, last_shell: last_shell.abs() })
}

/// Outcome of the parameter-shift check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShiftCheck {
    /// `max |c(λ, N, θ; β)/(b)_λ − 1/(b+θ)_λ|` over the truncation.
    pub termwise: f64,
    /// For `N = 1`: relative gap between `Λ` applied to the truncated series
    /// by quadrature and the shifted truncated series, at a few points.
    pub quadrature: Option<f64>,
}

/// Checks `Λ_{θ,β,N} ₚF_q(…; b_j) = ₚF_q(…; b_j + θ)` for
/// `b_j = (β + N)θ`.
pub fn pfq_shift_check(spec: &HypergeometricSpec, j: usize, beta: f64) -> Result<ShiftCheck> {
    let b = *spec.lower.get(j).ok_or_else(|| Error::InvalidParameter(format!("no lower parameter with index {j}")))?;
    let want = (beta + spec.n as f64) * spec.theta;
    if (b - want).abs() > 1e-12 * want.abs().max(1.0) {
        return Err(Error::InvalidParameter(format!("lower parameter {b} must equal (β+N)θ = {want}")));
    }
    let params = KernelParams::new(spec.theta, beta, spec.n)?;
    let mut termwise: f64 = 0.0;
    for lambda in partitions_up_to(spec.max_degree, spec.n) {
        let c = c_eigenvalue_exact(&lambda, spec.n, &spec.theta, &beta)?;
        let lhs = c / generalized_pochhammer(&b, &lambda, &spec.theta);
        let rhs = 1.0 / generalized_pochhammer(&(b + spec.theta), &lambda, &spec.theta);
        termwise = termwise.max((lhs - rhs).abs());
    }
    let quadrature = if spec.n == 1 && spec.theta >= 0.5 {
        let mut shifted = spec.clone();
        shifted.lower[j] += spec.theta;
        let before = spec.term_coefficients()?;
        let series = |y: f64| before.iter().map(|(l, c)| c * y.powi(l.weight() as i32)).sum::<f64>();
        let mut worst: f64 = 0.0;
        for &x in &[0.3, 0.8, 1.5] {
            let law = lambda_law(&[x], &params)?;
            let lhs = law.integrate(40, 1e-10, &|y| series(y[0]))?.value;
            let rhs = pfq_truncated(&shifted, &[x])?.value;
            worst = worst.max((lhs - rhs).abs() / rhs.abs().max(1e-300));
        }
        Some(worst)
    } else {
        None
    };
    Ok(ShiftCheck { termwise, quadrature })
}
