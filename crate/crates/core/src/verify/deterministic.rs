//! Checks decided by exact algebra, linear algebra or quadrature.

use num_traits::{One, Zero};

use super::{exact, CheckParams, Measure, Outcome};
use crate::error::{Error, Result};
use crate::jack::explicit::{schur_bialternant, Poly};
use crate::jack::{jack_at_ones, shared_context, shared_exact_context, Operator};
use crate::kernels::{
    c_eigenvalue, c_eigenvalue_exact, dixon_anderson_law, eigen_check_with, lambda_law, ChamberPoint, KernelKind, KernelParams,
    EIGEN_QUADRATURE_NODES,
};
use crate::numerics::scalar::Rational;
use crate::numerics::{RngStream, Scalar};
use crate::partitions::{partitions_up_to, Partition};
use crate::semigroup::{
    check_generator_intertwine, check_semigroup_intertwine, generator_intertwine_in, laguerre_semigroup_intertwine_in, semigroup_matrix,
    GeneratorKind, GeneratorSpec, SemigroupResiduals,
};
use crate::special_functions::{
    c_normalization_in, generalized_pochhammer, laguerre_eigen_residual_in, laguerre_jack_coeffs_in, lambda_on_laguerre_residual_in,
    pfq_shift_check, rodrigues_laguerre_in, HypergeometricSpec,
};

/// Residual tolerance for identities evaluated in floating point.
pub const ALGEBRA_TOL: f64 = 1e-10;
/// Relative tolerance of the Schur specialisation.
pub const SCHUR_TOL: f64 = 1e-12;

/// Quadrature tolerance: tighter in one dimension than on the tensor grid.
pub fn quadrature_tolerance(n: usize) -> f64 {
    if n == 1 {
        1e-8
    } else {
        1e-6
    }
}

fn relative(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        (a - b).abs() / b.abs()
    }
}

const SCHUR_POINTS: [[i64; 4]; 3] = [[2, 3, 5, 7], [-1, 1, 4, 6], [1, 2, 3, 4]];

pub fn jack_schur(p: &CheckParams) -> Result<Vec<Outcome>> {
    let (n, lambda) = (p.n()?, p.lambda()?);
    let exact_p = shared_exact_context(n, &Rational::one())?.jack(&lambda)?;
    let float_p = shared_context(n, 1.0)?.jack(&lambda)?;
    let mut all_exact = true;
    let mut worst: f64 = 0.0;
    let mut first = None;
    for pt in SCHUR_POINTS {
        let pt = &pt[..n];
        let s = schur_bialternant(&lambda, pt)?;
        let xr: Vec<Rational> = pt.iter().map(|&v| Rational::from_int(v)).collect();
        all_exact &= exact_p.eval(&xr) == s;
        let xf: Vec<f64> = pt.iter().map(|&v| v as f64).collect();
        let (v, sf) = (float_p.eval(&xf), s.to_f64_lossy());
        worst = worst.max(relative(v, sf));
        first.get_or_insert((v, sf));
    }
    let (lhs, rhs) = first.expect("at least one point");
    Ok(vec![Measure::sides(lhs, rhs, worst, SCHUR_TOL).with_exact(all_exact).into()])
}

pub fn jack_operators(p: &CheckParams) -> Result<Vec<Outcome>> {
    let (theta, n, lambda) = (p.theta()?, p.n()?, p.lambda()?);
    let ctx = shared_context(n, theta)?;
    let poly = Poly::from_sympoly(&*ctx.jack(&lambda)?);
    let mut worst: f64 = 0.0;
    for op in Operator::ALL {
        let via_matrix = ctx.apply_operator(op, &lambda)?;
        let direct = poly.apply(op, &theta)?.to_sympoly()?;
        worst = worst.max(via_matrix.max_abs_diff(&direct) / direct.max_abs_coeff().max(1.0));
    }
    Ok(vec![Measure::residual(worst, ALGEBRA_TOL).into()])
}

pub fn jack_ones(p: &CheckParams) -> Result<Vec<Outcome>> {
    let (theta, n, lambda) = (p.theta()?, p.n()?, p.lambda()?);
    let product = jack_at_ones(&lambda, n, theta)?;
    let expansion = shared_context(n, theta)?.at_ones(&lambda)?;
    Ok(vec![Measure::sides(product, expansion, relative(product, expansion), ALGEBRA_TOL).into()])
}

fn kernel_kind(p: &CheckParams) -> Result<KernelKind> {
    p.kind()?.parse()
}

pub fn density_normalization(p: &CheckParams) -> Result<Vec<Outcome>> {
    let (theta, n, x) = (p.theta()?, p.n()?, p.x()?);
    let kind = kernel_kind(p)?;
    let params = KernelParams::new(theta, p.alpha.unwrap_or(0.0), n)?;
    params.require_density_range()?;
    let law = match kind {
        KernelKind::DixonAnderson => {
            ChamberPoint::signed(x.clone())?;
            if x.len() != n + 1 {
                return Err(Error::InvalidPoint(format!("expected {} coordinates, got {}", n + 1, x.len())));
            }
            dixon_anderson_law(&x, theta)?
        }
        KernelKind::Lambda => {
            ChamberPoint::nonnegative(x.clone())?;
            if x.len() != n {
                return Err(Error::InvalidPoint(format!("expected {n} coordinates, got {}", x.len())));
            }
            lambda_law(&x, &params)?
        }
    };
    let tol = quadrature_tolerance(n);
    let mass = law.integrate(EIGEN_QUADRATURE_NODES, tol, &|_| 1.0)?.value;
    Ok(vec![Measure::sides(mass, 1.0, (mass - 1.0).abs(), tol).into()])
}

fn eigen_quadrature(p: &CheckParams, which: KernelKind, alpha: f64, signed: bool) -> Result<Vec<Outcome>> {
    let (theta, n, lambda, x) = (p.theta()?, p.n()?, p.lambda()?, p.x()?);
    let params = KernelParams::new(theta, alpha, n)?;
    let point = if signed { ChamberPoint::signed(x)? } else { ChamberPoint::nonnegative(x)? };
    let tol = quadrature_tolerance(n);
    let check = eigen_check_with(&lambda, &point, &params, which, EIGEN_QUADRATURE_NODES, tol)?;
    Ok(vec![Measure::sides(check.lhs, check.rhs, check.relative_error(), tol).into()])
}

pub fn lemma_2_1(p: &CheckParams) -> Result<Vec<Outcome>> {
    eigen_quadrature(p, KernelKind::DixonAnderson, 0.0, true)
}

pub fn thm_2_2_quadrature(p: &CheckParams) -> Result<Vec<Outcome>> {
    eigen_quadrature(p, KernelKind::Lambda, p.alpha()?, false)
}

/// `c(λ + m·1_N; α) = c(m·1_N; α) · c(λ; α + m/θ)`.
pub fn c_shift(p: &CheckParams) -> Result<Vec<Outcome>> {
    let (theta, alpha, n, lambda) = (p.theta()?, p.alpha()?, p.n()?, p.lambda()?);
    let m = p.shift.ok_or_else(|| Error::InvalidParameter("grid point has no `shift`".into()))?;
    let shifted = lambda.add_columns(m, n);
    let rect = Partition::rectangle(m, n);
    let lhs = c_eigenvalue(&shifted, n, theta, alpha)?;
    let rhs = c_eigenvalue(&rect, n, theta, alpha)? * c_eigenvalue(&lambda, n, theta, alpha + m as f64 / theta)?;
    let (tr, ar) = (exact(theta)?, exact(alpha)?);
    let ar_shift = ar.clone() + Rational::from_count(m) / tr.clone();
    let exact_holds = c_eigenvalue_exact(&shifted, n, &tr, &ar)?
        == c_eigenvalue_exact(&rect, n, &tr, &ar)? * c_eigenvalue_exact(&lambda, n, &tr, &ar_shift)?;
    Ok(vec![Measure::sides(lhs, rhs, relative(lhs, rhs), ALGEBRA_TOL).with_exact(exact_holds).into()])
}

pub fn gen_intertwine(p: &CheckParams) -> Result<Vec<Outcome>> {
    let (theta, alpha, n, lmax) = (p.theta()?, p.alpha()?, p.n()?, p.lmax()?);
    let float = check_generator_intertwine(&KernelParams::new(theta, alpha, n)?, &lmax)?;
    let ctx = shared_exact_context(n, &exact(theta)?)?;
    let exact_holds = generator_intertwine_in(&ctx, &exact(alpha)?, &lmax)?.iter().all(|m| m.is_exactly_zero());
    Ok(vec![Measure::residual(float.max(), ALGEBRA_TOL).with_exact(exact_holds).into()])
}

/// Float residual from `pick` and the exact verdict for residual `index`
/// of the Laguerre semigroup intertwinings.
fn semigroup_check(p: &CheckParams, pick: fn(&SemigroupResiduals) -> f64, index: usize) -> Result<Vec<Outcome>> {
    let (theta, alpha, n, lmax, t) = (p.theta()?, p.alpha()?, p.n()?, p.lmax()?, p.t()?);
    let float = check_semigroup_intertwine(&KernelParams::new(theta, alpha, n)?, &lmax, t)?;
    let tr = exact(theta)?;
    let ctx = shared_exact_context(n, &tr)?;
    let ctx_up = shared_exact_context(n + 1, &tr)?;
    let residuals = laguerre_semigroup_intertwine_in(&ctx, &ctx_up, &exact(alpha)?, &lmax, &exact(t)?)?;
    Ok(vec![Measure::residual(pick(&float), ALGEBRA_TOL).with_exact(residuals[index].is_exactly_zero()).into()])
}

pub fn thm_1_7_matrix(p: &CheckParams) -> Result<Vec<Outcome>> {
    semigroup_check(p, |r| r.shifted, 0)
}

pub fn dixon_anderson_shift(p: &CheckParams) -> Result<Vec<Outcome>> {
    semigroup_check(p, |r| r.shifted_dixon_anderson, 1)
}

pub fn thm_1_6_composed(p: &CheckParams) -> Result<Vec<Outcome>> {
    semigroup_check(p, |r| r.composed, 2)
}

/// OU semigroup intertwinings, plus `e^{tM} L^a_μ = e^{−|μ|t} L^a_μ` for
/// every `μ ⊆ λ_max` with `a = θ(α+1) − 1`.
pub fn app_b_ou(p: &CheckParams) -> Result<Vec<Outcome>> {
    let (theta, alpha, n, lmax, t) = (p.theta()?, p.alpha()?, p.n()?, p.lmax()?, p.t()?);
    let res = check_semigroup_intertwine(&KernelParams::new(theta, alpha, n)?, &lmax, t)?;
    let intertwine = res.shifted_ou.max(res.shifted_dixon_anderson_ou).max(res.composed_ou);

    let spec = GeneratorSpec::new(GeneratorKind::LaguerreOu, theta, alpha, n)?;
    let e = semigroup_matrix(&spec, &lmax, t)?;
    let ctx = shared_context(n, theta)?;
    let a = theta * (alpha + 1.0) - 1.0;
    let mut decay: f64 = 0.0;
    for mu in &e.basis {
        let l = laguerre_jack_coeffs_in(&ctx, mu, &a)?;
        let v: Vec<f64> = e.basis.iter().map(|nu| l.get(nu)).collect();
        let moved = e.apply(&v);
        let factor = (-(mu.weight() as f64) * t).exp();
        let scale = v.iter().fold(1.0f64, |m, c| m.max(c.abs()));
        for (w, c) in moved.iter().zip(&v) {
            decay = decay.max((w - factor * c).abs() / scale);
        }
    }
    Ok(vec![
        Outcome::from(Measure::residual(intertwine, ALGEBRA_TOL)).variant("intertwining"),
        Outcome::from(Measure::residual(decay, ALGEBRA_TOL)).variant("laguerre-decay"),
    ])
}

fn laguerre_a<F: Scalar>(theta: &F, alpha: &F) -> F {
    theta.clone() * (alpha.clone() + F::one()) - F::one()
}

/// Float residual of an identity on Laguerre coefficients, scaled by the
/// largest coefficient of `L^a_λ`, with the verdict of the same residual in
/// exact arithmetic.
fn laguerre_check(
    p: &CheckParams,
    float_residual: impl Fn(&crate::jack::JackContext<f64>, &Partition, f64, f64) -> Result<f64>,
    exact_zero: impl Fn(&crate::jack::JackContext<Rational>, &Partition, &Rational, &Rational) -> Result<bool>,
) -> Result<Vec<Outcome>> {
    let (theta, alpha, n, lambda) = (p.theta()?, p.alpha()?, p.n()?, p.lambda()?);
    let ctx = shared_context(n, theta)?;
    let residual = float_residual(&ctx, &lambda, theta, alpha)?;
    let (tr, ar) = (exact(theta)?, exact(alpha)?);
    let exact_holds = exact_zero(&*shared_exact_context(n, &tr)?, &lambda, &tr, &ar)?;
    Ok(vec![Measure::residual(residual, ALGEBRA_TOL).with_exact(exact_holds).into()])
}

fn coeff_scale(c: &crate::jack::JackCoeffs<f64>) -> f64 {
    c.values.iter().fold(1.0f64, |m, v| m.max(v.abs()))
}

pub fn laguerre_eigen(p: &CheckParams) -> Result<Vec<Outcome>> {
    laguerre_check(
        p,
        |ctx, l, th, al| {
            let a = laguerre_a(&th, &al);
            Ok(laguerre_eigen_residual_in(ctx, l, &a)?.abs() / coeff_scale(&laguerre_jack_coeffs_in(ctx, l, &a)?))
        },
        |ctx, l, th, al| Ok(laguerre_eigen_residual_in(ctx, l, &laguerre_a(th, al))?.is_zero()),
    )
}

pub fn rodrigues(p: &CheckParams) -> Result<Vec<Outcome>> {
    laguerre_check(
        p,
        |ctx, l, th, al| {
            let a = laguerre_a(&th, &al);
            let direct = laguerre_jack_coeffs_in(ctx, l, &a)?;
            Ok(rodrigues_laguerre_in(ctx, l, &a)?.max_abs_diff(&direct) / coeff_scale(&direct))
        },
        |ctx, l, th, al| {
            let a = laguerre_a(th, al);
            Ok(rodrigues_laguerre_in(ctx, l, &a)?.values == laguerre_jack_coeffs_in(ctx, l, &a)?.values)
        },
    )
}

pub fn thm_a2(p: &CheckParams) -> Result<Vec<Outcome>> {
    laguerre_check(
        p,
        |ctx, l, th, al| {
            let scale = coeff_scale(&laguerre_jack_coeffs_in(ctx, l, &laguerre_a(&th, &al))?);
            Ok(lambda_on_laguerre_residual_in(ctx, l, &al)?.abs() / scale)
        },
        |ctx, l, _, al| Ok(lambda_on_laguerre_residual_in(ctx, l, al)?.is_zero()),
    )
}

/// `Σ_{|λ|=d} C_λ(x) = (Σx)^d` at random points of `[0.1, 2]^N`.
pub fn c_normalization(p: &CheckParams) -> Result<Vec<Outcome>> {
    let (theta, n, draws, seed) = (p.theta()?, p.n()?, p.draws()?, p.seed()?);
    let d = p.degree.ok_or_else(|| Error::InvalidParameter("grid point has no `degree`".into()))?;
    let ctx = shared_context(n, theta)?;
    let r = c_normalization_in(&ctx, d)?;
    let mut rng = RngStream::new(seed, 0);
    let mut worst: f64 = 0.0;
    for _ in 0..draws {
        let x: Vec<f64> = (0..n).map(|_| 0.1 + 1.9 * rng.uniform()).collect();
        let mut sum = 0.0;
        for (lambda, rl) in &r {
            sum += rl * ctx.jack(lambda)?.eval(&x);
        }
        let power = x.iter().sum::<f64>().powi(d as i32);
        worst = worst.max(relative(sum, power));
    }
    Ok(vec![Measure::residual(worst, ALGEBRA_TOL).into()])
}

/// Termwise `c(λ, N, θ; β)/(b)_λ = 1/(b+θ)_λ` for `b = (β+N)θ`, in floating
/// point and exactly, plus the series identity by quadrature at `N = 1`.
pub fn pfq_shift(p: &CheckParams) -> Result<Vec<Outcome>> {
    let (theta, beta, n) = (p.theta()?, p.alpha()?, p.n()?);
    let max_degree = p.degree.unwrap_or(6);
    let b = (beta + n as f64) * theta;
    let spec = HypergeometricSpec { upper: vec![0.6], lower: vec![b, 1.3], theta, n, max_degree };
    let check = pfq_shift_check(&spec, 0, beta)?;

    let (tr, betar) = (exact(theta)?, exact(beta)?);
    let br = (betar.clone() + Rational::from_count(n)) * tr.clone();
    let mut exact_holds = true;
    for lambda in partitions_up_to(max_degree, n) {
        let c = c_eigenvalue_exact(&lambda, n, &tr, &betar)?;
        let lhs = c / generalized_pochhammer(&br, &lambda, &tr);
        let rhs = Rational::one() / generalized_pochhammer(&(br.clone() + tr.clone()), &lambda, &tr);
        exact_holds &= lhs == rhs;
    }
    let mut out = vec![Outcome::from(Measure::residual(check.termwise, ALGEBRA_TOL).with_exact(exact_holds)).variant("termwise")];
    if let Some(q) = check.quadrature {
        out.push(Outcome::from(Measure::residual(q, quadrature_tolerance(1))).variant("quadrature"));
    }
    Ok(out)
}

pub mod grids {
    use crate::verify::config::{GridConfig, VerifyConfig};
    use crate::verify::{CheckParams, Plan};

    pub fn jack_schur(g: &GridConfig, _: &VerifyConfig) -> Vec<CheckParams> {
        Plan::start().ns(&g.n).lambdas(g).build()
    }

    pub fn jack_operators(g: &GridConfig, _: &VerifyConfig) -> Vec<CheckParams> {
        Plan::start().thetas(&g.theta).ns(&g.n).lambdas(g).build()
    }

    pub fn jack_ones(g: &GridConfig, c: &VerifyConfig) -> Vec<CheckParams> {
        jack_operators(g, c)
    }

    fn is_l(p: &CheckParams) -> bool {
        matches!(p.kind.as_deref(), Some("L") | Some("dixon-anderson"))
    }

    pub fn density_normalization(g: &GridConfig, c: &VerifyConfig) -> Vec<CheckParams> {
        let kinds: Vec<String> = if g.kinds.is_empty() { vec!["L".into(), "Lambda".into()] } else { g.kinds.clone() };
        Plan::start()
            .kinds(&kinds)
            .thetas(&g.theta)
            .over(|p| if is_l(p) { vec![None] } else { g.alpha.iter().copied().map(Some).collect() }, |p, a| p.alpha = a)
            .ns(&g.n)
            .points(g, c, |p| if is_l(p) { (1, true) } else { (0, false) })
            .build()
    }

    pub fn lemma_2_1(g: &GridConfig, c: &VerifyConfig) -> Vec<CheckParams> {
        Plan::start().thetas(&g.theta).ns(&g.n).points(g, c, |_| (1, true)).lambdas(g).build()
    }

    pub fn thm_2_2_quadrature(g: &GridConfig, c: &VerifyConfig) -> Vec<CheckParams> {
        Plan::start().thetas(&g.theta).alphas(&g.alpha).ns(&g.n).points(g, c, |_| (0, false)).lambdas(g).build()
    }

    pub fn c_shift(g: &GridConfig, _: &VerifyConfig) -> Vec<CheckParams> {
        Plan::start().thetas(&g.theta).alphas(&g.alpha).ns(&g.n).over(|_| g.shift.clone(), |p, m| p.shift = Some(m)).lambdas(g).build()
    }

    pub fn gen_intertwine(g: &GridConfig, _: &VerifyConfig) -> Vec<CheckParams> {
        Plan::start().thetas(&g.theta).alphas(&g.alpha).ns(&g.n).lmaxes(g).build()
    }

    pub fn thm_1_7_matrix(g: &GridConfig, _: &VerifyConfig) -> Vec<CheckParams> {
        Plan::start().thetas(&g.theta).alphas(&g.alpha).ns(&g.n).lmaxes(g).ts(&g.t).build()
    }

    pub fn dixon_anderson_shift(g: &GridConfig, c: &VerifyConfig) -> Vec<CheckParams> {
        thm_1_7_matrix(g, c)
    }

    pub fn thm_1_6_composed(g: &GridConfig, c: &VerifyConfig) -> Vec<CheckParams> {
        thm_1_7_matrix(g, c)
    }

    pub fn app_b_ou(g: &GridConfig, c: &VerifyConfig) -> Vec<CheckParams> {
        thm_1_7_matrix(g, c)
    }

    pub fn laguerre_eigen(g: &GridConfig, _: &VerifyConfig) -> Vec<CheckParams> {
        Plan::start().thetas(&g.theta).alphas(&g.alpha).ns(&g.n).lambdas(g).build()
    }

    pub fn rodrigues(g: &GridConfig, c: &VerifyConfig) -> Vec<CheckParams> {
        laguerre_eigen(g, c)
    }

    pub fn thm_a2(g: &GridConfig, c: &VerifyConfig) -> Vec<CheckParams> {
        laguerre_eigen(g, c)
    }

    pub fn c_normalization(g: &GridConfig, _: &VerifyConfig) -> Vec<CheckParams> {
        let degrees: Vec<usize> = (1..=g.max_weight.unwrap_or(0)).collect();
        Plan::start().thetas(&g.theta).ns(&g.n).over(|_| degrees.clone(), |p, d| p.degree = Some(d)).with(|p| p.draws = g.draws).build()
    }

    pub fn pfq_shift(g: &GridConfig, _: &VerifyConfig) -> Vec<CheckParams> {
        Plan::start().thetas(&g.theta).alphas(&g.alpha).ns(&g.n).with(|p| p.degree = g.max_weight).build()
    }
}
