//! Checks decided statistically. Every draw `i` of a grid point uses the
//! stream `(seed, i)`, so results do not depend on scheduling.

use super::{CheckParams, Measure, Outcome};
use crate::error::{Error, Result};
use crate::jack::{jack_eval, shared_context};
use crate::kernels::{
    c_eigenvalue, dixon_anderson_law, lambda_law, sample_composed, sample_dixon_anderson, sample_lambda, ChamberPoint, KernelKind,
    KernelParams,
};
use crate::numerics::{derive_seed, RngStream};
use crate::parallel::map_indexed;
use crate::partitions::Partition;
use crate::rmt::{
    corner_truncation_pushforward, eigen_projection_sample, laguerre_ensemble_sample, truncated_radial_sample, BiInvariantSampler,
    EnsembleMethod, Field,
};
use crate::semigroup::{moment_prediction, simulate_path, simulate_sde_halving, GeneratorKind, GeneratorSpec, SdeConfig};
use crate::stats::{ks_critical_one_sample, ks_critical_two_sample, ks_two_sample, MeanEstimate};

/// Quadrature nodes for the exact `y₁` distribution function.
const CDF_NODES: usize = 64;

/// Draws `count` samples, the `i`-th from stream `(seed, i)`.
fn draw<T: Send>(count: usize, seed: u64, f: impl Fn(&mut RngStream) -> Result<T> + Sync + Send) -> Result<Vec<T>> {
    map_indexed(count, |i| f(&mut RngStream::new(seed, i as u64))).into_iter().collect()
}

/// Mean of `P_λ` over the samples.
fn moment(samples: &[Vec<f64>], lambda: &Partition, theta: f64) -> Result<MeanEstimate> {
    let n = samples.first().map_or(0, Vec::len);
    let p = shared_context(n, theta)?.jack(lambda)?;
    Ok(MeanEstimate::from_values(&map_indexed(samples.len(), |i| p.eval(&samples[i]))))
}

fn smallest(samples: &[Vec<f64>]) -> Vec<f64> {
    samples.iter().map(|y| y[0]).collect()
}

fn nonnegative_integer(alpha: f64) -> Result<usize> {
    if alpha >= 0.0 && alpha.fract() == 0.0 {
        Ok(alpha as usize)
    } else {
        Err(Error::InvalidParameter(format!("matrix constructions need integer α ≥ 0, got {alpha}")))
    }
}

/// One-sample KS of the smallest root against its exact distribution.
pub fn kernel_ks(p: &CheckParams) -> Result<Vec<Outcome>> {
    let (theta, n, x, draws, seed) = (p.theta()?, p.n()?, p.x()?, p.draws()?, p.seed()?);
    let kind: KernelKind = p.kind()?.parse()?;
    let params = KernelParams::new(theta, p.alpha.unwrap_or(0.0), n)?;
    let (point, law) = match kind {
        KernelKind::DixonAnderson => (ChamberPoint::signed(x.clone())?, dixon_anderson_law(&x, theta)?),
        KernelKind::Lambda => (ChamberPoint::nonnegative(x.clone())?, lambda_law(&x, &params)?),
    };
    let samples = draw(draws, seed, |rng| {
        Ok(match kind {
            KernelKind::DixonAnderson => sample_dixon_anderson(&point, theta, rng)?,
            KernelKind::Lambda => sample_lambda(&point, &params, rng)?,
        }
        .coords()[0])
    })?;
    let mut sorted = samples;
    sorted.sort_by(|a, b| a.total_cmp(b));
    let cdf = law.smallest_root_cdf(CDF_NODES)?;
    let f = map_indexed(sorted.len(), |i| cdf(sorted[i]));
    let m = sorted.len() as f64;
    let statistic = f.iter().enumerate().fold(0.0f64, |d, (i, &fi)| d.max((i as f64 + 1.0) / m - fi).max(fi - i as f64 / m));
    Ok(vec![Measure::Ks { statistic, critical: ks_critical_one_sample(draws) }.into()])
}

/// `E[P_λ(Y)] = c · P_λ(x)` for `L`, `Λ` and the composition `L` then `Λ`.
pub fn kernel_mc(p: &CheckParams) -> Result<Vec<Outcome>> {
    let (theta, n, x, draws, seed) = (p.theta()?, p.n()?, p.x()?, p.draws()?, p.seed()?);
    let kind = p.kind()?;
    let alpha = p.alpha.unwrap_or(0.0);
    let params = KernelParams::new(theta, alpha, n)?;
    let samples: Vec<Vec<f64>> = match kind.as_str() {
        "L" => {
            let point = ChamberPoint::signed(x.clone())?;
            draw(draws, seed, |rng| Ok(sample_dixon_anderson(&point, theta, rng)?.into_coords()))?
        }
        "Lambda" => {
            let point = ChamberPoint::nonnegative(x.clone())?;
            draw(draws, seed, |rng| Ok(sample_lambda(&point, &params, rng)?.into_coords()))?
        }
        "composed" => {
            let point = ChamberPoint::nonnegative(x.clone())?;
            draw(draws, seed, |rng| Ok(sample_composed(&point, &params, rng)?.into_coords()))?
        }
        other => return Err(Error::Parse(format!("unknown kernel {other:?}"))),
    };
    let lambdas = moment_lambdas(p, n);
    let mut out = Vec::with_capacity(lambdas.len());
    for lambda in lambdas {
        let c = match kind.as_str() {
            "L" => c_eigenvalue(&lambda, n, theta, 0.0)?,
            "Lambda" => c_eigenvalue(&lambda, n, theta, alpha)?,
            _ => c_eigenvalue(&lambda, n, theta, 0.0)? * c_eigenvalue(&lambda, n, theta, alpha)?,
        };
        let target = c * jack_eval(&lambda, &x, theta)?;
        out.push(Outcome::for_lambda(&lambda, Measure::against_value(&moment(&samples, &lambda, theta)?, target)));
    }
    Ok(out)
}

/// Partitions for per-moment outcomes: the one given, or all nonempty
/// `|λ| ≤ degree` with at most `n` parts.
fn moment_lambdas(p: &CheckParams, n: usize) -> Vec<Partition> {
    match &p.lambda {
        Some(l) => vec![l.clone()],
        None => crate::partitions::partitions_up_to(p.degree.unwrap_or(0), n).into_iter().filter(|l| !l.is_empty()).collect(),
    }
}

/// Simulated `E[P_λ(X_t)]` against the semigroup matrix, and the shift of
/// the estimate when the step is halved on the same Brownian paths.
pub fn sde_moments(p: &CheckParams) -> Result<Vec<Outcome>> {
    let (theta, alpha, n, t, x, draws, seed) = (p.theta()?, p.alpha()?, p.n()?, p.t()?, p.x()?, p.draws()?, p.seed()?);
    let kind: GeneratorKind = p.kind()?.parse()?;
    let step = p.step.ok_or_else(|| Error::InvalidParameter("grid point has no `step`".into()))?;
    let spec = GeneratorSpec::new(kind, theta, alpha, n)?;
    let cfg = SdeConfig::new(step, t, draws)?;
    let (coarse, fine) = simulate_sde_halving(&spec, &ChamberPoint::nonnegative(x.clone())?, &cfg, seed)?;
    let coarse: Vec<Vec<f64>> = coarse.terminal().map(<[f64]>::to_vec).collect();
    let fine: Vec<Vec<f64>> = fine.terminal().map(<[f64]>::to_vec).collect();
    let mut out = Vec::new();
    for lambda in moment_lambdas(p, n) {
        let est = moment(&coarse, &lambda, theta)?;
        let predicted = moment_prediction(&spec, &lambda, &x, t)?;
        out.push(Outcome::for_lambda(&lambda, Measure::against_value(&est, predicted)));
        let halved = moment(&fine, &lambda, theta)?;
        let shift = Measure::Statistical { lhs: est.mean, rhs: halved.mean, std_error: est.std_error, sigmas: 2.0 };
        out.push(Outcome::for_lambda(&lambda, shift).variant("step-halving"));
    }
    Ok(out)
}

/// Running the `α+1` process then applying `Λ`, against applying `Λ` then
/// running the `α` process, compared through moments of the two laws.
pub fn thm_1_7_measure(p: &CheckParams) -> Result<Vec<Outcome>> {
    let (theta, alpha, n, t, x, draws, seed) = (p.theta()?, p.alpha()?, p.n()?, p.t()?, p.x()?, p.draws()?, p.seed()?);
    let kind: GeneratorKind = p.kind.as_deref().unwrap_or("laguerre").parse()?;
    let step = p.step.ok_or_else(|| Error::InvalidParameter("grid point has no `step`".into()))?;
    let params = KernelParams::new(theta, alpha, n)?;
    let spec = GeneratorSpec::new(kind, theta, alpha, n)?;
    let shifted = spec.with_alpha(alpha + 1.0);
    let cfg = SdeConfig::new(step, t, 1)?;
    let start = ChamberPoint::nonnegative(x)?;
    // truncated Euler states can dip just below zero; the kernel needs W_≥
    let clamp = |v: Vec<f64>| ChamberPoint::nonnegative(v.into_iter().map(|c| c.max(0.0)).collect());
    let run_then_kernel = draw(draws, derive_seed(seed, "process-then-kernel"), |rng| {
        let xt = simulate_path(&shifted, start.coords(), &cfg, rng);
        Ok(sample_lambda(&clamp(xt)?, &params, rng)?.into_coords())
    })?;
    let kernel_then_run = draw(draws, derive_seed(seed, "kernel-then-process"), |rng| {
        let y0 = sample_lambda(&start, &params, rng)?;
        Ok(simulate_path(&spec, y0.coords(), &cfg, rng))
    })?;
    let mut out = Vec::new();
    for lambda in moment_lambdas(p, n) {
        let a = moment(&run_then_kernel, &lambda, theta)?;
        let b = moment(&kernel_then_run, &lambda, theta)?;
        out.push(Outcome::for_lambda(&lambda, Measure::against_estimate(&a, &b)));
    }
    Ok(out)
}

/// Two-sample KS on `y₁` between a matrix construction and a kernel
/// sampler, plus moments of the matrix side against `c · P_λ(x)`.
fn matrix_vs_kernel(
    p: &CheckParams,
    matrix: impl Fn(&mut RngStream) -> Result<Vec<f64>> + Sync + Send,
    kernel: impl Fn(&mut RngStream) -> Result<Vec<f64>> + Sync + Send,
    target: impl Fn(&Partition) -> Result<f64>,
    theta: f64,
) -> Result<Vec<Outcome>> {
    let (n, draws, seed) = (p.n()?, p.draws()?, p.seed()?);
    let a = draw(draws, derive_seed(seed, "matrix"), matrix)?;
    let b = draw(draws, derive_seed(seed, "kernel"), kernel)?;
    let statistic = ks_two_sample(&smallest(&a), &smallest(&b));
    let mut out = vec![Outcome::from(Measure::Ks { statistic, critical: ks_critical_two_sample(draws, draws) }).variant("ks")];
    for lambda in moment_lambdas(p, n) {
        out.push(Outcome::for_lambda(&lambda, Measure::against_value(&moment(&a, &lambda, theta)?, target(&lambda)?)));
    }
    Ok(out)
}

/// Eigenvalues of the `N×N` corner of `U diag(x) U*` against `L`.
pub fn rmt_projection(p: &CheckParams) -> Result<Vec<Outcome>> {
    let (field, n, x) = (p.field()?, p.n()?, p.x()?);
    let theta = field.theta();
    if x.len() != n + 1 {
        return Err(Error::InvalidPoint(format!("expected {} coordinates, got {}", n + 1, x.len())));
    }
    let point = ChamberPoint::signed(x.clone())?;
    matrix_vs_kernel(
        p,
        |rng| Ok(eigen_projection_sample(&point, field, rng)?.into_coords()),
        |rng| Ok(sample_dixon_anderson(&point, theta, rng)?.into_coords()),
        |l| Ok(c_eigenvalue(l, n, theta, 0.0)? * jack_eval(l, &x, theta)?),
        theta,
    )
}

/// Radial part of a truncated Haar matrix times `diag(√z)` against `Λ`.
pub fn rmt_lambda(p: &CheckParams) -> Result<Vec<Outcome>> {
    let (field, alpha, n, z) = (p.field()?, p.alpha()?, p.n()?, p.x()?);
    let theta = field.theta();
    let a = nonnegative_integer(alpha)?;
    let params = KernelParams::new(theta, alpha, n)?;
    let point = ChamberPoint::nonnegative(z.clone())?;
    if z.len() != n {
        return Err(Error::InvalidPoint(format!("expected {n} coordinates, got {}", z.len())));
    }
    matrix_vs_kernel(
        p,
        |rng| Ok(truncated_radial_sample(&point, field, a, rng)?.into_coords()),
        |rng| Ok(sample_lambda(&point, &params, rng)?.into_coords()),
        |l| Ok(c_eigenvalue(l, n, theta, alpha)? * jack_eval(l, &z, theta)?),
        theta,
    )
}

/// Corner truncation of a bi-invariant matrix against its radial part
/// pushed through the composed kernel.
pub fn rmt_thm_6_2(p: &CheckParams) -> Result<Vec<Outcome>> {
    let (field, alpha, n, draws, seed) = (p.field()?, p.alpha()?, p.n()?, p.draws()?, p.seed()?);
    let a = nonnegative_integer(alpha)?;
    let sampler = match p.kind()?.as_str() {
        "gaussian" => BiInvariantSampler::Gaussian,
        "haar-diagonal" => BiInvariantSampler::HaarDiagonal(p.x()?),
        other => return Err(Error::Parse(format!("unknown bi-invariant sampler {other:?}"))),
    };
    let pairs = draw(draws, seed, |rng| corner_truncation_pushforward(&sampler, field, n, a, rng))?;
    let pushed: Vec<Vec<f64>> = pairs.iter().map(|s| s.pushed.clone()).collect();
    let truncated: Vec<Vec<f64>> = pairs.into_iter().map(|s| s.truncated).collect();
    let theta = field.theta();
    let mut out = Vec::new();
    for lambda in moment_lambdas(p, n) {
        let lhs = moment(&pushed, &lambda, theta)?;
        let rhs = moment(&truncated, &lambda, theta)?;
        out.push(Outcome::for_lambda(&lambda, Measure::against_estimate(&lhs, &rhs)));
    }
    Ok(out)
}

/// `m^{N+1}_{θ,α}` pushed through the composed kernel against `m^N_{θ,α}`,
/// plus `E[Σx] = θN(N+α)` under `m^N_{θ,α}`.
pub fn rmt_fixedpoint(p: &CheckParams) -> Result<Vec<Outcome>> {
    let (theta, alpha, n, draws, seed) = (p.theta()?, p.alpha()?, p.n()?, p.draws()?, p.seed()?);
    let method = if Field::from_theta(theta).is_ok() && nonnegative_integer(alpha).is_ok() {
        EnsembleMethod::Gaussian
    } else {
        EnsembleMethod::Bidiagonal
    };
    let params = KernelParams::new(theta, alpha, n)?;
    let pushed = draw(draws, derive_seed(seed, "pushed"), |rng| {
        let x = laguerre_ensemble_sample(n + 1, theta, alpha, method, rng)?;
        Ok(sample_composed(&x, &params, rng)?.into_coords())
    })?;
    let direct = draw(draws, derive_seed(seed, "direct"), |rng| Ok(laguerre_ensemble_sample(n, theta, alpha, method, rng)?.into_coords()))?;
    let mut out = Vec::new();
    for lambda in moment_lambdas(p, n) {
        let a = moment(&pushed, &lambda, theta)?;
        let b = moment(&direct, &lambda, theta)?;
        out.push(Outcome::for_lambda(&lambda, Measure::against_estimate(&a, &b)));
    }
    let total = MeanEstimate::from_values(&direct.iter().map(|y| y.iter().sum()).collect::<Vec<f64>>());
    let nf = n as f64;
    out.push(Outcome::from(Measure::against_value(&total, theta * nf * (nf + alpha))).variant("first-moment"));
    Ok(out)
}

pub mod grids {
    use crate::verify::config::{GridConfig, VerifyConfig};
    use crate::verify::{CheckParams, Plan};

    fn common(p: Plan, g: &GridConfig) -> Plan {
        p.with(|q| {
            q.draws = g.draws;
            if !g.lambda.is_empty() {
                q.lambda = g.lambda.first().cloned();
            } else {
                q.degree = g.max_weight;
            }
        })
    }

    fn kernel_alphas(g: &GridConfig) -> impl Fn(&CheckParams) -> Vec<Option<f64>> + '_ {
        |p| {
            if p.kind.as_deref() == Some("L") {
                vec![None]
            } else {
                g.alpha.iter().copied().map(Some).collect()
            }
        }
    }

    pub fn kernel_ks(g: &GridConfig, c: &VerifyConfig) -> Vec<CheckParams> {
        let p = Plan::start().kinds(&g.kinds).thetas(&g.theta).over(kernel_alphas(g), |p, a| p.alpha = a).ns(&g.n).first_point(g, c, |p| {
            if p.kind.as_deref() == Some("L") {
                (1, true)
            } else {
                (0, false)
            }
        });
        p.with(|q| q.draws = g.draws).build()
    }

    pub fn kernel_mc(g: &GridConfig, c: &VerifyConfig) -> Vec<CheckParams> {
        let p = Plan::start().kinds(&g.kinds).thetas(&g.theta).over(kernel_alphas(g), |p, a| p.alpha = a).ns(&g.n).first_point(g, c, |p| {
            if p.kind.as_deref() == Some("Lambda") {
                (0, false)
            } else {
                (1, false)
            }
        });
        common(p, g).build()
    }

    fn process(g: &GridConfig) -> Plan {
        let p = Plan::start()
            .kinds(&g.kinds)
            .thetas(&g.theta)
            .alphas(&g.alpha)
            .ns(&g.n)
            .ts(&g.t)
            .over(|_| g.x.clone().into_iter().collect(), |p, x| p.x = Some(x))
            .with(|q| q.step = g.step);
        common(p, g)
    }

    pub fn sde_moments(g: &GridConfig, _: &VerifyConfig) -> Vec<CheckParams> {
        process(g).build()
    }

    pub fn thm_1_7_measure(g: &GridConfig, _: &VerifyConfig) -> Vec<CheckParams> {
        process(g).build()
    }

    pub fn rmt_projection(g: &GridConfig, c: &VerifyConfig) -> Vec<CheckParams> {
        common(Plan::start().fields(&g.fields).ns(&g.n).first_point(g, c, |_| (1, true)), g).build()
    }

    pub fn rmt_lambda(g: &GridConfig, c: &VerifyConfig) -> Vec<CheckParams> {
        common(Plan::start().fields(&g.fields).alphas(&g.alpha).ns(&g.n).first_point(g, c, |_| (0, false)), g).build()
    }

    pub fn rmt_thm_6_2(g: &GridConfig, c: &VerifyConfig) -> Vec<CheckParams> {
        let p = Plan::start().fields(&g.fields).alphas(&g.alpha).ns(&g.n).kinds(&g.kinds).over(
            |p| {
                if p.kind.as_deref() == Some("haar-diagonal") {
                    match &g.x {
                        Some(x) => vec![Some(x.clone())],
                        None => c.points(p.n.unwrap_or(0) + 1, false).into_iter().take(1).map(Some).collect(),
                    }
                } else {
                    vec![None]
                }
            },
            |p, x| p.x = x,
        );
        common(p, g).build()
    }

    pub fn rmt_fixedpoint(g: &GridConfig, _: &VerifyConfig) -> Vec<CheckParams> {
        common(Plan::start().thetas(&g.theta).alphas(&g.alpha).ns(&g.n), g).build()
    }
}
