//! Generators of the β-Laguerre and Laguerre–Ornstein–Uhlenbeck processes on
//! graded Jack spaces, their semigroups, the matrix intertwining identities,
//! and an Euler–Maruyama simulator for the particle systems.
//!
//! The Laguerre generator is `A = D₁ + θ(α+1)E₀`; the OU generator subtracts
//! `E₁`. Matrices follow the row convention of [`GradedMatrix`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jack::{shared_context, GradedMatrix, JackContext, Operator};
use crate::kernels::{c_eigenvalue_exact, ChamberPoint, Flavor, KernelParams};
use crate::numerics::{derive_seed, expm_nilpotent, graded_expm, RngStream, Scalar};
use crate::parallel::{map_indexed_with, Execution};
use crate::partitions::Partition;
use crate::stats::MeanEstimate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    Laguerre,
    LaguerreOu,
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeneratorKind::Laguerre => "laguerre",
            GeneratorKind::LaguerreOu => "laguerre_ou",
        })
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "laguerre" => Ok(GeneratorKind::Laguerre),
            "laguerre_ou" | "laguerre-ou" | "ou" => Ok(GeneratorKind::LaguerreOu),
            other => Err(Error::Parse(format!("unknown generator kind {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub theta: f64,
    pub alpha: f64,
    pub n: usize,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, theta: f64, alpha: f64, n: usize) -> Result<Self> {
        KernelParams::new(theta, alpha, n)?;
        Ok(GeneratorSpec { kind, theta, alpha, n })
    }

    pub fn with_alpha(self, alpha: f64) -> Self {
        GeneratorSpec { alpha, ..self }
    }

    pub fn with_n(self, n: usize) -> Self {
        GeneratorSpec { n, ..self }
    }
}

/// Generator matrix in any scalar field, on the basis below `λ_max` for the
/// context's number of variables.
pub fn generator_matrix_in<F: Scalar>(
    ctx: &JackContext<F>,
    kind: GeneratorKind,
    alpha: &F,
    lambda_max: &Partition,
) -> Result<GradedMatrix<F>> {
    let d1 = ctx.op_matrix(Operator::D1, lambda_max)?;
    let e0 = ctx.op_matrix(Operator::E0, lambda_max)?;
    let a = d1.add(&e0.scale(&(ctx.theta().clone() * (alpha.clone() + F::one()))));
    Ok(match kind {
        GeneratorKind::Laguerre => a,
        GeneratorKind::LaguerreOu => a.add(&ctx.op_matrix(Operator::E1, lambda_max)?.scale(&-F::one())),
    })
}

pub fn generator_matrix(spec: &GeneratorSpec, lambda_max: &Partition) -> Result<GradedMatrix<f64>> {
    generator_matrix_in(&*shared_context(spec.n, spec.theta)?, spec.kind, &spec.alpha, lambda_max)
}

/// `e^{tM}`: the terminating series for the nilpotent Laguerre generator,
/// scaling and squaring for the OU generator (see [`graded_expm`]).
pub fn semigroup_matrix(spec: &GeneratorSpec, lambda_max: &Partition, t: f64) -> Result<GradedMatrix<f64>> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter(format!("time must be nonnegative, got {t}")));
    }
    Ok(graded_expm(&generator_matrix(spec, lambda_max)?, t))
}

/// `e^{tM}` of the Laguerre generator in any scalar field.
pub fn laguerre_semigroup_in<F: Scalar>(ctx: &JackContext<F>, alpha: &F, lambda_max: &Partition, t: &F) -> Result<GradedMatrix<F>> {
    let m = generator_matrix_in(ctx, GeneratorKind::Laguerre, alpha, lambda_max)?;
    let e = expm_nilpotent(&m.matrix, t).expect("Laguerre generator lowers degree");
    Ok(GradedMatrix::new(m.basis, e))
}

/// Diagonal matrix of `Λ^{N,N}`: entries `c(μ, N, θ; α)`.
pub fn lambda_matrix_in<F: Scalar>(ctx: &JackContext<F>, alpha: &F, lambda_max: &Partition) -> Result<GradedMatrix<F>> {
    let basis = ctx.basis(lambda_max)?;
    let diag = basis.iter().map(|mu| c_eigenvalue_exact(mu, ctx.n_vars(), ctx.theta(), alpha)).collect::<Result<Vec<F>>>()?;
    Ok(GradedMatrix::new(basis, crate::numerics::DenseMatrix::from_diagonal(&diag)))
}

pub fn lambda_matrix(params: &KernelParams, lambda_max: &Partition) -> Result<GradedMatrix<f64>> {
    lambda_matrix_in(&*shared_context(params.n, params.theta)?, &params.alpha, lambda_max)
}

/// Diagonal matrix of `L^{N+1,N}` from `N`- to `(N+1)`-variable Jack
/// polynomials: entries `c(μ, N, θ)`.
pub fn dixon_anderson_matrix_in<F: Scalar>(ctx: &JackContext<F>, lambda_max: &Partition) -> Result<GradedMatrix<F>> {
    lambda_matrix_in(ctx, &F::zero(), lambda_max)
}

/// Scaled residuals of the generator intertwinings (see [`scaled_residual`]).
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GeneratorResiduals {
    /// `M₁ A_{α+1} − A_α M₁` with `M₁` the `Λ` matrix.
    pub laguerre: f64,
    /// The same with OU generators.
    pub ou: f64,
}

impl GeneratorResiduals {
    pub fn max(&self) -> f64 {
        self.laguerre.max(self.ou)
    }
}

/// Scaled residuals of the semigroup intertwinings at time `t` (see
/// [`scaled_residual`]).
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SemigroupResiduals {
    /// `M₁ e^{tA_{α+1}} − e^{tA_α} M₁`, `M₁ = Λ^{N,N}`.
    pub shifted: f64,
    /// `M_L e^{tA^{N+1}_α} − e^{tA^N_{α+1}} M_L`, `M_L = L^{N+1,N}`.
    pub shifted_dixon_anderson: f64,
    /// `K e^{tA^{N+1}_α} − e^{tA^N_α} K`, `K = L Λ`.
    pub composed: f64,
    pub shifted_ou: f64,
    pub shifted_dixon_anderson_ou: f64,
    pub composed_ou: f64,
}

impl SemigroupResiduals {
    pub fn max(&self) -> f64 {
        [self.shifted, self.shifted_dixon_anderson, self.composed, self.shifted_ou, self.shifted_dixon_anderson_ou, self.composed_ou]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

/// `M₁ X − Y M₁`.
fn intertwine_residual<F: Scalar>(m1: &GradedMatrix<F>, x: &GradedMatrix<F>, y: &GradedMatrix<F>) -> GradedMatrix<F> {
    let lhs = m1.then(x);
    let rhs = y.then(m1);
    GradedMatrix::new(lhs.basis.clone(), &lhs.matrix - &rhs.matrix)
}

/// `max|M₁X − YM₁|` divided by `max(1, max|M₁X|, max|YM₁|)`.
///
/// Semigroup matrices at `|λ_max| = 5` have entries near `10⁷`, where one
/// ulp is about `2·10⁻⁹`; dividing by the size of the two products makes the
/// residual a statement about rounding rather than about magnitude. For
/// products of size at most one it is the plain max-abs residual.
pub fn scaled_residual(m1: &GradedMatrix<f64>, x: &GradedMatrix<f64>, y: &GradedMatrix<f64>) -> f64 {
    let lhs = m1.then(x);
    let rhs = y.then(m1);
    let scale = lhs.matrix.max_abs().max(rhs.matrix.max_abs()).max(1.0);
    (&lhs.matrix - &rhs.matrix).max_abs() / scale
}

/// Residual matrices of `Λ A_{α+1} = A_α Λ` for both generator kinds, in any
/// scalar field.
pub fn generator_intertwine_in<F: Scalar>(ctx: &JackContext<F>, alpha: &F, lambda_max: &Partition) -> Result<[GradedMatrix<F>; 2]> {
    let m1 = lambda_matrix_in(ctx, alpha, lambda_max)?;
    let alpha1 = alpha.clone() + F::one();
    let mut out = Vec::with_capacity(2);
    for kind in [GeneratorKind::Laguerre, GeneratorKind::LaguerreOu] {
        let m2 = generator_matrix_in(ctx, kind, alpha, lambda_max)?;
        let m3 = generator_matrix_in(ctx, kind, &alpha1, lambda_max)?;
        out.push(intertwine_residual(&m1, &m3, &m2));
    }
    Ok(out.try_into().expect("two kinds"))
}

pub fn check_generator_intertwine(params: &KernelParams, lambda_max: &Partition) -> Result<GeneratorResiduals> {
    let ctx = shared_context(params.n, params.theta)?;
    let m1 = lambda_matrix_in(&ctx, &params.alpha, lambda_max)?;
    let mut res = [0.0; 2];
    for (r, kind) in res.iter_mut().zip([GeneratorKind::Laguerre, GeneratorKind::LaguerreOu]) {
        let m2 = generator_matrix_in(&ctx, kind, &params.alpha, lambda_max)?;
        let m3 = generator_matrix_in(&ctx, kind, &(params.alpha + 1.0), lambda_max)?;
        *r = scaled_residual(&m1, &m3, &m2);
    }
    Ok(GeneratorResiduals { laguerre: res[0], ou: res[1] })
}

/// Residual matrices of the three Laguerre semigroup intertwinings (shifted
/// `Λ`, shifted `L`, composed) in any scalar field.
pub fn laguerre_semigroup_intertwine_in<F: Scalar>(
    ctx: &JackContext<F>,
    ctx_up: &JackContext<F>,
    alpha: &F,
    lambda_max: &Partition,
    t: &F,
) -> Result<[GradedMatrix<F>; 3]> {
    let alpha1 = alpha.clone() + F::one();
    let e_n = laguerre_semigroup_in(ctx, alpha, lambda_max, t)?;
    let e_n1 = laguerre_semigroup_in(ctx, &alpha1, lambda_max, t)?;
    let e_up = laguerre_semigroup_in(ctx_up, alpha, lambda_max, t)?;
    let m1 = lambda_matrix_in(ctx, alpha, lambda_max)?;
    let ml = dixon_anderson_matrix_in(ctx, lambda_max)?;
    let k = m1.then(&ml);
    Ok([intertwine_residual(&m1, &e_n1, &e_n), intertwine_residual(&ml, &e_up, &e_n1), intertwine_residual(&k, &e_up, &e_n)])
}

pub fn check_semigroup_intertwine(params: &KernelParams, lambda_max: &Partition, t: f64) -> Result<SemigroupResiduals> {
    let (theta, alpha, n) = (params.theta, params.alpha, params.n);
    let mut res = SemigroupResiduals::default();
    let m1 = lambda_matrix(params, lambda_max)?;
    let ml = dixon_anderson_matrix_in(&*shared_context(n, theta)?, lambda_max)?;
    let k = m1.then(&ml);
    for kind in [GeneratorKind::Laguerre, GeneratorKind::LaguerreOu] {
        let spec = GeneratorSpec::new(kind, theta, alpha, n)?;
        let e_n = semigroup_matrix(&spec, lambda_max, t)?;
        let e_n1 = semigroup_matrix(&spec.with_alpha(alpha + 1.0), lambda_max, t)?;
        let e_up = semigroup_matrix(&spec.with_n(n + 1), lambda_max, t)?;
        let shifted = scaled_residual(&m1, &e_n1, &e_n);
        let shifted_l = scaled_residual(&ml, &e_up, &e_n1);
        let composed = scaled_residual(&k, &e_up, &e_n);
        match kind {
            GeneratorKind::Laguerre => {
                res.shifted = shifted;
                res.shifted_dixon_anderson = shifted_l;
                res.composed = composed;
            }
            GeneratorKind::LaguerreOu => {
                res.shifted_ou = shifted;
                res.shifted_dixon_anderson_ou = shifted_l;
                res.composed_ou = composed;
            }
        }
    }
    Ok(res)
}

/// `E_x[P_λ(X_t)] = Σ_ν e^{tM}(λ, ν) P_ν(x)`.
pub fn moment_prediction(spec: &GeneratorSpec, lambda: &Partition, x0: &[f64], t: f64) -> Result<f64> {
    if x0.len() != spec.n {
        return Err(Error::InvalidPoint(format!("expected {} coordinates, got {}", spec.n, x0.len())));
    }
    let e = semigroup_matrix(spec, lambda, t)?;
    let ctx = shared_context(spec.n, spec.theta)?;
    let row = e.index_of(lambda).expect("λ_max is in its own basis");
    let mut total = 0.0;
    for (j, nu) in e.basis.iter().enumerate() {
        let w = *e.matrix.get(row, j);
        if w != 0.0 {
            total += w * ctx.jack(nu)?.eval(x0);
        }
    }
    Ok(total)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Euler–Maruyama with `max(X, 0)` inside the square root and the
    /// interaction numerators.
    #[default]
    FullTruncation,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SdeConfig {
    pub step: f64,
    pub scheme: Scheme,
    pub t_end: f64,
    pub paths: usize,
    /// Number of equal time intervals at whose ends the state is recorded.
    pub snapshots: usize,
}

impl SdeConfig {
    pub fn new(step: f64, t_end: f64, paths: usize) -> Result<Self> {
        let cfg = SdeConfig { step, scheme: Scheme::FullTruncation, t_end, paths, snapshots: 1 };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(Error::InvalidParameter(format!("step must be positive, got {}", self.step)));
        }
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return Err(Error::InvalidParameter(format!("t_end must be nonnegative, got {}", self.t_end)));
        }
        if self.snapshots == 0 {
            return Err(Error::InvalidParameter("at least one snapshot is needed".into()));
        }
        Ok(())
    }

    /// Number of steps and the step actually used, so that the steps end
    /// exactly at `t_end` and snapshot times fall on the grid.
    fn grid(&self) -> (usize, f64) {
        if self.t_end == 0.0 {
            return (0, self.step);
        }
        let per = ((self.t_end / self.snapshots as f64) / self.step - 1e-9).ceil().max(1.0) as usize;
        let steps = per * self.snapshots;
        (steps, self.t_end / steps as f64)
    }
}

/// Recorded states: `states[path][k]` is the ordered state at `times[k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PathEnsemble {
    pub times: Vec<f64>,
    pub states: Vec<Vec<Vec<f64>>>,
}

impl PathEnsemble {
    pub fn paths(&self) -> usize {
        self.states.len()
    }

    /// States of every path at snapshot `k`.
    pub fn at(&self, k: usize) -> impl Iterator<Item = &[f64]> {
        self.states.iter().map(move |p| p[k].as_slice())
    }

    pub fn terminal(&self) -> impl Iterator<Item = &[f64]> {
        let last = self.times.len() - 1;
        self.at(last)
    }
}

const INTERACTION_EPS: f64 = 1e-12;

fn require_simulation_theta(theta: f64) -> Result<()> {
    if theta < 0.5 {
        return Err(Error::InvalidParameter(format!("the particle system needs β = 2θ ≥ 1, got θ = {theta}")));
    }
    Ok(())
}

/// Deepest Brownian-bridge refinement of one step (a factor `2^-30`).
const MAX_REFINE: u32 = 30;

fn drift_at(spec: &GeneratorSpec, x: &[f64], drift: &mut [f64]) {
    let base = spec.theta * (spec.alpha + 1.0);
    for i in 0..x.len() {
        let xi = x[i].max(0.0);
        let mut inter = 0.0;
        for j in 0..x.len() {
            if j != i {
                let d = x[i] - x[j];
                let d = if d.abs() < INTERACTION_EPS { INTERACTION_EPS.copysign(d) } else { d };
                inter += 2.0 * xi / d;
            }
        }
        let mut a = base + spec.theta * inter;
        if spec.kind == GeneratorKind::LaguerreOu {
            a -= x[i];
        }
        drift[i] = a;
    }
}

/// Scratch space for [`Stepper::step`].
struct Stepper {
    drift: Vec<f64>,
    trial: Vec<f64>,
    /// Bridge normals, kept apart from the increment stream so refinement
    /// never shifts the driving Brownian path.
    bridge: RngStream,
}

impl Stepper {
    fn new(n: usize, bridge: RngStream) -> Self {
        Self { drift: vec![0.0; n], trial: vec![0.0; n], bridge }
    }

    /// Advances the ordered state `x` over `dt` with Brownian increment `dw`.
    ///
    /// A full-truncation Euler–Maruyama step is accepted when it keeps the
    /// particles ordered and (from a nonnegative state) nonnegative.
    /// Otherwise the step is halved, splitting `dw` along a Brownian bridge.
    /// Without the refinement a crossing followed by a re-sort leaves a
    /// near-zero gap whose drift throws a particle far out of the bulk.
    fn step(&mut self, spec: &GeneratorSpec, x: &mut [f64], dt: f64, dw: &[f64]) {
        self.advance(spec, x, dt, dw, 0);
    }

    fn advance(&mut self, spec: &GeneratorSpec, x: &mut [f64], dt: f64, dw: &[f64], depth: u32) {
        drift_at(spec, x, &mut self.drift);
        for i in 0..x.len() {
            self.trial[i] = x[i] + self.drift[i] * dt + (2.0 * x[i].max(0.0)).sqrt() * dw[i];
        }
        let ordered = self.trial.windows(2).all(|w| w[0] < w[1]);
        let in_range = x[0] < 0.0 || self.trial[0] >= 0.0;
        if depth >= MAX_REFINE || (ordered && in_range) {
            x.copy_from_slice(&self.trial);
            x.sort_by(|a, b| a.partial_cmp(b).expect("finite state"));
            return;
        }
        let spread = 0.5 * dt.sqrt();
        let first: Vec<f64> = dw.iter().map(|w| 0.5 * w + spread * self.bridge.standard_normal()).collect();
        let second: Vec<f64> = dw.iter().zip(&first).map(|(w, a)| w - a).collect();
        self.advance(spec, x, 0.5 * dt, &first, depth + 1);
        self.advance(spec, x, 0.5 * dt, &second, depth + 1);
    }
}

fn check_start(spec: &GeneratorSpec, x0: &ChamberPoint) -> Result<()> {
    require_simulation_theta(spec.theta)?;
    if x0.flavor() != Flavor::Nonnegative || x0.len() != spec.n {
        return Err(Error::InvalidPoint(format!("start must be a nonnegative point with {} coordinates", spec.n)));
    }
    Ok(())
}

/// Simulates `cfg.paths` independent paths; path `i` draws from
/// `RngStream::new(seed, i)`.
pub fn simulate_sde(spec: &GeneratorSpec, x0: &ChamberPoint, cfg: &SdeConfig, seed: u64) -> Result<PathEnsemble> {
    simulate_sde_with(Execution::default(), spec, x0, cfg, seed)
}

pub fn simulate_sde_with(exec: Execution, spec: &GeneratorSpec, x0: &ChamberPoint, cfg: &SdeConfig, seed: u64) -> Result<PathEnsemble> {
    cfg.validate()?;
    check_start(spec, x0)?;
    let (steps, dt) = cfg.grid();
    let every = (steps / cfg.snapshots).max(1);
    let times = (0..=cfg.snapshots).map(|k| cfg.t_end * k as f64 / cfg.snapshots as f64).collect();
    let sq = dt.sqrt();
    let bridge_seed = derive_seed(seed, "bridge");
    let states = map_indexed_with(exec, cfg.paths, |p| {
        let mut rng = RngStream::new(seed, p as u64);
        let mut x = x0.coords().to_vec();
        let mut dw = vec![0.0; x.len()];
        let mut stepper = Stepper::new(x.len(), RngStream::new(bridge_seed, p as u64));
        let mut rec = Vec::with_capacity(cfg.snapshots + 1);
        rec.push(x.clone());
        for s in 1..=steps {
            dw.iter_mut().for_each(|w| *w = sq * rng.standard_normal());
            stepper.step(spec, &mut x, dt, &dw);
            if s % every == 0 {
                rec.push(x.clone());
            }
        }
        while rec.len() < cfg.snapshots + 1 {
            rec.push(x.clone());
        }
        rec
    });
    Ok(PathEnsemble { times, states })
}

/// Terminal state of one path from `x0` over `[0, t_end]`, drawing its
/// Brownian increments from `rng` (plus one draw seeding the bridge
/// stream). Callers validate `spec` and `cfg`.
pub fn simulate_path(spec: &GeneratorSpec, x0: &[f64], cfg: &SdeConfig, rng: &mut RngStream) -> Vec<f64> {
    let (steps, dt) = SdeConfig { snapshots: 1, ..*cfg }.grid();
    let sq = dt.sqrt();
    let mut x = x0.to_vec();
    let mut dw = vec![0.0; x.len()];
    let mut stepper = Stepper::new(x.len(), RngStream::new(rng.next_u64(), 0));
    for _ in 0..steps {
        dw.iter_mut().for_each(|w| *w = sq * rng.standard_normal());
        stepper.step(spec, &mut x, dt, &dw);
    }
    x
}

/// Terminal states at step `h` and `h/2` driven by the same Brownian paths:
/// the coarse increment is the sum of two fine ones.
pub fn simulate_sde_halving(spec: &GeneratorSpec, x0: &ChamberPoint, cfg: &SdeConfig, seed: u64) -> Result<(PathEnsemble, PathEnsemble)> {
    cfg.validate()?;
    check_start(spec, x0)?;
    let coarse_cfg = SdeConfig { snapshots: 1, ..*cfg };
    let (steps, dt) = coarse_cfg.grid();
    let half = 0.5 * dt;
    let sq = half.sqrt();
    let (fine_bridge, coarse_bridge) = (derive_seed(seed, "bridge-fine"), derive_seed(seed, "bridge-coarse"));
    let pairs = map_indexed_with(Execution::default(), cfg.paths, |p| {
        let mut rng = RngStream::new(seed, p as u64);
        let n = x0.len();
        let mut coarse = x0.coords().to_vec();
        let mut fine = coarse.clone();
        let (mut w1, mut w2, mut wc) = (vec![0.0; n], vec![0.0; n], vec![0.0; n]);
        let mut fine_steps = Stepper::new(n, RngStream::new(fine_bridge, p as u64));
        let mut coarse_steps = Stepper::new(n, RngStream::new(coarse_bridge, p as u64));
        for _ in 0..steps {
            w1.iter_mut().for_each(|w| *w = sq * rng.standard_normal());
            w2.iter_mut().for_each(|w| *w = sq * rng.standard_normal());
            for i in 0..n {
                wc[i] = w1[i] + w2[i];
            }
            fine_steps.step(spec, &mut fine, half, &w1);
            fine_steps.step(spec, &mut fine, half, &w2);
            coarse_steps.step(spec, &mut coarse, dt, &wc);
        }
        (vec![x0.coords().to_vec(), coarse], vec![x0.coords().to_vec(), fine])
    });
    let times = vec![0.0, cfg.t_end];
    let (c, f): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
    Ok((PathEnsemble { times: times.clone(), states: c }, PathEnsemble { times, states: f }))
}

/// Monte Carlo estimate of `E[P_λ(X_t)]` at snapshot `k`.
///
/// `P_λ` is symmetric, so averaging over the symmetrised law of `X_t` (the
/// ordered state under a uniform random relabelling) gives the same value as
/// averaging the ordered state.
pub fn symmetrized_moment(paths: &PathEnsemble, lambda: &Partition, theta: f64, k: usize) -> Result<MeanEstimate> {
    let states: Vec<&[f64]> = paths.at(k).collect();
    let Some(first) = states.first() else {
        return Ok(MeanEstimate::from_values(&[]));
    };
    let p = shared_context(first.len(), theta)?.jack(lambda)?;
    let values = crate::parallel::map_indexed(states.len(), |i| p.eval(states[i]));
    Ok(MeanEstimate::from_values(&values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::scalar::{ratio, Rational};
    use crate::part;

    #[test]
    fn generator_examples() {
        let spec = GeneratorSpec::new(GeneratorKind::Laguerre, 1.0, 0.0, 2).unwrap();
        let m = generator_matrix(&spec, &part![1]).unwrap();
        assert!((m.entry(&part![1], &Partition::empty()) - 4.0).abs() < 1e-14);
        assert!(m.basis.iter().all(|mu| m.entry(mu, mu) == 0.0));
        let ou = generator_matrix(&GeneratorSpec { kind: GeneratorKind::LaguerreOu, ..spec }, &part![2]).unwrap();
        assert_eq!(ou.entry(&part![2], &part![2]), -2.0);
    }

    #[test]
    fn semigroup_examples() {
        let spec = GeneratorSpec::new(GeneratorKind::Laguerre, 1.3, 0.4, 3).unwrap();
        let e = semigroup_matrix(&spec, &part![1], 0.7).unwrap();
        let want = 1.3 * 3.0 * (3.0 + 0.4) * 0.7;
        assert!((e.entry(&part![1], &Partition::empty()) - want).abs() < 1e-13);
        assert_eq!(semigroup_matrix(&spec, &part![2, 1], 0.0).unwrap().matrix, crate::numerics::DenseMatrix::identity(e.dim().max(5)));
        let ou = semigroup_matrix(&GeneratorSpec { kind: GeneratorKind::LaguerreOu, ..spec }, &part![1], 0.9).unwrap();
        assert!((ou.entry(&part![1], &part![1]) - (-0.9f64).exp()).abs() < 1e-15);
        assert_eq!(ou.entry(&Partition::empty(), &Partition::empty()), 1.0);
    }

    #[test]
    fn lambda_matrix_examples() {
        let m = lambda_matrix(&KernelParams::new(1.0, 0.0, 1).unwrap(), &part![2]).unwrap();
        assert_eq!(m.entry(&Partition::empty(), &Partition::empty()), 1.0);
        assert!((m.entry(&part![1], &part![1]) - 0.5).abs() < 1e-15);
        assert_eq!(m.entry(&part![2], &part![1]), 0.0);
    }

    #[test]
    fn intertwining_residuals_small() {
        let params = KernelParams::new(1.5, -0.3, 2).unwrap();
        let g = check_generator_intertwine(&params, &part![2, 1]).unwrap();
        assert!(g.max() < 1e-10, "{g:?}");
        let s = check_semigroup_intertwine(&params, &part![2, 1], 1.0).unwrap();
        assert!(s.max() < 1e-10, "{s:?}");
        let s0 = check_semigroup_intertwine(&params, &part![2, 1], 0.0).unwrap();
        assert_eq!(s0.max(), 0.0);
    }

    #[test]
    fn exact_residuals_vanish() {
        let ctx = JackContext::new(2, ratio(3, 2)).unwrap();
        let up = JackContext::new(3, ratio(3, 2)).unwrap();
        for r in generator_intertwine_in(&ctx, &ratio(-3, 10), &part![2, 1]).unwrap() {
            assert!(r.is_exactly_zero());
        }
        for r in laguerre_semigroup_intertwine_in(&ctx, &up, &ratio(-3, 10), &part![2, 1], &Rational::from_int(1)).unwrap() {
            assert!(r.is_exactly_zero());
        }
    }

    #[test]
    fn sde_deterministic_start_and_zero_time() {
        let spec = GeneratorSpec::new(GeneratorKind::Laguerre, 1.0, 0.5, 2).unwrap();
        let x0 = ChamberPoint::nonnegative(vec![1.0, 2.0]).unwrap();
        let cfg = SdeConfig::new(1e-2, 0.0, 5).unwrap();
        let paths = simulate_sde(&spec, &x0, &cfg, 3).unwrap();
        let m = symmetrized_moment(&paths, &part![2], 1.0, 1).unwrap();
        let exact = shared_context(2, 1.0).unwrap().jack(&part![2]).unwrap().eval(&[1.0, 2.0]);
        assert_eq!(m.mean, exact);
        assert_eq!(m.std_error, 0.0);
        let one = symmetrized_moment(&paths, &Partition::empty(), 1.0, 1).unwrap();
        assert_eq!((one.mean, one.std_error), (1.0, 0.0));
        assert!(simulate_sde(&GeneratorSpec { theta: 0.3, ..spec }, &x0, &cfg, 1).is_err());
        assert!(SdeConfig::new(0.0, 1.0, 5).is_err());
    }

    #[test]
    fn sde_is_worker_count_independent() {
        let spec = GeneratorSpec::new(GeneratorKind::LaguerreOu, 1.0, 0.0, 3).unwrap();
        let x0 = ChamberPoint::nonnegative(vec![0.5, 1.0, 2.0]).unwrap();
        let cfg = SdeConfig { snapshots: 4, ..SdeConfig::new(1e-2, 0.4, 64).unwrap() };
        let a = simulate_sde_with(Execution::Sequential, &spec, &x0, &cfg, 11).unwrap();
        let b = simulate_sde_with(Execution::Parallel, &spec, &x0, &cfg, 11).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.times.len(), 5);
        assert!(a.states.iter().all(|p| p.len() == 5 && p.iter().all(|s| s.windows(2).all(|w| w[0] <= w[1]))));
    }
}
