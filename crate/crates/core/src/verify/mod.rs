//! Named checks of the identities, run over parameter grids and reported as
//! JSON lines.
//!
//! A check is a grid generator plus a runner. The runner turns one grid point
//! into one or more [`Outcome`]s (Monte Carlo checks report one outcome per
//! moment), and each outcome becomes a [`CheckReport`]. Grid points run in
//! parallel; reports come back in grid order.

pub mod config;
mod deterministic;
mod monte_carlo;

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::derive_seed;
use crate::numerics::scalar::{parse_rational, Rational};
use crate::parallel::{map_indexed_with, Execution};
use crate::partitions::Partition;
use crate::stats::MeanEstimate;

pub use config::{GridConfig, Overrides, VerifyConfig};

/// Monte Carlo agreement threshold in standard errors.
pub const MC_SIGMAS: f64 = 4.0;

/// Parameters of one grid point. Unused axes stay `None` and are omitted
/// from the JSON output.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CheckParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Partition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lmax: Option<Partition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shift: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub draws: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

fn required<T: Clone>(v: &Option<T>, name: &str) -> Result<T> {
    v.clone().ok_or_else(|| Error::InvalidParameter(format!("grid point has no `{name}`")))
}

impl CheckParams {
    pub fn theta(&self) -> Result<f64> {
        required(&self.theta, "theta")
    }

    pub fn alpha(&self) -> Result<f64> {
        required(&self.alpha, "alpha")
    }

    pub fn n(&self) -> Result<usize> {
        required(&self.n, "N")
    }

    pub fn lambda(&self) -> Result<Partition> {
        required(&self.lambda, "lambda")
    }

    pub fn lmax(&self) -> Result<Partition> {
        required(&self.lmax, "lmax")
    }

    pub fn t(&self) -> Result<f64> {
        required(&self.t, "t")
    }

    pub fn x(&self) -> Result<Vec<f64>> {
        required(&self.x, "x")
    }

    pub fn draws(&self) -> Result<usize> {
        required(&self.draws, "draws")
    }

    pub fn seed(&self) -> Result<u64> {
        required(&self.seed, "seed")
    }

    pub fn kind(&self) -> Result<String> {
        required(&self.kind, "kind")
    }

    pub fn field(&self) -> Result<crate::rmt::Field> {
        required(&self.field, "field")?.parse()
    }
}

/// Exact rational for a grid value, read from its shortest decimal form.
pub(crate) fn exact(v: f64) -> Result<Rational> {
    parse_rational(&v.to_string()).ok_or_else(|| Error::InvalidParameter(format!("{v} has no exact decimal form")))
}

/// What one outcome compares.
#[derive(Clone, Debug, PartialEq)]
pub enum Measure {
    /// A deterministic residual against a tolerance, optionally with the
    /// verdict of the same identity in exact rational arithmetic.
    Residual { lhs: Option<f64>, rhs: Option<f64>, residual: f64, tolerance: f64, exact: Option<bool> },
    /// Two Monte Carlo sides (or one side and an exact value) within
    /// `sigmas` standard errors.
    Statistical { lhs: f64, rhs: f64, std_error: f64, sigmas: f64 },
    /// A Kolmogorov–Smirnov distance against its critical value.
    Ks { statistic: f64, critical: f64 },
}

impl Measure {
    pub fn residual(residual: f64, tolerance: f64) -> Self {
        Measure::Residual { lhs: None, rhs: None, residual, tolerance, exact: None }
    }

    pub fn sides(lhs: f64, rhs: f64, residual: f64, tolerance: f64) -> Self {
        Measure::Residual { lhs: Some(lhs), rhs: Some(rhs), residual, tolerance, exact: None }
    }

    pub fn with_exact(self, verdict: bool) -> Self {
        match self {
            Measure::Residual { lhs, rhs, residual, tolerance, .. } => {
                Measure::Residual { lhs, rhs, residual, tolerance, exact: Some(verdict) }
            }
            other => other,
        }
    }

    pub fn against_value(estimate: &MeanEstimate, target: f64) -> Self {
        Measure::Statistical { lhs: estimate.mean, rhs: target, std_error: estimate.std_error, sigmas: MC_SIGMAS }
    }

    /// Two independent estimates, judged on their combined standard error.
    pub fn against_estimate(a: &MeanEstimate, b: &MeanEstimate) -> Self {
        Measure::Statistical { lhs: a.mean, rhs: b.mean, std_error: a.combined_se(b), sigmas: MC_SIGMAS }
    }
}

/// One comparison from a grid point, optionally labelled by a partition or
/// a variant name.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub lambda: Option<Partition>,
    pub variant: Option<String>,
    pub measure: Measure,
}

impl From<Measure> for Outcome {
    fn from(measure: Measure) -> Self {
        Outcome { lambda: None, variant: None, measure }
    }
}

impl Outcome {
    pub fn for_lambda(lambda: &Partition, measure: Measure) -> Self {
        Outcome { lambda: Some(lambda.clone()), variant: None, measure }
    }

    pub fn variant(mut self, name: &str) -> Self {
        self.variant = Some(name.to_string());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct CheckReport {
    pub check_id: String,
    pub parameters: CheckParams,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<f64>,
    pub residual: Option<f64>,
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub standard_error: Option<f64>,
    /// Verdict in exact rational arithmetic, where the check has one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<bool>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_seconds: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CheckReport {
    fn from_outcome(check_id: &str, params: &CheckParams, outcome: Outcome, runtime: f64) -> Self {
        let mut parameters = params.clone();
        if outcome.lambda.is_some() {
            parameters.lambda = outcome.lambda;
        }
        if outcome.variant.is_some() {
            parameters.variant = outcome.variant;
        }
        let mut report = CheckReport {
            check_id: check_id.to_string(),
            parameters,
            lhs: None,
            rhs: None,
            residual: None,
            tolerance: None,
            standard_error: None,
            exact: None,
            pass: false,
            runtime_seconds: Some(runtime),
            error: None,
        };
        match outcome.measure {
            Measure::Residual { lhs, rhs, residual, tolerance, exact } => {
                report.lhs = lhs;
                report.rhs = rhs;
                report.residual = Some(residual);
                report.tolerance = Some(tolerance);
                report.exact = exact;
                report.pass = residual <= tolerance && exact != Some(false);
            }
            Measure::Statistical { lhs, rhs, std_error, sigmas } => {
                let residual = (lhs - rhs).abs();
                report.lhs = Some(lhs);
                report.rhs = Some(rhs);
                report.residual = Some(residual);
                report.tolerance = Some(sigmas * std_error);
                report.standard_error = Some(std_error);
                report.pass = residual <= sigmas * std_error;
            }
            Measure::Ks { statistic, critical } => {
                report.residual = Some(statistic);
                report.tolerance = Some(critical);
                report.pass = statistic <= critical;
            }
        }
        report
    }

    fn from_error(check_id: &str, params: &CheckParams, err: &Error, runtime: f64) -> Self {
        CheckReport {
            check_id: check_id.to_string(),
            parameters: params.clone(),
            lhs: None,
            rhs: None,
            residual: None,
            tolerance: None,
            standard_error: None,
            exact: None,
            pass: false,
            runtime_seconds: Some(runtime),
            error: Some(err.to_string()),
        }
    }

    /// The report without its wall-clock time, for reproducibility checks.
    pub fn without_runtime(&self) -> Self {
        CheckReport { runtime_seconds: None, ..self.clone() }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

type GridFn = fn(&GridConfig, &VerifyConfig) -> Vec<CheckParams>;
type RunFn = fn(&CheckParams) -> Result<Vec<Outcome>>;

/// A named check: how to enumerate its grid and how to run one point.
pub struct CheckDef {
    pub id: &'static str,
    pub summary: &'static str,
    pub monte_carlo: bool,
    grid: GridFn,
    run: RunFn,
}

impl std::fmt::Debug for CheckDef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CheckDef").field("id", &self.id).field("monte_carlo", &self.monte_carlo).finish()
    }
}

macro_rules! check {
    ($id:literal, $mc:expr, $module:ident :: $name:ident, $summary:literal) => {
        CheckDef { id: $id, summary: $summary, monte_carlo: $mc, grid: $module::grids::$name, run: $module::$name }
    };
}

static CHECKS: &[CheckDef] = &[
    check!("jack-schur", false, deterministic::jack_schur, "θ=1 Jack polynomials equal Schur bialternants"),
    check!("jack-operators", false, deterministic::jack_operators, "E₀, E₁, D₁, D₂ matrices match differentiation"),
    check!("jack-ones", false, deterministic::jack_ones, "product formula for P_λ(1_N)"),
    check!("density-normalization", false, deterministic::density_normalization, "kernel densities integrate to one"),
    check!("lemma-2.1", false, deterministic::lemma_2_1, "L eigenrelation by quadrature"),
    check!("thm-2.2-quadrature", false, deterministic::thm_2_2_quadrature, "Λ eigenrelation by quadrature"),
    check!("c-shift", false, deterministic::c_shift, "rectangle shift of the eigenvalue constants"),
    check!("gen-intertwine", false, deterministic::gen_intertwine, "generator intertwinings, Laguerre and OU"),
    check!("thm-1.7-matrix", false, deterministic::thm_1_7_matrix, "Λ intertwines the α+1 and α semigroups"),
    check!("dixon-anderson-shift", false, deterministic::dixon_anderson_shift, "L intertwines N+1 and N particle semigroups"),
    check!("thm-1.6-composed", false, deterministic::thm_1_6_composed, "composed kernel intertwines N+1 and N semigroups"),
    check!("appB-ou", false, deterministic::app_b_ou, "OU semigroup intertwinings and e^{-|λ|t} on Laguerre polynomials"),
    check!("laguerre-eigen", false, deterministic::laguerre_eigen, "Laguerre polynomials are generator eigenfunctions"),
    check!("rodrigues", false, deterministic::rodrigues, "Rodrigues formula for Laguerre polynomials"),
    check!("thm-A2", false, deterministic::thm_a2, "Λ maps Laguerre polynomials at a to a+θ"),
    check!("c-normalization", false, deterministic::c_normalization, "Σ C_λ = (x₁+…+x_N)^n"),
    check!("pfq-shift", false, deterministic::pfq_shift, "parameter shift of truncated hypergeometric series"),
    check!("kernel-ks", true, monte_carlo::kernel_ks, "kernel samplers against the exact y₁ law"),
    check!("kernel-mc", true, monte_carlo::kernel_mc, "Monte Carlo kernel eigenrelations at N=3"),
    check!("sde-moments", true, monte_carlo::sde_moments, "simulated moments against the semigroup matrix"),
    check!("thm-1.7-measure", true, monte_carlo::thm_1_7_measure, "Λ intertwining of the process laws"),
    check!("rmt-projection", true, monte_carlo::rmt_projection, "eigenvalue projection realises L"),
    check!("rmt-lambda", true, monte_carlo::rmt_lambda, "truncated radial part realises Λ"),
    check!("rmt-thm-6.2", true, monte_carlo::rmt_thm_6_2, "corner truncation equals the pushed-forward radial part"),
    check!("rmt-fixedpoint", true, monte_carlo::rmt_fixedpoint, "Laguerre ensembles are carried N+1 → N"),
];

/// Every check, in report order.
pub fn checks() -> &'static [CheckDef] {
    CHECKS
}

pub fn find_check(id: &str) -> Result<&'static CheckDef> {
    CHECKS.iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownCheck(id.to_string()))
}

/// Each identity the library verifies and the single check that covers it.
pub static IDENTITIES: &[(&str, &str)] = &[
    ("Jack polynomials at θ=1 are Schur polynomials", "jack-schur"),
    ("Jack-basis actions of E₀, E₁, D₁, D₂", "jack-operators"),
    ("evaluation of P_λ at 1_N", "jack-ones"),
    ("the Dixon–Anderson and Λ densities are probability densities", "density-normalization"),
    ("Dixon–Anderson kernel eigenrelation", "lemma-2.1"),
    ("Λ kernel eigenrelation", "thm-2.2-quadrature"),
    ("rectangle shift of c(λ, N, θ; α)", "c-shift"),
    ("kernel eigenrelations beyond quadrature reach", "kernel-mc"),
    ("kernel samplers realise the kernel densities", "kernel-ks"),
    ("generator intertwinings", "gen-intertwine"),
    ("Λ intertwining of Laguerre semigroups", "thm-1.7-matrix"),
    ("Dixon–Anderson intertwining of Laguerre semigroups", "dixon-anderson-shift"),
    ("composed-kernel intertwining of Laguerre semigroups", "thm-1.6-composed"),
    ("Ornstein–Uhlenbeck intertwinings and Laguerre decay", "appB-ou"),
    ("moment evolution of the particle system", "sde-moments"),
    ("intertwining of process laws", "thm-1.7-measure"),
    ("Laguerre eigenequation", "laguerre-eigen"),
    ("Rodrigues formula", "rodrigues"),
    ("Λ on multivariate Laguerre polynomials", "thm-A2"),
    ("C-normalisation of Jack polynomials", "c-normalization"),
    ("hypergeometric parameter shift", "pfq-shift"),
    ("eigenvalue projection of invariant matrices", "rmt-projection"),
    ("truncated radial part", "rmt-lambda"),
    ("corner truncation of bi-invariant matrices", "rmt-thm-6.2"),
    ("Laguerre ensemble fixed point", "rmt-fixedpoint"),
];

/// Options for a verification run.
#[derive(Clone, Debug)]
pub struct RunOptions {
    pub seed: u64,
    pub overrides: Overrides,
    pub execution: Execution,
}

impl RunOptions {
    pub fn new(seed: u64) -> Self {
        RunOptions { seed, overrides: Overrides::default(), execution: Execution::default() }
    }
}

/// Grid points of `check` with their derived seeds.
pub fn plan(check: &CheckDef, config: &VerifyConfig, options: &RunOptions) -> Vec<CheckParams> {
    let grid = config.grid(check.id).with_overrides(&options.overrides);
    let mut points = (check.grid)(&grid, config);
    for p in &mut points {
        p.seed = None;
        let label = format!("{}/{}", check.id, serde_json::to_string(p).expect("params serialize"));
        p.seed = Some(derive_seed(options.seed, &label));
    }
    points
}

/// Runs one grid point, turning an error into a failing report.
pub fn run_point(check: &CheckDef, params: &CheckParams) -> Vec<CheckReport> {
    let start = Instant::now();
    let result = (check.run)(params);
    let runtime = start.elapsed().as_secs_f64();
    match result {
        Ok(outcomes) if !outcomes.is_empty() => {
            outcomes.into_iter().map(|o| CheckReport::from_outcome(check.id, params, o, runtime)).collect()
        }
        Ok(_) => vec![CheckReport::from_error(check.id, params, &Error::InvalidParameter("no comparisons".into()), runtime)],
        Err(e) => vec![CheckReport::from_error(check.id, params, &e, runtime)],
    }
}

/// All reports of one check, in grid order. An empty grid is reported as a
/// failure rather than passing vacuously.
pub fn run_check(check: &CheckDef, config: &VerifyConfig, options: &RunOptions) -> Vec<CheckReport> {
    let points = plan(check, config, options);
    if points.is_empty() {
        let err = Error::InvalidParameter("the grid for this check is empty".into());
        return vec![CheckReport::from_error(check.id, &CheckParams::default(), &err, 0.0)];
    }
    map_indexed_with(options.execution, points.len(), |i| run_point(check, &points[i])).into_iter().flatten().collect()
}

/// The checks named by `selector`: one id, or `all` (deterministic only
/// when `quick`).
pub fn select(selector: &str, quick: bool) -> Result<Vec<&'static CheckDef>> {
    if selector == "all" {
        Ok(CHECKS.iter().filter(|c| !(quick && c.monte_carlo)).collect())
    } else {
        Ok(vec![find_check(selector)?])
    }
}

pub fn run_selection(selector: &str, quick: bool, config: &VerifyConfig, options: &RunOptions) -> Result<Vec<CheckReport>> {
    Ok(select(selector, quick)?.into_iter().flat_map(|c| run_check(c, config, options)).collect())
}

/// Builds grids as Cartesian products, one axis at a time.
#[derive(Clone, Debug)]
pub(crate) struct Plan(Vec<CheckParams>);

impl Plan {
    pub fn start() -> Self {
        Plan(vec![CheckParams::default()])
    }

    /// Expands each point by the values `axis` gives for it.
    pub fn over<T>(self, axis: impl Fn(&CheckParams) -> Vec<T>, set: impl Fn(&mut CheckParams, T)) -> Self {
        Plan(
            self.0
                .into_iter()
                .flat_map(|p| {
                    axis(&p)
                        .into_iter()
                        .map(|v| {
                            let mut q = p.clone();
                            set(&mut q, v);
                            q
                        })
                        .collect::<Vec<_>>()
                })
                .collect(),
        )
    }

    pub fn thetas(self, v: &[f64]) -> Self {
        self.over(|_| v.to_vec(), |p, x| p.theta = Some(x))
    }

    pub fn alphas(self, v: &[f64]) -> Self {
        self.over(|_| v.to_vec(), |p, x| p.alpha = Some(x))
    }

    pub fn ns(self, v: &[usize]) -> Self {
        self.over(|_| v.to_vec(), |p, x| p.n = Some(x))
    }

    pub fn ts(self, v: &[f64]) -> Self {
        self.over(|_| v.to_vec(), |p, x| p.t = Some(x))
    }

    pub fn kinds(self, v: &[String]) -> Self {
        self.over(|_| v.to_vec(), |p, x| p.kind = Some(x))
    }

    pub fn fields(self, v: &[String]) -> Self {
        self.over(|_| v.to_vec(), |p, x| p.field = Some(x))
    }

    pub fn lambdas(self, g: &GridConfig) -> Self {
        self.over(|p| g.partitions(p.n.unwrap_or(0)), |p, l| p.lambda = Some(l))
    }

    pub fn lmaxes(self, g: &GridConfig) -> Self {
        self.over(|p| g.truncations(p.n.unwrap_or(0)), |p, l| p.lmax = Some(l))
    }

    /// Chamber points with `N + extra` coordinates.
    pub fn points(self, g: &GridConfig, config: &VerifyConfig, extra: impl Fn(&CheckParams) -> (usize, bool)) -> Self {
        self.over(
            |p| match &g.x {
                Some(x) => vec![x.clone()],
                None => {
                    let (extra, signed) = extra(p);
                    config.points(p.n.unwrap_or(0) + extra, signed)
                }
            },
            |p, x| p.x = Some(x),
        )
    }

    /// Only the first configured point, for Monte Carlo checks.
    pub fn first_point(self, g: &GridConfig, config: &VerifyConfig, extra: impl Fn(&CheckParams) -> (usize, bool)) -> Self {
        self.over(
            |p| match &g.x {
                Some(x) => vec![x.clone()],
                None => {
                    let (extra, signed) = extra(p);
                    config.points(p.n.unwrap_or(0) + extra, signed).into_iter().take(1).collect()
                }
            },
            |p, x| p.x = Some(x),
        )
    }

    pub fn with(self, set: impl Fn(&mut CheckParams)) -> Self {
        self.over(|_| vec![()], |p, ()| set(p))
    }

    pub fn build(self) -> Vec<CheckParams> {
        self.0
    }
}
