//! The Dixon–Anderson kernel `L^{N+1,N}`, the kernel `Λ^{N,N}` on the
//! nonnegative chamber, their composition `Λ^{N+1,N} = L Λ`, and the
//! eigenvalue constants `c(λ, N, θ; α)`.
//!
//! Both kernels draw interlacing roots of a random secular function; see
//! [`roots`] for the shared sampler, density and quadrature.

pub mod roots;

pub use roots::{interlaces, DirichletRoots, QuadratureValue};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::jack::jack_eval;
use crate::numerics::special::{logpoch, rising, SignedLog};
use crate::numerics::{RngStream, Scalar};
use crate::partitions::Partition;

/// Which Weyl chamber a point belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// `x_1 ≤ … ≤ x_N`.
    Signed,
    /// `0 ≤ x_1 ≤ … ≤ x_N`.
    Nonnegative,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChamberPoint {
    coords: Vec<f64>,
    flavor: Flavor,
}

impl ChamberPoint {
    pub fn new(coords: Vec<f64>, flavor: Flavor) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidPoint("empty point".into()));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidPoint(format!("non-finite coordinate in {coords:?}")));
        }
        if coords.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidPoint(format!("coordinates must be weakly increasing: {coords:?}")));
        }
        if flavor == Flavor::Nonnegative && coords[0] < 0.0 {
            return Err(Error::InvalidPoint(format!("negative coordinate in nonnegative chamber: {coords:?}")));
        }
        Ok(ChamberPoint { coords, flavor })
    }

    pub fn signed(coords: Vec<f64>) -> Result<Self> {
        Self::new(coords, Flavor::Signed)
    }

    pub fn nonnegative(coords: Vec<f64>) -> Result<Self> {
        Self::new(coords, Flavor::Nonnegative)
    }

    /// Parses comma-separated coordinates such as `"0.5,1,2"`.
    pub fn parse(s: &str, flavor: Flavor) -> Result<Self> {
        let coords = s
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad coordinate {t:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(coords, flavor)
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Strict inequalities throughout; on the nonnegative chamber also `x_1 > 0`.
    pub fn is_strict_interior(&self) -> bool {
        self.coords.windows(2).all(|w| w[0] < w[1]) && (self.flavor == Flavor::Signed || self.coords[0] > 0.0)
    }

    fn require_interior(&self) -> Result<()> {
        if self.is_strict_interior() {
            Ok(())
        } else {
            Err(Error::InvalidPoint(format!("density needs a strictly interior point, got {:?}", self.coords)))
        }
    }
}

impl fmt::Display for ChamberPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelParams {
    pub theta: f64,
    pub alpha: f64,
    pub n: usize,
}

impl KernelParams {
    pub fn new(theta: f64, alpha: f64, n: usize) -> Result<Self> {
        if !(theta > 0.0 && theta.is_finite()) {
            return Err(Error::InvalidParameter(format!("θ must be positive, got {theta}")));
        }
        if !(alpha > -1.0 && alpha.is_finite()) {
            return Err(Error::InvalidParameter(format!("α must exceed -1, got {alpha}")));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("N must be at least 1".into()));
        }
        Ok(KernelParams { theta, alpha, n })
    }

    /// Dirichlet shapes `((α+1)θ, θ, …, θ)` of the kernel `Λ^{N,N}`.
    pub fn lambda_shapes(&self) -> Vec<f64> {
        let mut s = vec![self.theta; self.n + 1];
        s[0] = (self.alpha + 1.0) * self.theta;
        s
    }

    /// Density-based checks are posed for `θ ≥ 1/2`.
    pub fn require_density_range(&self) -> Result<()> {
        require_density_theta(self.theta)
    }
}

fn require_density_theta(theta: f64) -> Result<()> {
    if theta < 0.5 {
        return Err(Error::InvalidParameter(format!(
            "kernel densities are only provided for θ ≥ 1/2, got {theta}; the samplers cover all θ > 0"
        )));
    }
    Ok(())
}

/// The two elementary kernels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KernelKind {
    /// `L^{N+1,N}`: `W^{N+1} → W^N`.
    DixonAnderson,
    /// `Λ^{N,N}`: `W^N_≥ → W^N_≥`.
    Lambda,
}

impl fmt::Display for KernelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KernelKind::DixonAnderson => "L",
            KernelKind::Lambda => "Lambda",
        })
    }
}

impl FromStr for KernelKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "L" | "dixon-anderson" => Ok(KernelKind::DixonAnderson),
            "Lambda" | "lambda" => Ok(KernelKind::Lambda),
            other => Err(Error::Parse(format!("unknown kernel {other:?}"))),
        }
    }
}

/// Root law of `L^{N+1,N}(x, ·)`.
pub fn dixon_anderson_law(x: &[f64], theta: f64) -> Result<DirichletRoots> {
    DirichletRoots::new(x.to_vec(), vec![theta; x.len()])
}

/// Root law of `Λ^{N,N}(x, ·)`: poles `(0, x)`.
pub fn lambda_law(x: &[f64], params: &KernelParams) -> Result<DirichletRoots> {
    let mut poles = Vec::with_capacity(x.len() + 1);
    poles.push(0.0);
    poles.extend_from_slice(x);
    DirichletRoots::new(poles, params.lambda_shapes())
}

pub fn sample_dixon_anderson(x: &ChamberPoint, theta: f64, rng: &mut RngStream) -> Result<ChamberPoint> {
    if x.len() < 2 {
        return Err(Error::InvalidPoint("the Dixon–Anderson kernel needs at least two coordinates".into()));
    }
    let y = dixon_anderson_law(x.coords(), theta)?.sample(rng);
    ChamberPoint::new(y, x.flavor())
}

pub fn sample_lambda(x: &ChamberPoint, params: &KernelParams, rng: &mut RngStream) -> Result<ChamberPoint> {
    check_nonnegative(x, params.n)?;
    let y = lambda_law(x.coords(), params)?.sample(rng);
    ChamberPoint::nonnegative(y)
}

/// `L^{N+1,N}` followed by `Λ^{N,N}`.
pub fn sample_composed(x: &ChamberPoint, params: &KernelParams, rng: &mut RngStream) -> Result<ChamberPoint> {
    check_nonnegative(x, params.n + 1)?;
    let mid = sample_dixon_anderson(x, params.theta, rng)?;
    sample_lambda(&ChamberPoint::nonnegative(mid.into_coords())?, params, rng)
}

fn check_nonnegative(x: &ChamberPoint, len: usize) -> Result<()> {
    if x.flavor() != Flavor::Nonnegative {
        return Err(Error::InvalidPoint("this kernel acts on the nonnegative chamber".into()));
    }
    if x.len() != len {
        return Err(Error::InvalidPoint(format!("expected {len} coordinates, got {}", x.len())));
    }
    Ok(())
}

/// A density value together with its logarithm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Density {
    pub value: f64,
    pub log_value: f64,
}

impl Density {
    fn from_log(log_value: f64) -> Self {
        Density { value: log_value.exp(), log_value }
    }
}

/// Density of `L^{N+1,N}(x, dy)`; zero off the interlacing set.
pub fn density_dixon_anderson(x: &ChamberPoint, y: &[f64], theta: f64) -> Result<Density> {
    require_density_theta(theta)?;
    x.require_interior()?;
    Ok(Density::from_log(dixon_anderson_law(x.coords(), theta)?.log_density(y)?))
}

/// Density of `Λ^{N,N}(x, dy)`; zero off `{0 ≤ y_1 ≤ x_1 ≤ … ≤ y_N ≤ x_N}`.
pub fn density_lambda(x: &ChamberPoint, y: &[f64], params: &KernelParams) -> Result<Density> {
    params.require_density_range()?;
    check_nonnegative(x, params.n)?;
    x.require_interior()?;
    Ok(Density::from_log(lambda_law(x.coords(), params)?.log_density(y)?))
}

/// `c(λ, N, θ; α) = ∏_{i=1}^N ((N+α+1−i)θ)_{λ_i} / ((N+α+2−i)θ)_{λ_i}`.
pub fn c_eigenvalue(lambda: &Partition, n: usize, theta: f64, alpha: f64) -> Result<f64> {
    check_length(lambda, n)?;
    let mut acc = SignedLog::ONE;
    for i in 1..=n {
        let k = lambda.part(i - 1) as f64;
        let top = logpoch((n as f64 + alpha + 1.0 - i as f64) * theta, k)?;
        let bottom = logpoch((n as f64 + alpha + 2.0 - i as f64) * theta, k)?;
        if bottom.sign == 0 {
            return Err(Error::Pole(format!("vanishing denominator in c({lambda}, {n}, {theta}; {alpha})")));
        }
        acc = acc * top / bottom;
    }
    Ok(acc.value())
}

/// [`c_eigenvalue`] in any scalar field, e.g. exact rationals.
pub fn c_eigenvalue_exact<F: Scalar>(lambda: &Partition, n: usize, theta: &F, alpha: &F) -> Result<F> {
    check_length(lambda, n)?;
    let mut num = F::one();
    let mut den = F::one();
    for i in 1..=n {
        let k = lambda.part(i - 1);
        let base = (F::from_count(n) + alpha.clone() + F::one() - F::from_count(i)) * theta.clone();
        num = num * rising(&base, k);
        den = den * rising(&(base + theta.clone()), k);
    }
    if den.is_zero() {
        return Err(Error::Pole(format!("vanishing denominator in c({lambda}, {n}, θ; α)")));
    }
    Ok(num / den)
}

fn check_length(lambda: &Partition, n: usize) -> Result<()> {
    if lambda.len() > n {
        return Err(Error::TooManyParts { partition: lambda.clone(), len: lambda.len(), n_vars: n });
    }
    Ok(())
}

/// Both sides of an eigenrelation checked by quadrature.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub error_estimate: f64,
}

impl EigenCheck {
    pub fn relative_error(&self) -> f64 {
        (self.lhs - self.rhs).abs() / self.rhs.abs().max(f64::MIN_POSITIVE)
    }
}

/// Default nodes per coordinate for [`eigen_check_quadrature`].
pub const EIGEN_QUADRATURE_NODES: usize = 48;

/// `∫ P_λ(y) K(x, dy)` by singular Gauss–Jacobi quadrature against
/// `c · P_λ(x)`.
///
/// For `L` the point `x` has `N+1` coordinates and `c = c(λ, N, θ)`; for `Λ`
/// it has `N` and `c = c(λ, N, θ; α)`. `N` must be 1 or 2.
pub fn eigen_check_quadrature(lambda: &Partition, x: &ChamberPoint, params: &KernelParams, which: KernelKind) -> Result<EigenCheck> {
    eigen_check_with(lambda, x, params, which, EIGEN_QUADRATURE_NODES, 1e-6)
}

pub fn eigen_check_with(
    lambda: &Partition,
    x: &ChamberPoint,
    params: &KernelParams,
    which: KernelKind,
    nodes: usize,
    tolerance: f64,
) -> Result<EigenCheck> {
    let n = params.n;
    if !(1..=2).contains(&n) {
        return Err(Error::InvalidParameter(format!("quadrature eigen checks cover N = 1, 2; got {n}")));
    }
    params.require_density_range()?;
    check_length(lambda, n)?;
    x.require_interior()?;
    let (law, c) = match which {
        KernelKind::DixonAnderson => {
            if x.len() != n + 1 {
                return Err(Error::InvalidPoint(format!("expected {} coordinates, got {}", n + 1, x.len())));
            }
            (dixon_anderson_law(x.coords(), params.theta)?, c_eigenvalue(lambda, n, params.theta, 0.0)?)
        }
        KernelKind::Lambda => {
            check_nonnegative(x, n)?;
            (lambda_law(x.coords(), params)?, c_eigenvalue(lambda, n, params.theta, params.alpha)?)
        }
    };
    let ctx = crate::jack::shared_context(n, params.theta)?;
    let p = ctx.jack(lambda)?;
    let integral = law.integrate(nodes, tolerance, &|y| p.eval(y))?;
    let rhs = c * jack_eval(lambda, x.coords(), params.theta)?;
    Ok(EigenCheck { lhs: integral.value, rhs, error_estimate: integral.error_estimate })
}
