//! Random-matrix realisations of the kernels at `θ = 1/2` (real matrices)
//! and `θ = 1` (complex matrices): Haar sampling, corner eigenvalues,
//! truncated Haar radial parts, the corner-truncation identity for
//! bi-invariant matrices, and Laguerre ensembles.
//!
//! Gaussian matrices have density proportional to `exp(−Tr X*X)`, i.e. every
//! real component has variance 1/2, so that the squared singular values of
//! an `(N+α)×N` Gaussian matrix follow the Laguerre ensemble with weight
//! `x^{θ(α+1)−1} e^{−x}`.

use std::fmt;
use std::str::FromStr;

use nalgebra::{Complex, ComplexField, DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::{sample_composed, ChamberPoint, KernelParams};
use crate::numerics::RngStream;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Field {
    /// `θ = 1/2`.
    Real,
    /// `θ = 1`.
    Complex,
}

impl Field {
    pub const ALL: [Field; 2] = [Field::Real, Field::Complex];

    pub fn theta(self) -> f64 {
        match self {
            Field::Real => 0.5,
            Field::Complex => 1.0,
        }
    }

    pub fn from_theta(theta: f64) -> Result<Self> {
        if theta == 0.5 {
            Ok(Field::Real)
        } else if theta == 1.0 {
            Ok(Field::Complex)
        } else {
            Err(Error::InvalidParameter(format!("matrix realisations exist for θ = 1/2 or 1, got {theta}")))
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Field::Real => "real",
            Field::Complex => "complex",
        })
    }
}

impl FromStr for Field {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "real" => Ok(Field::Real),
            "complex" => Ok(Field::Complex),
            other => Err(Error::Parse(format!("unknown field {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatrixEnsembleParams {
    pub field: Field,
    pub m: usize,
    pub n: usize,
    pub alpha: usize,
}

impl MatrixEnsembleParams {
    pub fn new(field: Field, m: usize, n: usize, alpha: usize) -> Result<Self> {
        if m < n || n == 0 {
            return Err(Error::InvalidParameter(format!("need m ≥ n ≥ 1, got m={m}, n={n}")));
        }
        Ok(MatrixEnsembleParams { field, m, n, alpha })
    }
}

/// Matrix entry types with a standard Gaussian of total variance one.
pub trait Entry: ComplexField<RealField = f64> + Copy {
    fn gaussian(rng: &mut RngStream) -> Self;
}

impl Entry for f64 {
    fn gaussian(rng: &mut RngStream) -> Self {
        rng.standard_normal() * std::f64::consts::FRAC_1_SQRT_2
    }
}

impl Entry for Complex<f64> {
    fn gaussian(rng: &mut RngStream) -> Self {
        let re = rng.standard_normal();
        let im = rng.standard_normal();
        Complex::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }
}

pub fn gaussian_matrix<T: Entry>(rows: usize, cols: usize, rng: &mut RngStream) -> DMatrix<T> {
    // row-major fill so the draw order does not depend on storage layout
    let mut m = DMatrix::<T>::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = T::gaussian(rng);
        }
    }
    m
}

/// Haar matrix: QR of a Gaussian matrix with the phases of `diag R` moved
/// into `Q`.
pub fn haar<T: Entry>(n: usize, rng: &mut RngStream) -> DMatrix<T> {
    let qr = gaussian_matrix::<T>(n, n, rng).qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        let d = r[(j, j)];
        let modulus = d.modulus();
        let phase = if modulus > 0.0 { d.unscale(modulus) } else { T::one() };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// A Haar unitary or orthogonal matrix.
#[derive(Clone, Debug, PartialEq)]
pub enum HaarMatrix {
    Real(DMatrix<f64>),
    Complex(DMatrix<Complex<f64>>),
}

impl HaarMatrix {
    /// `max |U*U − I|`.
    pub fn unitarity_defect(&self) -> f64 {
        match self {
            HaarMatrix::Real(u) => defect(u),
            HaarMatrix::Complex(u) => defect(u),
        }
    }
}

fn defect<T: Entry>(u: &DMatrix<T>) -> f64 {
    let g = u.adjoint() * u;
    let n = g.nrows();
    (g - DMatrix::<T>::identity(n, n)).iter().map(|v| v.modulus()).fold(0.0, f64::max)
}

pub fn haar_sample(field: Field, n: usize, rng: &mut RngStream) -> HaarMatrix {
    match field {
        Field::Real => HaarMatrix::Real(haar(n, rng)),
        Field::Complex => HaarMatrix::Complex(haar(n, rng)),
    }
}

/// Ascending eigenvalues of a Hermitian matrix.
fn hermitian_eigenvalues<T: Entry>(m: DMatrix<T>) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    ev
}

/// Squared singular values of `X`, ascending and clipped at zero.
pub fn radial_part<T: Entry>(x: &DMatrix<T>) -> Vec<f64> {
    hermitian_eigenvalues(x.adjoint() * x).into_iter().map(|v| v.max(0.0)).collect()
}

/// Moves each `y_i` into `[lo_i, hi_i]`, the gaps of `poles`. The eigenvalue
/// inequalities hold exactly in exact arithmetic; the clip only removes
/// rounding-level violations, which are asserted to be small.
fn clip_to_gaps(y: &mut [f64], poles: &[f64]) {
    let scale = poles.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    for (i, v) in y.iter_mut().enumerate() {
        let (lo, hi) = (poles[i], poles[i + 1]);
        debug_assert!(*v >= lo - 1e-9 * scale && *v <= hi + 1e-9 * scale, "interlacing violated: {v} ∉ [{lo}, {hi}]");
        *v = v.clamp(lo, hi);
    }
}

fn corner_eigenvalues<T: Entry>(x: &[f64], rng: &mut RngStream) -> Vec<f64> {
    let n1 = x.len();
    let u = haar::<T>(n1, rng);
    let d = DMatrix::<T>::from_diagonal(&nalgebra::DVector::from_iterator(n1, x.iter().map(|&v| T::from_real(v))));
    let h = u.adjoint() * d * &u;
    let corner = h.view((0, 0), (n1 - 1, n1 - 1)).into_owned();
    let corner = (&corner + corner.adjoint()).unscale(2.0);
    let mut y = hermitian_eigenvalues(corner);
    clip_to_gaps(&mut y, x);
    y
}

/// Eigenvalues of the top-left `N×N` corner of `U* diag(x) U` for Haar `U`;
/// distributed as `L^{N+1,N}(x, ·)` at `θ` of the field.
pub fn eigen_projection_sample(x: &ChamberPoint, field: Field, rng: &mut RngStream) -> Result<ChamberPoint> {
    if x.len() < 2 {
        return Err(Error::InvalidPoint("corner projection needs at least two coordinates".into()));
    }
    let y = match field {
        Field::Real => corner_eigenvalues::<f64>(x.coords(), rng),
        Field::Complex => corner_eigenvalues::<Complex<f64>>(x.coords(), rng),
    };
    ChamberPoint::new(y, x.flavor())
}

fn truncated_radial<T: Entry>(z: &[f64], alpha: usize, rng: &mut RngStream) -> Vec<f64> {
    let n = z.len();
    let v = haar::<T>(n + alpha + 1, rng);
    let mut x = v.view((0, 0), (n + alpha, n)).into_owned();
    for (j, &zj) in z.iter().enumerate() {
        let s = T::from_real(zj.sqrt());
        for i in 0..n + alpha {
            x[(i, j)] *= s;
        }
    }
    let mut y = radial_part(&x);
    let mut poles = Vec::with_capacity(n + 1);
    poles.push(0.0);
    poles.extend_from_slice(z);
    clip_to_gaps(&mut y, &poles);
    y
}

/// Squared singular values of the `(N+α)×N` corner of a Haar
/// `(N+α+1)`-matrix times `diag(√z)`; distributed as `Λ^{N,N}(z, ·)`.
pub fn truncated_radial_sample(z: &ChamberPoint, field: Field, alpha: usize, rng: &mut RngStream) -> Result<ChamberPoint> {
    let y = match field {
        Field::Real => truncated_radial::<f64>(z.coords(), alpha, rng),
        Field::Complex => truncated_radial::<Complex<f64>>(z.coords(), alpha, rng),
    };
    ChamberPoint::nonnegative(y)
}

/// Bi-invariant `(N+α+1)×(N+1)` matrices used for the corner-truncation
/// identity.
#[derive(Clone, Debug, PartialEq)]
pub enum BiInvariantSampler {
    /// Gaussian entries.
    Gaussian,
    /// `V D U` with Haar `V`, `U` and `D = [diag(√x); 0]`.
    HaarDiagonal(Vec<f64>),
}

fn bi_invariant<T: Entry>(sampler: &BiInvariantSampler, n: usize, alpha: usize, rng: &mut RngStream) -> DMatrix<T> {
    let (rows, cols) = (n + alpha + 1, n + 1);
    match sampler {
        BiInvariantSampler::Gaussian => gaussian_matrix(rows, cols, rng),
        BiInvariantSampler::HaarDiagonal(x) => {
            let v = haar::<T>(rows, rng);
            let u = haar::<T>(cols, rng);
            let mut d = DMatrix::<T>::zeros(rows, cols);
            for (i, &xi) in x.iter().enumerate() {
                d[(i, i)] = T::from_real(xi.sqrt());
            }
            v * d * u
        }
    }
}

/// One draw of each side of the corner-truncation identity.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncationPair {
    /// `rad(X)` pushed through `Λ^{N+1,N}`.
    pub pushed: Vec<f64>,
    /// `rad` of the `(N+α)×N` corner of an independent copy of `X`.
    pub truncated: Vec<f64>,
}

/// Both sides of `P_rad^{N+1}[X] Λ^{N+1,N} = P_rad^N[corner of X]` from
/// two independent draws of `X`, so the two samples are independent.
pub fn corner_truncation_pushforward(
    sampler: &BiInvariantSampler,
    field: Field,
    n: usize,
    alpha: usize,
    rng: &mut RngStream,
) -> Result<TruncationPair> {
    if let BiInvariantSampler::HaarDiagonal(x) = sampler {
        if x.len() != n + 1 || x.iter().any(|&v| v < 0.0) {
            return Err(Error::InvalidPoint(format!("need {} nonnegative singular values squared, got {x:?}", n + 1)));
        }
    }
    let params = KernelParams::new(field.theta(), alpha as f64, n)?;
    let (rad_full, rad_corner) = match field {
        Field::Real => two_sides::<f64>(sampler, n, alpha, rng),
        Field::Complex => two_sides::<Complex<f64>>(sampler, n, alpha, rng),
    };
    let pushed = sample_composed(&ChamberPoint::nonnegative(rad_full)?, &params, rng)?.into_coords();
    Ok(TruncationPair { pushed, truncated: rad_corner })
}

fn two_sides<T: Entry>(sampler: &BiInvariantSampler, n: usize, alpha: usize, rng: &mut RngStream) -> (Vec<f64>, Vec<f64>) {
    let a = bi_invariant::<T>(sampler, n, alpha, rng);
    let b = bi_invariant::<T>(sampler, n, alpha, rng);
    let corner = b.view((0, 0), (n + alpha, n)).into_owned();
    (radial_part(&a), radial_part(&corner))
}

/// How to draw from the Laguerre ensemble.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnsembleMethod {
    /// Squared singular values of an `(N+α)×N` Gaussian matrix; `θ ∈ {1/2, 1}`
    /// and integer `α`.
    Gaussian,
    /// Bidiagonal chi model, any `θ > 0`, `α > −1`.
    Bidiagonal,
}

/// A draw from `m_{θ,α}^N ∝ ∏|x_j − x_i|^{2θ} ∏ x_i^{θ(α+1)−1} e^{−x_i}`.
pub fn laguerre_ensemble_sample(n: usize, theta: f64, alpha: f64, method: EnsembleMethod, rng: &mut RngStream) -> Result<ChamberPoint> {
    KernelParams::new(theta, alpha, n)?;
    let x = match method {
        EnsembleMethod::Gaussian => {
            let field = Field::from_theta(theta)?;
            if alpha.fract() != 0.0 || alpha < 0.0 {
                return Err(Error::InvalidParameter(format!("the Gaussian construction needs integer α ≥ 0, got {alpha}")));
            }
            let rows = n + alpha as usize;
            match field {
                Field::Real => radial_part(&gaussian_matrix::<f64>(rows, n, rng)),
                Field::Complex => radial_part(&gaussian_matrix::<Complex<f64>>(rows, n, rng)),
            }
        }
        EnsembleMethod::Bidiagonal => {
            // lower bidiagonal: diagonal χ_{2θ(N+α−i+1)}, subdiagonal χ_{2θ(N−i)};
            // eigenvalues of B Bᵀ carry e^{−x/2}, hence the halving
            let mut b = DMatrix::<f64>::zeros(n, n);
            for i in 1..=n {
                b[(i - 1, i - 1)] = rng.chi(2.0 * theta * (n as f64 + alpha - i as f64 + 1.0));
                if i < n {
                    b[(i, i - 1)] = rng.chi(2.0 * theta * (n - i) as f64);
                }
            }
            hermitian_eigenvalues(&b * b.transpose()).into_iter().map(|v| 0.5 * v.max(0.0)).collect()
        }
    };
    ChamberPoint::nonnegative(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::MeanEstimate;

    #[test]
    fn haar_is_unitary() {
        let mut rng = RngStream::new(5, 0);
        for field in Field::ALL {
            for n in 1..6 {
                assert!(haar_sample(field, n, &mut rng).unitarity_defect() < 1e-12);
            }
        }
    }

    #[test]
    fn first_entry_modulus_mean() {
        let n = 4;
        let vals: Vec<f64> = (0..4000)
            .map(|i| {
                let mut rng = RngStream::new(9, i);
                haar::<Complex<f64>>(n, &mut rng)[(0, 0)].norm_sqr()
            })
            .collect();
        assert!(MeanEstimate::from_values(&vals).agrees_with(0.25, 4.0));
    }

    #[test]
    fn deterministic_edge_cases() {
        let mut rng = RngStream::new(2, 0);
        let x = ChamberPoint::signed(vec![1.5, 1.5, 1.5]).unwrap();
        let y = eigen_projection_sample(&x, Field::Real, &mut rng).unwrap();
        assert!(y.coords().iter().all(|&v| v == 1.5));
        let z = ChamberPoint::nonnegative(vec![0.0, 0.0]).unwrap();
        let y = truncated_radial_sample(&z, Field::Complex, 2, &mut rng).unwrap();
        assert_eq!(y.coords(), &[0.0, 0.0]);
    }

    #[test]
    fn ensemble_first_moment() {
        // E[Σx] = θN(N+α)
        for (theta, method) in [(1.0, EnsembleMethod::Gaussian), (0.5, EnsembleMethod::Gaussian), (0.8, EnsembleMethod::Bidiagonal)] {
            let vals: Vec<f64> = (0..4000)
                .map(|i| {
                    let mut rng = RngStream::new(17, i);
                    laguerre_ensemble_sample(3, theta, 1.0, method, &mut rng).unwrap().coords().iter().sum()
                })
                .collect();
            let want = theta * 3.0 * 4.0;
            assert!(MeanEstimate::from_values(&vals).agrees_with(want, 4.0), "θ={theta}");
        }
        let mut rng = RngStream::new(1, 1);
        assert!(laguerre_ensemble_sample(2, 0.7, 1.0, EnsembleMethod::Gaussian, &mut rng).is_err());
        assert!(laguerre_ensemble_sample(2, 1.0, 0.5, EnsembleMethod::Gaussian, &mut rng).is_err());
    }
}
