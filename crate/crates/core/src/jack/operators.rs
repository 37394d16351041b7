//! Operators on the Jack basis `{P_μ : μ ⊆ λ_max, ℓ(μ) ≤ N}`.
//!
//! Row `κ` of a matrix holds the Jack coordinates of `O P_κ`, so a coordinate
//! row vector `v` maps to `v·M`, and applying `A` after `B` is `M_B·M_A`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::context::JackContext;
use crate::error::{Error, Result};
use crate::numerics::{DenseMatrix, Rational, Scalar};
use crate::partitions::{enumerate_contained, Partition};

/// A linear operator on a graded Jack-basis space.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMatrix<F> {
    pub basis: Vec<Partition>,
    pub matrix: DenseMatrix<F>,
}

impl<F: Scalar> GradedMatrix<F> {
    pub fn new(basis: Vec<Partition>, matrix: DenseMatrix<F>) -> Self {
        assert_eq!(matrix.rows(), basis.len());
        assert_eq!(matrix.cols(), basis.len());
        GradedMatrix { basis, matrix }
    }

    pub fn zeros(basis: Vec<Partition>) -> Self {
        let n = basis.len();
        GradedMatrix { basis, matrix: DenseMatrix::zeros(n, n) }
    }

    pub fn identity(basis: Vec<Partition>) -> Self {
        let n = basis.len();
        GradedMatrix { basis, matrix: DenseMatrix::identity(n) }
    }

    pub fn diagonal(basis: Vec<Partition>, f: impl Fn(&Partition) -> F) -> Self {
        let diag: Vec<F> = basis.iter().map(f).collect();
        GradedMatrix { matrix: DenseMatrix::from_diagonal(&diag), basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `|μ|` for each basis element.
    pub fn grading(&self) -> Vec<usize> {
        self.basis.iter().map(Partition::weight).collect()
    }

    pub fn index_of(&self, mu: &Partition) -> Option<usize> {
        self.basis.binary_search_by(|p| p.graded_cmp(mu)).ok()
    }

    /// Coefficient of `P_ν` in `O P_κ`.
    pub fn entry(&self, kappa: &Partition, nu: &Partition) -> F {
        match (self.index_of(kappa), self.index_of(nu)) {
            (Some(i), Some(j)) => self.matrix.get(i, j).clone(),
            _ => F::zero(),
        }
    }

    /// Image of the coordinate vector `v`.
    pub fn apply(&self, v: &[F]) -> Vec<F> {
        self.matrix.left_apply(v)
    }

    /// The operator "first `self`, then `next`".
    pub fn then(&self, next: &GradedMatrix<F>) -> GradedMatrix<F> {
        assert_eq!(self.basis, next.basis, "bases differ");
        GradedMatrix { basis: self.basis.clone(), matrix: &self.matrix * &next.matrix }
    }

    pub fn add(&self, other: &GradedMatrix<F>) -> GradedMatrix<F> {
        assert_eq!(self.basis, other.basis, "bases differ");
        GradedMatrix { basis: self.basis.clone(), matrix: &self.matrix + &other.matrix }
    }

    pub fn scale(&self, s: &F) -> GradedMatrix<F> {
        GradedMatrix { basis: self.basis.clone(), matrix: self.matrix.scale(s) }
    }

    pub fn max_abs_diff(&self, other: &GradedMatrix<F>) -> f64 {
        assert_eq!(self.basis, other.basis, "bases differ");
        (&self.matrix - &other.matrix).max_abs()
    }

    /// Whether every nonzero entry `(κ, ν)` satisfies `allowed(|κ|, |ν|)`.
    pub fn respects_grading(&self, allowed: impl Fn(usize, usize) -> bool) -> bool {
        let g = self.grading();
        (0..self.dim()).all(|i| (0..self.dim()).all(|j| self.matrix.get(i, j).is_zero() || allowed(g[i], g[j])))
    }

    pub fn to_f64(&self) -> GradedMatrix<f64> {
        GradedMatrix { basis: self.basis.clone(), matrix: self.matrix.map(|v| v.to_f64_lossy()) }
    }
}

impl GradedMatrix<Rational> {
    pub fn is_exactly_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

/// Coordinates of a symmetric polynomial in a Jack basis.
#[derive(Clone, Debug, PartialEq)]
pub struct JackCoeffs<F> {
    pub basis: Vec<Partition>,
    pub values: Vec<F>,
    pub n_vars: usize,
    pub theta: F,
}

impl<F: Scalar> JackCoeffs<F> {
    pub fn get(&self, mu: &Partition) -> F {
        self.basis.binary_search_by(|p| p.graded_cmp(mu)).map(|i| self.values[i].clone()).unwrap_or_else(|_| F::zero())
    }

    pub fn max_abs_diff(&self, other: &JackCoeffs<F>) -> f64 {
        assert_eq!(self.basis, other.basis, "bases differ");
        self.values.iter().zip(&other.values).map(|(a, b)| (a.clone() - b.clone()).abs().to_f64_lossy()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: &F) -> JackCoeffs<F> {
        JackCoeffs { values: self.values.iter().map(|v| v.clone() * s.clone()).collect(), ..self.clone() }
    }
}

/// The four operators whose Jack-basis actions are known in closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Operator {
    /// `Σ ∂_i`
    E0,
    /// `Σ x_i ∂_i`
    E1,
    /// `Σ x_i ∂_i² + 2θ Σ_{i≠j} x_i/(x_i − x_j) ∂_i`
    D1,
    /// `Σ x_i² ∂_i² + 2θ Σ_{i≠j} x_i²/(x_i − x_j) ∂_i`
    D2,
}

impl Operator {
    pub const ALL: [Operator; 4] = [Operator::E0, Operator::E1, Operator::D1, Operator::D2];

    /// Change in degree.
    pub fn degree_shift(self) -> isize {
        match self {
            Operator::E0 | Operator::D1 => -1,
            Operator::E1 | Operator::D2 => 0,
        }
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Operator::E0 => "E0",
            Operator::E1 => "E1",
            Operator::D1 => "D1",
            Operator::D2 => "D2",
        };
        f.write_str(s)
    }
}

impl FromStr for Operator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "E0" => Ok(Operator::E0),
            "E1" => Ok(Operator::E1),
            "D1" => Ok(Operator::D1),
            "D2" => Ok(Operator::D2),
            _ => Err(Error::Parse(format!("unknown operator {s:?}"))),
        }
    }
}

impl<F: Scalar> JackContext<F> {
    /// Basis `{μ ⊆ λ_max, ℓ(μ) ≤ N}` in graded order.
    pub fn basis(&self, lambda_max: &Partition) -> Result<Vec<Partition>> {
        self.check_partition(lambda_max)?;
        enumerate_contained(lambda_max, self.n_vars())
    }

    /// `O P_λ` in the monomial basis, assembled from the Jack-basis matrix.
    pub fn apply_operator(&self, which: Operator, lambda: &Partition) -> Result<super::SymPoly<F>> {
        let m = self.op_matrix(which, lambda)?;
        let k = m.index_of(lambda).expect("λ is in its own basis");
        self.from_jack_basis(m.basis.iter().zip(m.matrix.row(k)))
    }

    /// Matrix of `which` on the basis below `λ_max`.
    ///
    /// `E₀` sends `P_λ` to `Σ_i binom(λ, λ_(i)) P_λ(1)/P_{λ_(i)}(1) · P_{λ_(i)}`;
    /// `D₁` carries the extra factor `λ_i − 1 + (N − i)θ` (rows 1-based).
    /// Invalid removals contribute nothing.
    pub fn op_matrix(&self, which: Operator, lambda_max: &Partition) -> Result<GradedMatrix<F>> {
        let basis = self.basis(lambda_max)?;
        match which {
            Operator::E1 => Ok(GradedMatrix::diagonal(basis, |mu| F::from_count(mu.weight()))),
            Operator::D2 => Ok(GradedMatrix::diagonal(basis, |mu| self.eigenvalue(mu))),
            Operator::E0 | Operator::D1 => {
                let mut out = GradedMatrix::zeros(basis);
                let n = F::from_count(self.n_vars());
                for (k, lambda) in out.basis.clone().iter().enumerate() {
                    let top = self.at_ones(lambda)?;
                    for (row, lowered) in lambda.lowerings() {
                        let j = out.index_of(&lowered).expect("lowering stays in the basis");
                        let mut v = self.binomial(lambda, &lowered)? * top.clone() / self.at_ones(&lowered)?;
                        if which == Operator::D1 {
                            let i1 = F::from_count(row + 1);
                            v = v * (F::from_count(lambda.part(row)) - F::one() + (n.clone() - i1) * self.theta().clone());
                        }
                        out.matrix.set(k, j, v);
                    }
                }
                Ok(out)
            }
        }
    }
}
