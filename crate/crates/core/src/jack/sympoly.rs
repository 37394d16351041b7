//! Symmetric polynomials in the monomial symmetric basis.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::numerics::Scalar;
use crate::partitions::{distinct_permutations, Partition};

/// `Σ_μ c_μ m_μ(x_1, …, x_N)` with `ℓ(μ) ≤ N`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymPoly<F> {
    n_vars: usize,
    coeffs: BTreeMap<Partition, F>,
}

impl<F: Scalar> SymPoly<F> {
    pub fn zero(n_vars: usize) -> Self {
        SymPoly { n_vars, coeffs: BTreeMap::new() }
    }

    pub fn one(n_vars: usize) -> Self {
        let mut p = Self::zero(n_vars);
        p.coeffs.insert(Partition::empty(), F::one());
        p
    }

    pub fn from_terms(n_vars: usize, terms: impl IntoIterator<Item = (Partition, F)>) -> Result<Self> {
        let mut p = Self::zero(n_vars);
        for (mu, c) in terms {
            p.add_term(mu, c)?;
        }
        Ok(p)
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// Adds `c·m_μ`; zero results are removed so the key set is the support.
    pub fn add_term(&mut self, mu: Partition, c: F) -> Result<()> {
        if mu.len() > self.n_vars {
            return Err(Error::TooManyParts { len: mu.len(), partition: mu, n_vars: self.n_vars });
        }
        let sum = match self.coeffs.remove(&mu) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.coeffs.insert(mu, sum);
        }
        Ok(())
    }

    pub fn coeff(&self, mu: &Partition) -> F {
        self.coeffs.get(mu).cloned().unwrap_or_else(F::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Partition, &F)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest `|μ|` in the support; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().map(Partition::weight).max()
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut out = Self::zero(self.n_vars);
        for (mu, c) in &self.coeffs {
            out.add_term(mu.clone(), c.clone() * s.clone()).expect("same variable count");
        }
        out
    }

    /// `self + s·other`.
    pub fn add_scaled(&mut self, other: &SymPoly<F>, s: &F) {
        assert_eq!(self.n_vars, other.n_vars);
        for (mu, c) in &other.coeffs {
            self.add_term(mu.clone(), c.clone() * s.clone()).expect("same variable count");
        }
    }

    /// Largest absolute coefficient difference.
    pub fn max_abs_diff(&self, other: &SymPoly<F>) -> f64 {
        let mut d = self.clone();
        d.add_scaled(other, &(-F::one()));
        d.coeffs.values().map(|c| c.abs().to_f64_lossy()).fold(0.0, f64::max)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.values().map(|c| c.abs().to_f64_lossy()).fold(0.0, f64::max)
    }

    /// Value at `x`, summing each `m_μ` over the distinct permutations of μ.
    pub fn eval(&self, x: &[F]) -> F {
        assert_eq!(x.len(), self.n_vars, "point has the wrong dimension");
        let mut total = F::zero();
        for (mu, c) in &self.coeffs {
            total = total + c.clone() * monomial_eval(mu, x);
        }
        total
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> SymPoly<G> {
        let mut out = SymPoly::zero(self.n_vars);
        for (mu, c) in &self.coeffs {
            out.add_term(mu.clone(), f(c)).expect("same variable count");
        }
        out
    }
}

/// `m_μ(x)` by the distinct-permutation sum.
pub fn monomial_eval<F: Scalar>(mu: &Partition, x: &[F]) -> F {
    let n = x.len();
    if mu.len() > n {
        return F::zero();
    }
    let mut total = F::zero();
    for e in distinct_permutations(&mu.padded(n)) {
        let mut term = F::one();
        for (xi, &k) in x.iter().zip(&e) {
            for _ in 0..k {
                term = term * xi.clone();
            }
        }
        total = total + term;
    }
    total
}
