//! Polynomials in explicit variables, used to check the Jack-basis formulas
//! against direct differentiation.
//!
//! Nothing here relies on Jack-polynomial theory: operators are applied term
//! by term, and the divided differences `(x_i^k ∂_i f − x_j^k ∂_j f)/(x_i − x_j)`
//! are carried out with
//! `(x_i^p x_j^q − x_i^q x_j^p)/(x_i − x_j) = (x_i x_j)^q Σ_{r<p−q} x_i^{p−q−1−r} x_j^r`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::operators::Operator;
use super::sympoly::SymPoly;
use crate::error::{Error, Result};
use crate::numerics::{Rational, Scalar};
use crate::partitions::{distinct_permutations, Partition};

/// `Σ_e c_e x^e` over exponent vectors of length `N`.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F> {
    n_vars: usize,
    terms: BTreeMap<Vec<usize>, F>,
}

impl<F: Scalar> Poly<F> {
    pub fn zero(n_vars: usize) -> Self {
        Poly { n_vars, terms: BTreeMap::new() }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn add_term(&mut self, exps: Vec<usize>, c: F) {
        assert_eq!(exps.len(), self.n_vars);
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&exps) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(exps, sum);
        }
    }

    /// Expands every `m_μ` into its monomials.
    pub fn from_sympoly(p: &SymPoly<F>) -> Self {
        let mut out = Poly::zero(p.n_vars());
        for (mu, c) in p.terms() {
            for e in distinct_permutations(&mu.padded(p.n_vars())) {
                out.add_term(e, c.clone());
            }
        }
        out
    }

    /// Reads off `m_μ` coefficients from the weakly decreasing exponent
    /// vectors, after checking that the polynomial is symmetric.
    pub fn to_sympoly(&self) -> Result<SymPoly<F>> {
        let mut out = SymPoly::zero(self.n_vars);
        for (e, c) in &self.terms {
            if e.windows(2).any(|w| w[0] < w[1]) {
                continue;
            }
            for perm in distinct_permutations(e) {
                if !self.close(self.terms.get(&perm), c) {
                    return Err(Error::InvalidParameter(format!("polynomial is not symmetric at exponent {perm:?}")));
                }
            }
            out.add_term(Partition::from_unsorted(e.clone()), c.clone())?;
        }
        let expected: usize = out.terms().map(|(mu, _)| distinct_permutations(&mu.padded(self.n_vars)).len()).sum();
        if expected != self.terms.len() {
            return Err(Error::InvalidParameter("polynomial is not symmetric".into()));
        }
        Ok(out)
    }

    /// Equality for exact scalars; agreement to 1e−12 of the largest
    /// coefficient otherwise.
    fn close(&self, a: Option<&F>, b: &F) -> bool {
        let a = a.cloned().unwrap_or_else(F::zero);
        if F::is_exact() {
            return a == *b;
        }
        let scale = self.terms.values().map(|v| v.abs().to_f64_lossy()).fold(0.0, f64::max);
        (a - b.clone()).abs().to_f64_lossy() <= 1e-12 * scale
    }

    pub fn eval(&self, x: &[F]) -> F {
        assert_eq!(x.len(), self.n_vars);
        let mut total = F::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    t = t * xi.clone();
                }
            }
            total = total + t;
        }
        total
    }

    /// `Σ_i x_i^k ∂_i`.
    pub fn euler(&self, k: usize) -> Self {
        let mut out = Poly::zero(self.n_vars);
        for (e, c) in &self.terms {
            for i in 0..self.n_vars {
                if e[i] == 0 {
                    continue;
                }
                let mut f = e.clone();
                f[i] = e[i] - 1 + k;
                out.add_term(f, c.clone() * F::from_count(e[i]));
            }
        }
        out
    }

    /// `x_i^k ∂_i` for a single variable.
    fn partial_weighted(&self, i: usize, k: usize) -> Self {
        let mut out = Poly::zero(self.n_vars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] = e[i] - 1 + k;
                out.add_term(f, c.clone() * F::from_count(e[i]));
            }
        }
        out
    }

    /// Exact quotient of a polynomial antisymmetric under `i ↔ j` by
    /// `x_i − x_j`.
    fn divide_antisymmetric(&self, i: usize, j: usize) -> Result<Self> {
        let mut out = Poly::zero(self.n_vars);
        for (e, c) in &self.terms {
            let (p, q) = (e[i], e[j]);
            let mut swapped = e.clone();
            swapped.swap(i, j);
            if !self.close(self.terms.get(&swapped).map(|v| -v.clone()).as_ref(), c) {
                return Err(Error::InvalidParameter(format!("not antisymmetric in ({i}, {j}) at {e:?}")));
            }
            if p <= q {
                continue;
            }
            for r in 0..p - q {
                let mut f = e.clone();
                f[i] = q + (p - q - 1 - r);
                f[j] = q + r;
                out.add_term(f, c.clone());
            }
        }
        Ok(out)
    }

    /// `Σ_i x_i^k ∂_i² + 2θ Σ_{i≠j} x_i^k/(x_i − x_j) ∂_i`.
    pub fn dunkl_like(&self, k: usize, theta: &F) -> Result<Self> {
        let mut out = Poly::zero(self.n_vars);
        for (e, c) in &self.terms {
            for i in 0..self.n_vars {
                if e[i] >= 2 {
                    let mut f = e.clone();
                    f[i] = e[i] - 2 + k;
                    out.add_term(f, c.clone() * F::from_count(e[i] * (e[i] - 1)));
                }
            }
        }
        let two_theta = F::from_int(2) * theta.clone();
        for i in 0..self.n_vars {
            for j in i + 1..self.n_vars {
                let mut g = self.partial_weighted(i, k);
                for (e, c) in self.partial_weighted(j, k).terms {
                    g.add_term(e, -c);
                }
                for (e, c) in g.divide_antisymmetric(i, j)?.terms {
                    out.add_term(e, two_theta.clone() * c);
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, op: Operator, theta: &F) -> Result<Self> {
        match op {
            Operator::E0 => Ok(self.euler(0)),
            Operator::E1 => Ok(self.euler(1)),
            Operator::D1 => self.dunkl_like(1, theta),
            Operator::D2 => self.dunkl_like(2, theta),
        }
    }
}

/// `det(x_j^{λ_i + N − i}) / det(x_j^{N − i})` at integer points with distinct
/// coordinates, evaluated exactly.
pub fn schur_bialternant(lambda: &Partition, x: &[i64]) -> Result<Rational> {
    let n = x.len();
    if lambda.len() > n {
        return Err(Error::TooManyParts { partition: lambda.clone(), len: lambda.len(), n_vars: n });
    }
    let alt = |shift: &dyn Fn(usize) -> usize| -> Rational {
        let m: Vec<Vec<Rational>> =
            (0..n).map(|i| x.iter().map(|&xj| Rational::from_integer(BigInt::from(xj).pow(shift(i) as u32))).collect()).collect();
        determinant(m)
    };
    let den = alt(&|i| n - 1 - i);
    if den.is_zero() {
        return Err(Error::InvalidPoint(format!("coordinates of {x:?} must be distinct")));
    }
    Ok(alt(&|i| lambda.part(i) + n - 1 - i) / den)
}

/// Determinant by Gaussian elimination over the rationals.
fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::from_int(1);
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::from_int(0);
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= p.clone();
        let (upper, lower) = m.split_at_mut(col + 1);
        let pivot_row = &upper[col];
        for row in lower.iter_mut() {
            let f = row[col].clone() / p.clone();
            if f.is_zero() {
                continue;
            }
            for (dst, src) in row[col..n].iter_mut().zip(&pivot_row[col..n]) {
                *dst = dst.clone() - src.clone() * f.clone();
            }
        }
    }
    det
}
