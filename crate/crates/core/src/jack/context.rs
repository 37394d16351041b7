//! Jack polynomials for a fixed number of variables and a fixed parameter,
//! with memoised construction and generalised binomial coefficients.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::sympoly::SymPoly;
use super::Caps;
use crate::error::{Error, Result};
use crate::numerics::{Rational, Scalar};
use crate::partitions::{distinct_permutations, monomial_count, partitions_of, partitions_up_to, Partition};

/// Jack polynomials `P_λ^θ` in `N` variables over the scalar field `F`.
///
/// Constructed polynomials and binomial tables are cached behind a mutex.
/// Construction is deterministic, so a cached value is bit-identical to a
/// fresh one.
#[derive(Debug)]
pub struct JackContext<F: Scalar> {
    n_vars: usize,
    theta: F,
    caps: Caps,
    polys: Mutex<HashMap<Partition, Arc<SymPoly<F>>>>,
    binomials: Mutex<HashMap<Partition, Arc<BTreeMap<Partition, F>>>>,
}

impl<F: Scalar> JackContext<F> {
    pub fn new(n_vars: usize, theta: F) -> Result<Self> {
        Self::with_caps(n_vars, theta, Caps::default())
    }

    pub fn with_caps(n_vars: usize, theta: F, caps: Caps) -> Result<Self> {
        if n_vars == 0 {
            return Err(Error::InvalidParameter("need at least one variable".into()));
        }
        if !(theta > F::zero()) {
            return Err(Error::InvalidParameter(format!("θ must be positive, got {theta:?}")));
        }
        caps.check(0, n_vars)?;
        Ok(JackContext { n_vars, theta, caps, polys: Mutex::new(HashMap::new()), binomials: Mutex::new(HashMap::new()) })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn theta(&self) -> &F {
        &self.theta
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn check_partition(&self, lambda: &Partition) -> Result<()> {
        if lambda.len() > self.n_vars {
            return Err(Error::TooManyParts { partition: lambda.clone(), len: lambda.len(), n_vars: self.n_vars });
        }
        self.caps.check(lambda.weight(), self.n_vars)
    }

    /// `e(λ, N, θ) = 2B(λ') − 2θB(λ) + 2θ(N−1)|λ|`, the `D₂` eigenvalue.
    pub fn eigenvalue(&self, lambda: &Partition) -> F {
        let two = F::from_int(2);
        let b_conj = F::from_count(lambda.conjugate().b_stat());
        let b = F::from_count(lambda.b_stat());
        let w = F::from_count(lambda.weight());
        let n1 = F::from_count(self.n_vars - 1);
        two.clone() * b_conj - two.clone() * self.theta.clone() * b + two * self.theta.clone() * n1 * w
    }

    /// `P_λ` in the monomial basis.
    ///
    /// The `m_μ` coefficients are found in decreasing lexicographic order of
    /// `μ` from `(e(λ) − e(μ)) u_μ = 2θ Σ_ν c(μ←ν) u_ν`, where `ν` runs over
    /// the monomials whose `D₂` image contains `m_μ` (all of them dominate
    /// `μ`, so are already known).
    pub fn jack(&self, lambda: &Partition) -> Result<Arc<SymPoly<F>>> {
        self.check_partition(lambda)?;
        if let Some(p) = self.polys.lock().unwrap().get(lambda) {
            return Ok(Arc::clone(p));
        }
        let built = Arc::new(self.build_jack(lambda)?);
        let mut cache = self.polys.lock().unwrap();
        Ok(Arc::clone(cache.entry(lambda.clone()).or_insert(built)))
    }

    fn build_jack(&self, lambda: &Partition) -> Result<SymPoly<F>> {
        let n = self.n_vars;
        let two_theta = F::from_int(2) * self.theta.clone();
        let e_top = self.eigenvalue(lambda);
        let mut coeffs: BTreeMap<Partition, F> = BTreeMap::new();
        coeffs.insert(lambda.clone(), F::one());
        for mu in partitions_of(lambda.weight(), n) {
            if &mu == lambda || !mu.is_dominated_by(lambda) {
                continue;
            }
            let gap = e_top.clone() - self.eigenvalue(&mu);
            if !(gap > F::zero()) {
                return Err(Error::DegenerateRecursion { upper: lambda.clone(), lower: mu });
            }
            let mut acc = F::zero();
            for (nu, count) in d2_sources(&mu, n) {
                if let Some(u) = coeffs.get(&nu) {
                    acc = acc + u.clone() * F::from_count(count);
                }
            }
            if !acc.is_zero() {
                coeffs.insert(mu, two_theta.clone() * acc / gap);
            }
        }
        SymPoly::from_terms(n, coeffs)
    }

    /// `P_λ(1_N) = Σ_μ u_μ · m_μ(1_N)`. Exact for exact scalars.
    pub fn at_ones(&self, lambda: &Partition) -> Result<F> {
        let p = self.jack(lambda)?;
        let mut total = F::zero();
        for (mu, u) in p.terms() {
            let count = monomial_count(mu, self.n_vars) as u64;
            total = total + u.clone() * F::from_u64(count).expect("count fits the scalar");
        }
        Ok(total)
    }

    /// Coordinates of a symmetric polynomial in the Jack basis.
    ///
    /// Repeatedly removes the lexicographically largest monomial `m_ρ` with the
    /// multiple of `P_ρ` that cancels it; `P_ρ` only touches lexicographically
    /// smaller monomials of the same degree, so this terminates.
    pub fn to_jack_basis(&self, poly: &SymPoly<F>) -> Result<BTreeMap<Partition, F>> {
        assert_eq!(poly.n_vars(), self.n_vars, "variable count mismatch");
        let mut rest = poly.clone();
        let mut out = BTreeMap::new();
        loop {
            let next = rest.terms().next_back().map(|(r, q)| (r.clone(), q.clone()));
            let Some((rho, q)) = next else { break };
            let p = self.jack(&rho)?;
            rest.add_scaled(&p, &(-q.clone()));
            out.insert(rho, q);
        }
        Ok(out)
    }

    /// `Σ_ρ d_ρ P_ρ` back in the monomial basis.
    pub fn from_jack_basis<'a>(&self, coeffs: impl IntoIterator<Item = (&'a Partition, &'a F)>) -> Result<SymPoly<F>> {
        let mut out = SymPoly::zero(self.n_vars);
        for (rho, d) in coeffs {
            if !d.is_zero() {
                out.add_scaled(&*self.jack(rho)?, d);
            }
        }
        Ok(out)
    }

    /// All generalised binomial coefficients `binom(λ, ρ)_θ`, keyed by `ρ ⊆ λ`.
    ///
    /// `P_λ(1_N + x)` is expanded in monomials, converted to the Jack basis and
    /// normalised by `P_ρ(1_N)/P_λ(1_N)`. Entries with `ρ ⊄ λ` vanish in exact
    /// arithmetic and are dropped.
    pub fn binomials(&self, lambda: &Partition) -> Result<Arc<BTreeMap<Partition, F>>> {
        self.check_partition(lambda)?;
        if let Some(b) = self.binomials.lock().unwrap().get(lambda) {
            return Ok(Arc::clone(b));
        }
        let built = Arc::new(self.build_binomials(lambda)?);
        let mut cache = self.binomials.lock().unwrap();
        Ok(Arc::clone(cache.entry(lambda.clone()).or_insert(built)))
    }

    fn build_binomials(&self, lambda: &Partition) -> Result<BTreeMap<Partition, F>> {
        let n = self.n_vars;
        let p = self.jack(lambda)?;
        let targets: Vec<(Partition, Vec<usize>)> = partitions_up_to(lambda.weight(), n)
            .into_iter()
            .map(|r| {
                let padded = r.padded(n);
                (r, padded)
            })
            .collect();
        let table = BinomialTable::new(lambda.weight());
        let mut shifted = SymPoly::zero(n);
        for (mu, u) in p.terms() {
            let mut counts = vec![0u64; targets.len()];
            for e in distinct_permutations(&mu.padded(n)) {
                for (k, (_, rho)) in targets.iter().enumerate() {
                    counts[k] += e.iter().zip(rho).map(|(&a, &b)| table.get(a, b)).product::<u64>();
                }
            }
            for ((rho, _), c) in targets.iter().zip(counts) {
                if c != 0 {
                    shifted.add_term(rho.clone(), u.clone() * F::from_u64(c).expect("count fits"))?;
                }
            }
        }
        let top = self.at_ones(lambda)?;
        let mut out = BTreeMap::new();
        for (rho, d) in self.to_jack_basis(&shifted)? {
            if rho.is_contained_in(lambda) {
                out.insert(rho.clone(), d * self.at_ones(&rho)? / top.clone());
            }
        }
        Ok(out)
    }

    /// `binom(λ, ρ)_θ`; zero unless `ρ ⊆ λ`.
    pub fn binomial(&self, lambda: &Partition, rho: &Partition) -> Result<F> {
        Ok(self.binomials(lambda)?.get(rho).cloned().unwrap_or_else(F::zero))
    }
}

struct BinomialTable {
    rows: Vec<Vec<u64>>,
}

impl BinomialTable {
    fn new(n: usize) -> Self {
        let mut rows = vec![vec![1u64]];
        for i in 1..=n {
            let prev = &rows[i - 1];
            let mut row = vec![1u64; i + 1];
            for k in 1..i {
                row[k] = prev[k - 1] + prev[k];
            }
            rows.push(row);
        }
        BinomialTable { rows }
    }

    fn get(&self, a: usize, b: usize) -> u64 {
        if b > a {
            0
        } else {
            self.rows[a][b]
        }
    }
}

/// Monomials `m_ν` whose image under the interaction part of `D₂` contains
/// `m_μ`, with the integer multiplicity `c(μ←ν)`.
///
/// For a pair of positions `i < j` of `μ` (padded to `N`), the pair
/// `x_i^p x_j^q + x_i^q x_j^p` with `p > q` feeds every strictly intermediate
/// exponent pair with weight `p − q`. Pulling back from `(μ_i, μ_j)` gives
/// sources `q = 0, …, μ_j − 1`, `p = μ_i + μ_j − q`.
pub(crate) fn d2_sources(mu: &Partition, n: usize) -> Vec<(Partition, usize)> {
    let padded = mu.padded(n);
    let mut acc: BTreeMap<Partition, usize> = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (padded[i], padded[j]);
            for q in 0..b {
                let p = a + b - q;
                let mut src = padded.clone();
                src[i] = p;
                src[j] = q;
                *acc.entry(Partition::from_unsorted(src)).or_insert(0) += p - q;
            }
        }
    }
    acc.into_iter().collect()
}

type SharedKey = (usize, u64);

/// Process-wide `f64` contexts keyed by `(N, θ)`, used by the free functions.
pub fn shared_context(n_vars: usize, theta: f64) -> Result<Arc<JackContext<f64>>> {
    static SHARED: OnceLock<Mutex<HashMap<SharedKey, Arc<JackContext<f64>>>>> = OnceLock::new();
    let map = SHARED.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (n_vars, theta.to_bits());
    if let Some(ctx) = map.lock().unwrap().get(&key) {
        return Ok(Arc::clone(ctx));
    }
    let ctx = Arc::new(JackContext::new(n_vars, theta)?);
    Ok(Arc::clone(map.lock().unwrap().entry(key).or_insert(ctx)))
}

type ExactContexts = Mutex<HashMap<(usize, Rational), Arc<JackContext<Rational>>>>;

/// Process-wide exact contexts keyed by `(N, θ)`.
pub fn shared_exact_context(n_vars: usize, theta: &Rational) -> Result<Arc<JackContext<Rational>>> {
    static SHARED: OnceLock<ExactContexts> = OnceLock::new();
    let map = SHARED.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (n_vars, theta.clone());
    if let Some(ctx) = map.lock().unwrap().get(&key) {
        return Ok(Arc::clone(ctx));
    }
    let ctx = Arc::new(JackContext::new(n_vars, theta.clone())?);
    Ok(Arc::clone(map.lock().unwrap().entry(key).or_insert(ctx)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::scalar::{ratio, Rational};
    use crate::part;

    #[test]
    fn two_row_jack_coefficient() {
        for &theta in &[0.5, 1.0, 2.0, 3.7] {
            let ctx = JackContext::new(2, theta).unwrap();
            let p = ctx.jack(&part![2]).unwrap();
            assert_eq!(p.coeff(&part![2]), 1.0);
            let expected = 2.0 * theta / (theta + 1.0);
            assert!((p.coeff(&part![1, 1]) - expected).abs() < 1e-15);
        }
        let ctx = JackContext::new(3, ratio(2, 1)).unwrap();
        assert_eq!(ctx.jack(&part![2]).unwrap().coeff(&part![1, 1]), ratio(4, 3));
    }

    #[test]
    fn elementary_and_power_cases() {
        let ctx = JackContext::new(3, 1.3).unwrap();
        let e2 = ctx.jack(&part![1, 1]).unwrap();
        assert_eq!(e2.terms().count(), 1);
        let e1 = ctx.jack(&part![1]).unwrap();
        assert_eq!(e1.coeff(&part![1]), 1.0);
        assert_eq!(ctx.at_ones(&part![1]).unwrap(), 3.0);
    }

    #[test]
    fn eigenvalue_formula() {
        let ctx = JackContext::new(1, ratio(5, 7)).unwrap();
        assert_eq!(ctx.eigenvalue(&part![2]), Rational::from_int(2));
        let ctx = JackContext::new(2, ratio(1, 1)).unwrap();
        assert_eq!(ctx.eigenvalue(&part![1, 1]), Rational::from_int(2));
    }

    #[test]
    fn binomial_examples() {
        let ctx = JackContext::new(1, 0.8).unwrap();
        assert!((ctx.binomial(&part![2], &part![1]).unwrap() - 2.0).abs() < 1e-14);
        for lambda in [part![2, 1], part![3, 1, 1], part![2, 2]] {
            let ctx = JackContext::new(3, ratio(3, 2)).unwrap();
            assert_eq!(ctx.binomial(&lambda, &lambda).unwrap(), Rational::from_int(1));
            assert_eq!(ctx.binomial(&lambda, &Partition::empty()).unwrap(), Rational::from_int(1));
        }
    }

    #[test]
    fn exact_binomials_vanish_outside_containment() {
        let ctx = JackContext::new(3, ratio(2, 3)).unwrap();
        let lambda = part![3, 1];
        let p = ctx.jack(&lambda).unwrap();
        // redo the expansion without the containment filter
        let mut shifted = SymPoly::zero(3);
        let n = 3;
        for (mu, u) in p.terms() {
            for e in distinct_permutations(&mu.padded(n)) {
                for rho in partitions_up_to(4, 3) {
                    let r = rho.padded(n);
                    let c: u64 = e.iter().zip(&r).map(|(&a, &b)| BinomialTable::new(4).get(a, b)).product();
                    if c != 0 {
                        shifted.add_term(rho, u.clone() * Rational::from_int(c as i64)).unwrap();
                    }
                }
            }
        }
        for (rho, d) in ctx.to_jack_basis(&shifted).unwrap() {
            assert!(rho.is_contained_in(&lambda) || d == Rational::from_int(0), "{rho}");
        }
    }

    #[test]
    fn cache_is_bit_identical() {
        let a = JackContext::new(3, 0.7).unwrap();
        let first = a.jack(&part![3, 2]).unwrap();
        let again = a.jack(&part![3, 2]).unwrap();
        let fresh = JackContext::new(3, 0.7).unwrap().jack(&part![3, 2]).unwrap();
        assert_eq!(*first, *again);
        assert_eq!(*first, *fresh);
    }

    #[test]
    fn rejects_too_many_parts() {
        let ctx = JackContext::new(2, 1.0).unwrap();
        assert!(matches!(ctx.jack(&part![1, 1, 1]), Err(Error::TooManyParts { .. })));
        assert!(JackContext::new(2, 0.0).is_err());
    }
}
