//! Gauss–Jacobi quadrature for integrands with algebraic endpoint
//! singularities.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::numerics::special::ln_gamma_pos;

/// Nodes and weights on `[−1, 1]` for the weight `(1−u)^p (1+u)^q`.
#[derive(Clone, Debug)]
pub struct JacobiRule {
    pub p: f64,
    pub q: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl JacobiRule {
    pub fn new(n: usize, p: f64, q: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("quadrature rule needs at least one node".into()));
        }
        if !(p > -1.0 && q > -1.0) {
            return Err(Error::InvalidParameter(format!("Jacobi exponents must exceed -1, got ({p}, {q})")));
        }
        let guesses = golub_welsch_nodes(n, p, q);
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        let log_const =
            ln_gamma_pos(p + n as f64) + ln_gamma_pos(q + n as f64) - ln_gamma_pos(n as f64 + 1.0) - ln_gamma_pos(n as f64 + p + q + 1.0);
        for z0 in guesses {
            let mut z = z0;
            let mut state = jacobi_eval(n, p, q, z);
            for _ in 0..3 {
                let step = state.value / state.derivative;
                let next = z - step;
                if !(next > -1.0 && next < 1.0) || !step.is_finite() {
                    break;
                }
                z = next;
                state = jacobi_eval(n, p, q, z);
                if step.abs() <= 1e-16 * z.abs().max(1e-300) {
                    break;
                }
            }
            let temp = 2.0 * n as f64 + p + q;
            let w = (log_const).exp() * temp * 2f64.powf(p + q) / (state.derivative * state.previous);
            nodes.push(z);
            weights.push(w);
        }
        Ok(JacobiRule { p, q, nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `∫_{−1}^{1} (1−u)^p (1+u)^q f(u) du`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&u, &w)| w * f(u)).sum()
    }

    /// `∫_a^b (t−a)^q (b−t)^p f(t) dt`: the rule's `q` exponent sits at the
    /// left end `a`, `p` at the right end `b`.
    pub fn integrate_interval<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let scale = half.powf(self.p + self.q + 1.0);
        scale * self.integrate(|u| f(a + half * (1.0 + u)))
    }

    /// Mapped nodes and weights for [`integrate_interval`](Self::integrate_interval).
    pub fn mapped(&self, a: f64, b: f64) -> Vec<(f64, f64)> {
        let half = 0.5 * (b - a);
        let scale = half.powf(self.p + self.q + 1.0);
        self.nodes.iter().zip(&self.weights).map(|(&u, &w)| (a + half * (1.0 + u), w * scale)).collect()
    }
}

/// Convenience wrapper matching the operation name: `Σ w_i f(u_i)`.
pub fn gauss_jacobi<F: FnMut(f64) -> f64>(rule: &JacobiRule, f: F) -> f64 {
    rule.integrate(f)
}

pub fn gauss_legendre(n: usize) -> JacobiRule {
    JacobiRule::new(n, 0.0, 0.0).expect("Legendre rule parameters are valid")
}

struct JacobiState {
    value: f64,
    previous: f64,
    derivative: f64,
}

/// `P_n^{(p,q)}(z)`, `P_{n−1}^{(p,q)}(z)` and `d/dz P_n^{(p,q)}(z)` by the
/// three-term recurrence.
fn jacobi_eval(n: usize, p: f64, q: f64, z: f64) -> JacobiState {
    let pq = p + q;
    let mut p1 = 0.5 * (p - q + (2.0 + pq) * z);
    let mut p2 = 1.0;
    for j in 2..=n {
        let jf = j as f64;
        let p3 = p2;
        p2 = p1;
        let temp = 2.0 * jf + pq;
        let a = 2.0 * jf * (jf + pq) * (temp - 2.0);
        let b = (temp - 1.0) * (p * p - q * q + temp * (temp - 2.0) * z);
        let c = 2.0 * (jf - 1.0 + p) * (jf - 1.0 + q) * temp;
        p1 = (b * p2 - c * p3) / a;
    }
    let nf = n as f64;
    let temp = 2.0 * nf + pq;
    let derivative = (nf * (p - q - temp * z) * p1 + 2.0 * (nf + p) * (nf + q) * p2) / (temp * (1.0 - z * z));
    JacobiState { value: p1, previous: p2, derivative }
}

/// Eigenvalues of the symmetric Jacobi matrix for the weight, ascending.
fn golub_welsch_nodes(n: usize, p: f64, q: f64) -> Vec<f64> {
    let pq = p + q;
    let mut m = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        let kf = k as f64;
        m[(k, k)] = if k == 0 { (q - p) / (pq + 2.0) } else { (q * q - p * p) / ((2.0 * kf + pq) * (2.0 * kf + pq + 2.0)) };
        if k + 1 < n {
            let j = kf + 1.0;
            let b2 = if k == 0 {
                4.0 * (1.0 + p) * (1.0 + q) / ((2.0 + pq).powi(2) * (3.0 + pq))
            } else {
                4.0 * j * (j + p) * (j + q) * (j + pq) / ((2.0 * j + pq).powi(2) * (2.0 * j + pq + 1.0) * (2.0 * j + pq - 1.0))
            };
            let b = b2.sqrt();
            m[(k, k + 1)] = b;
            m[(k + 1, k)] = b;
        }
    }
    let mut nodes: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    nodes.sort_by(|a, b| a.partial_cmp(b).unwrap());
    nodes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::special::ln_beta;

    #[test]
    fn reproduces_beta_values() {
        let exps = [-0.75, -0.5, -0.3, 0.0, 0.4, 1.0, 1.65, 3.2];
        for &p in &exps {
            for &q in &exps {
                let rule = JacobiRule::new(12, p, q).unwrap();
                let total = rule.integrate(|_| 1.0);
                let exact = (2f64).powf(p + q + 1.0) * ln_beta(p + 1.0, q + 1.0).exp();
                assert!(((total - exact) / exact).abs() < 1e-12, "p={p} q={q}: {total} vs {exact}");
                // ∫(1+u)·w = 2^{p+q+2} B(p+1, q+2)
                let first = rule.integrate(|u| 1.0 + u);
                let exact1 = (2f64).powf(p + q + 2.0) * ln_beta(p + 1.0, q + 2.0).exp();
                assert!(((first - exact1) / exact1).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn polynomial_exactness() {
        // degree 2n-1 = 15 against the Legendre weight
        let rule = gauss_legendre(8);
        let v = rule.integrate(|u| u.powi(14) + 3.0 * u.powi(15));
        assert!((v - 2.0 / 15.0).abs() < 1e-14);
        let rule = JacobiRule::new(8, -0.5, 0.7).unwrap();
        // (1+u)^k moments: 2^{p+q+1+k} B(p+1, q+1+k)
        for k in 0..16 {
            let v = rule.integrate(|u| (1.0 + u).powi(k));
            let e = 2f64.powf(-0.5 + 0.7 + 1.0 + k as f64) * ln_beta(0.5, 1.7 + k as f64).exp();
            assert!(((v - e) / e).abs() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn singular_endpoint_interval() {
        // ∫_0^1 y^{-1/2} dy = 2: exponent -1/2 at the left end.
        let rule = JacobiRule::new(4, 0.0, -0.5).unwrap();
        let v = rule.integrate_interval(0.0, 1.0, |_| 1.0);
        assert!((v - 2.0).abs() < 1e-14);
        let v2: f64 = rule.mapped(0.0, 1.0).iter().map(|(_, w)| w).sum();
        assert!((v2 - 2.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(JacobiRule::new(0, 0.0, 0.0).is_err());
        assert!(JacobiRule::new(3, -1.0, 0.0).is_err());
        let one = JacobiRule::new(1, 0.5, 0.5).unwrap();
        assert_eq!(one.len(), 1);
        assert!((one.integrate(|_| 1.0) - std::f64::consts::FRAC_PI_2).abs() < 1e-14);
    }
}
