//! Roots of `Σ_i w_i ∏_{j≠i}(y − z_j)` for Dirichlet weights `w`, and the
//! density of those roots.
//!
//! With poles `z_0 < … < z_N` and Dirichlet shapes `s_0, …, s_N`, the roots
//! `y_1 < … < y_N` interlace the poles and have density
//!
//! ```text
//! Γ(Σ s) / ∏ Γ(s_i) · ∏_{i<j}(y_j − y_i) · ∏_{i,j} |z_i − y_j|^{s_i − 1}
//!                    / ∏_{i<j} (z_j − z_i)^{s_i + s_j − 1}
//! ```
//!
//! Equal shapes `θ` give the Dixon–Anderson kernel; poles `(0, x)` with shapes
//! `((α+1)θ, θ, …, θ)` give the kernel on the nonnegative chamber.

use crate::error::{Error, Result};
use crate::numerics::quadrature::JacobiRule;
use crate::numerics::rng::{dirichlet_sample, RngStream};
use crate::numerics::secular::secular_roots;
use crate::numerics::special::ln_gamma_pos;

#[derive(Clone, Debug, PartialEq)]
pub struct DirichletRoots {
    pub poles: Vec<f64>,
    pub shapes: Vec<f64>,
}

/// A quadrature value and the difference to a rule with more nodes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureValue {
    pub value: f64,
    pub error_estimate: f64,
}

impl DirichletRoots {
    pub fn new(poles: Vec<f64>, shapes: Vec<f64>) -> Result<Self> {
        if poles.len() != shapes.len() || poles.len() < 2 {
            return Err(Error::InvalidParameter("need matching poles and shapes, at least two".into()));
        }
        if poles.windows(2).any(|w| w[0] > w[1]) || poles.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidPoint(format!("poles must be finite and sorted: {poles:?}")));
        }
        if shapes.iter().any(|&s| !(s > 0.0 && s.is_finite())) {
            return Err(Error::InvalidParameter(format!("shapes must be positive: {shapes:?}")));
        }
        Ok(DirichletRoots { poles, shapes })
    }

    /// Number of roots.
    pub fn dim(&self) -> usize {
        self.poles.len() - 1
    }

    pub fn sample(&self, rng: &mut RngStream) -> Vec<f64> {
        let w = dirichlet_sample(&self.shapes, rng).expect("shapes validated");
        let y = secular_roots(&self.poles, &w);
        debug_assert!(interlaces(&self.poles, &y), "roots {y:?} do not interlace {:?}", self.poles);
        y
    }

    fn require_distinct(&self) -> Result<()> {
        if self.poles.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPoint(format!("density needs distinct poles, got {:?}", self.poles)));
        }
        Ok(())
    }

    /// Logarithm of the normalising factor (everything not depending on `y`).
    pub fn log_constant(&self) -> Result<f64> {
        self.require_distinct()?;
        let total: f64 = self.shapes.iter().sum();
        let mut c = ln_gamma_pos(total) - self.shapes.iter().map(|&s| ln_gamma_pos(s)).sum::<f64>();
        for i in 0..self.poles.len() {
            for j in i + 1..self.poles.len() {
                c -= (self.shapes[i] + self.shapes[j] - 1.0) * (self.poles[j] - self.poles[i]).ln();
            }
        }
        Ok(c)
    }

    /// `ln ∏_i |z_i − y|^{s_i − 1}`.
    fn log_weight(&self, y: f64) -> f64 {
        self.poles.iter().zip(&self.shapes).map(|(&z, &s)| if s == 1.0 { 0.0 } else { (s - 1.0) * (y - z).abs().ln() }).sum()
    }

    /// Log-density at `y`; `−∞` off the interlacing set.
    pub fn log_density(&self, y: &[f64]) -> Result<f64> {
        let c = self.log_constant()?;
        if y.len() != self.dim() {
            return Err(Error::InvalidPoint(format!("expected {} coordinates, got {}", self.dim(), y.len())));
        }
        if !interlaces(&self.poles, y) {
            return Ok(f64::NEG_INFINITY);
        }
        let mut v = c;
        for i in 0..y.len() {
            for j in i + 1..y.len() {
                v += (y[j] - y[i]).ln();
            }
            v += self.log_weight(y[i]);
        }
        Ok(v)
    }

    /// Gauss–Jacobi rule on the gap `[z_k, z_{k+1}]` carrying the two endpoint
    /// singularities, mapped to nodes `(y, w)` that include the smooth part of
    /// the weight.
    fn gap_rule(&self, k: usize, nodes: usize) -> Result<Vec<(f64, f64)>> {
        let (a, b) = (self.poles[k], self.poles[k + 1]);
        let rule = JacobiRule::new(nodes, self.shapes[k + 1] - 1.0, self.shapes[k] - 1.0)?;
        Ok(rule
            .mapped(a, b)
            .into_iter()
            .map(|(y, w)| {
                let smooth: f64 = self
                    .poles
                    .iter()
                    .zip(&self.shapes)
                    .enumerate()
                    .filter(|&(i, _)| i != k && i != k + 1)
                    .map(|(_, (&z, &s))| (s - 1.0) * (y - z).abs().ln())
                    .sum();
                (y, w * smooth.exp())
            })
            .collect())
    }

    /// `∫ f(y) K(dy)` with a tensor Gauss–Jacobi rule of `nodes` points per
    /// coordinate.
    pub fn integrate_with(&self, nodes: usize, f: &dyn Fn(&[f64]) -> f64) -> Result<f64> {
        let c = self.log_constant()?.exp();
        let rules: Vec<Vec<(f64, f64)>> = (0..self.dim()).map(|k| self.gap_rule(k, nodes)).collect::<Result<_>>()?;
        let mut y = vec![0.0; self.dim()];
        let mut total = 0.0;
        tensor_sum(&rules, 0, 1.0, &mut y, &mut |y, w| {
            let mut v = 1.0;
            for i in 0..y.len() {
                for j in i + 1..y.len() {
                    v *= y[j] - y[i];
                }
            }
            total += w * v * f(y);
        });
        Ok(c * total)
    }

    /// [`integrate_with`](Self::integrate_with) at `nodes` and `nodes + 16`,
    /// failing if the two differ by more than `tolerance` (relative to the
    /// magnitude of the result, floored at one).
    pub fn integrate(&self, nodes: usize, tolerance: f64, f: &dyn Fn(&[f64]) -> f64) -> Result<QuadratureValue> {
        let coarse = self.integrate_with(nodes, f)?;
        let fine = self.integrate_with(nodes + 16, f)?;
        let error_estimate = (fine - coarse).abs();
        if error_estimate > tolerance * fine.abs().max(1.0) {
            return Err(Error::Quadrature { estimate: error_estimate, tolerance });
        }
        Ok(QuadratureValue { value: fine, error_estimate })
    }

    /// CDF of the smallest root `y_1`, for one or two roots.
    ///
    /// The density factorises as `C ∏_k w(y_k) · ∏(y_j − y_i)`, so for two
    /// roots the `y_1` marginal is `C w(y_1)(I_1 − y_1 I_0)` with
    /// `I_r = ∫ y^r w(y) dy` over the second gap. The CDF is integrated from
    /// whichever end of the first gap is closer, so the rule always sits on
    /// the singular endpoint.
    pub fn smallest_root_cdf(&self, nodes: usize) -> Result<impl Fn(f64) -> f64 + Sync + '_> {
        let dim = self.dim();
        if dim > 2 {
            return Err(Error::InvalidParameter("marginal CDF is implemented for at most two roots".into()));
        }
        let c = self.log_constant()?.exp();
        let (i0, i1) = if dim == 2 {
            let rule = self.gap_rule(1, nodes)?;
            (rule.iter().map(|&(_, w)| w).sum::<f64>(), rule.iter().map(|&(y, w)| y * w).sum::<f64>())
        } else {
            (0.0, 0.0)
        };
        let (a, b) = (self.poles[0], self.poles[1]);
        let mid = 0.5 * (a + b);
        let smooth = move |y: f64| -> f64 {
            let far: f64 = self.poles.iter().zip(&self.shapes).skip(2).map(|(&z, &s)| (s - 1.0) * (y - z).abs().ln()).sum();
            let linear = if dim == 2 { i1 - y * i0 } else { 1.0 };
            far.exp() * linear
        };
        let left = JacobiRule::new(nodes, 0.0, self.shapes[0] - 1.0)?;
        let right = JacobiRule::new(nodes, self.shapes[1] - 1.0, 0.0)?;
        let (sa, sb) = (self.shapes[0] - 1.0, self.shapes[1] - 1.0);
        Ok(move |t: f64| -> f64 {
            if t <= a {
                return 0.0;
            }
            if t >= b {
                return 1.0;
            }
            if t <= mid {
                // (y − a)^{sa} in the rule; (b − y)^{sb} is smooth on [a, t]
                let v = left.integrate_interval(a, t, |y| (b - y).powf(sb) * smooth(y));
                (c * v).clamp(0.0, 1.0)
            } else {
                let v = right.integrate_interval(t, b, |y| (y - a).powf(sa) * smooth(y));
                (1.0 - c * v).clamp(0.0, 1.0)
            }
        })
    }
}

fn tensor_sum(rules: &[Vec<(f64, f64)>], k: usize, weight: f64, y: &mut Vec<f64>, sink: &mut dyn FnMut(&[f64], f64)) {
    if k == rules.len() {
        sink(y, weight);
        return;
    }
    for &(node, w) in &rules[k] {
        y[k] = node;
        tensor_sum(rules, k + 1, weight * w, y, sink);
    }
}

/// `z_0 ≤ y_1 ≤ z_1 ≤ … ≤ y_N ≤ z_N`.
pub fn interlaces(poles: &[f64], y: &[f64]) -> bool {
    y.len() + 1 == poles.len() && y.iter().enumerate().all(|(i, &v)| poles[i] <= v && v <= poles[i + 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_case_normalises_and_has_beta_cdf() {
        let k = DirichletRoots::new(vec![0.0, 1.0], vec![2.0, 3.0]).unwrap();
        let mass = k.integrate_with(20, &|_| 1.0).unwrap();
        assert!((mass - 1.0).abs() < 1e-13);
        let cdf = k.smallest_root_cdf(40).unwrap();
        // density 12 y (1 − y)^2
        let exact = |t: f64| 12.0 * (t * t / 2.0 - 2.0 * t.powi(3) / 3.0 + t.powi(4) / 4.0);
        for &t in &[0.1, 0.4, 0.5, 0.77, 0.95] {
            assert!((cdf(t) - exact(t)).abs() < 1e-12, "t={t}");
        }
    }

    #[test]
    fn two_root_marginal_integrates_to_one() {
        let k = DirichletRoots::new(vec![0.0, 1.0, 3.0], vec![0.8, 0.6, 1.7]).unwrap();
        let mass = k.integrate(40, 1e-10, &|_| 1.0).unwrap();
        assert!((mass.value - 1.0).abs() < 1e-9);
        let cdf = k.smallest_root_cdf(60).unwrap();
        assert!(cdf(0.0) == 0.0 && cdf(1.0) == 1.0);
        assert!((cdf(0.5 - 1e-12) - cdf(0.5 + 1e-12)).abs() < 1e-8, "left and right pieces meet");
        let mut prev = 0.0;
        for i in 1..100 {
            let v = cdf(i as f64 / 100.0);
            assert!(v >= prev - 1e-12);
            prev = v;
        }
    }

    #[test]
    fn interlacing_predicate() {
        assert!(interlaces(&[0.0, 1.0, 2.0], &[0.5, 1.0]));
        assert!(!interlaces(&[0.0, 1.0, 2.0], &[1.5, 1.7]));
        assert!(!interlaces(&[0.0, 1.0], &[0.5, 0.6]));
    }
}
