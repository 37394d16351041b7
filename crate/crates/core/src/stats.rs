//! Monte Carlo summaries and Kolmogorov–Smirnov statistics.

use serde::{Deserialize, Serialize};

/// Sample mean with its standard error `s/√n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeanEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n: usize,
}

impl MeanEstimate {
    /// Summed left to right, so the result depends only on the order of
    /// `values`.
    pub fn from_values(values: &[f64]) -> Self {
        let n = values.len();
        if n == 0 {
            return MeanEstimate { mean: f64::NAN, std_error: f64::NAN, n };
        }
        let mean = values.iter().sum::<f64>() / n as f64;
        if n == 1 {
            return MeanEstimate { mean, std_error: 0.0, n };
        }
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        MeanEstimate { mean, std_error: (var / n as f64).sqrt(), n }
    }

    /// An exactly known value.
    pub fn exact(value: f64) -> Self {
        MeanEstimate { mean: value, std_error: 0.0, n: 0 }
    }

    /// Standard error of the difference of two independent estimates.
    pub fn combined_se(&self, other: &MeanEstimate) -> f64 {
        self.std_error.hypot(other.std_error)
    }

    /// `|mean − target| ≤ k·SE`.
    pub fn agrees_with(&self, target: f64, k: f64) -> bool {
        (self.mean - target).abs() <= k * self.std_error
    }
}

/// `sup_t |F_n(t) − F(t)|` for the empirical distribution of `samples`.
pub fn ks_one_sample(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut s = samples.to_vec();
    s.sort_by(|a, b| a.total_cmp(b));
    let n = s.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in s.iter().enumerate() {
        let f = cdf(x);
        d = d.max((i as f64 + 1.0) / n - f).max(f - i as f64 / n);
    }
    d
}

/// Two-sample statistic `sup_t |F_n(t) − G_m(t)|`.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(|x, y| x.total_cmp(y));
    b.sort_by(|x, y| x.total_cmp(y));
    let (n, m) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let t = a[i].min(b[j]);
        while i < a.len() && a[i] <= t {
            i += 1;
        }
        while j < b.len() && b[j] <= t {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    d
}

/// Asymptotic Kolmogorov quantile at the 1% level.
pub const KS_C_1PCT: f64 = 1.628;

pub fn ks_critical_one_sample(n: usize) -> f64 {
    KS_C_1PCT / (n as f64).sqrt()
}

pub fn ks_critical_two_sample(n: usize, m: usize) -> f64 {
    let (n, m) = (n as f64, m as f64);
    KS_C_1PCT * ((n + m) / (n * m)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_and_standard_error() {
        let e = MeanEstimate::from_values(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(e.mean, 2.5);
        assert!((e.std_error - (5.0f64 / 12.0).sqrt()).abs() < 1e-15);
        assert!(e.agrees_with(2.6, 1.0));
        assert_eq!(MeanEstimate::from_values(&[7.0]).std_error, 0.0);
    }

    #[test]
    fn ks_statistics() {
        let grid: Vec<f64> = (0..100).map(|i| (i as f64 + 0.5) / 100.0).collect();
        let d = ks_one_sample(&grid, |t| t.clamp(0.0, 1.0));
        assert!((d - 0.005).abs() < 1e-12);
        assert_eq!(ks_two_sample(&grid, &grid), 0.0);
        let dyadic: Vec<f64> = (0..128).map(|i| i as f64 / 128.0).collect();
        let shifted: Vec<f64> = dyadic.iter().map(|x| x + 0.5).collect();
        assert_eq!(ks_two_sample(&dyadic, &shifted), 0.5);
        assert!((ks_critical_two_sample(100, 100) - 1.628 * 0.02f64.sqrt()).abs() < 1e-15);
    }
}
