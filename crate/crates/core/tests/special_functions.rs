use beta_intertwine::special_functions::{pfq_shift_check, pfq_truncated, HypergeometricSpec};

fn spec(upper: &[f64], lower: &[f64], theta: f64, n: usize, max_degree: usize) -> HypergeometricSpec {
    HypergeometricSpec { upper: upper.to_vec(), lower: lower.to_vec(), theta, n, max_degree }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

// ₀F₀(x) = Σ_n p₁ⁿ/n! = e^{x₁+…+x_N} for every θ.
#[test]
fn zero_f_zero_is_exponential() {
    for &theta in &[0.5, 1.0, 2.7] {
        for x in [vec![0.3], vec![0.1, 0.3], vec![-0.2, 0.1, 0.3]] {
            let v = pfq_truncated(&spec(&[], &[], theta, x.len(), 12), &x).unwrap();
            let want = x.iter().sum::<f64>().exp();
            assert!(rel(v.value, want) < 1e-13, "θ={theta} x={x:?}: {} vs {want}", v.value);
        }
    }
}

// ₁F₀(a; x) = ∏(1 − x_i)^{−a} for every θ.
#[test]
fn one_f_zero_is_a_product() {
    for &theta in &[0.5, 1.0, 1.9] {
        for &a in &[0.7, -1.5, 2.0] {
            for x in [vec![0.08], vec![0.05, 0.09], vec![-0.06, 0.02, 0.07]] {
                let v = pfq_truncated(&spec(&[a], &[], theta, x.len(), 12), &x).unwrap();
                let want: f64 = x.iter().map(|xi| (1.0 - xi).powf(-a)).product();
                assert!(rel(v.value, want) < 1e-11, "θ={theta} a={a} x={x:?}: {} vs {want}", v.value);
            }
        }
    }
}

// With one variable the series is Gauss's: ₂F₁(1, 1; 2; x) = −ln(1 − x)/x.
#[test]
fn one_variable_gauss_series() {
    for &theta in &[0.5, 1.3] {
        let x = 0.05;
        let v = pfq_truncated(&spec(&[1.0, 1.0], &[2.0], theta, 1, 12), &[x]).unwrap();
        assert!(rel(v.value, -(1.0 - x).ln() / x) < 1e-14);
        assert!(v.last_shell < 1e-16);
    }
}

#[test]
fn series_rejects_lower_poles_and_bad_points() {
    assert!(pfq_truncated(&spec(&[1.0], &[-1.0], 1.0, 1, 4), &[0.1]).is_err());
    assert!(pfq_truncated(&spec(&[1.0], &[2.0], 1.0, 2, 4), &[0.1]).is_err());
}

#[test]
fn parameter_shift_termwise_and_by_quadrature() {
    for &theta in &[0.5, 1.0, 2.5] {
        for &beta in &[-0.5, 0.0, 1.3] {
            for n in 1..=3 {
                let b = (beta + n as f64) * theta;
                let s = spec(&[0.4, 1.2], &[b], theta, n, 5);
                let check = pfq_shift_check(&s, 0, beta).unwrap();
                assert!(check.termwise < 1e-12, "θ={theta} β={beta} N={n}: {}", check.termwise);
                if n == 1 {
                    assert!(check.quadrature.unwrap() < 1e-8);
                }
            }
        }
    }
}
