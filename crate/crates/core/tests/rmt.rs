use std::f64::consts::PI;

use beta_intertwine::kernels::ChamberPoint;
use beta_intertwine::numerics::RngStream;
use beta_intertwine::rmt::{
    corner_truncation_pushforward, eigen_projection_sample, haar_sample, laguerre_ensemble_sample, truncated_radial_sample,
    BiInvariantSampler, EnsembleMethod, Field, HaarMatrix,
};
use beta_intertwine::stats::{ks_critical_one_sample, ks_one_sample, MeanEstimate};

const DRAWS: usize = 20_000;

fn assert_ks(samples: &[f64], cdf: impl Fn(f64) -> f64, what: &str) {
    let d = ks_one_sample(samples, cdf);
    let crit = ks_critical_one_sample(samples.len());
    assert!(d < crit, "{what}: KS {d} ≥ {crit}");
}

fn collect(seed: u64, mut f: impl FnMut(&mut RngStream) -> f64) -> Vec<f64> {
    (0..DRAWS).map(|i| f(&mut RngStream::new(seed, i as u64))).collect()
}

// The corner of a rotated diag(0, 1) is |u₁|², which is Beta(1/2, 1/2) for a
// real unit vector and uniform for a complex one.
#[test]
fn one_by_one_corner_laws() {
    let x = ChamberPoint::signed(vec![0.0, 1.0]).unwrap();
    let real = collect(1, |rng| eigen_projection_sample(&x, Field::Real, rng).unwrap().coords()[0]);
    assert_ks(&real, |v| 2.0 / PI * v.clamp(0.0, 1.0).sqrt().asin(), "real corner");
    let complex = collect(2, |rng| eigen_projection_sample(&x, Field::Complex, rng).unwrap().coords()[0]);
    assert_ks(&complex, |v| v.clamp(0.0, 1.0), "complex corner");
}

#[test]
fn complex_haar_determinant_phase_is_uniform() {
    let phases = collect(3, |rng| match haar_sample(Field::Complex, 3, rng) {
        HaarMatrix::Complex(u) => {
            let d = u.determinant();
            assert!((d.norm() - 1.0).abs() < 1e-12);
            d.arg()
        }
        HaarMatrix::Real(_) => unreachable!(),
    });
    assert_ks(&phases, |v| ((v + PI) / (2.0 * PI)).clamp(0.0, 1.0), "arg det U");
}

#[test]
fn haar_matrices_are_orthogonal() {
    for field in [Field::Real, Field::Complex] {
        for n in 1..=6 {
            let u = haar_sample(field, n, &mut RngStream::new(4, n as u64));
            assert!(u.unitarity_defect() < 1e-13);
        }
    }
}

// With one particle the ensemble density is x^{θ(α+1)−1}e^{−x}, which is
// exponential when θ(α+1) = 1.
#[test]
fn one_particle_ensemble_is_exponential() {
    let cases = [
        (1.0, 0.0, EnsembleMethod::Gaussian),
        (0.5, 1.0, EnsembleMethod::Gaussian),
        (0.4, 1.5, EnsembleMethod::Bidiagonal),
        (2.0, -0.5, EnsembleMethod::Bidiagonal),
    ];
    for (i, &(theta, alpha, method)) in cases.iter().enumerate() {
        let s = collect(10 + i as u64, |rng| laguerre_ensemble_sample(1, theta, alpha, method, rng).unwrap().coords()[0]);
        assert_ks(&s, |v| 1.0 - (-v.max(0.0)).exp(), &format!("θ={theta} α={alpha} {method:?}"));
    }
}

// E[Σx] = θN(N+α) under the Laguerre ensemble; the Gaussian and bidiagonal
// constructions must agree on it.
#[test]
fn ensemble_constructions_share_first_moment() {
    for &(theta, alpha) in &[(0.5, 2.0), (1.0, 1.0)] {
        for method in [EnsembleMethod::Gaussian, EnsembleMethod::Bidiagonal] {
            let s = collect(20, |rng| laguerre_ensemble_sample(3, theta, alpha, method, rng).unwrap().coords().iter().sum());
            let m = MeanEstimate::from_values(&s);
            assert!(m.agrees_with(theta * 3.0 * (3.0 + alpha), 4.0), "{method:?} θ={theta} α={alpha}: {m:?}");
        }
    }
}

#[test]
fn realisations_interlace() {
    let x = ChamberPoint::nonnegative(vec![0.2, 0.9, 1.4, 3.0]).unwrap();
    for field in [Field::Real, Field::Complex] {
        for i in 0..200 {
            let mut rng = RngStream::new(30, i);
            let y = eigen_projection_sample(&x, field, &mut rng).unwrap();
            let (xs, ys) = (x.coords(), y.coords());
            assert!((0..3).all(|j| xs[j] <= ys[j] && ys[j] <= xs[j + 1]));
            let z = truncated_radial_sample(&x, field, 2, &mut rng).unwrap();
            let zs = z.coords();
            assert!(zs[0] >= 0.0 && zs[0] <= xs[0] && (1..4).all(|j| xs[j - 1] <= zs[j] && zs[j] <= xs[j]));
            let pair = corner_truncation_pushforward(&BiInvariantSampler::Gaussian, field, 2, 1, &mut rng).unwrap();
            assert_eq!((pair.pushed.len(), pair.truncated.len()), (2, 2));
        }
    }
}

#[test]
fn constructions_validate_inputs() {
    let mut rng = RngStream::new(0, 0);
    assert!(Field::from_theta(2.0).is_err());
    assert!(laguerre_ensemble_sample(2, 1.0, 0.5, EnsembleMethod::Gaussian, &mut rng).is_err());
    assert!(corner_truncation_pushforward(&BiInvariantSampler::HaarDiagonal(vec![1.0]), Field::Real, 2, 0, &mut rng).is_err());
}
