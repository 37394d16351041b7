use beta_intertwine::kernels::ChamberPoint;
use beta_intertwine::partitions::Partition;
use beta_intertwine::semigroup::{
    moment_prediction, simulate_sde, simulate_sde_halving, symmetrized_moment, GeneratorKind, GeneratorSpec, SdeConfig,
};
use beta_intertwine::stats::MeanEstimate;

fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

// Moments of p₁ and p₂ from Itô's formula. The interaction terms sum to
// θN(N−1) in the drift of p₁ and to 4θ(N−1)p₁ in the drift of p₂, so
//   L p₁ = θN(N+α),   L p₂ = K p₁,   K = 2θ(α+1) + 4θ(N−1) + 2,
// and the OU generator subtracts p₁ and 2p₂ respectively.
struct Oracle {
    c: f64,
    k: f64,
    m1: f64,
    m2: f64,
}

impl Oracle {
    fn new(theta: f64, alpha: f64, x0: &[f64]) -> Self {
        let n = x0.len() as f64;
        Oracle {
            c: theta * n * (n + alpha),
            k: 2.0 * theta * (alpha + 1.0) + 4.0 * theta * (n - 1.0) + 2.0,
            m1: x0.iter().sum(),
            m2: x0.iter().map(|v| v * v).sum(),
        }
    }

    fn p1(&self, kind: GeneratorKind, t: f64) -> f64 {
        match kind {
            GeneratorKind::Laguerre => self.m1 + self.c * t,
            GeneratorKind::LaguerreOu => self.c + (self.m1 - self.c) * (-t).exp(),
        }
    }

    fn p2(&self, kind: GeneratorKind, t: f64) -> f64 {
        match kind {
            GeneratorKind::Laguerre => self.m2 + self.k * (self.m1 * t + self.c * t * t / 2.0),
            GeneratorKind::LaguerreOu => {
                let (e1, e2) = ((-t).exp(), (-2.0 * t).exp());
                e2 * self.m2 + self.k * self.c * (1.0 - e2) / 2.0 + self.k * (self.m1 - self.c) * (e1 - e2)
            }
        }
    }
}

/// `p₂ = P_(2) − 2θ/(1+θ) · P_(1,1)`.
fn p2_prediction(spec: &GeneratorSpec, x0: &[f64], t: f64) -> f64 {
    let two = moment_prediction(spec, &part("2"), x0, t).unwrap();
    let one_one = moment_prediction(spec, &part("1,1"), x0, t).unwrap();
    two - 2.0 * spec.theta / (1.0 + spec.theta) * one_one
}

#[test]
fn matrix_moments_match_ito_oracle() {
    for kind in [GeneratorKind::Laguerre, GeneratorKind::LaguerreOu] {
        for &theta in &[0.5, 1.0, 2.3] {
            for &alpha in &[-0.5, 0.0, 1.7] {
                for x0 in [vec![0.7, 1.9], vec![0.1, 0.5, 2.0]] {
                    let spec = GeneratorSpec::new(kind, theta, alpha, x0.len()).unwrap();
                    let oracle = Oracle::new(theta, alpha, &x0);
                    for &t in &[0.0, 0.3, 1.0, 2.5] {
                        let p1 = moment_prediction(&spec, &part("1"), &x0, t).unwrap();
                        let p2 = p2_prediction(&spec, &x0, t);
                        assert!(
                            (p1 - oracle.p1(kind, t)).abs() < 1e-11 * oracle.p1(kind, t).abs().max(1.0),
                            "{kind} θ={theta} α={alpha} t={t}"
                        );
                        assert!(
                            (p2 - oracle.p2(kind, t)).abs() < 1e-10 * oracle.p2(kind, t).abs().max(1.0),
                            "{kind} θ={theta} α={alpha} t={t}: {p2}"
                        );
                    }
                }
            }
        }
    }
}

fn sample_p(paths: &beta_intertwine::semigroup::PathEnsemble, power: i32) -> MeanEstimate {
    let v: Vec<f64> = paths.terminal().map(|x| x.iter().map(|v| v.powi(power)).sum()).collect();
    MeanEstimate::from_values(&v)
}

#[test]
fn simulated_moments_match_ito_oracle() {
    let x0 = vec![0.2, 0.9, 1.6];
    for kind in [GeneratorKind::Laguerre, GeneratorKind::LaguerreOu] {
        for &(theta, alpha) in &[(0.5, 0.0), (1.3, -0.4)] {
            let spec = GeneratorSpec::new(kind, theta, alpha, 3).unwrap();
            let cfg = SdeConfig::new(2e-3, 0.4, 20_000).unwrap();
            let paths = simulate_sde(&spec, &ChamberPoint::nonnegative(x0.clone()).unwrap(), &cfg, 41).unwrap();
            let oracle = Oracle::new(theta, alpha, &x0);
            let p1 = sample_p(&paths, 1);
            let p2 = sample_p(&paths, 2);
            assert!(p1.agrees_with(oracle.p1(kind, 0.4), 4.0), "{kind} θ={theta}: {p1:?} vs {}", oracle.p1(kind, 0.4));
            assert!(p2.agrees_with(oracle.p2(kind, 0.4), 4.0), "{kind} θ={theta}: {p2:?} vs {}", oracle.p2(kind, 0.4));
        }
    }
}

#[test]
fn simulated_states_are_ordered_and_bounded() {
    let spec = GeneratorSpec::new(GeneratorKind::Laguerre, 1.0, 0.5, 2).unwrap();
    let cfg = SdeConfig::new(1e-3, 0.5, 20_000).unwrap();
    let paths = simulate_sde(&spec, &ChamberPoint::nonnegative(vec![1.0, 2.0]).unwrap(), &cfg, 3).unwrap();
    let oracle = Oracle::new(1.0, 0.5, &[1.0, 2.0]);
    for x in paths.terminal() {
        assert!(x[0] <= x[1]);
        // The mean of p₂ is about 24; a state far outside the bulk signals a
        // collision artefact of the scheme.
        assert!(x[0] > -0.5 && x.iter().map(|v| v * v).sum::<f64>() < 20.0 * oracle.p2(GeneratorKind::Laguerre, 0.5));
    }
}

#[test]
fn symmetrized_moment_agrees_with_direct_average() {
    let spec = GeneratorSpec::new(GeneratorKind::LaguerreOu, 0.8, 0.2, 2).unwrap();
    let mut cfg = SdeConfig::new(5e-3, 0.3, 500).unwrap();
    cfg.snapshots = 3;
    let paths = simulate_sde(&spec, &ChamberPoint::nonnegative(vec![0.5, 1.5]).unwrap(), &cfg, 8).unwrap();
    assert_eq!(paths.times.len(), 4);
    let m = symmetrized_moment(&paths, &part("1"), 0.8, 3).unwrap();
    let direct = sample_p(&paths, 1);
    assert!((m.mean - direct.mean).abs() < 1e-12);
}

#[test]
fn halving_shares_brownian_paths() {
    let spec = GeneratorSpec::new(GeneratorKind::Laguerre, 1.0, 0.5, 2).unwrap();
    let cfg = SdeConfig::new(1e-2, 0.5, 2_000).unwrap();
    let (coarse, fine) = simulate_sde_halving(&spec, &ChamberPoint::nonnegative(vec![1.0, 2.0]).unwrap(), &cfg, 12).unwrap();
    let diffs: Vec<f64> = coarse.terminal().zip(fine.terminal()).map(|(a, b)| a.iter().sum::<f64>() - b.iter().sum::<f64>()).collect();
    let d = MeanEstimate::from_values(&diffs);
    let spread = sample_p(&coarse, 1).std_error;
    // Coupled paths differ far less than independent ones would.
    assert!(d.std_error < 0.2 * spread, "{} vs {spread}", d.std_error);
}
