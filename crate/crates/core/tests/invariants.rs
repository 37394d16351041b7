use beta_intertwine::jack::{jack_eval, shared_exact_context, SymPoly};
use beta_intertwine::kernels::{c_eigenvalue_exact, sample_dixon_anderson, sample_lambda, ChamberPoint, KernelParams};
use beta_intertwine::numerics::rng::dirichlet_sample;
use beta_intertwine::numerics::scalar::{ratio, Rational};
use beta_intertwine::numerics::secular::relative_residual;
use beta_intertwine::numerics::{secular_roots, RngStream};
use beta_intertwine::partitions::{partitions_of, Partition};
use beta_intertwine::semigroup::{generator_intertwine_in, semigroup_matrix, GeneratorKind, GeneratorSpec};
use beta_intertwine::special_functions::{c_normalization_in, generalized_pochhammer};
use beta_intertwine::Scalar;
use proptest::prelude::*;

fn partition(max_part: usize, max_len: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..=max_part, 0..=max_len).prop_map(Partition::from_unsorted)
}

/// Positive rationals p/q with small numerators and denominators.
fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=12, 1i64..=6).prop_map(|(p, q)| ratio(p, q))
}

/// Rationals in (−1, 3).
fn alpha_rational() -> impl Strategy<Value = Rational> {
    (-5i64..=17, 6i64..=6).prop_map(|(p, q)| ratio(p, q))
}

fn increasing(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.01f64..2.0, len).prop_map(|gaps| {
        gaps.iter()
            .scan(-0.5, |acc, g| {
                *acc += g;
                Some(*acc)
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_is_an_involution(l in partition(7, 6)) {
        prop_assert_eq!(l.conjugate().conjugate(), l.clone());
        prop_assert_eq!(l.conjugate().weight(), l.weight());
    }

    #[test]
    fn c_rectangle_shift(theta in positive_rational(), alpha in alpha_rational(), n in 1usize..=4, l in partition(4, 4), m in 1usize..=3) {
        prop_assume!(l.len() <= n);
        let shifted = l.add_columns(m, n);
        let lhs = c_eigenvalue_exact(&shifted, n, &theta, &alpha).unwrap();
        let alpha_shift = alpha.clone() + Rational::from_count(m) / theta.clone();
        let rhs = c_eigenvalue_exact(&Partition::rectangle(m, n), n, &theta, &alpha).unwrap()
            * c_eigenvalue_exact(&l, n, &theta, &alpha_shift).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    // c(λ, N, θ; β) = (b)_λ / (b + θ)_λ for b = (β + N)θ.
    #[test]
    fn c_is_a_pochhammer_ratio(theta in positive_rational(), beta in alpha_rational(), n in 1usize..=4, l in partition(5, 4)) {
        prop_assume!(l.len() <= n);
        let b = (beta.clone() + Rational::from_count(n)) * theta.clone();
        let c = c_eigenvalue_exact(&l, n, &theta, &beta).unwrap();
        prop_assert_eq!(c * generalized_pochhammer(&(b.clone() + theta.clone()), &l, &theta), generalized_pochhammer(&b, &l, &theta));
    }

    #[test]
    fn c_normalised_jacks_sum_to_power(theta in positive_rational(), n in 1usize..=3, degree in 0usize..=5, x in prop::collection::vec(-6i64..=6, 3)) {
        let ctx = shared_exact_context(n, &theta).unwrap();
        let x: Vec<Rational> = x[..n].iter().map(|&v| ratio(v, 3)).collect();
        let total: Rational = c_normalization_in(&ctx, degree)
            .unwrap()
            .iter()
            .map(|(l, r)| r.clone() * ctx.jack(l).unwrap().eval(&x))
            .fold(Rational::from_int(0), |a, b| a + b);
        let p1: Rational = x.iter().cloned().fold(Rational::from_int(0), |a, b| a + b);
        let mut power = Rational::from_int(1);
        for _ in 0..degree {
            power *= p1.clone();
        }
        prop_assert_eq!(total, power);
        prop_assert_eq!(partitions_of(degree, n).len(), c_normalization_in(&ctx, degree).unwrap().len());
    }

    #[test]
    fn jack_is_symmetric_and_homogeneous(theta in 0.3f64..3.0, l in partition(3, 3), x in prop::collection::vec(-1.5f64..1.5, 3), s in 0.2f64..2.0) {
        let v = jack_eval(&l, &x, theta).unwrap();
        let reversed: Vec<f64> = x.iter().rev().copied().collect();
        let scaled: Vec<f64> = x.iter().map(|v| v * s).collect();
        let scale = 1.0 + v.abs();
        prop_assert!((jack_eval(&l, &reversed, theta).unwrap() - v).abs() < 1e-11 * scale);
        let expected = v * s.powi(l.weight() as i32);
        prop_assert!((jack_eval(&l, &scaled, theta).unwrap() - expected).abs() < 1e-10 * (1.0 + expected.abs()));
    }

    #[test]
    fn jack_exact_leading_term(theta in positive_rational(), l in partition(3, 3)) {
        let ctx = shared_exact_context(3, &theta).unwrap();
        let p: std::sync::Arc<SymPoly<Rational>> = ctx.jack(&l).unwrap();
        prop_assert_eq!(p.coeff(&l), Rational::from_int(1));
    }

    #[test]
    fn semigroup_property(kind in prop_oneof![Just(GeneratorKind::Laguerre), Just(GeneratorKind::LaguerreOu)], theta in 0.5f64..2.5, alpha in -0.5f64..2.0, n in 1usize..=3, s in 0.0f64..1.0, t in 0.0f64..1.0) {
        let spec = GeneratorSpec::new(kind, theta, alpha, n).unwrap();
        let lmax = Partition::from_unsorted(vec![3, 1]);
        prop_assume!(lmax.len() <= n);
        let whole = semigroup_matrix(&spec, &lmax, s + t).unwrap();
        let split = semigroup_matrix(&spec, &lmax, s).unwrap().then(&semigroup_matrix(&spec, &lmax, t).unwrap());
        let scale = whole.matrix.max_abs().max(1.0);
        prop_assert!(whole.max_abs_diff(&split) < 1e-12 * scale, "{}", whole.max_abs_diff(&split));
    }

    #[test]
    fn generator_intertwinings_vanish_exactly(theta in positive_rational(), alpha in alpha_rational(), n in 1usize..=2) {
        let ctx = shared_exact_context(n, &theta).unwrap();
        let lmax = Partition::from_unsorted(vec![2, 1]);
        prop_assume!(lmax.len() <= n);
        for r in generator_intertwine_in(&ctx, &alpha, &lmax).unwrap() {
            prop_assert!(r.is_exactly_zero());
        }
    }

    #[test]
    fn secular_roots_interlace(poles in increasing(5), weights in prop::collection::vec(0.05f64..3.0, 5)) {
        let y = secular_roots(&poles, &weights);
        prop_assert_eq!(y.len(), 4);
        for (i, yi) in y.iter().enumerate() {
            prop_assert!(poles[i] < *yi && *yi < poles[i + 1]);
            prop_assert!(relative_residual(&poles, &weights, *yi) < 1e-10);
        }
        // Roots are pushed away from a heavier pole: raising the top weight
        // moves every root down.
        let mut heavier = weights.clone();
        heavier[4] *= 2.0;
        for (a, b) in y.iter().zip(secular_roots(&poles, &heavier)) {
            prop_assert!(b <= *a, "{b} > {a}");
        }
    }

    #[test]
    fn dirichlet_samples_lie_on_the_simplex(shapes in prop::collection::vec(0.05f64..4.0, 1..6), seed in any::<u64>()) {
        let p = dirichlet_sample(&shapes, &mut RngStream::new(seed, 0)).unwrap();
        prop_assert!(p.iter().all(|&v| (0.0..=1.0).contains(&v)));
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kernel_samples_interlace(x in increasing(4), theta in 0.1f64..4.0, alpha in -0.9f64..3.0, seed in any::<u64>()) {
        let mut rng = RngStream::new(seed, 1);
        let signed = ChamberPoint::signed(x.clone()).unwrap();
        let y = sample_dixon_anderson(&signed, theta, &mut rng).unwrap().into_coords();
        prop_assert!((0..3).all(|j| x[j] <= y[j] && y[j] <= x[j + 1]));
        let pos: Vec<f64> = x.iter().map(|v| v + 0.5).collect();
        let params = KernelParams::new(theta, alpha, 4).unwrap();
        let z = sample_lambda(&ChamberPoint::nonnegative(pos.clone()).unwrap(), &params, &mut rng).unwrap().into_coords();
        prop_assert!(0.0 <= z[0] && z[0] <= pos[0]);
        prop_assert!((1..4).all(|j| pos[j - 1] <= z[j] && z[j] <= pos[j]));
    }
}
