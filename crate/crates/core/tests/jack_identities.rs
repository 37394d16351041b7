use beta_intertwine::jack::explicit::{schur_bialternant, Poly};
use beta_intertwine::jack::{jack_at_ones, jack_eval, JackContext, Operator, SymPoly};
use beta_intertwine::numerics::scalar::{ratio, Rational};
use beta_intertwine::numerics::Scalar;
use beta_intertwine::part;
use beta_intertwine::partitions::{partitions_up_to, Partition};

fn apply_via_matrix<F: Scalar>(ctx: &JackContext<F>, op: Operator, lambda: &Partition) -> SymPoly<F> {
    let m = ctx.op_matrix(op, lambda).unwrap();
    let k = m.index_of(lambda).unwrap();
    let row: Vec<(Partition, F)> = m.basis.iter().cloned().zip(m.matrix.row(k).iter().cloned()).collect();
    ctx.from_jack_basis(row.iter().map(|(p, v)| (p, v))).unwrap()
}

#[test]
fn operators_match_direct_differentiation() {
    for &theta in &[0.5, 0.7, 1.0, 1.5, 2.0, 2.5] {
        for n in 1..=4 {
            let ctx = JackContext::new(n, theta).unwrap();
            for lambda in partitions_up_to(5, n) {
                let p = ctx.jack(&lambda).unwrap();
                let explicit = Poly::from_sympoly(&p);
                for op in Operator::ALL {
                    let direct = explicit.apply(op, &theta).unwrap().to_sympoly().unwrap();
                    let via = apply_via_matrix(&ctx, op, &lambda);
                    let scale = direct.max_abs_coeff().max(1.0);
                    let err = direct.max_abs_diff(&via) / scale;
                    assert!(err < 1e-10, "θ={theta} N={n} λ={lambda:?} {op}: {err}");
                }
            }
        }
    }
}

#[test]
fn operators_match_exactly_in_rationals() {
    let theta = ratio(3, 2);
    for n in 1..=3 {
        let ctx = JackContext::new(n, theta.clone()).unwrap();
        for lambda in partitions_up_to(4, n) {
            let p = ctx.jack(&lambda).unwrap();
            let explicit = Poly::from_sympoly(&p);
            for op in Operator::ALL {
                let direct = explicit.apply(op, &theta).unwrap().to_sympoly().unwrap();
                assert_eq!(direct, apply_via_matrix(&ctx, op, &lambda), "N={n} λ={lambda:?} {op}");
            }
        }
    }
}

#[test]
fn schur_specialisation() {
    let points: [&[i64]; 3] = [&[2, 3, 5, 7], &[-1, 1, 4, 6], &[1, 2, 3, 4]];
    for n in 1..=4 {
        let exact = JackContext::new(n, Rational::from_int(1)).unwrap();
        for lambda in partitions_up_to(6, n) {
            for x in points {
                let x = &x[..n];
                let s = schur_bialternant(&lambda, x).unwrap();
                let xr: Vec<Rational> = x.iter().map(|&v| Rational::from_int(v)).collect();
                assert_eq!(exact.jack(&lambda).unwrap().eval(&xr), s, "λ={lambda:?}");
                let xf: Vec<f64> = x.iter().map(|&v| v as f64).collect();
                let v = jack_eval(&lambda, &xf, 1.0).unwrap();
                let sf = s.to_f64_lossy();
                assert!(((v - sf) / sf.abs().max(1e-300)).abs() < 1e-12 || (v - sf).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn evaluation_at_ones_consistency() {
    for &theta in &[0.5, 0.7, 1.0, 1.5, 2.0, 2.5] {
        for n in 1..=4 {
            for lambda in partitions_up_to(6, n) {
                let a = jack_at_ones(&lambda, n, theta).unwrap();
                let b = jack_eval(&lambda, &vec![1.0; n], theta).unwrap();
                assert!(((a - b) / a).abs() < 1e-10, "θ={theta} λ={lambda:?}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn binomials_do_not_depend_on_n() {
    for &theta in &[0.6, 1.0, 2.3] {
        for lambda in partitions_up_to(4, 3) {
            let reference = JackContext::new(lambda.len().max(1), theta).unwrap();
            for n in lambda.len().max(1) + 1..=5 {
                let ctx = JackContext::new(n, theta).unwrap();
                for rho in partitions_up_to(lambda.weight(), lambda.len().max(1)) {
                    let a = reference.binomial(&lambda, &rho).unwrap();
                    let b = ctx.binomial(&lambda, &rho).unwrap();
                    assert!((a - b).abs() < 1e-10 * a.abs().max(1.0), "λ={lambda:?} ρ={rho:?} N={n}");
                }
            }
        }
    }
}

#[test]
fn monomial_support_is_dominated() {
    let ctx = JackContext::new(4, 1.7).unwrap();
    for lambda in partitions_up_to(6, 4) {
        for (mu, _) in ctx.jack(&lambda).unwrap().terms() {
            assert!(mu.is_dominated_by(&lambda));
        }
    }
    let p = ctx.jack(&part![2, 1]).unwrap();
    assert_eq!(p.coeff(&part![2, 1]), 1.0);
}
