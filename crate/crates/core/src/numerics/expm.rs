//! Matrix exponentials for the small operator matrices of the semigroups.

use crate::jack::GradedMatrix;
use crate::numerics::matrix::DenseMatrix;
use crate::numerics::scalar::Scalar;

/// `e^{tM}` by the terminating power series when `M` is nilpotent.
///
/// Returns `None` if `M^n ≠ 0` for `n = dim M`, i.e. `M` is not nilpotent.
/// Works in any scalar field, so rational `t` and `M` give an exact result.
pub fn expm_nilpotent<F: Scalar>(m: &DenseMatrix<F>, t: &F) -> Option<DenseMatrix<F>> {
    let n = m.rows();
    assert_eq!(n, m.cols(), "square matrix required");
    let tm = m.scale(t);
    let mut result = DenseMatrix::identity(n);
    let mut term = DenseMatrix::identity(n);
    for k in 1..=n + 1 {
        term = (&term * &tm).scale(&(F::one() / F::from_count(k)));
        if term.is_zero() {
            return Some(result);
        }
        result = &result + &term;
    }
    None
}

/// `e^{tM}` by scaling and squaring with a Taylor kernel.
///
/// The matrix is scaled so that `‖tM/2^s‖_∞ ≤ 1/2`, the Taylor series is summed
/// until the next term no longer changes the sum at double precision, and the
/// result is squared `s` times. Nilpotent input short-circuits to the exact
/// terminating series.
pub fn expm(m: &DenseMatrix<f64>, t: f64) -> DenseMatrix<f64> {
    if let Some(e) = expm_nilpotent(m, &t) {
        return e;
    }
    let n = m.rows();
    let a = m.scale(&t);
    let norm = a.norm_inf();
    let s = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
    let a = a.scale(&(0.5f64).powi(s));
    let mut result = DenseMatrix::identity(n);
    let mut term = DenseMatrix::identity(n);
    for k in 1..=60 {
        term = (&term * &a).scale(&(1.0 / k as f64));
        result = &result + &term;
        if term.norm_inf() <= 1e-18 * result.norm_inf() {
            break;
        }
    }
    for _ in 0..s {
        result = &result * &result;
    }
    result
}

/// [`expm`] on a graded operator matrix, keeping its basis.
pub fn graded_expm(m: &GradedMatrix<f64>, t: f64) -> GradedMatrix<f64> {
    GradedMatrix::new(m.basis.clone(), expm(&m.matrix, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::scalar::{ratio, Rational};

    #[test]
    fn zero_matrix_gives_identity() {
        let z = DenseMatrix::<f64>::zeros(3, 3);
        assert_eq!(expm(&z, 1.7), DenseMatrix::identity(3));
    }

    #[test]
    fn nilpotent_index_two() {
        let m = DenseMatrix::from_rows(vec![vec![0.0, 0.0], vec![4.0, 0.0]]);
        let e = expm(&m, 0.25);
        assert_eq!(e.get(1, 0), &1.0);
        assert_eq!(e.get(0, 0), &1.0);
    }

    #[test]
    fn exact_nilpotent_series() {
        let m = DenseMatrix::from_rows(vec![
            vec![Rational::from_int(0), Rational::from_int(0), Rational::from_int(0)],
            vec![ratio(1, 2), Rational::from_int(0), Rational::from_int(0)],
            vec![Rational::from_int(0), Rational::from_int(3), Rational::from_int(0)],
        ]);
        let e = expm_nilpotent(&m, &ratio(2, 3)).unwrap();
        // (tM)^2/2 at (2,0): (2/3)^2 · 3 · 1/2 / 2
        assert_eq!(e.get(2, 0), &ratio(1, 3));
        let full = DenseMatrix::from_rows(vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        assert!(expm_nilpotent(&full, &1.0).is_none());
    }

    #[test]
    fn diagonal_and_rotation() {
        let d = DenseMatrix::from_diagonal(&[-1.0, -2.0, 0.5]);
        let e = expm(&d, 3.0);
        assert!((e.get(0, 0) - (-3f64).exp()).abs() < 1e-15);
        assert!((e.get(1, 1) - (-6f64).exp()).abs() < 1e-16);
        assert!((e.get(2, 2) - 1.5f64.exp()).abs() < 1e-14);
        let rot = DenseMatrix::from_rows(vec![vec![0.0, -1.0], vec![1.0, 0.0]]);
        let e = expm(&rot, 10.0);
        assert!((e.get(0, 0) - 10f64.cos()).abs() < 1e-13);
        assert!((e.get(1, 0) - 10f64.sin()).abs() < 1e-13);
    }

    #[test]
    fn semigroup_property() {
        let m = DenseMatrix::from_rows(vec![vec![-1.0, 0.0, 0.0], vec![2.0, -2.0, 0.0], vec![0.5, 3.0, -3.0]]);
        let a = expm(&m, 0.3);
        let b = expm(&m, 0.4);
        let ab = expm(&m, 0.7);
        assert!((&(&a * &b) - &ab).max_abs() < 1e-14);
    }
}
