//! Log-gamma, shifted factorials and their signs.

use crate::error::{Error, Result};
use crate::numerics::scalar::Scalar;

/// `ln |Γ(x)|` together with the sign of `Γ(x)`.
pub fn ln_gamma(x: f64) -> (f64, i32) {
    libm::lgamma_r(x)
}

/// A real number held as `sign · exp(ln_abs)`; `sign == 0` is an exact zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SignedLog {
    pub ln_abs: f64,
    pub sign: i32,
}

impl SignedLog {
    pub const ONE: SignedLog = SignedLog { ln_abs: 0.0, sign: 1 };

    pub fn value(self) -> f64 {
        match self.sign {
            0 => 0.0,
            s => s as f64 * self.ln_abs.exp(),
        }
    }
}

impl std::ops::Mul for SignedLog {
    type Output = SignedLog;
    fn mul(self, other: SignedLog) -> SignedLog {
        SignedLog { ln_abs: self.ln_abs + other.ln_abs, sign: self.sign * other.sign }
    }
}

impl std::ops::Div for SignedLog {
    type Output = SignedLog;
    fn div(self, other: SignedLog) -> SignedLog {
        assert!(other.sign != 0, "division by an exact zero");
        SignedLog { ln_abs: self.ln_abs - other.ln_abs, sign: self.sign * other.sign }
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Shifted factorial `(x)_r = Γ(x+r)/Γ(x)` in log form.
///
/// Nonnegative integer `r` is evaluated as the finite product
/// `x(x+1)…(x+r−1)`, which has no poles. Otherwise the gamma ratio is used and
/// a pole of `Γ(x+r)` with `Γ(x)` finite is rejected.
pub fn logpoch(x: f64, r: f64) -> Result<SignedLog> {
    if !(x.is_finite() && r.is_finite()) {
        return Err(Error::InvalidParameter(format!("logpoch({x}, {r}) needs finite arguments")));
    }
    if r >= 0.0 && r == r.floor() && r <= 4096.0 {
        let mut acc = SignedLog::ONE;
        for j in 0..r as usize {
            let f = x + j as f64;
            if f == 0.0 {
                return Ok(SignedLog { ln_abs: f64::NEG_INFINITY, sign: 0 });
            }
            acc.ln_abs += f.abs().ln();
            if f < 0.0 {
                acc.sign = -acc.sign;
            }
        }
        return Ok(acc);
    }
    let top = x + r;
    match (is_nonpositive_integer(top), is_nonpositive_integer(x)) {
        (true, false) => Err(Error::Pole(format!("Γ({top}) in ({x})_{r}"))),
        (false, true) => Ok(SignedLog { ln_abs: f64::NEG_INFINITY, sign: 0 }),
        (true, true) => {
            // Γ(x+r)/Γ(x) for two poles: limit via reflection, ratio of
            // (−1)^k k! terms. Only integer r reaches here, handled above.
            Err(Error::Pole(format!("({x})_{r} with both gamma arguments at poles")))
        }
        (false, false) => {
            let (a, sa) = ln_gamma(top);
            let (b, sb) = ln_gamma(x);
            Ok(SignedLog { ln_abs: a - b, sign: sa * sb })
        }
    }
}

/// Rising factorial `(x)_k` for integer `k` in any scalar field.
pub fn rising<F: Scalar>(x: &F, k: usize) -> F {
    let mut acc = F::one();
    let mut term = x.clone();
    for _ in 0..k {
        acc = acc * term.clone();
        term = term + F::one();
    }
    acc
}

/// `ln Γ` of a positive argument, panicking on a pole. For normalisation
/// constants whose arguments are positive by construction.
pub fn ln_gamma_pos(x: f64) -> f64 {
    debug_assert!(x > 0.0, "ln_gamma_pos({x})");
    ln_gamma(x).0
}

/// `ln B(a, b)`.
pub fn ln_beta(a: f64, b: f64) -> f64 {
    ln_gamma_pos(a) + ln_gamma_pos(b) - ln_gamma_pos(a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::scalar::{ratio, Rational};

    #[test]
    fn logpoch_examples() {
        let v = logpoch(3.0, 2.0).unwrap();
        assert!((v.ln_abs - 12f64.ln()).abs() < 1e-15);
        assert_eq!(v.sign, 1);
        assert_eq!(logpoch(-1.0, 3.0).unwrap().sign, 0);
        let neg = logpoch(-1.5, 1.0).unwrap();
        assert_eq!(neg.sign, -1);
        assert!((neg.value() + 1.5).abs() < 1e-15);
        // non-integer shift: (1)_{1/2} = Γ(3/2)
        let half = logpoch(1.0, 0.5).unwrap();
        assert!((half.value() - 0.886_226_925_452_758).abs() < 1e-14);
        assert!(logpoch(-0.5, -0.5).is_err());
        assert_eq!(logpoch(-2.0, 0.5).unwrap().sign, 0);
    }

    #[test]
    fn ln_gamma_values() {
        assert!((ln_gamma(5.0).0 - 24f64.ln()).abs() < 1e-14);
        assert!((ln_gamma(0.5).0 - std::f64::consts::PI.sqrt().ln()).abs() < 1e-14);
        assert_eq!(ln_gamma(-0.5).1, -1);
    }

    #[test]
    fn rising_generic() {
        assert_eq!(rising(&3.0, 2), 12.0);
        assert_eq!(rising(&ratio(1, 2), 3), ratio(15, 8));
        assert_eq!(rising(&Rational::from_int(-2), 3), Rational::from_int(0));
        assert_eq!(rising(&7.5, 0), 1.0);
    }
}
