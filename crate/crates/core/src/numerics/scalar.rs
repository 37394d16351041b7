//! Field abstraction so the algebraic layer (Jack coefficients, operator
//! matrices, eigenvalue constants) runs both in `f64` and in exact rationals.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

pub type Rational = num_rational::BigRational;

pub trait Scalar: Num + Signed + Clone + Debug + PartialOrd + FromPrimitive + ToPrimitive + Send + Sync + 'static {
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer fits the scalar type")
    }

    fn from_count(v: usize) -> Self {
        Self::from_int(v as i64)
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Whether values of this type are exact; exact types compare with `==`.
    fn is_exact() -> bool;
}

impl Scalar for f64 {
    fn is_exact() -> bool {
        false
    }
}

impl Scalar for Rational {
    fn is_exact() -> bool {
        true
    }
}

/// `p/q` as an exact rational.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"3/2"`, `"-0.3"` or `"2"` into an exact rational. Decimal input is
/// read as the exact decimal fraction, not the nearest binary double.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q == BigInt::from(0) {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{}{}", if int.is_empty() { "0" } else { int }, frac);
    let numer: BigInt = digits.parse().ok()?;
    let denom = num_traits::pow(BigInt::from(10), frac.len());
    let r = Rational::new(numer, denom);
    Some(if neg { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/2"), Some(ratio(3, 2)));
        assert_eq!(parse_rational("-0.3"), Some(ratio(-3, 10)));
        assert_eq!(parse_rational("2"), Some(ratio(2, 1)));
        assert_eq!(parse_rational(".5"), Some(ratio(1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn exactness_flags() {
        assert!(!f64::is_exact());
        assert!(Rational::is_exact());
        assert_eq!(<f64 as Scalar>::from_int(-3), -3.0);
    }
}
