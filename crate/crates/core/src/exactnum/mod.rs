//! Exact rational arithmetic: scalars, dense matrices, polynomials, rational
//! functions and their local expansions.
//!
//! Nothing in this crate ever rounds. Every value is a reduced fraction of
//! arbitrary-precision integers.

mod laurent;
mod matrix;
mod partial;
mod poly;
mod ratfun;

pub use laurent::LaurentSeries;
pub use matrix::{null_space, rank, rref, Matrix, Rref};
pub use partial::PartialFraction;
pub use poly::Poly;
pub use ratfun::RatFun;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::str::FromStr;

/// An exact rational number.
pub type Scalar = num_rational::BigRational;

/// Shorthand for the scalar `n`.
pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// Shorthand for the scalar `num/den`. Panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_scalar(text: &str) -> Option<Scalar> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Scalar::new(n, d))
        }
        None => BigInt::from_str(text).ok().map(Scalar::from_integer),
    }
}

/// Canonical `p/q` rendering (`p` alone for integers).
pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Converts an exact integer-valued scalar to `i64`.
pub fn to_i64(x: &Scalar) -> Option<i64> {
    use num_traits::ToPrimitive;
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

/// Binomial coefficient `C(n, k)` as a scalar.
pub(crate) fn binomial(n: u64, k: u64) -> Scalar {
    if k > n {
        return zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Scalar::from_integer(acc)
}

/// `x^e` for a possibly negative exponent. Panics on `0^e` with `e < 0`.
pub(crate) fn powi(x: &Scalar, e: i64) -> Scalar {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        let x = parse_scalar("-6/4").unwrap();
        assert_eq!(x, frac(-3, 2));
        assert_eq!(format_scalar(&x), "-3/2");
        assert_eq!(format_scalar(&int(7)), "7");
        assert!(parse_scalar("1/0").is_none());
        assert!(parse_scalar("x").is_none());
    }

    #[test]
    fn zero_is_canonical() {
        let z = frac(0, -5);
        assert_eq!(z.numer(), &BigInt::zero());
        assert_eq!(z.denom(), &BigInt::one());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(0, 0), int(1));
        assert_eq!(binomial(3, 4), int(0));
    }
}
