//! Text form of exact rationals: lowest terms, always `"p/q"` with `q ≥ 1`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serializer;

use crate::error::{Error, Result};
use crate::Rational;

pub fn to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `"p/q"`, `"p"` and, for convenience on the command line, `"-p/q"`.
pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Decimal rendering for humans; never used in comparisons.
pub fn approx(r: &Rational) -> f64 {
    let n = r.numer().to_f64().unwrap_or(f64::NAN);
    let d = r.denom().to_f64().unwrap_or(f64::NAN);
    if n.is_finite() && d.is_finite() {
        return n / d;
    }
    // Huge operands: scale down by the common magnitude first.
    let shift = r.denom().bits().max(r.numer().bits()).saturating_sub(900);
    let n = (r.numer().abs() >> shift).to_f64().unwrap_or(f64::INFINITY);
    let d = (r.denom() >> shift).to_f64().unwrap_or(f64::INFINITY);
    let v = n / d;
    if r.is_negative() {
        -v
    } else {
        v
    }
}

pub fn floor(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn from_int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

pub(crate) fn ser<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&to_string(r))
}

pub(crate) fn ser_opt<S: Serializer>(
    r: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&to_string(r)),
        None => s.serialize_none(),
    }
}

pub(crate) fn ser_vec<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(to_string))
}

pub(crate) fn ser_big<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_lowest_terms() {
        let r = Rational::new(BigInt::from(6), BigInt::from(-4));
        assert_eq!(to_string(&r), "-3/2");
        assert_eq!(to_string(&from_int(18)), "18/1");
    }

    #[test]
    fn parses_both_forms() {
        assert_eq!(parse("3").unwrap(), from_int(3));
        assert_eq!(parse(" -2/4 ").unwrap(), Rational::new((-1).into(), 2.into()));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn approx_handles_huge_values() {
        let big = Rational::new(BigInt::from(10).pow(400) * 3, BigInt::from(10).pow(400));
        assert!((approx(&big) - 3.0).abs() < 1e-9);
    }
}
