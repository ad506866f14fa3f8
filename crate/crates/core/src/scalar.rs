//! Scalar abstraction and exact rational helpers.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arithmetic needed by the generic geometry layer.
///
/// Any ordered field works; predicates are exact only when the field is
/// (e.g. [`Rational`]). The hull engine itself is pinned to [`Rational`].
pub trait Scalar:
    Clone + Debug + PartialOrd + Num + Signed + FromPrimitive + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Clone + Debug + PartialOrd + Num + Signed + FromPrimitive + Send + Sync + 'static
{
}

/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid number literal {literal:?}")]
pub struct ParseScalarError {
    pub literal: String,
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"-3"`, `"1.25"`, `"-7/8"`. Decimal literals are converted exactly.
pub fn parse_rational(s: &str) -> Result<Rational, ParseScalarError> {
    let err = || ParseScalarError {
        literal: s.to_string(),
    };
    let s = s.trim();
    if s.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = parse_signed_digits(num).ok_or_else(err)?;
        let den: BigInt = parse_signed_digits(den).ok_or_else(err)?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(num, den));
    }
    let (negative, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(err());
    }
    let digits_ok = |d: &str| d.bytes().all(|b| b.is_ascii_digit());
    if !digits_ok(whole) || !digits_ok(frac) {
        return Err(err());
    }
    let mut all = String::with_capacity(whole.len() + frac.len());
    all.push_str(whole);
    all.push_str(frac);
    let mantissa = BigInt::parse_bytes(all.as_bytes(), 10).ok_or_else(err)?;
    let scale = num_traits::pow(BigInt::from(10u32), frac.len());
    let value = Rational::new(mantissa, scale);
    Ok(if negative { -value } else { value })
}

fn parse_signed_digits(s: &str) -> Option<BigInt> {
    let s = s.trim();
    let body = s.strip_prefix('-').or_else(|| s.strip_prefix('+')).unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::parse_bytes(s.trim_start_matches('+').as_bytes(), 10)
}

/// `"n"` for integers, `"n/d"` otherwise. Never a decimal.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Nearest rational with denominator `2^bits`.
pub fn snap_dyadic(x: f64, bits: u32) -> Rational {
    assert!(x.is_finite(), "cannot snap non-finite value {x}");
    let scale = (bits as f64).exp2();
    let n = (x * scale).round();
    let num = BigInt::from_f64(n).expect("finite");
    Rational::new(num, BigInt::one() << bits as usize)
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Smallest integer vector that is a positive multiple of `v`.
pub fn primitive_integer_vector(v: &[Rational; 3]) -> [BigInt; 3] {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut ints: [BigInt; 3] = std::array::from_fn(|i| (&v[i] * &lcm).to_integer());
    let g = ints
        .iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in ints.iter_mut() {
            *x = &*x / &g;
        }
    }
    ints
}

/// Bit length of the largest absolute entry.
pub fn max_bits(v: &[BigInt]) -> u64 {
    v.iter().map(|x| x.abs().bits()).max().unwrap_or(0)
}

/// `Rational` sign as -1, 0 or 1.
pub fn sign_of(q: &Rational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

pub fn sign_of_int(q: &BigInt) -> i8 {
    match q.sign() {
        num_bigint::Sign::Plus => 1,
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_and_fractions() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-1.25").unwrap(), rat(-5, 4));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("6/-8").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("+2.").unwrap(), int(2));
        for bad in ["", "-", "1/0", "1.2.3", "abc", "1e5", "--1", "1/"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn formats_without_decimals() {
        assert_eq!(format_rational(&rat(6, 3)), "2");
        assert_eq!(format_rational(&rat(-3, 12)), "-1/4");
    }

    #[test]
    fn snapping_is_dyadic() {
        let q = snap_dyadic(0.1, 24);
        assert!((BigInt::from(1u64 << 24) % q.denom()).is_zero());
        assert!((to_f64(&q) - 0.1).abs() < 1e-7);
        assert_eq!(snap_dyadic(-2.0, 24), int(-2));
    }

    #[test]
    fn primitive_vector_clears_denominators() {
        let v = [rat(1, 2), rat(-3, 4), int(0)];
        let p = primitive_integer_vector(&v);
        assert_eq!(p, [BigInt::from(2), BigInt::from(-3), BigInt::from(0)]);
    }
}
