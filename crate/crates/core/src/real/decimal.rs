use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Ball;
use crate::rational::Rational;

/// Decimal rendering of a ball to a fixed number of significant digits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecimalOutput {
    /// The ball is a point whose value has exactly this expansion.
    Exact(String),
    /// Every real in the ball truncates to these significant digits.
    Certified(String),
    /// The radius is too large to certify that many digits.
    InsufficientRadius,
}

impl DecimalOutput {
    pub fn digits(&self) -> Option<&str> {
        match self {
            DecimalOutput::Exact(s) | DecimalOutput::Certified(s) => Some(s),
            DecimalOutput::InsufficientRadius => None,
        }
    }
}

fn pow10(e: u32) -> BigInt {
    BigInt::from(10u32).pow(e)
}

fn scale10(x: &Rational, e: i64) -> Rational {
    if e >= 0 {
        x * Rational::from_integer(pow10(e as u32))
    } else {
        x / Rational::from_integer(pow10((-e) as u32))
    }
}

/// `floor(log10 x)` for `x > 0`.
fn floor_log10(x: &Rational) -> i64 {
    let bits = x.numer().bits() as i64 - x.denom().bits() as i64;
    let mut e = (bits as f64 * std::f64::consts::LOG10_2).floor() as i64;
    let one = Rational::one();
    while scale10(x, -e) < one {
        e -= 1;
    }
    while scale10(x, -(e + 1)) >= one {
        e += 1;
    }
    e
}

/// Leading `digits` significant digits of `x > 0`, truncated, with the
/// decimal exponent and whether the truncation was exact.
fn truncate(x: &Rational, digits: u32) -> (BigInt, i64, bool) {
    let e = floor_log10(x);
    let scaled = scale10(x, digits as i64 - 1 - e);
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    (q, e, r.is_zero())
}

fn render(negative: bool, digits: &BigInt, e: i64, n: u32) -> String {
    let s = digits.to_string();
    debug_assert_eq!(s.len(), n as usize);
    let body = if e < 0 {
        format!("0.{}{}", "0".repeat((-e - 1) as usize), s)
    } else if e < n as i64 {
        let (int, frac) = s.split_at(e as usize + 1);
        if frac.is_empty() {
            int.to_string()
        } else {
            format!("{int}.{frac}")
        }
    } else {
        let (lead, rest) = s.split_at(1);
        if rest.is_empty() {
            format!("{lead}e{e}")
        } else {
            format!("{lead}.{rest}e{e}")
        }
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// Certified leading `digits` significant decimal digits of the ball,
/// truncated toward zero. Never returns digits that some point of the ball
/// would not share.
pub fn ball_to_decimal(a: &Ball, digits: u32) -> DecimalOutput {
    assert!(digits >= 1, "at least one digit is required");
    let lo = a.lower().to_rational();
    let hi = a.upper().to_rational();
    if lo.is_zero() && hi.is_zero() {
        return DecimalOutput::Exact("0".to_string());
    }
    if !lo.is_positive() && !hi.is_negative() {
        return DecimalOutput::InsufficientRadius;
    }
    let negative = hi.is_negative();
    let (near, far) = if negative {
        (hi.abs(), lo.abs())
    } else {
        (lo, hi)
    };
    let (d_near, e_near, exact) = truncate(&near, digits);
    if a.is_exact() {
        let s = render(negative, &d_near, e_near, digits);
        return if exact {
            DecimalOutput::Exact(s)
        } else {
            DecimalOutput::Certified(s)
        };
    }
    let (d_far, e_far, _) = truncate(&far, digits);
    if d_near != d_far || e_near != e_far {
        return DecimalOutput::InsufficientRadius;
    }
    DecimalOutput::Certified(render(negative, &d_near, e_near, digits))
}
