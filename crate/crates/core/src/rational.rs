//! Exact rationals and the handful of integer helpers shared across modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRationalError(pub String);

/// Parses `p`, `p/q` or a plain decimal such as `-1.25`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let s = text.trim();
    let err = || ParseRationalError(text.to_string());
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| err())?;
        let q: BigInt = q.trim().parse().map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let negative = int.starts_with('-');
        let int_part: BigInt = match int {
            "" | "-" | "+" => BigInt::zero(),
            _ => int.parse().map_err(|_| err())?,
        };
        let scale = BigInt::from(10).pow(frac.len() as u32);
        let frac_part: BigInt = frac.parse().map_err(|_| err())?;
        let mag = int_part.abs() * &scale + frac_part;
        let num = if negative { -mag } else { mag };
        return Ok(Rational::new(num, scale));
    }
    let p: BigInt = s.parse().map_err(|_| err())?;
    Ok(Rational::from_integer(p))
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn ceil_sqrt(n: &BigInt) -> BigInt {
    if !n.is_positive() {
        return BigInt::zero();
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        r
    } else {
        r + 1
    }
}

/// Rational lower and upper bounds on `q^(1/k)` for `q > 0`, each within a
/// relative `2^-bits` of the true root.
pub fn root_bounds(q: &Rational, k: u32, bits: u32) -> (Rational, Rational) {
    assert!(q.is_positive() && k >= 1);
    if k == 1 {
        return (q.clone(), q.clone());
    }
    let mut scale_bits = bits as u64;
    loop {
        let scale = BigInt::one() << (scale_bits * k as u64);
        let lo_int = (q.numer() * &scale).div_floor(q.denom());
        let hi_int = (q.numer() * &scale).div_ceil(q.denom());
        let lo_root = lo_int.nth_root(k);
        let hi_root = {
            let r = hi_int.nth_root(k);
            if r.pow(k) == hi_int {
                r
            } else {
                r + 1
            }
        };
        if lo_root.is_positive() {
            let den = BigInt::one() << scale_bits;
            return (
                Rational::new(lo_root, den.clone()),
                Rational::new(hi_root, den),
            );
        }
        scale_bits += 32;
    }
}

/// Approximate number of decimal digits of a rational's numerator and
/// denominator combined.
pub fn decimal_size(q: &Rational) -> u64 {
    let bits = q.numer().bits() + q.denom().bits();
    (bits as f64 * std::f64::consts::LOG10_2).ceil() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p.into(), q.into())
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3").unwrap(), r(3, 1));
        assert_eq!(parse_rational("-1/2").unwrap(), r(-1, 2));
        assert_eq!(parse_rational("4/6").unwrap(), r(2, 3));
        assert_eq!(parse_rational("-1.25").unwrap(), r(-5, 4));
        assert_eq!(parse_rational("-0.5").unwrap(), r(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn root_bounds_bracket() {
        for (q, k) in [(r(2, 1), 2u32), (r(1, 2), 1), (r(27, 8), 3), (r(1, 1000), 4)] {
            let (lo, hi) = root_bounds(&q, k, 40);
            assert!(num_traits::pow(lo.clone(), k as usize) <= q);
            assert!(num_traits::pow(hi.clone(), k as usize) >= q);
            assert!(lo.is_positive());
        }
    }

    #[test]
    fn ceil_sqrt_small() {
        assert_eq!(ceil_sqrt(&BigInt::from(16)), BigInt::from(4));
        assert_eq!(ceil_sqrt(&BigInt::from(17)), BigInt::from(5));
        assert_eq!(ceil_sqrt(&BigInt::from(0)), BigInt::from(0));
    }
}
