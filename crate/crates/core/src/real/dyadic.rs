use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// An exact binary fraction `mantissa * 2^exponent`.
///
/// Values are kept canonical: the mantissa is odd, or the value is zero with
/// exponent 0. Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

impl Dyadic {
    pub fn new(mantissa: BigInt, exponent: i64) -> Self {
        if mantissa.is_zero() {
            return Self::zero();
        }
        let tz = mantissa.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            Dyadic { mantissa, exponent }
        } else {
            Dyadic {
                mantissa: mantissa >> tz,
                exponent: exponent + tz as i64,
            }
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            mantissa: BigInt::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic {
            mantissa: BigInt::one(),
            exponent: 0,
        }
    }

    /// `2^exponent`
    pub fn pow2(exponent: i64) -> Self {
        Dyadic {
            mantissa: BigInt::one(),
            exponent,
        }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::new(n.into(), 0)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn sign(&self) -> Sign {
        self.mantissa.sign()
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
        }
    }

    /// Bit length of the mantissa.
    pub fn bits(&self) -> u64 {
        self.mantissa.bits()
    }

    /// `floor(log2 |x|)`, or `None` for zero.
    pub fn msb(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.bits() as i64 - 1 + self.exponent)
        }
    }

    /// Multiply by `2^k`, exactly.
    pub fn shl(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Dyadic {
            mantissa: self.mantissa.clone(),
            exponent: self.exponent + k,
        }
    }

    pub fn is_integer(&self) -> bool {
        self.is_zero() || self.exponent >= 0
    }

    pub fn floor(&self) -> BigInt {
        if self.exponent >= 0 {
            &self.mantissa << self.exponent as u64
        } else {
            // arithmetic shift on BigInt rounds toward negative infinity
            &self.mantissa >> (-self.exponent) as u64
        }
    }

    pub fn ceil(&self) -> BigInt {
        -(self.neg_ref().floor())
    }

    fn neg_ref(&self) -> Self {
        Dyadic {
            mantissa: -&self.mantissa,
            exponent: self.exponent,
        }
    }

    pub fn to_rational(&self) -> Rational {
        if self.exponent >= 0 {
            Rational::from_integer(&self.mantissa << self.exponent as u64)
        } else {
            Rational::new(
                self.mantissa.clone(),
                BigInt::one() << (-self.exponent) as u64,
            )
        }
    }

    /// Approximate conversion for display and non-certified use.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.bits() as i64;
        let drop = (bits - 60).max(0);
        let top = &self.mantissa >> drop as u64;
        let m: f64 = top.to_string().parse().unwrap_or(f64::NAN);
        let e = self.exponent + drop;
        if e > 2000 {
            return m.signum() * f64::INFINITY;
        }
        if e < -2000 {
            return 0.0;
        }
        m * 2f64.powi(e as i32)
    }

    pub fn from_f64_exact(x: f64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        if x == 0.0 {
            return Some(Self::zero());
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = (bits & ((1u64 << 52) - 1)) as i64;
        let (m, e) = if exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1i64 << 52), exp - 1075)
        };
        Some(Self::new(BigInt::from(sign * m), e))
    }

    /// Round to at most `prec` mantissa bits, to nearest. Returns the rounded
    /// value and the exact absolute rounding error.
    pub fn round(&self, prec: u64) -> (Dyadic, Dyadic) {
        let bits = self.bits();
        if bits <= prec {
            return (self.clone(), Self::zero());
        }
        let drop = bits - prec;
        let half = BigInt::one() << (drop - 1);
        // round half up in magnitude
        let mag = self.mantissa.magnitude();
        let q = (BigInt::from(mag.clone()) + &half) >> drop;
        let q = if self.is_negative() { -q } else { q };
        let rounded = Dyadic::new(q, self.exponent + drop as i64);
        let err = (self - &rounded).abs();
        (rounded, err)
    }

    /// Smallest value with at most `prec` mantissa bits that is `>= self`.
    pub fn round_up(&self, prec: u64) -> Dyadic {
        self.round_directed(prec, true)
    }

    /// Largest value with at most `prec` mantissa bits that is `<= self`.
    pub fn round_down(&self, prec: u64) -> Dyadic {
        self.round_directed(prec, false)
    }

    fn round_directed(&self, prec: u64, up: bool) -> Dyadic {
        let bits = self.bits();
        if bits <= prec {
            return self.clone();
        }
        let drop = bits - prec;
        let exp = self.exponent + drop as i64;
        let floor = &self.mantissa >> drop;
        let exact = (&floor << drop) == self.mantissa;
        let m = if up && !exact { floor + 1 } else { floor };
        Dyadic::new(m, exp)
    }

    /// Truncated quotient with `prec` significant bits. Returns the quotient
    /// and an upper bound on `|self/rhs - quotient|`, which is zero when the
    /// division is exact.
    pub fn div_prec(&self, rhs: &Dyadic, prec: u64) -> (Dyadic, Dyadic) {
        assert!(!rhs.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return (Self::zero(), Self::zero());
        }
        let shift = prec as i64 + rhs.bits() as i64 - self.bits() as i64 + 2;
        let shift = shift.max(0);
        let num = &self.mantissa << shift as u64;
        let (q, r) = num.div_rem(&rhs.mantissa);
        let exp = self.exponent - shift - rhs.exponent;
        let err = if r.is_zero() {
            Self::zero()
        } else {
            Self::pow2(exp)
        };
        (Dyadic::new(q, exp), err)
    }

    /// Upper bound on `self / rhs` for nonnegative operands, with `prec` bits.
    pub fn div_up(&self, rhs: &Dyadic, prec: u64) -> Dyadic {
        let (q, err) = self.div_prec(rhs, prec);
        (&q + &err).round_up(prec)
    }

    /// Lower bound on `self / rhs` for nonnegative operands.
    pub fn div_down(&self, rhs: &Dyadic, prec: u64) -> Dyadic {
        let (q, _) = self.div_prec(rhs, prec);
        // truncation toward zero is a lower bound for nonnegative quotients
        q.round_down(prec)
    }

    /// Nearest dyadic with `prec` bits to a rational, with an error bound.
    pub fn from_rational(q: &Rational, prec: u64) -> (Dyadic, Dyadic) {
        let num = Dyadic::from_int(q.numer().clone());
        let den = Dyadic::from_int(q.denom().clone());
        num.div_prec(&den, prec)
    }

    pub fn max(self, other: Dyadic) -> Dyadic {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: Dyadic) -> Dyadic {
        if self <= other {
            self
        } else {
            other
        }
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Self::zero()
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.mantissa.sign(), other.mantissa.sign());
        if sa != sb {
            return sign_rank(sa).cmp(&sign_rank(sb));
        }
        if sa == Sign::NoSign {
            return Ordering::Equal;
        }
        // same nonzero sign: compare magnitudes via the leading bit first
        let (ma, mb) = (self.msb().unwrap_or(0), other.msb().unwrap_or(0));
        let mag = if ma != mb {
            ma.cmp(&mb)
        } else {
            let e = self.exponent.min(other.exponent);
            let a = self.mantissa.magnitude() << (self.exponent - e) as u64;
            let b = other.mantissa.magnitude() << (other.exponent - e) as u64;
            a.cmp(&b)
        };
        if sa == Sign::Minus {
            mag.reverse()
        } else {
            mag
        }
    }
}

fn sign_rank(s: Sign) -> i8 {
    match s {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exponent.min(rhs.exponent);
        let a = &self.mantissa << (self.exponent - e) as u64;
        let b = &rhs.mantissa << (rhs.exponent - e) as u64;
        Dyadic::new(a + b, e)
    }
}

impl<'a> Sub<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &rhs.neg_ref()
    }
}

impl<'a> Mul<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() || rhs.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mantissa: &self.mantissa * &rhs.mantissa,
            exponent: self.exponent + rhs.exponent,
        }
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        &self + &rhs
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        &self - &rhs
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: Dyadic) -> Dyadic {
        &self * &rhs
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        self.neg_ref()
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        self.neg_ref()
    }
}

impl From<i64> for Dyadic {
    fn from(n: i64) -> Self {
        Dyadic::from_int(n)
    }
}

impl From<BigInt> for Dyadic {
    fn from(n: BigInt) -> Self {
        Dyadic::from_int(n)
    }
}

/// Exact text form `mantissa*2^exponent` (or a bare integer when the
/// exponent is zero). Parsed back by `FromStr`.
impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.mantissa)
        } else {
            write!(f, "{}*2^{}", self.mantissa, self.exponent)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (~{:e})", self, self.to_f64())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid dyadic literal `{0}`")]
pub struct ParseDyadicError(pub String);

impl FromStr for Dyadic {
    type Err = ParseDyadicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = || ParseDyadicError(s.to_string());
        match s.split_once("*2^") {
            Some((m, e)) => {
                let m: BigInt = m.trim().parse().map_err(|_| err())?;
                let e: i64 = e.trim().parse().map_err(|_| err())?;
                Ok(Dyadic::new(m, e))
            }
            None => {
                let m: BigInt = s.parse().map_err(|_| err())?;
                Ok(Dyadic::from_int(m))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: i64, e: i64) -> Dyadic {
        Dyadic::new(BigInt::from(m), e)
    }

    #[test]
    fn canonical_form() {
        assert_eq!(d(4, 0), d(1, 2));
        assert_eq!(d(0, 7).exponent(), 0);
        assert_eq!(d(-6, -1), d(-3, 0));
    }

    #[test]
    fn ordering_mixed_exponents() {
        assert!(d(1, -100) < d(1, -99));
        assert!(d(-1, 10) < d(1, -10));
        assert!(d(-3, 0) < d(-1, 0));
        assert_eq!(d(3, -1).cmp(&d(6, -2)), Ordering::Equal);
        assert!(d(3, 0) > d(5, -1));
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(d(7, -1).floor(), BigInt::from(3));
        assert_eq!(d(7, -1).ceil(), BigInt::from(4));
        assert_eq!(d(-7, -1).floor(), BigInt::from(-4));
        assert_eq!(d(-7, -1).ceil(), BigInt::from(-3));
        assert_eq!(d(5, 2).floor(), BigInt::from(20));
    }

    #[test]
    fn rounding_error_is_exact() {
        let x = d(0b1011011, 0);
        let (r, e) = x.round(3);
        assert_eq!(r, d(0b1100000, 0));
        assert_eq!(e, d(5, 0));
        assert!(x.round_up(3) >= x);
        assert!(x.round_down(3) <= x);
        let y = -x.clone();
        assert!(y.round_up(3) >= y);
        assert!(y.round_down(3) <= y);
    }

    #[test]
    fn division_bounds() {
        let (q, err) = d(1, 0).div_prec(&d(3, 0), 64);
        let exact = Rational::new(1.into(), 3.into());
        let diff = (q.to_rational() - exact).abs();
        assert!(diff <= err.to_rational());
        assert!(err <= Dyadic::pow2(-64));
        let (q, err) = d(3, 0).div_prec(&d(4, 0), 10);
        assert!(err.is_zero());
        assert_eq!(q, d(3, -2));
    }

    #[test]
    fn text_round_trip() {
        for x in [d(0, 0), d(5, -3), d(-9, 4), d(1, 0)] {
            assert_eq!(x.to_string().parse::<Dyadic>().unwrap(), x);
        }
        assert!("2^3".parse::<Dyadic>().is_err());
    }
}
