use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use super::{Dyadic, Precision, RealError, RAD_BITS};
use crate::rational::Rational;

/// Closed interval `[mid - rad, mid + rad]` over dyadic rationals.
///
/// Every operation returns a ball containing the exact result for every
/// choice of inputs inside the operand balls. Midpoint rounding errors are
/// folded into the radius, and radii are always rounded upward.
#[derive(Clone, PartialEq, Eq)]
pub struct Ball {
    mid: Dyadic,
    rad: Dyadic,
}

/// Outcome of asking which integers an interval contains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntegerContent {
    NoInteger,
    UniqueInteger(BigInt),
    Multiple,
}

impl Ball {
    /// Build a ball; a negative radius is a logic error.
    pub fn new(mid: Dyadic, rad: Dyadic) -> Self {
        assert!(!rad.is_negative(), "ball radius must be nonnegative");
        Ball {
            mid,
            rad: rad.round_up(RAD_BITS),
        }
    }

    pub fn exact(mid: Dyadic) -> Self {
        Ball {
            mid,
            rad: Dyadic::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::exact(Dyadic::zero())
    }

    pub fn one() -> Self {
        Self::exact(Dyadic::one())
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::exact(Dyadic::from_int(n.into()))
    }

    /// Enclosure of `q`; exact when `q` is dyadic, otherwise the radius is
    /// below `2^(2 - prec) |q|`.
    pub fn from_rational(q: &Rational, prec: Precision) -> Self {
        let (mid, err) = Dyadic::from_rational(q, prec.bits());
        Ball::new(mid, err)
    }

    /// Smallest ball (up to rounding of the midpoint) containing `[lo, hi]`.
    pub fn from_endpoints(lo: &Dyadic, hi: &Dyadic, prec: Precision) -> Self {
        debug_assert!(lo <= hi);
        let mid = (lo + hi).shl(-1);
        let half = (hi - lo).shl(-1);
        Ball::exact(mid).with_rad(&half).rounded(prec)
    }

    pub fn mid(&self) -> &Dyadic {
        &self.mid
    }

    pub fn rad(&self) -> &Dyadic {
        &self.rad
    }

    pub fn lower(&self) -> Dyadic {
        &self.mid - &self.rad
    }

    pub fn upper(&self) -> Dyadic {
        &self.mid + &self.rad
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    /// Upper bound on `|x|` over the ball.
    pub fn mag(&self) -> Dyadic {
        (&self.mid.abs() + &self.rad).round_up(RAD_BITS)
    }

    /// Lower bound on `|x|` over the ball (zero if the ball straddles 0).
    pub fn mig(&self) -> Dyadic {
        let m = &self.mid.abs() - &self.rad;
        if m.is_negative() {
            Dyadic::zero()
        } else {
            m.round_down(RAD_BITS)
        }
    }

    pub fn is_positive(&self) -> bool {
        self.lower().is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.upper().is_negative()
    }

    pub fn contains_zero(&self) -> bool {
        !self.is_positive() && !self.is_negative()
    }

    pub fn contains_dyadic(&self, x: &Dyadic) -> bool {
        (x - &self.mid).abs() <= self.rad
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        let diff = (q - self.mid.to_rational()).abs();
        diff <= self.rad.to_rational()
    }

    pub fn contains_ball(&self, other: &Ball) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    pub fn intersects(&self, other: &Ball) -> bool {
        self.lower() <= other.upper() && other.lower() <= self.upper()
    }

    /// Widen the radius by `extra`.
    pub fn with_rad(&self, extra: &Dyadic) -> Ball {
        Ball::new(self.mid.clone(), &self.rad + &extra.abs())
    }

    /// Round the midpoint to `prec` bits, moving the error into the radius.
    pub fn rounded(&self, prec: Precision) -> Ball {
        let (mid, err) = self.mid.round(prec.bits());
        Ball::new(mid, &self.rad + &err)
    }

    pub fn neg(&self) -> Ball {
        Ball {
            mid: -&self.mid,
            rad: self.rad.clone(),
        }
    }

    pub fn add(&self, other: &Ball, prec: Precision) -> Ball {
        let rad = &self.rad + &other.rad;
        // Skip the exact sum when one midpoint is far below the other's ulp.
        if let (Some(ma), Some(mb)) = (self.mid.msb(), other.mid.msb()) {
            let gap = prec.bits() as i64 + 4;
            if mb < ma - gap {
                let (mid, err) = self.mid.round(prec.bits());
                return Ball::new(mid, &(&rad + &err) + &other.mid.abs());
            }
            if ma < mb - gap {
                let (mid, err) = other.mid.round(prec.bits());
                return Ball::new(mid, &(&rad + &err) + &self.mid.abs());
            }
        }
        let (mid, err) = (&self.mid + &other.mid).round(prec.bits());
        Ball::new(mid, &rad + &err)
    }

    pub fn sub(&self, other: &Ball, prec: Precision) -> Ball {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &Ball, prec: Precision) -> Ball {
        let (mid, err) = (&self.mid * &other.mid).round(prec.bits());
        let ar = self.mid.abs().round_up(RAD_BITS);
        let br = other.mid.abs().round_up(RAD_BITS);
        let rad = &(&(&ar * &other.rad) + &(&br * &self.rad)) + &(&self.rad * &other.rad);
        Ball::new(mid, &rad + &err)
    }

    pub fn div(&self, other: &Ball, prec: Precision) -> Result<Ball, RealError> {
        if other.contains_zero() {
            return Err(RealError::DivisionByZero);
        }
        let (q, qerr) = self.mid.div_prec(&other.mid, prec.bits());
        if self.rad.is_zero() && other.rad.is_zero() {
            return Ok(Ball::new(q, qerr));
        }
        // For x in self, y in other:
        //   |x/y - am/bm| <= (ar + |am/bm| br) / (|bm| - br)
        let q_mag = (&q.abs() + &qerr).round_up(RAD_BITS);
        let num = (&self.rad + &(&q_mag * &other.rad)).round_up(RAD_BITS);
        let den = (&other.mid.abs() - &other.rad).round_down(RAD_BITS);
        let prop = num.div_up(&den, RAD_BITS);
        Ok(Ball::new(q, &qerr + &prop))
    }

    pub fn mul_int(&self, k: &BigInt, prec: Precision) -> Ball {
        self.mul(&Ball::from_int(k.clone()), prec)
    }

    pub fn div_int(&self, k: &BigInt, prec: Precision) -> Result<Ball, RealError> {
        self.div(&Ball::from_int(k.clone()), prec)
    }

    /// Multiply by `2^k`, exactly.
    pub fn mul_pow2(&self, k: i64) -> Ball {
        Ball {
            mid: self.mid.shl(k),
            rad: self.rad.shl(k),
        }
    }

    pub fn sqr(&self, prec: Precision) -> Ball {
        self.mul(self, prec)
    }

    pub fn pow(&self, mut e: u64, prec: Precision) -> Ball {
        let mut base = self.clone();
        let mut acc = Ball::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, prec);
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr(prec);
            }
        }
        acc
    }

    pub fn hull(&self, other: &Ball, prec: Precision) -> Ball {
        let lo = self.lower().min(other.lower());
        let hi = self.upper().max(other.upper());
        Ball::from_endpoints(&lo, &hi, prec)
    }

    /// Which integers lie in `[mid - rad, mid + rad]`.
    pub fn contains_integer(&self) -> IntegerContent {
        let lo = self.lower().ceil();
        let hi = self.upper().floor();
        if lo > hi {
            IntegerContent::NoInteger
        } else if lo == hi {
            IntegerContent::UniqueInteger(lo)
        } else {
            IntegerContent::Multiple
        }
    }

    /// `⌈lower⌉` and `⌊upper⌋`; the ball is integer-free iff the first
    /// exceeds the second.
    pub fn integer_bracket(&self) -> (BigInt, BigInt) {
        (self.lower().ceil(), self.upper().floor())
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    /// Approximate `log2` of the radius relative to nothing: `None` for exact
    /// balls.
    pub fn rad_log2(&self) -> Option<i64> {
        self.rad.msb().map(|m| m + 1)
    }
}

impl fmt::Debug for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e} ± {:e}]", self.mid.to_f64(), self.rad.to_f64())
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} +/- {}]", self.mid, self.rad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(bits: u32) -> Precision {
        Precision::new(bits).unwrap()
    }

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    fn ball(mid: Rational, rad: Rational) -> Ball {
        let (m, e) = Dyadic::from_rational(&mid, 200);
        assert!(e.is_zero());
        let (r, e) = Dyadic::from_rational(&rad, 200);
        assert!(e.is_zero());
        Ball::new(m, r)
    }

    #[test]
    fn exact_addition() {
        let s = Ball::from_int(2).add(&Ball::from_int(3), p(64));
        assert!(s.is_exact());
        assert_eq!(s.mid(), &Dyadic::from_int(5));
    }

    #[test]
    fn interval_product_contains_endpoints() {
        let a = ball(q(1, 1), q(1, 4));
        let prod = a.mul(&a, p(64));
        assert!(prod.contains_rational(&q(9, 16)));
        assert!(prod.contains_rational(&q(25, 16)));
    }

    #[test]
    fn third_at_64_bits() {
        let third = Ball::one().div(&Ball::from_int(3), p(64)).unwrap();
        assert!(third.contains_rational(&q(1, 3)));
        assert!(third.rad() <= &Dyadic::pow2(-60));
    }

    #[test]
    fn division_by_zero_ball() {
        let z = ball(q(0, 1), q(1, 8));
        assert_eq!(Ball::one().div(&z, p(32)), Err(RealError::DivisionByZero));
        let touching = ball(q(1, 8), q(1, 8));
        assert!(Ball::one().div(&touching, p(32)).is_err());
    }

    #[test]
    fn from_rational_contract() {
        let half = Ball::from_rational(&q(1, 2), p(16));
        assert!(half.is_exact());
        let third = Ball::from_rational(&q(1, 3), p(16));
        assert!(third.contains_rational(&q(1, 3)));
        assert!(third.rad() <= &Dyadic::pow2(-14));
        let r = Ball::from_rational(&q(677, 676), p(64));
        assert!(r.contains_rational(&q(677, 676)));
    }

    #[test]
    fn integer_content() {
        let rad = Dyadic::from_rational(&q(1, 10000), 64).0.round_up(8);
        let beta = Ball::from_rational(&q(12259, 10000), p(64)).with_rad(&rad);
        assert_eq!(beta.contains_integer(), IntegerContent::NoInteger);
        let two = Ball::from_int(2).with_rad(&Dyadic::pow2(-3));
        assert_eq!(
            two.contains_integer(),
            IntegerContent::UniqueInteger(BigInt::from(2))
        );
        let wide = ball(q(5, 2), q(3, 1));
        assert_eq!(wide.contains_integer(), IntegerContent::Multiple);
    }

    #[test]
    fn far_apart_addition_stays_sound() {
        let big = Ball::exact(Dyadic::pow2(500));
        let tiny = Ball::exact(Dyadic::new(BigInt::from(3), -500));
        let s = big.add(&tiny, p(64));
        let exact = Dyadic::pow2(500).to_rational() + Dyadic::new(BigInt::from(3), -500).to_rational();
        assert!(s.contains_rational(&exact));
    }
}
