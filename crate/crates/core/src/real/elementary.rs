//! Enclosures of `exp`, `log`, `log1p` and integer roots.
//!
//! Point evaluations use argument reduction plus a truncated Taylor series
//! whose tail bound is added to the radius. Wide balls are handled through
//! monotonicity: the image of `[lo, hi]` is enclosed by the lower end of
//! `f(lo)` and the upper end of `f(hi)`.

use num_bigint::BigInt;
use num_traits::One;

use super::{Ball, Dyadic, Precision, RealError};

/// Guard bits carried through series evaluation.
const GUARD: u64 = 24;

fn guard_for(prec: Precision, extra: u64) -> Precision {
    let log_prec = 64 - prec.bits().leading_zeros() as u64;
    prec.plus(GUARD + extra + log_prec)
}

/// `sum_{k>=0} u^(2k+1)/(2k+1)` for `|u| <= 1/2`, with the truncation bound
/// folded into the radius.
fn atanh_series(u: &Ball, w: Precision) -> Result<Ball, RealError> {
    let u_mag = u.mag();
    debug_assert!(u_mag <= Dyadic::pow2(-1));
    if u_mag.is_zero() {
        return Ok(Ball::zero());
    }
    let u2 = u.sqr(w);
    let u2_mag = u2.mag();
    let eps = (&u_mag * &Dyadic::pow2(-(w.bits() as i64) - 4)).round_up(super::RAD_BITS);
    let mut pow = u.clone();
    let mut sum = u.clone();
    let mut k: u64 = 1;
    loop {
        pow = pow.mul(&u2, w);
        let term = pow.div_int(&BigInt::from(2 * k + 1), w)?;
        sum = sum.add(&term, w);
        if pow.mag() <= eps {
            break;
        }
        k += 1;
    }
    // Tail after the last included power p = u^(2k+1):
    //   sum_{j>=1} |u|^(2k+1+2j)/(2k+1+2j) <= |p| u^2 / (1 - u^2) <= 2 |p| u^2
    let tail = &(&pow.mag() * &u2_mag) * &Dyadic::from_int(2);
    Ok(sum.with_rad(&tail))
}

/// Enclosure of `log 2 = 2 atanh(1/3)`.
pub fn ln2(prec: Precision) -> Ball {
    let w = guard_for(prec, 0);
    let third = Ball::one()
        .div(&Ball::from_int(3), w)
        .expect("3 is nonzero");
    atanh_series(&third, w)
        .expect("series on 1/3 is well defined")
        .mul_pow2(1)
        .rounded(prec)
}

fn exp_point(x: &Dyadic, prec: Precision) -> Result<Ball, RealError> {
    let msb = match x.msb() {
        None => return Ok(Ball::one()),
        Some(m) => m,
    };
    if msb > 40 {
        return Err(RealError::Overflow);
    }
    // |x| < 2^(msb+1), so |x / 2^j| < 2^-8.
    let j = (msb + 9).max(0) as u64;
    let w = guard_for(prec, j);
    let y = Ball::exact(x.shl(-(j as i64)));
    let y_mag = y.mag();
    let eps = Dyadic::pow2(-(w.bits() as i64) - 4);
    let mut sum = Ball::one();
    let mut term = Ball::one();
    let mut k: u64 = 1;
    loop {
        term = term.mul(&y, w).div_int(&BigInt::from(k), w)?;
        sum = sum.add(&term, w);
        if term.mag() <= eps {
            break;
        }
        k += 1;
    }
    // With t = y^k/k! the last included term and |y| <= 1/2:
    //   sum_{i>k} |y|^i/i! <= |t| sum_{j>=1} |y|^j <= 2 |t| |y|
    let tail = &(&term.mag() * &y_mag) * &Dyadic::from_int(2);
    let mut acc = sum.with_rad(&tail);
    for _ in 0..j {
        acc = acc.sqr(w);
    }
    Ok(acc.rounded(prec))
}

fn log_point(x: &Dyadic, prec: Precision) -> Result<Ball, RealError> {
    if !x.is_positive() {
        return Err(RealError::Domain("log"));
    }
    if *x == Dyadic::one() {
        return Ok(Ball::zero());
    }
    // x = 2^e m with m in (3/4, 3/2]
    let mut e = x.msb().expect("positive");
    let mut m = x.shl(-e);
    if m > Dyadic::new(BigInt::from(3), -1) {
        m = m.shl(-1);
        e += 1;
    }
    let e_bits = 64 - e.unsigned_abs().leading_zeros() as u64;
    let w = guard_for(prec, e_bits);
    let one = Dyadic::one();
    let u = Ball::exact(&m - &one).div(&Ball::exact(&m + &one), w)?;
    let mut res = atanh_series(&u, w)?.mul_pow2(1);
    if e != 0 {
        res = res.add(&ln2(w).mul_int(&BigInt::from(e), w), w);
    }
    Ok(res.rounded(prec))
}

fn log1p_point(t: &Dyadic, prec: Precision) -> Result<Ball, RealError> {
    let one = Dyadic::one();
    if t <= &-&one {
        return Err(RealError::Domain("log1p"));
    }
    if t.is_zero() {
        return Ok(Ball::zero());
    }
    if t.abs() > Dyadic::pow2(-1) {
        return log_point(&(t + &one), prec);
    }
    // log(1+t) = 2 atanh(t / (2 + t)), and |t/(2+t)| <= 1/3 here.
    let w = guard_for(prec, 0);
    let u = Ball::exact(t.clone()).div(&Ball::exact(t + &Dyadic::from_int(2)), w)?;
    Ok(atanh_series(&u, w)?.mul_pow2(1).rounded(prec))
}

fn root_point(x: &Dyadic, k: u32, prec: Precision) -> Result<Ball, RealError> {
    if !x.is_positive() {
        return Err(RealError::Domain("root"));
    }
    if k == 1 {
        return Ok(Ball::exact(x.clone()).rounded(prec));
    }
    let kk = k as i64;
    let e = x.exponent();
    let need = kk * (prec.bits() as i64 + 4);
    // choose f with x = M' 2^(k f), M' an integer of at least `need` bits
    let f = e.div_euclid(kk).min((e + x.bits() as i64 - need).div_euclid(kk));
    let scaled = x.mantissa() << (e - kk * f) as u64;
    let r = scaled.nth_root(k);
    if r.pow(k) == scaled {
        return Ok(Ball::exact(Dyadic::new(r, f)).rounded(prec));
    }
    // root lies in (r, r + 1) * 2^f
    let mid = Dyadic::new((r << 1u32) + BigInt::one(), f - 1);
    Ok(Ball::new(mid, Dyadic::pow2(f - 1)).rounded(prec))
}

/// Apply a monotone increasing point function to a ball.
fn monotone<F>(b: &Ball, prec: Precision, f: F) -> Result<Ball, RealError>
where
    F: Fn(&Dyadic, Precision) -> Result<Ball, RealError>,
{
    if b.is_exact() {
        return f(b.mid(), prec);
    }
    let lo = f(&b.lower(), prec)?;
    let hi = f(&b.upper(), prec)?;
    Ok(Ball::from_endpoints(&lo.lower(), &hi.upper(), prec))
}

impl Ball {
    pub fn exp(&self, prec: Precision) -> Result<Ball, RealError> {
        monotone(self, prec, exp_point)
    }

    /// Natural logarithm; the whole ball must be positive.
    pub fn log(&self, prec: Precision) -> Result<Ball, RealError> {
        if !self.is_positive() {
            return Err(RealError::Domain("log"));
        }
        monotone(self, prec, log_point)
    }

    /// `log(1 + t)`, evaluated from `t` directly so that small arguments keep
    /// their relative accuracy. The whole ball must lie above -1.
    pub fn log1p(&self, prec: Precision) -> Result<Ball, RealError> {
        if self.lower() <= -Dyadic::one() {
            return Err(RealError::Domain("log1p"));
        }
        monotone(self, prec, log1p_point)
    }

    /// Positive real `k`-th root; the whole ball must be positive.
    pub fn root(&self, k: u32, prec: Precision) -> Result<Ball, RealError> {
        if k == 0 {
            return Err(RealError::Domain("root of order 0"));
        }
        if !self.is_positive() {
            return Err(RealError::Domain("root"));
        }
        monotone(self, prec, |x, p| root_point(x, k, p))
    }

    /// `x^(1/k^times)` as `times` successive `k`-th roots.
    pub fn root_iter(&self, k: u32, times: u32, prec: Precision) -> Result<Ball, RealError> {
        let w = prec.plus(8 + times as u64);
        let mut acc = self.clone();
        for _ in 0..times {
            acc = acc.root(k, w)?;
        }
        Ok(acc.rounded(prec))
    }

    /// `true` when the ball lies strictly inside `(lo, hi)`.
    pub fn strictly_between(&self, lo: &Dyadic, hi: &Dyadic) -> bool {
        &self.lower() > lo && &self.upper() < hi
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;
    use num_traits::{Signed, Zero};

    fn p(bits: u64) -> Precision {
        Precision::new(bits).unwrap()
    }

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    /// Rational enclosure of `log(1+t)` for `0 < t < 1` from the alternating
    /// series, truncated after `terms` terms (remainder below the next term).
    fn log1p_series_oracle(t: &Rational, terms: u32) -> (Rational, Rational) {
        let mut sum = Rational::zero();
        let mut pow = t.clone();
        for k in 1..=terms {
            let term = &pow / Rational::from_integer(k.into());
            if k % 2 == 1 {
                sum += term;
            } else {
                sum -= term;
            }
            pow *= t;
        }
        let next = &pow / Rational::from_integer((terms + 1).into());
        (sum, next)
    }

    #[test]
    fn log_of_one_is_zero() {
        let l = Ball::one().log(p(64)).unwrap();
        assert!(l.contains_dyadic(&Dyadic::zero()));
        assert!(l.rad() <= &Dyadic::pow2(-64));
    }

    #[test]
    fn exp_of_zero_is_one() {
        assert!(Ball::zero().exp(p(64)).unwrap().contains_dyadic(&Dyadic::one()));
    }

    #[test]
    fn log1p_matches_series_oracle() {
        let t = q(1, 676);
        let prec = p(128);
        let got = Ball::from_rational(&t, prec).log1p(prec).unwrap();
        // 40 terms at t = 1/676 leave a remainder far below 2^-256
        let (val, rem) = log1p_series_oracle(&t, 40);
        assert!(rem < Dyadic::pow2(-256).to_rational());
        assert!(got.contains_rational(&val));
        assert!(got.rad() <= &Dyadic::pow2(-120));
        // log(677/676) ≈ 0.0014781968693109
        assert!((got.to_f64() - 0.001_478_196_869_310_902).abs() < 1e-15);
    }

    #[test]
    fn log1p_keeps_relative_accuracy() {
        let t = Dyadic::pow2(-300);
        let got = Ball::exact(t.clone()).log1p(p(64)).unwrap();
        // log1p(t) = t - t^2/2 + ..., so the radius must scale with t
        assert!(got.contains_dyadic(&(&t - &Dyadic::pow2(-601))));
        assert!(got.rad() <= &Dyadic::pow2(-300 - 60));
    }

    /// Newton iteration for sqrt(5) in exact rationals, used as an oracle.
    fn newton_sqrt5(iters: usize) -> Rational {
        let five = q(5, 1);
        let mut x = q(2, 1);
        for _ in 0..iters {
            x = (&x + &five / &x) / q(2, 1);
        }
        x
    }

    #[test]
    fn sqrt_five_digits() {
        let prec = p(96);
        let r = Ball::from_int(5).root(2, prec).unwrap();
        let newton = newton_sqrt5(8);
        // Newton from above converges quadratically; 8 steps give > 200 bits
        let err = &newton * &newton - q(5, 1);
        assert!(err < Dyadic::pow2(-200).to_rational());
        assert!(r.contains_rational(&newton) || {
            let d = (r.mid().to_rational() - &newton).abs();
            d <= r.rad().to_rational() + Dyadic::pow2(-190).to_rational()
        });
        assert_eq!(format!("{:.10}", r.to_f64()), "2.2360679775");
        assert!(r.rad() <= &Dyadic::pow2(-90));
        let four = Ball::from_int(4).root(2, prec).unwrap();
        assert!(four.contains_dyadic(&Dyadic::from_int(2)));
        assert!(four.is_exact());
    }

    #[test]
    fn golden_ratio_from_root() {
        let prec = p(96);
        let phi = Ball::from_int(5)
            .root(2, prec)
            .unwrap()
            .add(&Ball::one(), prec)
            .mul_pow2(-1);
        assert!((phi.to_f64() - 1.618_033_988_749_895).abs() < 1e-15);
    }

    #[test]
    fn domain_errors() {
        assert!(Ball::zero().log(p(32)).is_err());
        assert!(Ball::from_int(-1).log1p(p(32)).is_err());
        assert!(Ball::from_int(-4).root(2, p(32)).is_err());
        assert!(Ball::from_int(1 << 20).mul_pow2(30).exp(p(32)).is_err());
    }

    #[test]
    fn log_exp_round_trip() {
        let prec = p(80);
        for x in [-10i64, -3, 0, 1, 7, 10] {
            let b = Ball::from_int(x).with_rad(&Dyadic::pow2(-40));
            let back = b.exp(prec).unwrap().log(prec).unwrap();
            assert!(back.contains_ball(&b), "x = {x}");
        }
    }

    #[test]
    fn ln2_value() {
        let l = ln2(p(128));
        assert!((l.to_f64() - std::f64::consts::LN_2).abs() < 1e-16);
        assert!(l.rad() <= &Dyadic::pow2(-126));
    }

    #[test]
    fn iterated_root_matches_direct() {
        let prec = p(128);
        let x = Ball::from_int(3);
        let a = x.root_iter(2, 3, prec).unwrap();
        let b = x.root(8, prec).unwrap();
        assert!(a.intersects(&b));
        assert!((a.to_f64() - 3f64.powf(0.125)).abs() < 1e-15);
    }
}
