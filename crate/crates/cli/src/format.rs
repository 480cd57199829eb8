//! Decimal strings for rationals, rounded in a chosen direction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use polygrowth::{ball_to_decimal, Ball, DecimalOutput, Dyadic, Rational};

fn pow10(e: u32) -> BigInt {
    BigInt::from(10u32).pow(e)
}

/// `floor(log10 |x|)` for `x != 0`.
fn exp10(x: &Rational) -> i64 {
    let x = x.abs();
    let mut e = ((x.numer().bits() as f64 - x.denom().bits() as f64) * std::f64::consts::LOG10_2) as i64;
    let scaled = |e: i64| {
        if e >= 0 {
            &x / Rational::from_integer(pow10(e as u32))
        } else {
            &x * Rational::from_integer(pow10((-e) as u32))
        }
    };
    while scaled(e) < Rational::from_integer(1.into()) {
        e -= 1;
    }
    while scaled(e + 1) >= Rational::from_integer(1.into()) {
        e += 1;
    }
    e
}

/// `x` to `sig` significant digits, rounded up (toward +∞) when `up` and
/// down otherwise. Plain notation for moderate exponents, scientific
/// beyond.
pub fn directed(x: &Rational, sig: u32, up: bool) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let e = exp10(x);
    let shift = sig as i64 - 1 - e;
    let scaled = if shift >= 0 {
        x * Rational::from_integer(pow10(shift as u32))
    } else {
        x / Rational::from_integer(pow10((-shift) as u32))
    };
    let (q, r) = scaled.numer().div_mod_floor(scaled.denom());
    let mut m = q;
    if up && !r.is_zero() {
        m += 1;
    }
    // rounding up may carry into a new digit
    let (m, e) = if m.abs().to_string().len() > sig as usize {
        (m / 10, e + 1)
    } else {
        (m, e)
    };
    render(&m, e, sig)
}

fn render(m: &BigInt, e: i64, sig: u32) -> String {
    let neg = m.is_negative();
    let digits = m.abs().to_string();
    let digits = format!("{digits:0>width$}", width = sig as usize);
    let body = if (-5..21).contains(&e) {
        if e < 0 {
            format!("0.{}{}", "0".repeat((-e - 1) as usize), digits)
        } else if (e as usize) + 1 >= digits.len() {
            format!("{}{}", digits, "0".repeat(e as usize + 1 - digits.len()))
        } else {
            let (a, b) = digits.split_at(e as usize + 1);
            format!("{a}.{b}")
        }
    } else {
        let (a, b) = digits.split_at(1);
        if b.is_empty() {
            format!("{a}e{e}")
        } else {
            format!("{a}.{b}e{e}")
        }
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// `[lo, hi]` endpoints of a ball, rounded outward.
pub fn ball_endpoints(b: &Ball, sig: u32) -> (String, String) {
    (
        directed(&b.lower().to_rational(), sig, false),
        directed(&b.upper().to_rational(), sig, true),
    )
}

/// Upper bound on a nonnegative dyadic in 3-digit scientific form.
pub fn radius_upper(r: &Dyadic) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let q = r.to_rational();
    let e = exp10(&q);
    let shift = 2 - e;
    let scaled = if shift >= 0 {
        &q * Rational::from_integer(pow10(shift as u32))
    } else {
        &q / Rational::from_integer(pow10((-shift) as u32))
    };
    let mut m = scaled.ceil().to_integer();
    let mut e = e;
    if m.to_string().len() > 3 {
        m = (m + 9) / 10;
        e += 1;
    }
    let s = m.to_string();
    format!("{}.{}e{}", &s[..1], &s[1..], e)
}

/// Longest certified truncated expansion of `b` up to `max` significant
/// digits, or `None` if not even one digit is certified.
pub fn certified_prefix(b: &Ball, max: u32) -> Option<String> {
    (1..=max).rev().find_map(|k| match ball_to_decimal(b, k) {
        DecimalOutput::Exact(s) | DecimalOutput::Certified(s) => Some(s),
        DecimalOutput::InsufficientRadius => None,
    })
}

/// Parse a positive radius given as `1e-12`, `0.001` or `1/1000`.
pub fn parse_radius(text: &str) -> Option<Rational> {
    let t = text.trim();
    let (mant, exp) = match t.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (t, 0),
    };
    let m = polygrowth::rational::parse_rational(mant).ok()?;
    let scale = Rational::from_integer(pow10(exp.unsigned_abs()));
    let v = if exp >= 0 { m * scale } else { m / scale };
    v.is_positive().then_some(v)
}

/// Smallest `b >= 0` with `2^-b <= r`.
pub fn bits_for_radius(r: &Rational) -> u64 {
    let (p, q) = (r.numer(), r.denom());
    let mut b = q.bits().saturating_sub(p.bits());
    while (p << b) < *q {
        b += 1;
    }
    while b > 0 && (p << (b - 1)) >= *q {
        b -= 1;
    }
    b
}

/// Exact integers as strings, collapsed to a digit count above `limit`.
pub fn big_value(x: &Rational, limit: usize) -> String {
    let s = if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    };
    if s.len() > limit {
        format!("<{}-digit value>", s.trim_start_matches('-').len())
    } else {
        s
    }
}
