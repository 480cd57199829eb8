//! Exact rational polynomials and the constants of the shifted recursion.
//!
//! For `P(x) = c_d x^d + c_{d-1} x^{d-1} + ... + c_0` with `d >= 2` and
//! `c_d > 0`, the shift `s = c_{d-1} / (d c_d)` and scale
//! `λ = c_d^(1/(d-1))` turn `x_{n+1} = P(x_n)` into
//! `y_{n+1} = y_n^d (1 + E(y_n))` for `y = λ (x + s)`, with `E` decaying like
//! `y^-2`. [`NormalizationData`] holds every exact constant of that change of
//! variables.

mod parse;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use parse::{parse_poly, ParseError, MAX_EXPONENT};

use crate::rational::{ceil_sqrt, root_bounds, Rational};
use crate::real::{Ball, Precision, RealError};

/// Polynomial with exact rational coefficients, lowest degree first.
///
/// The coefficient list never ends in a zero, so the zero polynomial has an
/// empty list and no degree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalPoly {
    coeffs: Vec<Rational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        RationalPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    /// `x^d`
    pub fn monomial(d: usize) -> Self {
        let mut c = vec![Rational::zero(); d + 1];
        c[d] = Rational::one();
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^j` (zero past the degree).
    pub fn coeff(&self, j: usize) -> Rational {
        self.coeffs.get(j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// `true` for `x^d` exactly.
    pub fn is_pure_power(&self) -> bool {
        match self.leading() {
            Some(l) if l.is_one() => self.coeffs[..self.coeffs.len() - 1]
                .iter()
                .all(|c| c.is_zero()),
            _ => false,
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(Rational::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `P(x + a)`
    pub fn shift(&self, a: &Rational) -> Self {
        let xa = Self::new(vec![a.clone(), Rational::one()]);
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &xa) + &Self::constant(c.clone());
        }
        acc
    }

    /// `-P(-x)`
    pub fn conjugate_by_negation(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| if j % 2 == 0 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Exact value `P(x)`.
    ///
    /// Works over a common denominator so that only one gcd reduction is
    /// performed, which matters once iterates have thousands of digits.
    pub fn eval(&self, x: &Rational) -> Rational {
        let Some(d) = self.degree() else {
            return Rational::zero();
        };
        let den_lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den_lcm / c.denom()))
            .collect();
        let (a, b) = (x.numer(), x.denom());
        // sum_j n_j a^j b^(d-j), by Horner on the homogenized form
        let mut acc = ints[d].clone();
        let mut b_pow = BigInt::one();
        for j in (0..d).rev() {
            b_pow *= b;
            acc = acc * a + &ints[j] * &b_pow;
        }
        Rational::new(acc, den_lcm * b_pow)
    }

    /// Ball enclosure of `P(x)`.
    pub fn eval_ball(&self, x: &Ball, prec: Precision) -> Ball {
        let mut acc = Ball::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x, prec).add(&Ball::from_rational(c, prec), prec);
        }
        acc
    }

    /// Whether `P` maps every integer to an integer.
    ///
    /// Decided by the forward differences `Δ^j P(0)`, `j = 0..=d`, which are
    /// the coordinates of `P` in the binomial basis `C(x, j)`.
    pub fn is_integer_valued(&self) -> bool {
        let Some(d) = self.degree() else {
            return true;
        };
        let mut row: Vec<Rational> = (0..=d)
            .map(|k| self.eval(&Rational::from_integer(BigInt::from(k))))
            .collect();
        for _ in 0..=d {
            if !row[0].is_integer() {
                return false;
            }
            row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
            if row.is_empty() {
                break;
            }
        }
        true
    }

    /// Constants of the shifted recursion; see [`NormalizationData`].
    pub fn derive_normalization(&self) -> Result<NormalizationData, NormalizationError> {
        NormalizationData::derive(self)
    }
}

impl fmt::Display for RationalPoly {
    /// Deterministic `c_d*x^d + ... + c_0` form that [`parse_poly`] reads
    /// back to the same polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mag_str = if mag.is_integer() {
                mag.numer().to_string()
            } else {
                format!("{}/{}", mag.numer(), mag.denom())
            };
            match j {
                0 => write!(f, "{mag_str}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag_str}*")?;
                    }
                    if j == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{j}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalPoly({self})")
    }
}

impl<'a> Add<&'a RationalPoly> for &'a RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..n).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl<'a> Sub<&'a RationalPoly> for &'a RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..n).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl<'a> Mul<&'a RationalPoly> for &'a RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::new(out)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NormalizationError {
    #[error("{} is below 2; the recursion needs a polynomial of degree at least 2", .0.map_or("the zero polynomial's degree".to_string(), |d| format!("degree {d}")))]
    DegreeTooLow(Option<usize>),
    #[error("leading coefficient {0} is not positive")]
    NonPositiveLeading(String),
}

/// Exact constants of the change of variables `y = λ (x + s)`,
/// `λ = c_d^(1/(d-1))`.
///
/// * `P(x) = c_d (x + s)^d + R(x)` with `deg R <= d - 2`;
/// * `x_n = A α^(d^n) + B + O(α^(-d^n))` with `A = c_d^(-1/(d-1))`, `B = -s`;
/// * the step ratio `y_{k+1} / y_k^d = 1 + Q(x_k) / (c_d (x_k + s)^d)`
///   where `Q = R + s`;
/// * for every real `y >= escape`, the relative step error
///   `E(y) = y_{next}/y^d - 1` satisfies `|E(y)| <= cp / y^2 <= 1/2` and
///   `y^d (1 - |E(y)|) >= 2 y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizationData {
    pub degree: usize,
    pub leading: Rational,
    pub shift: Rational,
    pub b: Rational,
    pub remainder: RationalPoly,
    pub step_excess: RationalPoly,
    pub cp: Rational,
    pub escape: Rational,
    /// Rational bracket `lambda_lower <= λ <= lambda_upper`.
    pub lambda_lower: Rational,
    pub lambda_upper: Rational,
}

impl NormalizationData {
    fn derive(p: &RationalPoly) -> Result<Self, NormalizationError> {
        let d = match p.degree() {
            Some(d) if d >= 2 => d,
            other => return Err(NormalizationError::DegreeTooLow(other)),
        };
        let cd = p.coeff(d);
        if !cd.is_positive() {
            return Err(NormalizationError::NonPositiveLeading(
                crate::rational::format_rational(&cd),
            ));
        }
        let d_q = Rational::from_integer(BigInt::from(d));
        let shift = p.coeff(d - 1) / (&d_q * &cd);
        let principal = RationalPoly::monomial(d).shift(&shift).scale(&cd);
        let remainder = p - &principal;
        debug_assert!(remainder.degree().is_none_or(|r| r + 2 <= d));
        let step_excess = &remainder + &RationalPoly::constant(shift.clone());

        let (lambda_lower, lambda_upper) = root_bounds(&cd, (d - 1) as u32, 32);

        // Bound on |E(y)| for y >= 1, with x = y/λ - s:
        //   |x| <= y/λ + |s| <= y (1/λ_lo + |s|) = M y
        //   |Q(x)| <= sum_j |q_j| (M y)^j <= y^(d-2) sum_j |q_j| M^j
        //            (j <= d-2 and y >= 1)
        //   E(y) = λ Q(x) / y^d, since y_next = λ (P(x) + s) = y^d + λ Q(x)
        //   |E(y)| <= λ_hi sum_j |q_j| M^j / y^2 = cp / y^2
        let m = Rational::one() / &lambda_lower + shift.abs();
        let mut m_pow = Rational::one();
        let mut sum = Rational::zero();
        for q in step_excess.coeffs() {
            sum += q.abs() * &m_pow;
            m_pow *= &m;
        }
        let cp = &lambda_upper * sum;

        // y >= sqrt(2 cp) gives |E| <= 1/2; y^(d-1) >= 4 then gives
        // y^d (1 - |E|) >= y^d / 2 >= 2y.
        let two_cp = &cp * Rational::from_integer(2.into());
        let from_cp = ceil_sqrt(&two_cp.ceil().to_integer());
        let from_doubling = BigInt::from(if d == 2 { 4 } else { 2 });
        let escape = Rational::from_integer(from_cp.max(from_doubling).max(BigInt::one()));

        Ok(NormalizationData {
            degree: d,
            leading: cd,
            shift: shift.clone(),
            b: -shift,
            remainder,
            step_excess,
            cp,
            escape,
            lambda_lower,
            lambda_upper,
        })
    }

    /// `(c_d, d)`, denoting `A = c_d^(-1/(d-1))` exactly.
    pub fn a_descriptor(&self) -> (Rational, usize) {
        (self.leading.clone(), self.degree)
    }

    /// Enclosure of `A = c_d^(-1/(d-1))`.
    pub fn a_ball(&self, prec: Precision) -> Result<Ball, RealError> {
        let inv = Rational::one() / &self.leading;
        Ball::from_rational(&inv, prec.plus(8)).root((self.degree - 1) as u32, prec)
    }

    /// Enclosure of `log c_d / (d - 1) = log λ`.
    pub fn log_lambda(&self, prec: Precision) -> Result<Ball, RealError> {
        let w = prec.plus(8);
        Ball::from_rational(&self.leading, w)
            .log(w)?
            .div_int(&BigInt::from(self.degree - 1), prec)
    }

    /// Exact step ratio `(P(x) + s) / (c_d (x + s)^d)` expressed through its
    /// excess: returns `Q(x) / (c_d (x + s)^d)`. `None` if `x + s = 0`.
    pub fn step_error(&self, x: &Rational) -> Option<Rational> {
        let xs = x + &self.shift;
        if xs.is_zero() {
            return None;
        }
        let den = &self.leading * num_traits::pow(xs, self.degree);
        Some(self.step_excess.eval(x) / den)
    }

    /// Whether `y = λ (x + s) >= escape`, decided exactly through
    /// `c_d (x + s)^(d-1) >= escape^(d-1)` (both sides are `(d-1)`-th powers
    /// of nonnegative quantities when `x + s > 0`).
    pub fn has_escaped(&self, x: &Rational) -> bool {
        let xs = x + &self.shift;
        if !xs.is_positive() {
            return false;
        }
        let e = self.degree - 1;
        &self.leading * num_traits::pow(xs, e) >= num_traits::pow(self.escape.clone(), e)
    }

    /// Exact lower bound on `y^2 = λ^2 (x + s)^2`.
    pub fn y_squared_lower(&self, x: &Rational) -> Rational {
        let xs = x + &self.shift;
        &self.lambda_lower * &self.lambda_lower * &xs * &xs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p.into(), q.into())
    }

    fn poly(s: &str) -> RationalPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(poly("x^2+1").eval(&r(2, 1)), r(5, 1));
        assert_eq!(poly("x^2-x+1").eval(&r(43, 1)), r(1807, 1));
        assert_eq!(poly("1/2*x^2+1/2*x").eval(&r(21, 1)), r(231, 1));
        assert_eq!(poly("1/3*x^3 - x").eval(&r(-3, 2)), r(3, 8));
        assert_eq!(RationalPoly::zero().eval(&r(5, 1)), r(0, 1));
    }

    #[test]
    fn normalization_examples() {
        let n = poly("x^2+1").derive_normalization().unwrap();
        assert_eq!((n.degree, n.shift.clone(), n.b.clone()), (2, r(0, 1), r(0, 1)));
        assert_eq!(n.remainder, RationalPoly::constant(r(1, 1)));
        assert_eq!(n.a_descriptor(), (r(1, 1), 2));

        let n = poly("x^2-x+1").derive_normalization().unwrap();
        assert_eq!(n.shift, r(-1, 2));
        assert_eq!(n.b, r(1, 2));
        assert_eq!(n.remainder, RationalPoly::constant(r(3, 4)));

        let n = poly("1/2*x^2+1/2*x").derive_normalization().unwrap();
        assert_eq!(n.leading, r(1, 2));
        assert_eq!(n.shift, r(1, 2));
        assert_eq!(n.b, r(-1, 2));
        assert_eq!(n.remainder, RationalPoly::constant(r(-1, 8)));
        // A = (1/2)^(-1) = 2
        let a = n.a_ball(Precision::new(64u64).unwrap()).unwrap();
        assert!(a.contains_rational(&r(2, 1)));
    }

    #[test]
    fn normalization_rejects() {
        assert_eq!(
            poly("x/2").derive_normalization(),
            Err(NormalizationError::DegreeTooLow(Some(1)))
        );
        assert_eq!(
            poly("5").derive_normalization(),
            Err(NormalizationError::DegreeTooLow(Some(0)))
        );
        assert!(matches!(
            poly("-x^2+1").derive_normalization(),
            Err(NormalizationError::NonPositiveLeading(_))
        ));
    }

    #[test]
    fn escape_threshold_for_squares() {
        let n = poly("x^2+1").derive_normalization().unwrap();
        assert_eq!(n.cp, r(1, 1));
        assert_eq!(n.escape, r(4, 1));
        assert!(!n.has_escaped(&r(2, 1)));
        assert!(n.has_escaped(&r(5, 1)));
        let n = poly("x^2-x+1").derive_normalization().unwrap();
        assert_eq!(n.step_excess, RationalPoly::constant(r(1, 4)));
        assert_eq!(n.step_error(&r(3, 1)), Some(r(1, 25)));
    }

    #[test]
    fn integer_valued_examples() {
        assert!(poly("x^2+1").is_integer_valued());
        assert!(poly("1/2*x^2+1/2*x").is_integer_valued());
        assert!(!poly("x/2").is_integer_valued());
        assert!(poly("1/6*x^3 - 1/6*x").is_integer_valued());
        assert!(!poly("1/6*x^3").is_integer_valued());
    }

    #[test]
    fn printer_examples() {
        assert_eq!(poly("x^2 - x + 1").to_string(), "x^2 - x + 1");
        assert_eq!(poly("1/2*x^2 + 1/2*x").to_string(), "1/2*x^2 + 1/2*x");
        assert_eq!(poly("-3x^3 - 2/3").to_string(), "-3*x^3 - 2/3");
        assert_eq!(RationalPoly::zero().to_string(), "0");
    }

    #[test]
    fn conjugation() {
        assert_eq!(poly("x^3").conjugate_by_negation(), poly("x^3"));
        assert_eq!(poly("x^3 + x^2 + 1").conjugate_by_negation(), poly("x^3 - x^2 - 1"));
    }
}
