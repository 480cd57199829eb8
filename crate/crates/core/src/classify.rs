//! Irrationality certificates and a brute-force screen for small algebraic
//! relations satisfied by `α`.
//!
//! For an integer sequence with `x_{n+1} = P(x_n)` tending to infinity, `α`
//! is either an integer or irrational. A certified enclosure of `α` with
//! `ceil(lo) > floor(hi)` therefore proves irrationality, provided the whole
//! sequence (not just the computed prefix) is known to be integral.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::growth::{compute_log_alpha, GrowthConstant, GrowthError, GrowthOptions};
use crate::orbit::{self, OrbitRecord};
use crate::polynomial::{parse_poly, RationalPoly};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::real::{Ball, Dyadic, IntegerContent, Precision};

/// Header line of the serialized certificate.
pub const CERTIFICATE_HEADER: &str = "certificate: polygrowth/1";

/// Largest target (in bits) the classifier will tighten to when the
/// enclosure still contains an integer.
pub const DEFAULT_MAX_BITS: u64 = 4096;

/// Most candidate polynomials a single search may enumerate.
pub const MAX_CANDIDATES: u128 = 50_000_000;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Growth(#[from] GrowthError),
    #[error("alpha enclosure too wide for this search: value radius {spread} exceeds {limit}")]
    AlphaTooWide { spread: f64, limit: f64 },
    #[error("search box too large ({0} polynomials)")]
    SearchTooLarge(u128),
    #[error("malformed certificate at line {line}: {msg}")]
    MalformedCertificate { line: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateKind {
    IrrationalByTheorem1,
    ConsistentWithInteger(BigInt),
    Inconclusive,
}

impl CertificateKind {
    fn tag(&self) -> &'static str {
        match self {
            CertificateKind::IrrationalByTheorem1 => "irrational-by-theorem-1",
            CertificateKind::ConsistentWithInteger(_) => "consistent-with-integer",
            CertificateKind::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateKind::IrrationalByTheorem1 => write!(f, "IrrationalByTheorem1"),
            CertificateKind::ConsistentWithInteger(k) => write!(f, "ConsistentWithInteger({k})"),
            CertificateKind::Inconclusive => write!(f, "Inconclusive"),
        }
    }
}

/// Why the sequence is known to be integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegralityBasis {
    /// `P` has integer coefficients and some iterate is an integer.
    IntegerCoefficients,
    /// `P` maps integers to integers and some iterate is an integer.
    IntegerValuedPolynomial,
    /// Only the computed prefix is integral; nothing is known beyond it.
    ObservedPrefixOnly,
    /// Some computed iterate is not an integer.
    NotIntegral,
}

impl IntegralityBasis {
    fn tag(self) -> &'static str {
        match self {
            IntegralityBasis::IntegerCoefficients => "integer-coefficients",
            IntegralityBasis::IntegerValuedPolynomial => "integer-valued-polynomial",
            IntegralityBasis::ObservedPrefixOnly => "observed-prefix-only",
            IntegralityBasis::NotIntegral => "not-integral",
        }
    }

    fn from_tag(s: &str) -> Option<Self> {
        [
            IntegralityBasis::IntegerCoefficients,
            IntegralityBasis::IntegerValuedPolynomial,
            IntegralityBasis::ObservedPrefixOnly,
            IntegralityBasis::NotIntegral,
        ]
        .into_iter()
        .find(|b| b.tag() == s)
    }

    pub fn is_proof(self) -> bool {
        matches!(
            self,
            IntegralityBasis::IntegerCoefficients | IntegralityBasis::IntegerValuedPolynomial
        )
    }
}

impl fmt::Display for IntegralityBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evidence {
    pub integrality_basis: IntegralityBasis,
    /// Sequence index from which integrality holds.
    pub integral_from: usize,
    /// Sequence index of the first iterate past the escape threshold.
    pub escape_index: usize,
    pub alpha: Ball,
    /// `ceil(lo)`; exceeds `floor_hi` exactly when no integer is enclosed.
    pub ceil_lo: BigInt,
    pub floor_hi: BigInt,
    /// `α` is known exactly (pure powers only).
    pub exact_integer: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub poly: RationalPoly,
    pub x0: Rational,
    pub offset: usize,
    pub conjugated: bool,
    pub evidence: Evidence,
    pub caveats: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub growth: GrowthOptions,
    /// Ceiling for adaptive tightening of the target radius.
    pub max_bits: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            growth: GrowthOptions::default(),
            max_bits: DEFAULT_MAX_BITS,
        }
    }
}

/// First computed sequence index holding an integer, and the basis that
/// makes every later term integral.
fn integrality(orbit: &OrbitRecord) -> (IntegralityBasis, usize) {
    let p = orbit.poly();
    let first = orbit.values().iter().position(|v| v.is_integer());
    let Some(k) = first else {
        return (IntegralityBasis::NotIntegral, orbit.offset());
    };
    let from = orbit.offset() + k;
    if p.has_integer_coefficients() {
        return (IntegralityBasis::IntegerCoefficients, from);
    }
    if p.is_integer_valued() {
        return (IntegralityBasis::IntegerValuedPolynomial, from);
    }
    if orbit.all_integers() {
        (IntegralityBasis::ObservedPrefixOnly, orbit.offset())
    } else {
        (IntegralityBasis::NotIntegral, from)
    }
}

fn target_bits(gc_opts: &GrowthOptions) -> u64 {
    gc_opts
        .target_radius
        .msb()
        .map_or(64, |m| (-m).max(1) as u64)
}

/// Run divergence certification and the `log α` series, then decide
/// whether the enclosure proves `α` irrational.
///
/// When the enclosure still contains an integer the target radius is
/// tightened (doubling its bits) up to `opts.max_bits`. Orbits that are not
/// certified divergent are reported as [`GrowthError::NotDivergent`].
pub fn certify_irrational(
    p: &RationalPoly,
    x0: &Rational,
    opts: &ClassifyOptions,
) -> Result<Certificate, ClassifyError> {
    let budget = &opts.growth.budget;
    let rec = orbit::analyze(p, x0, budget).map_err(GrowthError::from)?;
    if !rec.is_divergent() {
        return Err(GrowthError::NotDivergent(rec.status().clone()).into());
    }
    let rec = rec.with_offset(opts.growth.offset);
    let (basis, integral_from) = integrality(&rec);
    let mut caveats = Vec::new();

    let mut bits = target_bits(&opts.growth);
    let mut gc: GrowthConstant;
    loop {
        let local = GrowthOptions {
            target_radius: Dyadic::pow2(-(bits as i64)),
            ..opts.growth.clone()
        };
        gc = compute_log_alpha(&rec, &local)?;
        let undecided = !matches!(gc.alpha.contains_integer(), IntegerContent::NoInteger);
        if !undecided || !gc.target_met || bits >= opts.max_bits || pure_power_root(&rec).is_some() {
            break;
        }
        bits = (bits * 2).min(opts.max_bits);
    }
    if !gc.target_met {
        caveats.push(format!(
            "budget exhausted before reaching 2^-{bits}; enclosure radius is 2^{}",
            gc.alpha.rad_log2().unwrap_or(0)
        ));
    }

    let (ceil_lo, floor_hi) = gc.alpha.integer_bracket();
    let exact = pure_power_root(&rec);
    let content = gc.alpha.contains_integer();
    let kind = if let Some(k) = &exact {
        CertificateKind::ConsistentWithInteger(k.clone())
    } else {
        match content {
            IntegerContent::NoInteger if basis.is_proof() => CertificateKind::IrrationalByTheorem1,
            IntegerContent::NoInteger => {
                caveats.push(match basis {
                    IntegralityBasis::ObservedPrefixOnly => "only the computed prefix is known to be integral; supply a proof that P maps the orbit into the integers to upgrade".to_string(),
                    _ => "the sequence is not integral, so the integer-or-irrational dichotomy does not apply".to_string(),
                });
                CertificateKind::Inconclusive
            }
            IntegerContent::UniqueInteger(k) => {
                caveats.push(format!(
                    "enclosure still contains the integer {k}; exact integrality is not claimed"
                ));
                CertificateKind::ConsistentWithInteger(k)
            }
            IntegerContent::Multiple => {
                caveats.push("enclosure contains several integers".to_string());
                CertificateKind::Inconclusive
            }
        }
    };
    if integral_from > rec.offset() && basis.is_proof() {
        caveats.push(format!(
            "sequence is integral from index {integral_from} on; the earlier terms are dropped"
        ));
    }
    if rec.conjugated() {
        caveats.push("orbit diverges to -infinity; the certificate is about the negated sequence".to_string());
    }
    if exact.is_some() {
        caveats.push("P is a pure power x^d, so x_n = x0^(d^n) and α = x0 exactly".to_string());
    }

    Ok(Certificate {
        kind,
        poly: p.clone(),
        x0: x0.clone(),
        offset: rec.offset(),
        conjugated: rec.conjugated(),
        evidence: Evidence {
            integrality_basis: basis,
            integral_from,
            escape_index: gc.start_m,
            alpha: gc.alpha.clone(),
            ceil_lo,
            floor_hi,
            exact_integer: exact.is_some(),
        },
        caveats,
    })
}

/// `x0` when the recursion is `x^d` with integer `x0 >= 2` at offset 0.
fn pure_power_root(rec: &OrbitRecord) -> Option<BigInt> {
    let x0 = rec.x0();
    if rec.poly().is_pure_power() && rec.offset() == 0 && !rec.conjugated() && x0.is_integer() {
        let k = x0.to_integer();
        if k >= BigInt::from(2) {
            return Some(k);
        }
    }
    None
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ev = &self.evidence;
        writeln!(f, "{CERTIFICATE_HEADER}")?;
        writeln!(f, "kind: {}", self.kind.tag())?;
        if let CertificateKind::ConsistentWithInteger(k) = &self.kind {
            writeln!(f, "integer: {k}")?;
        }
        writeln!(f, "poly: {}", self.poly)?;
        writeln!(f, "x0: {}", format_rational(&self.x0))?;
        writeln!(f, "offset: {}", self.offset)?;
        writeln!(f, "conjugated: {}", self.conjugated)?;
        writeln!(f, "integrality_basis: {}", ev.integrality_basis)?;
        writeln!(f, "integral_from: {}", ev.integral_from)?;
        writeln!(f, "escape_index: {}", ev.escape_index)?;
        writeln!(f, "alpha_mid: {}", ev.alpha.mid())?;
        writeln!(f, "alpha_rad: {}", ev.alpha.rad())?;
        writeln!(f, "alpha_lo: {}", ev.alpha.lower())?;
        writeln!(f, "alpha_hi: {}", ev.alpha.upper())?;
        writeln!(f, "ceil_lo: {}", ev.ceil_lo)?;
        writeln!(f, "floor_hi: {}", ev.floor_hi)?;
        writeln!(f, "exact_integer: {}", ev.exact_integer)?;
        for c in &self.caveats {
            writeln!(f, "caveat: {c}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Certificate {
    type Err = ClassifyError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        parse_certificate(text)
    }
}

/// Parse the text produced by `Certificate`'s `Display`, re-checking the
/// bracket against the enclosure.
pub fn parse_certificate(text: &str) -> Result<Certificate, ClassifyError> {
    let bad = |line: usize, msg: &str| ClassifyError::MalformedCertificate {
        line,
        msg: msg.to_string(),
    };
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, l)) if l.trim() == CERTIFICATE_HEADER => {}
        Some((i, _)) => return Err(bad(i + 1, "missing header")),
        None => return Err(bad(0, "empty input")),
    }
    let mut fields: Vec<(usize, String, String)> = Vec::new();
    for (i, l) in lines {
        let (k, v) = l.split_once(':').ok_or_else(|| bad(i + 1, "expected `key: value`"))?;
        fields.push((i + 1, k.trim().to_string(), v.trim().to_string()));
    }
    let get = |key: &str| -> Result<(usize, &str), ClassifyError> {
        fields
            .iter()
            .find(|(_, k, _)| k == key)
            .map(|(i, _, v)| (*i, v.as_str()))
            .ok_or_else(|| bad(0, &format!("missing `{key}`")))
    };
    fn num<T: std::str::FromStr>(v: (usize, &str), what: &str) -> Result<T, ClassifyError> {
        v.1.parse().map_err(|_| ClassifyError::MalformedCertificate {
            line: v.0,
            msg: format!("invalid {what}"),
        })
    }
    let kind = match get("kind")?.1 {
        "irrational-by-theorem-1" => CertificateKind::IrrationalByTheorem1,
        "consistent-with-integer" => CertificateKind::ConsistentWithInteger(num(get("integer")?, "integer")?),
        "inconclusive" => CertificateKind::Inconclusive,
        _ => return Err(bad(get("kind")?.0, "unknown kind")),
    };
    let (pl, ptext) = get("poly")?;
    let poly = parse_poly(ptext).map_err(|e| bad(pl, &e.to_string()))?;
    let (xl, xtext) = get("x0")?;
    let x0 = parse_rational(xtext).map_err(|e| bad(xl, &e.to_string()))?;
    let (bl, btext) = get("integrality_basis")?;
    let basis = IntegralityBasis::from_tag(btext).ok_or_else(|| bad(bl, "unknown integrality basis"))?;
    let mid: Dyadic = num(get("alpha_mid")?, "dyadic")?;
    let rad: Dyadic = num(get("alpha_rad")?, "dyadic")?;
    if rad.is_negative() {
        return Err(bad(get("alpha_rad")?.0, "negative radius"));
    }
    let alpha = Ball::new(mid, rad);
    let lo: Dyadic = num(get("alpha_lo")?, "dyadic")?;
    let hi: Dyadic = num(get("alpha_hi")?, "dyadic")?;
    if lo != alpha.lower() || hi != alpha.upper() {
        return Err(bad(get("alpha_lo")?.0, "endpoints disagree with midpoint and radius"));
    }
    let ceil_lo: BigInt = num(get("ceil_lo")?, "integer")?;
    let floor_hi: BigInt = num(get("floor_hi")?, "integer")?;
    if (ceil_lo.clone(), floor_hi.clone()) != alpha.integer_bracket() {
        return Err(bad(get("ceil_lo")?.0, "integer bracket does not match the enclosure"));
    }
    let caveats = fields
        .iter()
        .filter(|(_, k, _)| k == "caveat")
        .map(|(_, _, v)| v.clone())
        .collect();
    Ok(Certificate {
        kind,
        poly,
        x0,
        offset: num(get("offset")?, "offset")?,
        conjugated: num(get("conjugated")?, "flag")?,
        evidence: Evidence {
            integrality_basis: basis,
            integral_from: num(get("integral_from")?, "index")?,
            escape_index: num(get("escape_index")?, "index")?,
            alpha,
            ceil_lo,
            floor_hi,
            exact_integer: num(get("exact_integer")?, "flag")?,
        },
        caveats,
    })
}

/// Integer polynomial `m` whose value at `α` is enclosed by a ball
/// containing zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraicCandidate {
    pub poly: RationalPoly,
    pub value: Ball,
    pub height: u64,
}

/// Bound on the radius of `m(α)` over all `m` of degree `<= deg` and
/// height `<= h`: `h * sum_j j (|α| + r)^(j-1) * r`, as `f64`.
fn value_spread(alpha: &Ball, deg: usize, h: u64) -> f64 {
    let a = alpha.mag().to_f64();
    let r = alpha.rad().to_f64();
    let s: f64 = (1..=deg).map(|j| j as f64 * a.powi(j as i32 - 1)).sum();
    h as f64 * s * r
}

/// Significant decimal digits the enclosure certifies (roughly).
fn certified_digits(alpha: &Ball) -> f64 {
    let r = alpha.rad().to_f64();
    if r == 0.0 {
        return f64::INFINITY;
    }
    let a = alpha.mag().to_f64().max(f64::MIN_POSITIVE);
    (a / r).log10().floor()
}

/// Enclosures wider than this value spread are refused: the screen would
/// report almost everything.
pub const MAX_VALUE_SPREAD: f64 = 1e-6;

/// Default acceptance radius for `m(α)`: `max(10 W, 10^-(digits - 5))`,
/// with `W` from [`value_spread`].
pub fn default_zero_tolerance(alpha: &Ball, max_degree: usize, max_height: u64) -> f64 {
    let w = value_spread(alpha, max_degree, max_height);
    let digits = certified_digits(alpha);
    (10.0 * w).max(10f64.powf(-(digits - 5.0)))
}

/// Enumerate integer polynomials with content 1, positive leading
/// coefficient, `1 <= degree <= max_degree` and height `<= max_height`,
/// keeping those whose enclosure of `m(α)` contains 0 with radius at most
/// the tolerance. Sorted by degree, then height.
///
/// This is a screen: a returned polynomial is a candidate relation, not a
/// proof that `α` is algebraic.
pub fn search_algebraic_candidates(
    alpha: &Ball,
    max_degree: usize,
    max_height: u64,
    zero_tolerance: Option<f64>,
) -> Result<Vec<AlgebraicCandidate>, ClassifyError> {
    if max_degree == 0 || max_height == 0 {
        return Ok(Vec::new());
    }
    let width = 2 * max_height as u128 + 1;
    let count = (max_height as u128).saturating_mul(width.saturating_pow(max_degree as u32));
    if count > MAX_CANDIDATES {
        return Err(ClassifyError::SearchTooLarge(count));
    }
    let spread = value_spread(alpha, max_degree, max_height);
    if spread.is_nan() || spread > MAX_VALUE_SPREAD {
        return Err(ClassifyError::AlphaTooWide {
            spread,
            limit: MAX_VALUE_SPREAD,
        });
    }
    let tol = zero_tolerance.unwrap_or_else(|| default_zero_tolerance(alpha, max_degree, max_height));
    let tol_d = Dyadic::from_f64_exact(tol).unwrap_or_else(|| Dyadic::pow2(-1074));

    let rad_bits = alpha.rad_log2().map_or(128, |b| (-b).max(0) as u64);
    let prec = Precision::new(rad_bits + 64 + 4 * max_degree as u64).expect("large enough");
    let powers: Vec<Ball> = (0..=max_degree as u64).map(|j| alpha.pow(j, prec)).collect();

    let h = max_height as i64;
    let mut found = Vec::new();
    for deg in 1..=max_degree {
        let mut coeffs = vec![-h; deg + 1];
        coeffs[deg] = 1;
        loop {
            if content_one(&coeffs) {
                let mut value = Ball::zero();
                for (c, pw) in coeffs.iter().zip(&powers) {
                    if *c != 0 {
                        value = value.add(&pw.mul_int(&BigInt::from(*c), prec), prec);
                    }
                }
                if value.contains_zero() && value.rad() <= &tol_d {
                    found.push(AlgebraicCandidate {
                        poly: RationalPoly::from_ints(&coeffs),
                        value,
                        height: coeffs.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0),
                    });
                }
            }
            if !next_box_point(&mut coeffs, h) {
                break;
            }
        }
    }
    found.sort_by_key(|c| (c.poly.degree(), c.height));
    Ok(found)
}

/// Odometer over `[-h, h]^deg x [1, h]` (leading coefficient last).
fn next_box_point(coeffs: &mut [i64], h: i64) -> bool {
    let top = coeffs.len() - 1;
    for (i, c) in coeffs.iter_mut().enumerate() {
        if *c < h {
            *c += 1;
            return true;
        }
        *c = if i == top { 1 } else { -h };
    }
    false
}

fn content_one(coeffs: &[i64]) -> bool {
    coeffs.iter().fold(0i64, |g, c| g.gcd(c)) == 1
}

/// `true` when `n` is one of the enclosed integers; handy for callers
/// comparing certificates.
pub fn bracket_contains(ev: &Evidence, n: &BigInt) -> bool {
    &ev.ceil_lo <= n && n <= &ev.floor_hi
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn certify(p: &str, x0: i64) -> Certificate {
        certify_irrational(&parse_poly(p).unwrap(), &int(x0), &ClassifyOptions::default()).unwrap()
    }

    #[test]
    fn beta_and_gamma_are_irrational() {
        for (p, x0) in [("x^2+1", 0), ("x^2-x+1", 2)] {
            let c = certify(p, x0);
            assert_eq!(c.kind, CertificateKind::IrrationalByTheorem1, "{p}");
            assert!(c.evidence.ceil_lo > c.evidence.floor_hi);
            assert_eq!(c.evidence.integrality_basis, IntegralityBasis::IntegerCoefficients);
        }
    }

    #[test]
    fn pure_powers_are_exact() {
        for (p, x0) in [("x^2", 2), ("x^3", 3)] {
            let c = certify(p, x0);
            assert_eq!(c.kind, CertificateKind::ConsistentWithInteger(x0.into()));
            assert!(c.evidence.exact_integer);
            assert!(bracket_contains(&c.evidence, &x0.into()));
        }
    }

    #[test]
    fn observed_prefix_is_not_enough() {
        // not integer valued, yet every iterate from 2 is even
        let p = parse_poly("x^2/2 + 2").unwrap();
        assert!(!p.is_integer_valued());
        let c = certify_irrational(&p, &int(2), &ClassifyOptions::default()).unwrap();
        assert_eq!(c.evidence.integrality_basis, IntegralityBasis::ObservedPrefixOnly);
        assert_eq!(c.kind, CertificateKind::Inconclusive);
        assert!(!c.caveats.is_empty());
    }

    #[test]
    fn integer_valued_basis() {
        let c = certify("x^2/2 + x/2 + 2", 1);
        assert_eq!(c.evidence.integrality_basis, IntegralityBasis::IntegerValuedPolynomial);
    }

    #[test]
    fn non_divergent_is_error() {
        let p = parse_poly("x^2-x").unwrap();
        let err = certify_irrational(&p, &int(2), &ClassifyOptions::default()).unwrap_err();
        assert!(matches!(err, ClassifyError::Growth(GrowthError::NotDivergent(_))));
    }

    #[test]
    fn certificate_round_trip() {
        for (p, x0) in [("x^2+1", 0), ("x^2", 2)] {
            let c = certify(p, x0);
            let text = c.to_string();
            assert!(text.starts_with(CERTIFICATE_HEADER));
            let back = parse_certificate(&text).unwrap();
            assert_eq!(back, c);
        }
        assert!(parse_certificate("kind: inconclusive").is_err());
    }

    #[test]
    fn tampered_bracket_is_rejected() {
        let text = certify("x^2+1", 0).to_string().replace("ceil_lo: 2", "ceil_lo: 1");
        assert!(parse_certificate(&text).is_err());
    }

    #[test]
    fn two_is_found() {
        let two = Ball::from_int(2);
        let found = search_algebraic_candidates(&two, 1, 3, None).unwrap();
        assert!(found.iter().any(|c| c.poly == RationalPoly::from_ints(&[-2, 1])));
    }

    #[test]
    fn box_enumeration_counts() {
        let mut c = vec![-2, -2, 1];
        let mut n = 1;
        while next_box_point(&mut c, 2) {
            n += 1;
        }
        assert_eq!(n, 5 * 5 * 2);
        assert!(content_one(&[-2, 1]));
        assert!(!content_one(&[2, 0, 4]));
    }

    #[test]
    fn wide_alpha_is_refused() {
        let wide = Ball::new(Dyadic::from_int(2), Dyadic::pow2(-4));
        assert!(matches!(
            search_algebraic_candidates(&wide, 2, 2, None),
            Err(ClassifyError::AlphaTooWide { .. })
        ));
    }

    #[test]
    fn planted_quadratic() {
        // sqrt(2) satisfies x^2 - 2
        let prec = Precision::new(200u64).unwrap();
        let s = Ball::from_int(2).root(2, prec).unwrap();
        let found = search_algebraic_candidates(&s, 2, 2, None).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].poly, RationalPoly::from_ints(&[-2, 0, 1]));
    }
}
