//! Exact iteration of `x_{n+1} = P(x_n)` and certified classification of
//! where the orbit goes.

use std::collections::HashMap;

use num_traits::Signed;

use crate::polynomial::{NormalizationData, NormalizationError, RationalPoly};
use crate::rational::{decimal_size, Rational};

pub const DEFAULT_MAX_STEPS: usize = 64;
pub const DEFAULT_DIGIT_BUDGET: u64 = 10_000_000;

/// Limits on iteration work: the number of steps and the decimal size of any
/// single iterate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_steps: usize,
    pub digit_budget: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_steps: DEFAULT_MAX_STEPS,
            digit_budget: DEFAULT_DIGIT_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrbitError {
    #[error("digit budget of {budget} exceeded after index {last_index}")]
    DigitBudget { last_index: usize, budget: u64 },
    #[error("orbit cannot diverge to +infinity: {0}")]
    StructurallyNonDivergent(String),
    #[error(transparent)]
    Normalization(#[from] NormalizationError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitStatus {
    /// Some iterate passed the escape threshold; from there on the shifted
    /// orbit at least doubles every step.
    DivergesToInfinity,
    /// `x_entry = x_{entry + period}` exactly.
    Cycle { period: usize, entry: usize },
    /// Step budget exhausted without a verdict.
    Undetermined,
}

/// Exact iterates `x_0..x_N` of a recursion together with their verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitRecord {
    poly: RationalPoly,
    x0: Rational,
    values: Vec<Rational>,
    all_integers: bool,
    escape_index: Option<usize>,
    status: OrbitStatus,
    offset: usize,
    conjugated: bool,
}

impl OrbitRecord {
    pub fn poly(&self) -> &RationalPoly {
        &self.poly
    }

    pub fn x0(&self) -> &Rational {
        &self.x0
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn all_integers(&self) -> bool {
        self.all_integers
    }

    /// Index (relative to `x0`) of the first iterate past the escape
    /// threshold.
    pub fn escape_index(&self) -> Option<usize> {
        self.escape_index
    }

    pub fn status(&self) -> &OrbitStatus {
        &self.status
    }

    pub fn is_divergent(&self) -> bool {
        self.status == OrbitStatus::DivergesToInfinity
    }

    /// Sequence index carried by `x0` (0 unless the sequence starts later).
    pub fn offset(&self) -> usize {
        self.offset
    }

    /// `true` when this orbit is the negation of the user's orbit.
    pub fn conjugated(&self) -> bool {
        self.conjugated
    }

    pub fn with_offset(mut self, offset: usize) -> Self {
        self.offset = offset;
        self
    }

    /// Iterate at sequence index `n` (offset applied), if computed.
    pub fn value_at(&self, n: usize) -> Option<&Rational> {
        n.checked_sub(self.offset).and_then(|k| self.values.get(k))
    }

    /// Largest sequence index available.
    pub fn last_index(&self) -> usize {
        self.offset + self.values.len() - 1
    }

    /// A copy holding at least `len` iterates. Only divergent records are
    /// extended past their classification point.
    pub fn extended(&self, len: usize, digit_budget: u64) -> Result<OrbitRecord, OrbitError> {
        let mut out = self.clone();
        while out.values.len() < len {
            let last = out.values.len() - 1;
            let next = step(&self.poly, &out.values[last], last, digit_budget)?;
            out.all_integers &= next.is_integer();
            out.values.push(next);
        }
        Ok(out)
    }
}

fn step(p: &RationalPoly, x: &Rational, index: usize, digit_budget: u64) -> Result<Rational, OrbitError> {
    let d = p.degree().unwrap_or(0).max(1) as u64;
    let coeff_size = p.coeffs().iter().map(decimal_size).max().unwrap_or(0);
    let predicted = d * decimal_size(x) + coeff_size + 1;
    if predicted > digit_budget {
        return Err(OrbitError::DigitBudget {
            last_index: index,
            budget: digit_budget,
        });
    }
    Ok(p.eval(x))
}

/// Exact iterates `x_0, ..., x_steps`. Fails before computing any iterate
/// whose size would exceed `digit_budget` decimal digits.
pub fn iterate(
    p: &RationalPoly,
    x0: &Rational,
    steps: usize,
    digit_budget: u64,
) -> Result<Vec<Rational>, OrbitError> {
    let mut values = Vec::with_capacity(steps + 1);
    values.push(x0.clone());
    for k in 0..steps {
        let next = step(p, &values[k], k, digit_budget)?;
        values.push(next);
    }
    Ok(values)
}

/// A recursion brought to the form where divergence means `x_n -> +∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignNormalized {
    pub poly: RationalPoly,
    pub x0: Rational,
    /// `poly(x) = -P(-x)` and `x0 = -x0_original`.
    pub conjugated: bool,
}

/// Reduce orbits heading to -∞ to the +∞ case.
///
/// For odd `d` and `c_d > 0`, an orbit can escape in either direction; when
/// it escapes downward, the conjugate `-P(-x)` (same leading coefficient)
/// with `-x0` traces the negated orbit upward. A negative leading
/// coefficient is rejected for every degree: even degree makes the orbit
/// bounded above, odd degree makes escaping orbits alternate in sign.
pub fn normalize_sign(
    p: &RationalPoly,
    x0: &Rational,
    budget: &Budget,
) -> Result<SignNormalized, OrbitError> {
    let d = match p.degree() {
        Some(d) if d >= 2 => d,
        other => return Err(NormalizationError::DegreeTooLow(other).into()),
    };
    let unchanged = || SignNormalized {
        poly: p.clone(),
        x0: x0.clone(),
        conjugated: false,
    };
    let leading = p.leading().expect("nonzero");
    if leading.is_negative() {
        let why = if d % 2 == 0 {
            "even degree with negative leading coefficient is bounded above"
        } else {
            "odd degree with negative leading coefficient alternates sign"
        };
        return Err(OrbitError::StructurallyNonDivergent(why.into()));
    }
    if d % 2 == 0 {
        return Ok(unchanged());
    }
    let conj = p.conjugate_by_negation();
    let up = p.derive_normalization()?;
    let down = conj.derive_normalization()?;
    let mut x = x0.clone();
    let mut seen = HashMap::new();
    for k in 0..=budget.max_steps {
        if up.has_escaped(&x) {
            return Ok(unchanged());
        }
        if down.has_escaped(&-&x) {
            return Ok(SignNormalized {
                poly: conj,
                x0: -x0,
                conjugated: true,
            });
        }
        if seen.insert(x.clone(), k).is_some() || k == budget.max_steps {
            break;
        }
        x = match step(p, &x, k, budget.digit_budget) {
            Ok(next) => next,
            Err(_) => break,
        };
    }
    Ok(unchanged())
}

/// Iterate until the orbit is certified divergent, repeats, or the step
/// budget runs out.
///
/// Divergence is certified when `y_k = λ (x_k + s)` reaches the escape
/// threshold `y*`, compared exactly as `c_d (x_k + s)^(d-1) >= y*^(d-1)`.
/// Past `y*` the shifted orbit satisfies `y_{k+1} >= 2 y_k`, so it and the
/// original orbit increase strictly to infinity.
pub fn certify_divergence(
    p: &RationalPoly,
    x0: &Rational,
    budget: &Budget,
) -> Result<OrbitRecord, OrbitError> {
    let norm = p.derive_normalization()?;
    certify_with(p, &norm, x0, budget)
}

pub(crate) fn certify_with(
    p: &RationalPoly,
    norm: &NormalizationData,
    x0: &Rational,
    budget: &Budget,
) -> Result<OrbitRecord, OrbitError> {
    let mut values = vec![x0.clone()];
    let mut seen: HashMap<Rational, usize> = HashMap::new();
    let mut escape_index = None;
    let status = loop {
        let k = values.len() - 1;
        let x = &values[k];
        if norm.has_escaped(x) {
            escape_index = Some(k);
            break OrbitStatus::DivergesToInfinity;
        }
        if let Some(&entry) = seen.get(x) {
            break OrbitStatus::Cycle {
                period: k - entry,
                entry,
            };
        }
        seen.insert(x.clone(), k);
        if k >= budget.max_steps {
            break OrbitStatus::Undetermined;
        }
        let next = step(p, x, k, budget.digit_budget)?;
        values.push(next);
    };
    let all_integers = values.iter().all(|v| v.is_integer());
    Ok(OrbitRecord {
        poly: p.clone(),
        x0: x0.clone(),
        values,
        all_integers,
        escape_index,
        status,
        offset: 0,
        conjugated: false,
    })
}

/// [`normalize_sign`] followed by [`certify_divergence`] on the normalized
/// system; the record remembers whether it was conjugated.
pub fn analyze(p: &RationalPoly, x0: &Rational, budget: &Budget) -> Result<OrbitRecord, OrbitError> {
    let ns = normalize_sign(p, x0, budget)?;
    let mut rec = certify_divergence(&ns.poly, &ns.x0, budget)?;
    rec.conjugated = ns.conjugated;
    Ok(rec)
}

impl OrbitRecord {
    /// Check the stored prefix against the record invariants; used by tests
    /// and audits.
    pub fn check_invariants(&self) -> bool {
        let exact = self
            .values
            .windows(2)
            .all(|w| self.poly.eval(&w[0]) == w[1]);
        let ints = self.all_integers == self.values.iter().all(|v| v.is_integer());
        let mono = match (self.status.clone(), self.escape_index) {
            (OrbitStatus::DivergesToInfinity, Some(m)) => {
                self.values[m..].windows(2).all(|w| w[1] > w[0])
            }
            (OrbitStatus::DivergesToInfinity, None) => false,
            _ => true,
        };
        exact && ints && mono && !self.values.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::parse_poly;

    fn int(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&n| int(n)).collect()
    }

    #[test]
    fn iterate_examples() {
        let p = parse_poly("x^2+1").unwrap();
        assert_eq!(
            iterate(&p, &int(0), 6, 1000).unwrap(),
            ints(&[0, 1, 2, 5, 26, 677, 458330])
        );
        let p = parse_poly("x^2-x+1").unwrap();
        assert_eq!(iterate(&p, &int(2), 4, 1000).unwrap(), ints(&[2, 3, 7, 43, 1807]));
        let p = parse_poly("x^2-2").unwrap();
        assert_eq!(iterate(&p, &int(3), 3, 1000).unwrap(), ints(&[3, 7, 47, 2207]));
    }

    #[test]
    fn digit_budget_reports_last_index() {
        let p = parse_poly("x^2+1").unwrap();
        let err = iterate(&p, &int(0), 20, 50).unwrap_err();
        assert!(matches!(err, OrbitError::DigitBudget { budget: 50, .. }));
        if let OrbitError::DigitBudget { last_index, .. } = err {
            // x_7 has 12 digits, x_8 has 23, x_9 would need ~46+
            assert!((7..=9).contains(&last_index));
        }
    }

    #[test]
    fn sign_normalization() {
        let b = Budget::default();
        let ns = normalize_sign(&parse_poly("x^3").unwrap(), &int(-2), &b).unwrap();
        assert!(ns.conjugated);
        assert_eq!(ns.poly, parse_poly("x^3").unwrap());
        assert_eq!(ns.x0, int(2));
        let ns = normalize_sign(&parse_poly("x^2+1").unwrap(), &int(0), &b).unwrap();
        assert!(!ns.conjugated);
        assert!(matches!(
            normalize_sign(&parse_poly("-x^2+1").unwrap(), &int(0), &b),
            Err(OrbitError::StructurallyNonDivergent(_))
        ));
        assert!(matches!(
            normalize_sign(&parse_poly("-x^3").unwrap(), &int(2), &b),
            Err(OrbitError::StructurallyNonDivergent(_))
        ));
    }

    #[test]
    fn divergence_and_cycles() {
        let b = Budget::default();
        let rec = certify_divergence(&parse_poly("x^2+1").unwrap(), &int(0), &b).unwrap();
        assert!(rec.is_divergent());
        // y* = 4 and x_3 = 5 is the first iterate past it
        assert_eq!(rec.escape_index(), Some(3));
        assert!(rec.check_invariants());

        let rec = certify_divergence(&parse_poly("x^2-x").unwrap(), &int(2), &b).unwrap();
        assert_eq!(rec.status(), &OrbitStatus::Cycle { period: 1, entry: 0 });

        let rec = certify_divergence(&parse_poly("x^2-2").unwrap(), &int(1), &b).unwrap();
        assert_eq!(rec.status(), &OrbitStatus::Cycle { period: 1, entry: 1 });
        assert_eq!(rec.values(), &ints(&[1, -1, -1])[..]);
    }

    #[test]
    fn undetermined_on_small_step_budget() {
        let b = Budget {
            max_steps: 2,
            digit_budget: 1000,
        };
        let rec = certify_divergence(&parse_poly("x^2+1").unwrap(), &int(0), &b).unwrap();
        assert_eq!(rec.status(), &OrbitStatus::Undetermined);
    }

    #[test]
    fn extension_and_offset() {
        let b = Budget::default();
        let rec = certify_divergence(&parse_poly("x^2-2").unwrap(), &int(3), &b)
            .unwrap()
            .with_offset(1);
        let rec = rec.extended(4, 1000).unwrap();
        assert_eq!(rec.value_at(1), Some(&int(3)));
        assert_eq!(rec.value_at(3), Some(&int(47)));
        assert_eq!(rec.value_at(0), None);
        assert_eq!(rec.last_index(), 4);
        assert!(rec.check_invariants());
    }

    #[test]
    fn analyze_conjugates_downward_orbits() {
        let rec = analyze(&parse_poly("x^3").unwrap(), &int(-2), &Budget::default()).unwrap();
        assert!(rec.conjugated());
        assert!(rec.is_divergent());
        assert_eq!(rec.x0(), &int(2));
    }
}
