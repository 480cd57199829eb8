//! Certified growth constant `α` of a divergent polynomial recursion.
//!
//! With `y_k = λ (x_k + s)` and the exact step ratios
//! `r_k = y_{k+1} / y_k^d`, unrolling `log y_{k+1} = d log y_k + log r_k`
//! from the escape index `m` gives
//!
//! ```text
//! log α = d^-m log y_m + sum_{k>=m} d^-(k+1) log r_k
//! log y_n = d^n log α - sum_{k>=n} d^(n-k-1) log r_k
//! ```
//!
//! so `x_n = A α^(d^n) + B + O(α^(-d^n))` with `A = c_d^(-1/(d-1))` and
//! `B = -s`. The series is summed in ball arithmetic up to a depth `N` and
//! the remainder is bounded rigorously (see [`tail_bound`]).

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::orbit::{self, Budget, OrbitError, OrbitRecord, OrbitStatus};
use crate::polynomial::{NormalizationData, RationalPoly};
use crate::rational::Rational;
use crate::real::{Ball, Dyadic, Precision, RealError, RAD_BITS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GrowthError {
    #[error("orbit is not certified divergent (status {0:?})")]
    NotDivergent(OrbitStatus),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    Real(#[from] RealError),
    #[error("index {0} is outside the computed orbit")]
    IndexOutOfRange(usize),
    #[error("x + s vanishes at index {0}")]
    ZeroDenominator(usize),
    #[error("enclosure of log α is too wide for n = {n}; recompute α with a smaller radius")]
    EnclosureTooWide { n: usize },
}

/// Knobs for [`compute_log_alpha`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthOptions {
    /// Requested radius for both `log α` and `α`.
    pub target_radius: Dyadic,
    pub budget: Budget,
    /// Overrides the default precision schedule.
    pub precision: Option<Precision>,
    /// Sequence index of `x0`.
    pub offset: usize,
}

impl Default for GrowthOptions {
    fn default() -> Self {
        GrowthOptions {
            target_radius: Dyadic::pow2(-64),
            budget: Budget::default(),
            precision: None,
            offset: 0,
        }
    }
}

impl GrowthOptions {
    pub fn with_target_bits(bits: u64) -> Self {
        GrowthOptions {
            target_radius: Dyadic::pow2(-(bits as i64)),
            ..Self::default()
        }
    }
}

/// Certified enclosure of the growth constant and the data to audit it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthConstant {
    pub log_alpha: Ball,
    pub alpha: Ball,
    /// `A = c_d^(-1/(d-1))`; exactly described by `norm.a_descriptor()`.
    pub a: Ball,
    pub log_a: Ball,
    pub b: Rational,
    pub degree: usize,
    /// Sequence index where the series starts (the escape index).
    pub start_m: usize,
    /// Sequence index of the last summed step ratio.
    pub depth_n: usize,
    /// Bound on the unsummed series tail, already inside `log_alpha`'s radius.
    pub tail_bound: Dyadic,
    pub norm: NormalizationData,
    pub offset: usize,
    pub precision: Precision,
    /// `false` when budgets ran out before `target_radius` was reached.
    pub target_met: bool,
}

impl GrowthConstant {
    /// Target in bits implied by this enclosure's radius.
    pub fn radius_bits(&self) -> i64 {
        self.alpha.rad_log2().map_or(i64::MAX, |b| -b)
    }
}

/// Exact step ratio `y_{k+1} / y_k^d = (x_{k+1} + s) / (c_d (x_k + s)^d)`
/// at orbit position `k` (relative to `x0`); the powers of `λ` cancel.
pub fn step_ratio(norm: &NormalizationData, orbit: &OrbitRecord, k: usize) -> Result<Rational, GrowthError> {
    let values = orbit.values();
    let (x, next) = match (values.get(k), values.get(k + 1)) {
        (Some(x), Some(n)) => (x, n),
        _ => return Err(GrowthError::IndexOutOfRange(k + 1)),
    };
    let xs = x + &norm.shift;
    if xs.is_zero() {
        return Err(GrowthError::ZeroDenominator(k));
    }
    let den = &norm.leading * num_traits::pow(xs, norm.degree);
    Ok((next + &norm.shift) / den)
}

/// Rigorous bound on `sum_{k>N} d^-(k+1) |log r_k|` for `N >= m`.
///
/// For `k >= m` the escape predicate gives `|E_k| <= cp / y_k^2 <= 1/2`
/// where `r_k = 1 + E_k`, and on `|E| <= 1/2`:
///
/// ```text
/// |log(1 + E)| <= |E| / (1 - |E|) <= 2 |E|
/// ```
///
/// The shifted orbit increases from `m` on, so `y_k >= y_N` for `k > N`, and
///
/// ```text
/// sum_{k>N} d^-(k+1) |log r_k| <= (2 cp / y_N^2) sum_{k>N} d^(N-k-1)
///                                = (2 cp / y_N^2) / (d (d-1))
///                               <= 2 cp / ((d-1) y_N^2).
/// ```
///
/// `y_N^2` is replaced by the exact lower bound `λ_lo^2 (x_N + s)^2`.
pub fn tail_bound(norm: &NormalizationData, x_n: &Rational) -> Dyadic {
    if norm.cp.is_zero() {
        return Dyadic::zero();
    }
    let y2 = norm.y_squared_lower(x_n);
    let d1 = Rational::from_integer(BigInt::from(norm.degree - 1));
    let bound = Rational::from_integer(2.into()) * &norm.cp / (d1 * y2);
    let (q, err) = Dyadic::from_rational(&bound, RAD_BITS);
    (&q + &err).round_up(RAD_BITS)
}

fn escape_index(orbit: &OrbitRecord) -> Result<usize, GrowthError> {
    match (orbit.status(), orbit.escape_index()) {
        (OrbitStatus::DivergesToInfinity, Some(m)) => Ok(m),
        (status, _) => Err(GrowthError::NotDivergent(status.clone())),
    }
}

fn d_pow(d: usize, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(d), e)
}

/// Divide a ball by `d^e`, exactly when `d` is a power of two.
fn div_d_pow(b: &Ball, d: usize, e: usize, prec: Precision) -> Result<Ball, RealError> {
    if e == 0 {
        return Ok(b.clone());
    }
    if d.is_power_of_two() {
        return Ok(b.mul_pow2(-((d.trailing_zeros() as usize * e) as i64)));
    }
    b.div_int(&d_pow(d, e), prec)
}

/// Enclosure of `log α` from the series truncated after the ratio at
/// orbit position `depth` (needs `x_{depth+1}`), with [`tail_bound`] added
/// to the radius. Returns the enclosure and the tail bound.
pub fn log_alpha_at_depth(
    norm: &NormalizationData,
    orbit: &OrbitRecord,
    depth: usize,
    prec: Precision,
) -> Result<(Ball, Dyadic), GrowthError> {
    let m = escape_index(orbit)?;
    if depth < m {
        return Err(GrowthError::IndexOutOfRange(depth));
    }
    let values = orbit.values();
    if depth + 1 >= values.len() {
        return Err(GrowthError::IndexOutOfRange(depth + 1));
    }
    let d = norm.degree;
    let w = prec.plus(16);
    // d^-m log y_m with log y_m = log(c_d)/(d-1) + log(x_m + s)
    let xs = &values[m] + &norm.shift;
    let log_xs = Ball::from_rational(&xs, w).log(w)?;
    let log_ym = norm.log_lambda(w)?.add(&log_xs, w);
    let mut sum = div_d_pow(&log_ym, d, m, w)?;
    for (k, x) in values.iter().enumerate().take(depth + 1).skip(m) {
        let e = norm
            .step_error(x)
            .ok_or(GrowthError::ZeroDenominator(k))?;
        if e.is_zero() {
            continue;
        }
        let term = Ball::from_rational(&e, w).log1p(w)?;
        sum = sum.add(&div_d_pow(&term, d, k + 1, w)?, w);
    }
    let tail = tail_bound(norm, &values[depth]);
    let mut res = sum.with_rad(&tail);
    res = div_d_pow(&res, d, orbit.offset(), w)?;
    Ok((res.rounded(prec), tail))
}

fn schedule(target: &Dyadic, terms: usize) -> Precision {
    let target_bits = target.msb().map_or(64, |m| (-m).max(0) as u64);
    let term_bits = 64 - (terms as u64 + 2).leading_zeros() as u64;
    Precision::new(target_bits + 32 + term_bits).expect("at least 8 bits")
}

/// Find the smallest depth `N >= m` (extending the orbit as needed) with a
/// tail bound at most `goal`. Returns the extended orbit, the depth, and
/// whether the goal was met within budget.
fn choose_depth(
    norm: &NormalizationData,
    orbit: &OrbitRecord,
    goal: &Dyadic,
    budget: &Budget,
) -> Result<(OrbitRecord, usize, bool), GrowthError> {
    let m = escape_index(orbit)?;
    let mut rec = orbit.extended(m + 2, budget.digit_budget)?;
    let mut depth = m;
    loop {
        if &tail_bound(norm, &rec.values()[depth]) <= goal {
            return Ok((rec, depth, true));
        }
        if depth + 2 > budget.max_steps.max(m + 1) {
            return Ok((rec, depth, false));
        }
        match rec.extended(depth + 3, budget.digit_budget) {
            Ok(next) => {
                rec = next;
                depth += 1;
            }
            Err(OrbitError::DigitBudget { .. }) => return Ok((rec, depth, false)),
            Err(e) => return Err(e.into()),
        }
    }
}

/// Certified `log α` and `α` for a divergent orbit, refined until both
/// radii are at most `opts.target_radius` or the budgets run out (then
/// `target_met` is `false` and the best enclosure is returned).
///
/// The orbit's own offset is ignored in favour of `opts.offset`.
pub fn compute_log_alpha(orbit: &OrbitRecord, opts: &GrowthOptions) -> Result<GrowthConstant, GrowthError> {
    let norm = orbit.poly().derive_normalization().map_err(OrbitError::from)?;
    let m = escape_index(orbit)?;
    let orbit = orbit.clone().with_offset(opts.offset);
    let target = opts.target_radius.abs();
    let mut log_goal = target.shl(-2);
    let mut best = None;
    for _attempt in 0..8 {
        let (rec, depth, depth_ok) = choose_depth(&norm, &orbit, &log_goal.shl(-2), &opts.budget)?;
        let prec = opts
            .precision
            .unwrap_or_else(|| schedule(&log_goal, depth + 1 - m));
        let (log_alpha, tail) = log_alpha_at_depth(&norm, &rec, depth, prec)?;
        let alpha = log_alpha.exp(prec)?;
        let log_a = norm.log_lambda(prec)?.neg();
        let a = norm.a_ball(prec)?;
        let met = log_alpha.rad() <= &target && alpha.rad() <= &target;
        let gc = GrowthConstant {
            log_alpha,
            alpha,
            a,
            log_a,
            b: norm.b.clone(),
            degree: norm.degree,
            start_m: m + opts.offset,
            depth_n: depth + opts.offset,
            tail_bound: tail,
            norm: norm.clone(),
            offset: opts.offset,
            precision: prec,
            target_met: met,
        };
        if met || !depth_ok || opts.precision.is_some() {
            return Ok(gc);
        }
        // α's radius is roughly α times log α's radius; tighten accordingly
        let ratio = gc.alpha.rad().msb().unwrap_or(0) - target.msb().unwrap_or(0) + 2;
        log_goal = log_goal.shl(-ratio.max(2));
        best = Some(gc);
    }
    Ok(best.expect("at least one attempt"))
}

/// Orbit analysis plus [`compute_log_alpha`] for `x_{n+1} = P(x_n)` started
/// at `x0` (sequence index `opts.offset`).
pub fn growth_constant(p: &RationalPoly, x0: &Rational, opts: &GrowthOptions) -> Result<(OrbitRecord, GrowthConstant), GrowthError> {
    let rec = orbit::analyze(p, x0, &opts.budget)?;
    if !rec.is_divergent() {
        return Err(GrowthError::NotDivergent(rec.status().clone()));
    }
    let gc = compute_log_alpha(&rec, opts)?;
    Ok((rec.with_offset(opts.offset), gc))
}

/// Enclosure of `A α^(d^n) + B`, computed as `exp(d^n log α + log A) + B`.
///
/// Fails when `d^n rad(log α) >= 1`: the exponentiated enclosure would be
/// meaningless and `α` must be recomputed with a smaller radius.
pub fn predict_term(gc: &GrowthConstant, n: usize, prec: Precision) -> Result<Ball, GrowthError> {
    let dn = d_pow(gc.degree, n);
    let spread = gc.log_alpha.rad() * &Dyadic::from_int(dn.clone());
    if spread >= Dyadic::one() {
        return Err(GrowthError::EnclosureTooWide { n });
    }
    let arg = gc.log_alpha.mul_int(&dn, prec).add(&gc.log_a, prec);
    let main = arg.exp(prec)?;
    Ok(main.add(&Ball::from_rational(&gc.b, prec), prec))
}

/// Enclosure of `x_n - (A α^(d^n) + B)`.
pub fn residual(gc: &GrowthConstant, orbit: &OrbitRecord, n: usize, prec: Precision) -> Result<Ball, GrowthError> {
    let x = orbit.value_at(n).ok_or(GrowthError::IndexOutOfRange(n))?;
    let pred = predict_term(gc, n, prec)?;
    Ok(Ball::from_rational(x, prec).sub(&pred, prec))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFormMode {
    /// `x_n = floor(A α^(d^n) + B)`
    Floor,
    /// `x_n = floor(A α^(d^n) + B + 1/2)`, i.e. the nearest integer
    Round,
    /// Floor when the residuals are negative, round otherwise.
    Auto,
}

impl std::str::FromStr for ClosedFormMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "floor" => Ok(ClosedFormMode::Floor),
            "round" => Ok(ClosedFormMode::Round),
            "auto" => Ok(ClosedFormMode::Auto),
            other => Err(format!("unknown mode `{other}` (expected floor, round or auto)")),
        }
    }
}

impl std::fmt::Display for ClosedFormMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ClosedFormMode::Floor => "floor",
            ClosedFormMode::Round => "round",
            ClosedFormMode::Auto => "auto",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    Failed,
    AmbiguousRadius,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Verified => "Verified",
            Verdict::Failed => "Failed",
            Verdict::AmbiguousRadius => "AmbiguousRadius",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormEntry {
    pub n: usize,
    pub actual: Rational,
    /// Enclosure of the quantity whose floor is compared (`A α^(d^n) + B`,
    /// plus 1/2 in round mode); `None` when it could not be formed.
    pub prediction: Option<Ball>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormReport {
    /// The mode actually applied (never `Auto`).
    pub mode: ClosedFormMode,
    pub auto_selected: bool,
    pub n_range: RangeInclusive<usize>,
    pub entries: Vec<ClosedFormEntry>,
}

impl ClosedFormReport {
    pub fn all_verified(&self) -> bool {
        self.entries.iter().all(|e| e.verdict == Verdict::Verified)
    }

    pub fn any(&self, v: Verdict) -> bool {
        self.entries.iter().any(|e| e.verdict == v)
    }
}

fn term_precision(gc: &GrowthConstant, x: &Rational, n: usize) -> Precision {
    let x_bits = x.numer().bits() + x.denom().bits();
    let n_bits = (n as u64) * (64 - (gc.degree as u64).leading_zeros() as u64);
    gc.precision.plus(x_bits + n_bits / 4 + 16)
}

/// Heuristic for `Auto`: use floor when the residual at the largest
/// decidable index is certainly negative (the formula overshoots `x_n`),
/// and round otherwise.
fn auto_mode(gc: &GrowthConstant, orbit: &OrbitRecord, range: &RangeInclusive<usize>) -> ClosedFormMode {
    for n in range.clone().rev() {
        let Some(x) = orbit.value_at(n) else { continue };
        if let Ok(r) = residual(gc, orbit, n, term_precision(gc, x, n)) {
            if r.is_negative() {
                return ClosedFormMode::Floor;
            }
            if r.is_positive() {
                return ClosedFormMode::Round;
            }
        }
    }
    ClosedFormMode::Round
}

/// Per-index check of `x_n = floor(A α^(d^n) + B)` (floor mode) or
/// `x_n = floor(A α^(d^n) + B + 1/2)` (round mode).
pub fn verify_closed_form(
    gc: &GrowthConstant,
    orbit: &OrbitRecord,
    mode: ClosedFormMode,
    n_range: RangeInclusive<usize>,
) -> Result<ClosedFormReport, GrowthError> {
    if let Some(n) = n_range.clone().find(|&n| orbit.value_at(n).is_none()) {
        return Err(GrowthError::IndexOutOfRange(n));
    }
    let (mode, auto_selected) = match mode {
        ClosedFormMode::Auto => (auto_mode(gc, orbit, &n_range), true),
        m => (m, false),
    };
    let half = Ball::exact(Dyadic::pow2(-1));
    let mut entries = Vec::new();
    for n in n_range.clone() {
        let actual = orbit.value_at(n).expect("checked above").clone();
        let prec = term_precision(gc, &actual, n);
        let prediction = predict_term(gc, n, prec).ok().map(|p| match mode {
            ClosedFormMode::Round => p.add(&half, prec),
            _ => p,
        });
        let verdict = match &prediction {
            None => Verdict::AmbiguousRadius,
            Some(p) => {
                let lo = p.lower().floor();
                let hi = p.upper().floor();
                if !actual.is_integer() {
                    Verdict::Failed
                } else {
                    let x = actual.to_integer();
                    if lo == hi && lo == x {
                        Verdict::Verified
                    } else if x < lo || x > hi {
                        Verdict::Failed
                    } else {
                        Verdict::AmbiguousRadius
                    }
                }
            }
        };
        entries.push(ClosedFormEntry {
            n,
            actual,
            prediction,
            verdict,
        });
    }
    Ok(ClosedFormReport {
        mode,
        auto_selected,
        n_range,
        entries,
    })
}

/// Bits of `log α` accuracy that should settle the closed form at `n`:
/// floor needs to resolve the `O(1/x_n)` gap above `x_n`, round only needs
/// absolute error below 1/2.
fn bits_needed(x: &Rational, n: usize, d: usize, mode: ClosedFormMode) -> u64 {
    let x_bits = x.numer().bits();
    let n_bits = n as u64 * (64 - (d as u64).leading_zeros() as u64);
    match mode {
        ClosedFormMode::Round => x_bits + n_bits + 16,
        _ => 2 * x_bits + n_bits + 16,
    }
}

/// Compute `α` tightly enough to decide `verify_closed_form` on every index
/// in `n_range`, doubling the working accuracy while verdicts remain
/// ambiguous, up to `max_bits`.
pub fn verify_closed_form_refined(
    p: &RationalPoly,
    x0: &Rational,
    opts: &GrowthOptions,
    mode: ClosedFormMode,
    n_range: RangeInclusive<usize>,
    max_bits: u64,
) -> Result<(GrowthConstant, OrbitRecord, ClosedFormReport), GrowthError> {
    let rec = orbit::analyze(p, x0, &opts.budget)?;
    if !rec.is_divergent() {
        return Err(GrowthError::NotDivergent(rec.status().clone()));
    }
    let rec = rec.with_offset(opts.offset);
    let end = *n_range.end();
    let needed_len = (end + 1).saturating_sub(opts.offset);
    let rec = rec.extended(needed_len.max(1), opts.budget.digit_budget)?;
    let x_end = rec.value_at(end).ok_or(GrowthError::IndexOutOfRange(end))?;
    let d = rec.poly().degree().unwrap_or(2);
    let start_bits = opts
        .target_radius
        .msb()
        .map_or(64, |m| (-m).max(0) as u64);
    let mut bits = bits_needed(x_end, end, d, mode).max(start_bits).min(max_bits);
    loop {
        let local = GrowthOptions {
            target_radius: Dyadic::pow2(-(bits as i64)),
            ..opts.clone()
        };
        let gc = compute_log_alpha(&rec, &local)?;
        let report = verify_closed_form(&gc, &rec, mode, n_range.clone())?;
        if !report.any(Verdict::AmbiguousRadius) || bits >= max_bits || !gc.target_met {
            return Ok((gc, rec, report));
        }
        bits = (bits * 2).min(max_bits);
    }
}

/// `α` along the product route,
/// `α = y_m^(d^-m) prod_{k>=m} r_k^(d^-(k+1))`, using only integer roots
/// (no logarithms), truncated with the same tail bound `T` as the series:
/// the missing factor lies in `[exp(-T), exp(T)] ⊂ [1 - T, 1 + 2T]`.
pub fn product_formula_alpha(orbit: &OrbitRecord, opts: &GrowthOptions) -> Result<Ball, GrowthError> {
    let norm = orbit.poly().derive_normalization().map_err(OrbitError::from)?;
    let m = escape_index(orbit)?;
    let target = opts.target_radius.abs();
    let goal = target.shl(-3);
    let (rec, depth, _) = choose_depth(&norm, orbit, &goal, &opts.budget)?;
    let prec = opts
        .precision
        .unwrap_or_else(|| schedule(&goal, depth + 1 - m));
    let w = prec.plus(16);
    let d = norm.degree;
    let dd = d as u32;
    let values = rec.values();

    // y_m^(d^-m) = (λ (x_m + s))^(d^-m)
    let lambda = Ball::from_rational(&norm.leading, w).root(dd - 1, w)?;
    let xs = &values[m] + &norm.shift;
    let y_m = lambda.mul(&Ball::from_rational(&xs, w), w);
    let mut acc = y_m.root_iter(dd, m as u32, w)?;
    for k in m..=depth {
        let r = step_ratio(&norm, &rec, k)?;
        if r.is_one() {
            continue;
        }
        let factor = Ball::from_rational(&r, w).root_iter(dd, (k + 1) as u32, w)?;
        acc = acc.mul(&factor, w);
    }
    let t = tail_bound(&norm, &values[depth]);
    if !t.is_zero() {
        let lo = &Dyadic::one() - &t;
        let hi = &Dyadic::one() + &t.shl(1);
        acc = acc.mul(&Ball::from_endpoints(&lo, &hi, w), w);
    }
    let alpha = acc.root_iter(dd, opts.offset as u32, w)?;
    Ok(alpha.rounded(prec))
}
