//! Empirical fits of `G_n ≈ A α^n + B` to integer sequence data.
//!
//! Nothing here is certified. Arithmetic runs on 256-bit dyadic midpoints
//! (ball radii are discarded), so values with thousands of digits are fine
//! but the estimates carry no error bounds.

use std::io::BufRead;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::growth::GrowthConstant;
use crate::real::{ball_to_decimal, Ball, Dyadic, Precision};

/// Working precision of the fitter, in bits.
pub const FIT_BITS: u64 = 256;

/// Minimum window length accepted by [`fit_geometric`].
pub const MIN_WINDOW: usize = 5;

#[derive(Debug, thiserror::Error)]
pub enum SeqfitError {
    #[error("no valid entries")]
    NoEntries,
    #[error("line {line}: index {index} does not increase")]
    NonMonotone { line: usize, index: i64 },
    #[error("read failed: {0}")]
    Io(#[from] std::io::Error),
    #[error("window of {got} entries is too short (need at least {MIN_WINDOW})")]
    WindowTooShort { got: usize },
    #[error("indices {from}..{to} are not contiguous; refusing to fill the gap")]
    NonContiguous { from: i64, to: i64 },
    #[error("first differences vanish; the sequence is constant or degenerate")]
    DegenerateDifferences,
    #[error("estimated alpha {0} is not above 1")]
    AlphaNotAboveOne(String),
    #[error("fewer than two usable indices overlap the certified constant")]
    InsufficientOverlap,
}

/// A line of a b-file that was skipped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineDiagnostic {
    pub line: usize,
    pub text: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceSample {
    entries: Vec<(i64, BigInt)>,
    contiguous: bool,
}

impl SequenceSample {
    /// Build a sample from `(index, value)` pairs; indices must increase.
    pub fn new(entries: Vec<(i64, BigInt)>) -> Result<Self, SeqfitError> {
        if entries.is_empty() {
            return Err(SeqfitError::NoEntries);
        }
        if let Some(pos) = entries.windows(2).position(|w| w[1].0 <= w[0].0) {
            return Err(SeqfitError::NonMonotone {
                line: pos + 2,
                index: entries[pos + 1].0,
            });
        }
        let contiguous = entries.windows(2).all(|w| w[1].0 == w[0].0 + 1);
        Ok(SequenceSample {
            entries,
            contiguous,
        })
    }

    /// `G_n = f(n)` for `n` in `range`.
    pub fn from_fn(range: std::ops::RangeInclusive<i64>, f: impl Fn(i64) -> BigInt) -> Self {
        Self::new(range.map(|n| (n, f(n))).collect()).expect("nonempty increasing range")
    }

    pub fn entries(&self) -> &[(i64, BigInt)] {
        &self.entries
    }

    pub fn is_contiguous(&self) -> bool {
        self.contiguous
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Length of the longest run of consecutive indices.
    pub fn longest_contiguous_run(&self) -> usize {
        let mut best = 1;
        let mut cur = 1;
        for w in self.entries.windows(2) {
            cur = if w[1].0 == w[0].0 + 1 { cur + 1 } else { 1 };
            best = best.max(cur);
        }
        best
    }

    pub fn value_at(&self, n: i64) -> Option<&BigInt> {
        self.entries
            .binary_search_by_key(&n, |e| e.0)
            .ok()
            .map(|i| &self.entries[i].1)
    }
}

/// Read a b-file: `index value` per line, `#` comments and blank lines
/// ignored, LF or CRLF. Malformed lines are skipped and reported.
pub fn load_bfile<R: BufRead>(reader: R) -> Result<(SequenceSample, Vec<LineDiagnostic>), SeqfitError> {
    let mut entries: Vec<(i64, BigInt)> = Vec::new();
    let mut diags = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let mut parts = text.split_whitespace();
        let parsed = match (parts.next(), parts.next(), parts.next()) {
            (Some(n), Some(v), None) => n.parse::<i64>().ok().zip(v.parse::<BigInt>().ok()),
            _ => None,
        };
        let Some((n, v)) = parsed else {
            diags.push(LineDiagnostic {
                line: lineno,
                text: text.to_string(),
                reason: "expected `index value`".to_string(),
            });
            continue;
        };
        if let Some(&(last, _)) = entries.last() {
            if n <= last {
                return Err(SeqfitError::NonMonotone { line: lineno, index: n });
            }
        }
        entries.push((n, v));
    }
    if entries.is_empty() {
        return Err(SeqfitError::NoEntries);
    }
    Ok((SequenceSample::new(entries)?, diags))
}

fn prec() -> Precision {
    Precision::new(FIT_BITS).expect("fixed precision")
}

fn add(a: &Dyadic, b: &Dyadic) -> Dyadic {
    (a + b).round(FIT_BITS).0
}

fn sub(a: &Dyadic, b: &Dyadic) -> Dyadic {
    (a - b).round(FIT_BITS).0
}

fn mul(a: &Dyadic, b: &Dyadic) -> Dyadic {
    (a * b).round(FIT_BITS).0
}

fn div(a: &Dyadic, b: &Dyadic) -> Dyadic {
    a.div_prec(b, FIT_BITS).0
}

fn powi(a: &Dyadic, n: i64) -> Dyadic {
    let p = Ball::exact(a.clone()).pow(n.unsigned_abs(), prec()).mid().clone();
    if n < 0 {
        div(&Dyadic::one(), &p)
    } else {
        p
    }
}

/// `log |a|` as `f64`, for `a != 0`; safe far outside `f64` range.
fn log_abs(a: &Dyadic) -> f64 {
    Ball::exact(a.abs())
        .log(Precision::new(64u64).expect("fixed"))
        .map(|b| b.to_f64())
        .unwrap_or(f64::NEG_INFINITY)
}

fn median(mut xs: Vec<Dyadic>) -> Dyadic {
    xs.sort();
    let k = xs.len();
    if k % 2 == 1 {
        xs[k / 2].clone()
    } else {
        add(&xs[k / 2 - 1], &xs[k / 2]).shl(-1)
    }
}

/// Render an estimate with `digits` significant digits (truncated).
pub fn estimate_to_string(x: &Dyadic, digits: u32) -> String {
    ball_to_decimal(&Ball::exact(x.clone()), digits)
        .digits()
        .unwrap_or("0")
        .to_string()
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitDiagnostics {
    /// First and last sequence index of the window.
    pub window: (i64, i64),
    pub window_len: usize,
    /// Ratio estimates dropped as transient.
    pub dropped_ratios: usize,
    pub contiguous_length: usize,
    /// The last tail ratio is within `1e-3` (relative) of `alpha_hat` and
    /// no farther from it than the first tail ratio.
    pub ratios_converging: bool,
    /// Largest `|residual| / |G_n|` over the tail of the window.
    pub max_relative_residual: f64,
    /// Overall verdict: `alpha_hat > 1`, ratios converging, and the model
    /// explains the tail to within `1e-2`.
    pub geometric: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub alpha_hat: Dyadic,
    pub a_hat: Dyadic,
    pub b_hat: Dyadic,
    /// `None` when every residual is zero or too few remain.
    pub eps_hat: Option<f64>,
    /// `G_n - (A α^n + B)` for every index in the window.
    pub residuals: Vec<(i64, Dyadic)>,
    pub diagnostics: FitDiagnostics,
}

/// Fit `A α^n + B` to the last `window` entries (all entries by default).
///
/// `α` is the ratio of sums `Σ D_{n+1} / Σ D_n` of first differences over
/// the ratios left after dropping the first `ceil(window/3)`; that is the
/// average of the ratios `D_{n+1}/D_n` weighted by `D_n`. `A` is the median
/// of `D_n / (α^n (α - 1))` over the same tail, `B` the median of
/// `G_n - A α^n` over the window, and `ε` minus the least-squares slope of
/// `log|residual|` against `n log α` on the decreasing head of the
/// residuals.
pub fn fit_geometric(sample: &SequenceSample, window: Option<usize>) -> Result<FitResult, SeqfitError> {
    let all = sample.entries();
    let w = window.unwrap_or(all.len()).min(all.len());
    if w < MIN_WINDOW {
        return Err(SeqfitError::WindowTooShort { got: w });
    }
    let win = &all[all.len() - w..];
    if let Some(gap) = win.windows(2).find(|p| p[1].0 != p[0].0 + 1) {
        return Err(SeqfitError::NonContiguous {
            from: gap[0].0,
            to: gap[1].0,
        });
    }
    let g: Vec<Dyadic> = win.iter().map(|(_, v)| Dyadic::from_int(v.clone())).collect();
    let idx: Vec<i64> = win.iter().map(|(n, _)| *n).collect();
    let diffs: Vec<Dyadic> = g.windows(2).map(|p| &p[1] - &p[0]).collect();
    if diffs.iter().any(|d| d.is_zero()) {
        return Err(SeqfitError::DegenerateDifferences);
    }

    // ratio i uses D_i and D_{i+1}
    let n_ratios = diffs.len() - 1;
    let drop = w.div_ceil(3).min(n_ratios - 1);
    let tail = drop..n_ratios;
    let num = tail.clone().fold(Dyadic::zero(), |s, i| &s + &diffs[i + 1]);
    let den = tail.clone().fold(Dyadic::zero(), |s, i| &s + &diffs[i]);
    if den.is_zero() {
        return Err(SeqfitError::DegenerateDifferences);
    }
    let alpha = div(&num, &den);
    if alpha <= Dyadic::one() {
        return Err(SeqfitError::AlphaNotAboveOne(estimate_to_string(&alpha, 12)));
    }
    let alpha_m1 = sub(&alpha, &Dyadic::one());

    let a_est: Vec<Dyadic> = tail
        .clone()
        .map(|i| div(&diffs[i], &mul(&powi(&alpha, idx[i]), &alpha_m1)))
        .collect();
    let a_hat = median(a_est);
    let model: Vec<Dyadic> = idx.iter().map(|&n| mul(&a_hat, &powi(&alpha, n))).collect();
    let b_hat = median(g.iter().zip(&model).map(|(gi, mi)| sub(gi, mi)).collect());
    let residuals: Vec<(i64, Dyadic)> = idx
        .iter()
        .zip(g.iter().zip(&model))
        .map(|(&n, (gi, mi))| (n, sub(&sub(gi, mi), &b_hat)))
        .collect();

    let eps_hat = estimate_eps(&residuals, &alpha);

    let rel = |i: usize| -> Dyadic { diffs[i + 1].div_prec(&diffs[i], 64).0 };
    let dev = |r: Dyadic| -> f64 { sub(&r, &alpha).abs().to_f64() / alpha.to_f64() };
    let first_dev = dev(rel(drop));
    let last_dev = dev(rel(n_ratios - 1));
    let ratios_converging = last_dev <= 1e-3 && last_dev <= first_dev;
    let max_relative_residual = residuals[drop..]
        .iter()
        .zip(&g[drop..])
        .filter(|(_, gi)| !gi.is_zero())
        .map(|((_, r), gi)| (log_abs(r) - log_abs(gi)).exp())
        .filter(|x| x.is_finite())
        .fold(0.0, f64::max);
    let geometric = ratios_converging && max_relative_residual <= 1e-2;

    Ok(FitResult {
        alpha_hat: alpha,
        a_hat,
        b_hat,
        eps_hat,
        residuals,
        diagnostics: FitDiagnostics {
            window: (idx[0], idx[w - 1]),
            window_len: w,
            dropped_ratios: drop,
            contiguous_length: sample.longest_contiguous_run(),
            ratios_converging,
            max_relative_residual,
            geometric,
        },
    })
}

/// `-slope` of `log|r_n|` against `n log α` over the leading run of
/// nonzero, strictly shrinking residuals; past that run the residuals are
/// dominated by the estimation error of `α`, `A`, `B` rather than the
/// model's error term.
fn estimate_eps(residuals: &[(i64, Dyadic)], alpha: &Dyadic) -> Option<f64> {
    let la = log_abs(alpha);
    let mut pts: Vec<(f64, f64)> = Vec::new();
    for (n, r) in residuals {
        if r.is_zero() {
            break;
        }
        let y = log_abs(r);
        if pts.last().is_some_and(|p| y >= p.1) {
            break;
        }
        pts.push((*n as f64 * la, y));
    }
    let head = &pts[..];
    if head.len() < 3 {
        return None;
    }
    let k = head.len() as f64;
    let mx = head.iter().map(|p| p.0).sum::<f64>() / k;
    let my = head.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = head.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = head.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    if sxx == 0.0 {
        return None;
    }
    Some(-sxy / sxx)
}

/// Per-index comparison between a sample and a certified growth constant.
#[derive(Debug, Clone, PartialEq)]
pub struct CrosscheckRow {
    pub n: i64,
    pub actual: BigInt,
    /// Midpoint of `A α^(d^n) + B`.
    pub predicted: Dyadic,
    pub relative_deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrosscheckReport {
    /// `A` estimated from the last two usable terms against `α^(d^n)`.
    pub a_hat: Dyadic,
    /// `B` estimated from the last usable term.
    pub b_hat: Dyadic,
    pub a_certified: Dyadic,
    pub b_certified: Dyadic,
    pub rows: Vec<CrosscheckRow>,
    pub max_relative_deviation: f64,
    /// Every usable term equals the nearest integer to the prediction and
    /// `A`, `B` are recovered to within `1e-9`.
    pub exact_agreement: bool,
}

/// Treat the sample as `G_(d^n)` and compare it against the certified
/// constant: `u_n = α^(d^n)` comes from `gc`, and `A`, `B` are estimated
/// from the data by a two-point fit on the last usable indices.
///
/// An index is usable when the sample holds it, it is at least the
/// constant's offset, and `d^n rad(log α)` is below `2^-(FIT_BITS/2)`
/// relative to the size of `u_n` (so `u_n` is known to better than 1).
pub fn crosscheck_with_growth(sample: &SequenceSample, gc: &GrowthConstant) -> Result<CrosscheckReport, SeqfitError> {
    let p = prec();
    let d = BigInt::from(gc.degree);
    let mut usable: Vec<(i64, BigInt, Dyadic)> = Vec::new();
    for (n, v) in sample.entries() {
        if *n < gc.offset as i64 {
            continue;
        }
        let dn = num_traits::pow(d.clone(), *n as usize);
        let arg = gc.log_alpha.mul_int(&dn, p);
        let Ok(u) = arg.exp(p) else { break };
        // absolute uncertainty of u_n must stay well below 1
        if u.rad() > &Dyadic::pow2(-32) {
            break;
        }
        usable.push((*n, v.clone(), u.mid().clone()));
    }
    if usable.len() < 2 {
        return Err(SeqfitError::InsufficientOverlap);
    }
    let k = usable.len();
    let (_, g1, u1) = &usable[k - 2];
    let (_, g2, u2) = &usable[k - 1];
    let g1 = Dyadic::from_int(g1.clone());
    let g2 = Dyadic::from_int(g2.clone());
    let a_hat = div(&sub(&g2, &g1), &sub(u2, u1));
    let b_hat = sub(&g2, &mul(&a_hat, u2));

    let a_cert = gc.a.mid().clone();
    let b_cert = Dyadic::from_rational(&gc.b, FIT_BITS).0;
    let mut rows = Vec::new();
    let mut max_dev: f64 = 0.0;
    let mut all_match = true;
    for (n, v, u) in &usable {
        let pred = add(&mul(&a_cert, u), &b_cert);
        let gv = Dyadic::from_int(v.clone());
        let diff = sub(&gv, &pred);
        let rel = if v.is_zero() {
            diff.abs().to_f64()
        } else {
            (log_abs(&diff) - log_abs(&gv)).exp()
        };
        let rel = if diff.is_zero() { 0.0 } else { rel };
        max_dev = max_dev.max(rel);
        let nearest = add(&pred, &Dyadic::pow2(-1)).floor();
        all_match &= &nearest == v;
        rows.push(CrosscheckRow {
            n: *n,
            actual: v.clone(),
            predicted: pred,
            relative_deviation: rel,
        });
    }
    let close = |x: &Dyadic, y: &Dyadic| {
        let scale = y.abs().max(Dyadic::one());
        sub(x, y).abs().to_f64() <= 1e-9 * scale.to_f64()
    };
    let exact_agreement = all_match && close(&a_hat, &a_cert) && close(&b_hat, &b_cert);
    Ok(CrosscheckReport {
        a_hat,
        b_hat,
        a_certified: a_cert,
        b_certified: b_cert,
        rows,
        max_relative_deviation: max_dev,
        exact_agreement,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::growth::{growth_constant, GrowthOptions};
    use crate::polynomial::parse_poly;
    use crate::rational::Rational;

    fn load(text: &str) -> (SequenceSample, Vec<LineDiagnostic>) {
        load_bfile(text.as_bytes()).unwrap()
    }

    fn f(x: &Dyadic) -> f64 {
        x.to_f64()
    }

    #[test]
    fn bfile_examples() {
        let (s, d) = load("0 0\n1 1\n2 2\n3 5\n4 26");
        assert_eq!(s.len(), 5);
        assert!(d.is_empty());
        assert_eq!(s.value_at(4), Some(&BigInt::from(26)));
        let (s, _) = load("# comment\n0 2\n1 3\n2 7");
        assert_eq!(s.len(), 3);
        let (s, d) = load("0 2\nbroken\n1 3");
        assert_eq!(s.len(), 2);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].line, 2);
        let (s, _) = load("0 2\r\n1 3\r\n\r\n2 7\r\n");
        assert_eq!(s.len(), 3);
        assert!(s.is_contiguous());
    }

    #[test]
    fn bfile_errors() {
        assert!(matches!(load_bfile("# only\n\n".as_bytes()), Err(SeqfitError::NoEntries)));
        assert!(matches!(
            load_bfile("0 1\n2 3\n1 4".as_bytes()),
            Err(SeqfitError::NonMonotone { line: 3, index: 1 })
        ));
        let (s, _) = load("0 1\n2 3\n3 4");
        assert!(!s.is_contiguous());
        assert_eq!(s.longest_contiguous_run(), 2);
    }

    #[test]
    fn exact_geometric_model() {
        let s = SequenceSample::from_fn(0..=12, |n| BigInt::from(3) * BigInt::from(2).pow(n as u32) + 5);
        let fit = fit_geometric(&s, None).unwrap();
        assert_eq!(fit.alpha_hat, Dyadic::from_int(2));
        assert_eq!(fit.a_hat, Dyadic::from_int(3));
        assert_eq!(fit.b_hat, Dyadic::from_int(5));
        assert!(fit.residuals.iter().all(|(_, r)| r.is_zero()));
        assert_eq!(fit.residuals.len(), 13);
        assert!(fit.diagnostics.geometric);
        assert_eq!(fit.eps_hat, None);
    }

    fn lucas(n: usize) -> Vec<BigInt> {
        let mut l = vec![BigInt::from(2), BigInt::from(1)];
        while l.len() < n {
            let k = l.len();
            l.push(&l[k - 1] + &l[k - 2]);
        }
        l
    }

    #[test]
    fn lucas_fit() {
        let l = lucas(31);
        let s = SequenceSample::from_fn(0..=30, |n| l[n as usize].clone());
        let fit = fit_geometric(&s, None).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((f(&fit.alpha_hat) - phi).abs() < 1e-6);
        assert!((f(&fit.a_hat) - 1.0).abs() < 1e-4);
        assert!(f(&fit.b_hat).abs() < 1e-2);
        let eps = fit.eps_hat.unwrap();
        assert!((eps - 1.0).abs() < 0.2, "eps {eps}");
        assert!(fit.diagnostics.geometric);
    }

    #[test]
    fn rounded_model() {
        // round(2.5 * 3^n + 1.25) = floor((10 * 3^n + 7) / 4)
        let s = SequenceSample::from_fn(0..=15, |n| (BigInt::from(10) * BigInt::from(3).pow(n as u32) + 7) / 4);
        let fit = fit_geometric(&s, None).unwrap();
        assert!((f(&fit.alpha_hat) - 3.0).abs() < 1e-6);
        assert!((f(&fit.a_hat) - 2.5).abs() < 1e-4);
    }

    #[test]
    fn shift_equivariance() {
        let s = SequenceSample::from_fn(0..=14, |n| BigInt::from(7) * BigInt::from(3).pow(n as u32) - 2);
        let t = SequenceSample::from_fn(0..=14, |n| BigInt::from(7) * BigInt::from(3).pow(n as u32) + 40);
        let a = fit_geometric(&s, None).unwrap();
        let b = fit_geometric(&t, None).unwrap();
        assert_eq!(a.alpha_hat, b.alpha_hat);
        assert_eq!(a.a_hat, b.a_hat);
        assert!((f(&b.b_hat) - f(&a.b_hat) - 42.0).abs() < 1e-9);
    }

    #[test]
    fn fit_errors() {
        let c = SequenceSample::from_fn(0..=9, |_| BigInt::from(4));
        assert!(matches!(fit_geometric(&c, None), Err(SeqfitError::DegenerateDifferences)));
        let short = SequenceSample::from_fn(0..=3, BigInt::from);
        assert!(matches!(fit_geometric(&short, None), Err(SeqfitError::WindowTooShort { got: 4 })));
        let (gappy, _) = load("0 1\n1 2\n2 4\n4 16\n5 32\n6 64");
        assert!(matches!(fit_geometric(&gappy, None), Err(SeqfitError::NonContiguous { from: 2, to: 4 })));
        assert!(fit_geometric(&gappy, Some(3)).is_err());
        let down = SequenceSample::from_fn(0..=9, |n| BigInt::from(100 - n));
        assert!(matches!(fit_geometric(&down, None), Err(SeqfitError::AlphaNotAboveOne(_))));
    }

    #[test]
    fn quadratic_is_not_geometric() {
        let s = SequenceSample::from_fn(0..=30, |n| BigInt::from(n * n + 1));
        let fit = fit_geometric(&s, None).unwrap();
        assert!(!fit.diagnostics.geometric);
    }

    fn orbit_sample(p: &str, x0: i64, terms: usize) -> (SequenceSample, GrowthConstant) {
        let poly = parse_poly(p).unwrap();
        let opts = GrowthOptions::with_target_bits(300);
        let (rec, gc) = growth_constant(&poly, &Rational::from_integer(x0.into()), &opts).unwrap();
        let rec = rec.extended(terms, 1_000_000).unwrap();
        let s = SequenceSample::from_fn(0..=(terms as i64 - 1), |n| rec.values()[n as usize].to_integer());
        (s, gc)
    }

    #[test]
    fn crosscheck_beta_system() {
        let (s, gc) = orbit_sample("x^2+1", 0, 10);
        let rep = crosscheck_with_growth(&s, &gc).unwrap();
        assert!((f(&rep.a_hat) - 1.0).abs() < 1e-6);
        assert!(f(&rep.b_hat).abs() < 1e-6);
    }

    #[test]
    fn crosscheck_sylvester() {
        let (s, gc) = orbit_sample("x^2-x+1", 2, 10);
        let rep = crosscheck_with_growth(&s, &gc).unwrap();
        assert!((f(&rep.b_hat) - 0.5).abs() < 1e-6);
        assert!(rep.rows.iter().all(|r| r.relative_deviation < 1.0));
    }

    #[test]
    fn crosscheck_pure_power() {
        let (s, gc) = orbit_sample("x^2", 2, 7);
        let rep = crosscheck_with_growth(&s, &gc).unwrap();
        assert!(rep.exact_agreement);
    }

    #[test]
    fn crosscheck_needs_overlap() {
        let (_, gc) = orbit_sample("x^2", 2, 3);
        let s = SequenceSample::from_fn(400..=401, BigInt::from);
        assert!(matches!(crosscheck_with_growth(&s, &gc), Err(SeqfitError::InsufficientOverlap)));
    }
}
