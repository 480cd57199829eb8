use std::fs::File;
use std::io::BufReader;

use serde_json::{json, Map, Value};

use polygrowth::classify::{self, ClassifyError, ClassifyOptions};
use polygrowth::growth::{self, ClosedFormMode, GrowthError, GrowthOptions, Verdict};
use polygrowth::orbit::{self, Budget, OrbitError};
use polygrowth::polynomial::NormalizationError;
use polygrowth::rational::{format_rational, parse_rational};
use polygrowth::seqfit::{self, estimate_to_string, SeqfitError};
use polygrowth::{ball_to_decimal, parse_poly, DecimalOutput, Dyadic, Rational, RationalPoly};

use crate::config::{pick, pick_opt, ConfigError, ConfigFile};
use crate::format::{ball_endpoints, big_value, bits_for_radius, certified_prefix, directed, parse_radius, radius_upper};
use crate::report::{Report, TABLE};
use crate::{
    AlphaArgs, ClassifyArgs, CommonArgs, Failure, Finished, FitArgs, IterateArgs, VerifyArgs, EXIT_AMBIGUOUS,
    EXIT_BUDGET, EXIT_DIVERGENCE, EXIT_INPUT, EXIT_NON_GEOMETRIC, EXIT_OK, EXIT_VERIFY_FAILED,
};

const DEFAULT_DIGITS: u32 = 10;
const DEFAULT_PRINT_LIMIT: usize = 200;
const DEFAULT_VERIFY_MAX_BITS: u64 = 1 << 16;
/// Accuracy used for the algebraic probe when none is requested.
const PROBE_BITS: u64 = 192;

struct System {
    poly: RationalPoly,
    x0: Rational,
    offset: usize,
    budget: Budget,
}

fn annotate(text: &str, pos: usize, msg: &str) -> String {
    format!("{msg}\n  {text}\n  {}^", " ".repeat(pos.min(text.len())))
}

fn system(c: &CommonArgs, file: &ConfigFile) -> Result<System, Failure> {
    let poly_text = pick_opt(c.poly.clone(), file, "poly")?.ok_or(ConfigError::Missing("poly"))?;
    let poly = parse_poly(&poly_text).map_err(|e| Failure::new(EXIT_INPUT, annotate(&poly_text, e.position(), &e.to_string())))?;
    let x0_text = pick_opt(c.x0.clone(), file, "x0")?.ok_or(ConfigError::Missing("x0"))?;
    let x0 = parse_rational(&x0_text).map_err(|e| Failure::new(EXIT_INPUT, e.to_string()))?;
    let defaults = Budget::default();
    let budget = Budget {
        max_steps: pick(c.max_steps, file, "max_steps", defaults.max_steps)?,
        digit_budget: pick(c.digit_budget, file, "digit_budget", defaults.digit_budget)?,
    };
    if budget.max_steps == 0 || budget.digit_budget == 0 {
        return Err(Failure::new(EXIT_INPUT, "budgets must be positive"));
    }
    Ok(System {
        poly,
        x0,
        offset: pick(c.offset, file, "offset", 0)?,
        budget,
    })
}

fn orbit_failure(e: OrbitError) -> Failure {
    match e {
        OrbitError::DigitBudget { .. } => Failure::new(EXIT_BUDGET, e.to_string()),
        OrbitError::StructurallyNonDivergent(_) => Failure::new(EXIT_DIVERGENCE, e.to_string()),
        OrbitError::Normalization(NormalizationError::DegreeTooLow(_)) => Failure::new(EXIT_INPUT, e.to_string()),
        OrbitError::Normalization(_) => Failure::new(EXIT_DIVERGENCE, e.to_string()),
    }
}

fn growth_failure(e: GrowthError) -> Failure {
    match e {
        GrowthError::Orbit(o) => orbit_failure(o),
        GrowthError::NotDivergent(_) => Failure::new(EXIT_DIVERGENCE, e.to_string()),
        GrowthError::IndexOutOfRange(_) => Failure::new(EXIT_INPUT, e.to_string()),
        _ => Failure::new(EXIT_BUDGET, e.to_string()),
    }
}

fn header(r: &mut Report, s: &System) {
    r.set("poly", s.poly.to_string());
    r.set("x0", format_rational(&s.x0));
    r.set("offset", s.offset);
}

pub fn iterate(a: &IterateArgs, file: &ConfigFile) -> Result<Finished, Failure> {
    let s = system(&a.common, file)?;
    let steps = pick(a.steps, file, "steps", 10)?;
    let limit = pick(a.print_limit, file, "print_limit", DEFAULT_PRINT_LIMIT)?;
    let values = orbit::iterate(&s.poly, &s.x0, steps, s.budget.digit_budget).map_err(orbit_failure)?;
    let mut r = Report::new();
    header(&mut r, &s);
    r.set("steps", steps);
    let rows: Vec<Value> = values
        .iter()
        .enumerate()
        .map(|(k, v)| json!({"n": s.offset + k, "value": big_value(v, limit)}))
        .collect();
    r.set(TABLE, rows);
    Ok(Finished {
        report: r,
        code: EXIT_OK,
    })
}

fn target_bits(text: Option<String>, digits: u32) -> Result<u64, Failure> {
    match text {
        Some(t) => parse_radius(&t)
            .map(|q| bits_for_radius(&q))
            .ok_or_else(|| Failure::new(EXIT_INPUT, format!("invalid target radius `{t}`"))),
        None => {
            let q = Rational::new(1.into(), num_bigint::BigInt::from(10u32).pow(digits + 2));
            Ok(bits_for_radius(&q))
        }
    }
}

fn growth_options(s: &System, bits: u64) -> GrowthOptions {
    GrowthOptions {
        target_radius: Dyadic::pow2(-(bits as i64)),
        budget: s.budget,
        precision: None,
        offset: s.offset,
    }
}

fn a_exact(gc: &growth::GrowthConstant) -> String {
    let (c, k) = gc.norm.a_descriptor();
    if c == Rational::from_integer(1.into()) {
        "1".to_string()
    } else if k == 1 {
        format_rational(&(Rational::from_integer(1.into()) / c))
    } else {
        format!("({})^(-1/{k})", format_rational(&c))
    }
}

pub fn alpha(a: &AlphaArgs, file: &ConfigFile) -> Result<Finished, Failure> {
    let s = system(&a.common, file)?;
    let digits = pick(a.digits, file, "digits", DEFAULT_DIGITS)?;
    if digits == 0 {
        return Err(Failure::new(EXIT_INPUT, "digits must be at least 1"));
    }
    let mut bits = target_bits(pick_opt(a.target_radius.clone(), file, "target_radius")?, digits)?;
    let (gc, text) = loop {
        let (_, gc) = growth::growth_constant(&s.poly, &s.x0, &growth_options(&s, bits)).map_err(growth_failure)?;
        match ball_to_decimal(&gc.alpha, digits) {
            DecimalOutput::Exact(t) | DecimalOutput::Certified(t) => break (gc, t),
            DecimalOutput::InsufficientRadius if gc.target_met && bits < 1 << 20 => {
                bits += (bits / 2).max(32);
            }
            DecimalOutput::InsufficientRadius => {
                let best = certified_prefix(&gc.alpha, digits).unwrap_or_else(|| "none".into());
                return Err(Failure::new(
                    EXIT_BUDGET,
                    format!("budget exhausted before {digits} digits were certified (best: {best})"),
                ));
            }
        }
    };
    let mut r = Report::new();
    header(&mut r, &s);
    r.set("alpha", text);
    r.set("digits", digits);
    let (lo, hi) = ball_endpoints(&gc.alpha, digits + 12);
    r.set("alpha_lo", lo);
    r.set("alpha_hi", hi);
    r.set("radius", radius_upper(gc.alpha.rad()));
    r.set("log_alpha", certified_prefix(&gc.log_alpha, digits + 2).unwrap_or_else(|| "none".into()));
    r.set("A", a_exact(&gc));
    r.set("A_digits", certified_prefix(&gc.a, digits + 2).unwrap_or_else(|| "none".into()));
    r.set("B", format_rational(&gc.b));
    r.set("degree", gc.degree);
    r.set("escape_index", gc.start_m);
    r.set("depth", gc.depth_n);
    r.set("tail_bound", radius_upper(&gc.tail_bound));
    r.set("precision_bits", gc.precision.bits());
    r.set("target_met", gc.target_met);
    Ok(Finished {
        report: r,
        code: EXIT_OK,
    })
}

pub fn verify(a: &VerifyArgs, file: &ConfigFile) -> Result<Finished, Failure> {
    let s = system(&a.common, file)?;
    let mode_text = pick(a.mode.clone(), file, "mode", "auto".to_string())?;
    let mode: ClosedFormMode = mode_text
        .parse()
        .map_err(|_| Failure::new(EXIT_INPUT, format!("unknown mode `{mode_text}` (floor, round, auto)")))?;
    let from = pick(a.from, file, "from", s.offset)?;
    let to = pick(a.to, file, "to", from.max(8))?;
    if from > to || from < s.offset {
        return Err(Failure::new(EXIT_INPUT, format!("invalid index range {from}..{to}")));
    }
    let max_bits = pick(a.max_bits, file, "max_bits", DEFAULT_VERIFY_MAX_BITS)?;
    let limit = pick(a.print_limit, file, "print_limit", DEFAULT_PRINT_LIMIT)?;
    let opts = growth_options(&s, 64);
    let (gc, _, report) = growth::verify_closed_form_refined(&s.poly, &s.x0, &opts, mode, from..=to, max_bits)
        .map_err(growth_failure)?;

    let mut r = Report::new();
    header(&mut r, &s);
    r.set("mode", report.mode.to_string());
    r.set("auto_selected", report.auto_selected);
    r.set("from", from);
    r.set("to", to);
    r.set("alpha", certified_prefix(&gc.alpha, 20).unwrap_or_else(|| "none".into()));
    r.set("alpha_radius", radius_upper(gc.alpha.rad()));
    let count = |v: Verdict| report.entries.iter().filter(|e| e.verdict == v).count();
    r.set("verified", count(Verdict::Verified));
    r.set("failed", count(Verdict::Failed));
    r.set("ambiguous", count(Verdict::AmbiguousRadius));
    let rows: Vec<Value> = report
        .entries
        .iter()
        .map(|e| {
            let width = e.actual.numer().to_string().len() as u32 + 6;
            let (lo, hi) = match &e.prediction {
                Some(p) if (width as usize) <= limit => ball_endpoints(p, width),
                Some(p) => ball_endpoints(p, 20),
                None => ("-".into(), "-".into()),
            };
            json!({
                "n": e.n,
                "x_n": big_value(&e.actual, limit),
                "lower": lo,
                "upper": hi,
                "verdict": e.verdict.to_string(),
            })
        })
        .collect();
    r.set(TABLE, rows);
    let code = if report.any(Verdict::Failed) {
        EXIT_VERIFY_FAILED
    } else if report.any(Verdict::AmbiguousRadius) {
        r.set("hint", "raise --max-bits to resolve ambiguous entries");
        EXIT_AMBIGUOUS
    } else {
        EXIT_OK
    };
    Ok(Finished { report: r, code })
}

fn typed(v: &str) -> Value {
    if let Ok(n) = v.parse::<i64>() {
        return Value::from(n);
    }
    match v {
        "true" => Value::Bool(true),
        "false" => Value::Bool(false),
        _ => Value::String(v.to_string()),
    }
}

fn classify_failure(e: ClassifyError) -> Failure {
    match e {
        ClassifyError::Growth(g) => growth_failure(g),
        ClassifyError::AlphaTooWide { .. } => Failure::new(EXIT_BUDGET, e.to_string()),
        _ => Failure::new(EXIT_INPUT, e.to_string()),
    }
}

pub fn classify(a: &ClassifyArgs, file: &ConfigFile) -> Result<Finished, Failure> {
    let s = system(&a.common, file)?;
    let alg_degree = pick_opt(a.alg_degree, file, "alg_degree")?;
    let alg_height = pick_opt(a.alg_height, file, "alg_height")?;
    let probing = alg_degree.is_some() || alg_height.is_some();
    let mut bits = match pick_opt(a.target_radius.clone(), file, "target_radius")? {
        Some(t) => target_bits(Some(t), 0)?,
        None => 64,
    };
    if probing {
        bits = bits.max(PROBE_BITS);
    }
    let opts = ClassifyOptions {
        growth: growth_options(&s, bits),
        max_bits: pick(a.max_bits, file, "max_bits", classify::DEFAULT_MAX_BITS)?,
    };
    let cert = classify::certify_irrational(&s.poly, &s.x0, &opts).map_err(classify_failure)?;

    let mut r = Report::new();
    let mut caveats = Vec::new();
    for line in cert.to_string().lines() {
        let (k, v) = line.split_once(": ").unwrap_or((line, ""));
        if k == "caveat" {
            caveats.push(Value::from(v));
        } else {
            r.set(k, typed(v));
        }
    }
    r.set("caveat", caveats);
    if probing {
        let deg = alg_degree.unwrap_or(2);
        let height = alg_height.unwrap_or(2);
        let found = classify::search_algebraic_candidates(&cert.evidence.alpha, deg, height, None)
            .map_err(classify_failure)?;
        r.set("alg_degree", deg);
        r.set("alg_height", height);
        r.set("candidate_count", found.len());
        let list: Vec<Value> = found
            .iter()
            .map(|c| {
                Value::from(format!(
                    "{} (height {}, |m(alpha)| <= {})",
                    c.poly,
                    c.height,
                    radius_upper(&(&c.value.mid().abs() + c.value.rad()))
                ))
            })
            .collect();
        r.set("candidate", list);
    }
    Ok(Finished {
        report: r,
        code: EXIT_OK,
    })
}

fn seqfit_failure(e: SeqfitError) -> Failure {
    match e {
        SeqfitError::DegenerateDifferences | SeqfitError::AlphaNotAboveOne(_) => {
            Failure::new(EXIT_NON_GEOMETRIC, e.to_string())
        }
        _ => Failure::new(EXIT_INPUT, e.to_string()),
    }
}

pub fn fit(a: &FitArgs, file: &ConfigFile) -> Result<Finished, Failure> {
    let path = pick_opt(a.bfile.clone(), file, "bfile")?.ok_or(ConfigError::Missing("bfile"))?;
    let window = pick_opt(a.window, file, "window")?;
    let handle = File::open(&path).map_err(|e| Failure::new(EXIT_INPUT, format!("cannot open {}: {e}", path.display())))?;
    let (sample, skipped) = seqfit::load_bfile(BufReader::new(handle)).map_err(seqfit_failure)?;
    let fitres = seqfit::fit_geometric(&sample, window).map_err(seqfit_failure)?;
    let d = &fitres.diagnostics;

    let mut r = Report::new();
    r.set("bfile", path.display().to_string());
    r.set("entries", sample.len());
    r.set(
        "skipped",
        skipped
            .iter()
            .map(|l| json!({"line": l.line, "reason": l.reason}))
            .collect::<Vec<_>>(),
    );
    r.set("alpha_hat", estimate_to_string(&fitres.alpha_hat, 30));
    r.set("A_hat", estimate_to_string(&fitres.a_hat, 30));
    r.set("B_hat", estimate_to_string(&fitres.b_hat, 30));
    r.set("eps_hat", fitres.eps_hat.map(|e| format!("{e:.6}")));
    r.set("window_from", d.window.0);
    r.set("window_to", d.window.1);
    r.set("window_len", d.window_len);
    r.set("dropped_ratios", d.dropped_ratios);
    r.set("contiguous_length", d.contiguous_length);
    r.set("ratios_converging", d.ratios_converging);
    r.set("max_relative_residual", format!("{:.3e}", d.max_relative_residual));
    r.set("geometric", d.geometric);

    if pick_opt(a.common.poly.clone(), file, "poly")?.is_some() {
        let s = system(&a.common, file)?;
        let (_, gc) = growth::growth_constant(&s.poly, &s.x0, &growth_options(&s, 320)).map_err(growth_failure)?;
        let cc = seqfit::crosscheck_with_growth(&sample, &gc).map_err(seqfit_failure)?;
        let mut m = Map::new();
        m.insert("a_hat".into(), estimate_to_string(&cc.a_hat, 20).into());
        m.insert("b_hat".into(), estimate_to_string(&cc.b_hat, 20).into());
        m.insert("a_certified".into(), estimate_to_string(&cc.a_certified, 20).into());
        m.insert("b_certified".into(), estimate_to_string(&cc.b_certified, 20).into());
        m.insert("indices_used".into(), cc.rows.len().into());
        m.insert("max_relative_deviation".into(), format!("{:.3e}", cc.max_relative_deviation).into());
        m.insert("exact_agreement".into(), cc.exact_agreement.into());
        r.set("crosscheck", Value::Object(m));
    }

    let rows: Vec<Value> = fitres
        .residuals
        .iter()
        .map(|(n, res)| json!({"n": n, "residual": directed(&res.to_rational(), 6, false)}))
        .collect();
    r.set(TABLE, rows);
    let code = if d.geometric { EXIT_OK } else { EXIT_NON_GEOMETRIC };
    Ok(Finished { report: r, code })
}
