use std::io::Write;
use std::process::Command;

use polygrowth_cli::{
    run_from_args, Outcome, EXIT_AMBIGUOUS, EXIT_BUDGET, EXIT_DIVERGENCE, EXIT_INPUT, EXIT_NON_GEOMETRIC, EXIT_OK,
    EXIT_VERIFY_FAILED,
};

fn run(args: &[&str]) -> Outcome {
    let mut all = vec!["polygrowth"];
    all.extend_from_slice(args);
    all.push("--no-timing");
    run_from_args(all)
}

fn field<'a>(out: &'a Outcome, key: &str) -> Option<&'a str> {
    let prefix = format!("{key}: ");
    out.stdout.lines().find_map(|l| l.strip_prefix(prefix.as_str()))
}

fn temp_file(name: &str, body: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("polygrowth-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::File::create(&path).unwrap().write_all(body.as_bytes()).unwrap();
    path
}

#[test]
fn iterate_prints_exact_terms() {
    let out = run(&["iterate", "--poly", "x^2+1", "--x0", "0", "--steps", "5"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.ends_with("# n value\n0 0\n1 1\n2 2\n3 5\n4 26\n5 677\n"), "{}", out.stdout);
}

#[test]
fn alpha_digits_for_beta_and_gamma() {
    let b = run(&["alpha", "--poly", "x^2+1", "--x0", "0", "--digits", "10"]);
    assert_eq!(b.code, EXIT_OK);
    assert_eq!(field(&b, "alpha"), Some("1.225902443"));
    let g = run(&["alpha", "--poly", "x^2-x+1", "--x0", "2", "--digits", "10"]);
    assert_eq!(field(&g, "alpha"), Some("1.597910218"));
}

#[test]
fn negative_start_is_not_taken_for_a_flag() {
    let out = run(&["iterate", "--poly", "x^2-3", "--x0", "-2", "--steps", "2"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.ends_with("0 -2\n1 1\n2 -2\n"));
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["verify", "--poly", "x^2+1", "--x0", "0", "--mode", "floor", "--from", "1", "--to", "8"], EXIT_OK),
        (&["verify", "--poly", "x^2+1", "--x0", "0", "--mode", "floor", "--from", "0", "--to", "8"], EXIT_VERIFY_FAILED),
        (&["alpha", "--poly", "x^2+", "--x0", "0"], EXIT_INPUT),
        (&["alpha", "--poly", "x", "--x0", "2"], EXIT_INPUT),
        (&["alpha", "--poly", "x^2", "--x0", "abc"], EXIT_INPUT),
        (&["verify", "--poly", "x^2+1", "--x0", "0", "--mode", "ceil"], EXIT_INPUT),
        (&["alpha", "--poly", "x^2+1", "--x0", "0", "--digits", "200", "--digit-budget", "20"], EXIT_BUDGET),
        (&["alpha", "--poly", "x^2-x", "--x0", "2"], EXIT_DIVERGENCE),
        (&["classify", "--poly", "x^2-2", "--x0", "1"], EXIT_DIVERGENCE),
        (
            &["verify", "--poly", "x^2+1", "--x0", "0", "--mode", "floor", "--from", "1", "--to", "12", "--max-bits", "40"],
            EXIT_AMBIGUOUS,
        ),
    ];
    for (args, code) in cases {
        let out = run(args);
        assert_eq!(out.code, *code, "{args:?}: {}{}", out.stdout, out.stderr);
        if *code == EXIT_OK || *code == EXIT_VERIFY_FAILED || *code == EXIT_AMBIGUOUS {
            assert!(out.stderr.is_empty());
        } else {
            assert!(out.stderr.starts_with("error: "), "{args:?}");
        }
    }
}

#[test]
fn unknown_subcommand_and_help() {
    assert_eq!(run_from_args(["polygrowth", "bogus"]).code, EXIT_INPUT);
    let help = run_from_args(["polygrowth", "--help"]);
    assert_eq!(help.code, EXIT_OK);
    assert!(help.stdout.contains("Exit codes"));
}

#[test]
fn parse_errors_point_at_the_column() {
    let out = run(&["iterate", "--poly", "x^2 + * 3", "--x0", "1"]);
    assert_eq!(out.code, EXIT_INPUT);
    let lines: Vec<&str> = out.stderr.lines().collect();
    let caret = lines.iter().position(|l| l.trim() == "^").expect("caret line");
    let src = lines[caret - 1];
    let col = lines[caret].find('^').unwrap();
    assert_eq!(&src[col..col + 1], "*");
}

#[test]
fn sylvester_round_mode() {
    let out = run(&["verify", "--poly", "x^2-x+1", "--x0", "2", "--mode", "round", "--from", "0", "--to", "10"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(field(&out, "verified"), Some("11"));
}

#[test]
fn auto_mode_is_reported() {
    // Sylvester's B = 1/2 already supplies the rounding half, so both modes
    // hold; negative residuals make auto settle on floor
    for (poly, x0) in [("x^2-x+1", "2"), ("x^2+1", "0")] {
        let out = run(&["verify", "--poly", poly, "--x0", x0, "--from", "1", "--to", "6"]);
        assert_eq!(out.code, EXIT_OK);
        assert_eq!(field(&out, "mode"), Some("floor"));
        assert_eq!(field(&out, "auto_selected"), Some("true"));
    }
    let floor = run(&["verify", "--poly", "x^2-x+1", "--x0", "2", "--mode", "floor", "--from", "0", "--to", "10"]);
    assert_eq!(floor.code, EXIT_OK);
    let round = run(&["verify", "--poly", "x^2+1", "--x0", "0", "--mode", "round", "--from", "1", "--to", "1"]);
    assert_eq!(round.code, EXIT_VERIFY_FAILED);
}

#[test]
fn classify_reports() {
    let b = run(&["classify", "--poly", "x^2+1", "--x0", "0"]);
    assert_eq!(b.code, EXIT_OK);
    assert_eq!(field(&b, "kind"), Some("irrational-by-theorem-1"));
    let sq = run(&["classify", "--poly", "x^2", "--x0", "2"]);
    assert_eq!(field(&sq, "kind"), Some("consistent-with-integer"));
    assert_eq!(field(&sq, "integer"), Some("2"));
    assert_eq!(field(&sq, "exact_integer"), Some("true"));
    let lucas = run(&[
        "classify", "--poly", "x^2-2", "--x0", "3", "--offset", "1", "--alg-degree", "2", "--alg-height", "2",
    ]);
    assert_eq!(lucas.code, EXIT_OK);
    assert_eq!(field(&lucas, "candidate_count"), Some("1"));
    assert!(field(&lucas, "candidate").unwrap().starts_with("x^2 - x - 1 "));
}

#[test]
fn json_and_text_carry_the_same_values() {
    let args = ["alpha", "--poly", "x^2+1", "--x0", "0", "--digits", "15"];
    let text = run(&args);
    let mut with_json = args.to_vec();
    with_json.extend(["--output", "json"]);
    let json = run(&with_json);
    let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    let obj = v.as_object().unwrap();
    let text_lines: Vec<&str> = text.stdout.lines().collect();
    assert_eq!(obj.len(), text_lines.len());
    for ((k, val), line) in obj.iter().zip(&text_lines) {
        let shown = match val {
            serde_json::Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        assert_eq!(*line, format!("{k}: {shown}"));
    }
}

#[test]
fn json_errors_carry_the_exit_code() {
    let out = run(&["alpha", "--poly", "x^2-x", "--x0", "2", "--output", "json"]);
    assert_eq!(out.code, EXIT_DIVERGENCE);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["exit_code"], EXIT_DIVERGENCE);
    assert!(v["error"].as_str().unwrap().contains("not certified divergent"));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let cfg = temp_file("run.cfg", "# beta\npoly = x^2+1\nx0 = 0\ndigits = 15\n");
    let cfg = cfg.to_str().unwrap();
    let from_file = run(&["alpha", "--config", cfg]);
    assert_eq!(from_file.code, EXIT_OK, "{}", from_file.stderr);
    assert_eq!(field(&from_file, "alpha"), Some("1.22590244352874"));
    let flagged = run(&["alpha", "--config", cfg, "--digits", "5"]);
    assert_eq!(field(&flagged, "alpha"), Some("1.2259"));
    let bad = temp_file("bad.cfg", "colour = red\n");
    assert_eq!(run(&["alpha", "--config", bad.to_str().unwrap()]).code, EXIT_INPUT);
    assert_eq!(run(&["alpha", "--x0", "0"]).code, EXIT_INPUT);
}

#[test]
fn fit_commands() {
    let geo: String = (0..30).map(|n| format!("{n} {}\n", 3u64 * (1u64 << n) + 5)).collect();
    let out = run(&["fit", "--bfile", temp_file("geo.txt", &geo).to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(field(&out, "alpha_hat").unwrap().starts_with("2.0000000000"));
    assert!(field(&out, "B_hat").unwrap().starts_with("5.0000000000"));

    let flat: String = (0..20).map(|n| format!("{n} 7\n")).collect();
    let out = run(&["fit", "--bfile", temp_file("flat.txt", &flat).to_str().unwrap()]);
    assert_eq!(out.code, EXIT_NON_GEOMETRIC);

    let (mut a, mut b) = (2u128, 1u128);
    let mut lucas = String::new();
    for n in 0..40 {
        lucas.push_str(&format!("{n} {a}\n"));
        (a, b) = (b, a + b);
    }
    let path = temp_file("lucas.txt", &lucas);
    let out = run(&["fit", "--bfile", path.to_str().unwrap()]);
    assert!(field(&out, "alpha_hat").unwrap().starts_with("1.6180339"));
    let missing = run(&["fit", "--bfile", "/nonexistent/b.txt"]);
    assert_eq!(missing.code, EXIT_INPUT);
}

#[test]
fn binary_output_is_deterministic() {
    let bin = env!("CARGO_BIN_EXE_polygrowth");
    let args = ["verify", "--poly", "x^2+1", "--x0", "0", "--from", "1", "--to", "9", "--no-timing"];
    let a = Command::new(bin).args(args).output().unwrap();
    let b = Command::new(bin).args(args).output().unwrap();
    assert_eq!(a.status.code(), Some(EXIT_OK));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, run(&args[..args.len() - 1]).stdout.into_bytes());
}
