use std::process::{Command, Output};

use serde_json::Value;
use wild11::surface::ModelKind;
use wild11_cli::report::Report;
use wild11_cli::{
    cmd_analyze, cmd_count, cmd_cover, cmd_fibers, cmd_lattice, cmd_table, prime_power, render,
    CliError, Format, EXIT_CAPABILITY, EXIT_USAGE,
};

fn wild11(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wild11"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_generic_member() {
    let r = cmd_analyze(ModelKind::Epsilon, 1, 11, false).unwrap();
    let a = r.analysis.as_ref().unwrap();
    assert_eq!(a.picard_upper, 2);
    assert_eq!(a.height, "10");
    assert!(a.checks.values().all(|v| v.unwrap_or(true)));
    assert_eq!(r.charpoly.as_ref().unwrap().mu_tilde[10], "23/11");
}

#[test]
fn analyze_supersingular_member() {
    let r = cmd_analyze(ModelKind::Epsilon, 0, 11, false).unwrap();
    let a = r.analysis.unwrap();
    assert_eq!(a.picard_upper, 22);
    assert_eq!(a.height, "inf");
}

#[test]
fn analyze_gamma_nonsquare() {
    let r = cmd_analyze(ModelKind::Gamma, 2, 11, false).unwrap();
    let mt = r.charpoly.unwrap().mu_tilde;
    assert_eq!(
        &mt[..11],
        ["1", "0", "-5", "0", "12", "0", "-18", "0", "20", "0", "-219/11"]
    );
}

#[test]
fn analyze_rejects_bad_inputs() {
    let uniform = cmd_analyze(ModelKind::Uniform, 0, 11, false).unwrap_err();
    assert_eq!(uniform.exit_code(), EXIT_USAGE);
    let big = cmd_analyze(ModelKind::Epsilon, 11, 11, false).unwrap_err();
    assert_eq!(big.exit_code(), EXIT_USAGE);
    let other_p = cmd_analyze(ModelKind::Epsilon, 1, 7, false).unwrap_err();
    assert_eq!(other_p.exit_code(), EXIT_CAPABILITY);
}

#[test]
fn table_has_four_rows() {
    let t = cmd_table(11, false).unwrap();
    assert_eq!(t.distinct_polynomials, 4);
    assert_eq!(t.rows.len(), 4);
    assert_eq!(t.rows[0].members, vec![1, 3, 4, 5, 9]);
    assert_eq!(t.rows[1].members, vec![2, 6, 7, 8, 10]);
    let text = render::render(&t, Format::Text).unwrap();
    assert!(text.contains("23/11"));
    assert!(text.contains("-219/11"));
    assert!(text.contains("-307/11"));
}

#[test]
fn fibers_and_lattice_of_uniform_model() {
    let r = cmd_fibers(ModelKind::Uniform, 0, 11).unwrap();
    let fibers = r.fibers.unwrap();
    let i11: Vec<&str> = fibers
        .iter()
        .filter(|f| f.kind == "I11")
        .map(|f| f.location.as_str())
        .collect();
    assert_eq!(i11, ["t=0", "t=7"]);
    let l = cmd_lattice(ModelKind::Uniform, 0, 11)
        .unwrap()
        .lattice
        .unwrap();
    assert_eq!((l.rank, l.abs_disc, l.artin_invariant), (22, 121, Some(1)));
    let l7 = cmd_lattice(ModelKind::Uniform, 0, 7)
        .unwrap()
        .lattice
        .unwrap();
    assert_eq!((l7.rank, l7.artin_invariant), (12, None));
}

#[test]
fn wild_characteristic_reports_discriminant() {
    let r = cmd_fibers(ModelKind::Uniform, 0, 3).unwrap();
    let w = r.wild.unwrap();
    assert_eq!((w.affine_degree, w.v_infinity, w.wild_index), (11, 13, 11));
    assert!(r.fibers.is_none());
    assert_eq!(
        cmd_lattice(ModelKind::Uniform, 0, 3)
            .unwrap_err()
            .exit_code(),
        EXIT_CAPABILITY
    );
}

#[test]
fn cover_and_count() {
    let c = cmd_cover().unwrap();
    assert!(c.verified);
    assert_eq!(c.cofactor, "u^33 v^22");
    assert!(c.reductions.values().all(|&b| b));
    assert_eq!(cmd_count(ModelKind::Gamma, 1, 11).unwrap().count, 144);
    let reducible = cmd_count(ModelKind::Uniform, 0, 11).unwrap_err();
    assert_eq!(reducible.exit_code(), EXIT_CAPABILITY);
    assert!(matches!(
        cmd_count(ModelKind::Gamma, 1, 12),
        Err(CliError::Usage(_))
    ));
}

#[test]
fn prime_powers() {
    assert_eq!(prime_power(1331).unwrap(), (11, 3));
    assert_eq!(prime_power(2).unwrap(), (2, 1));
    assert!(prime_power(1).is_err());
    assert!(prime_power(36).is_err());
}

#[test]
fn json_is_deterministic_and_round_trips() {
    let a = wild11(&["analyze", "--kind", "gamma", "--param", "3"]);
    let b = wild11(&["analyze", "--kind", "gamma", "--param", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let report: Report = serde_json::from_slice(&a.stdout).unwrap();
    let again = render::render(&report, Format::Json).unwrap();
    assert_eq!(again, stdout(&a));
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(
        keys,
        [
            "analysis",
            "charpoly",
            "eigentraces",
            "inputs",
            "meta",
            "tally",
            "traces"
        ]
    );
}

#[test]
fn formats_share_one_report() {
    let csv = stdout(&wild11(&[
        "count", "--kind", "gamma", "--param", "1", "--q", "11", "--format", "csv",
    ]));
    assert!(csv.starts_with("key,value\n"));
    assert!(csv.contains("count,144\n"));
    let text = stdout(&wild11(&["cover-check", "--format", "text"]));
    assert!(text.contains("verified: true"));
    assert!(text.contains("cofactor: u^33 v^22"));
}

#[test]
fn exit_codes() {
    assert_eq!(
        wild11(&["analyze", "--kind", "delta"]).status.code(),
        Some(EXIT_USAGE)
    );
    assert_eq!(
        wild11(&["count", "--kind", "uniform", "--q", "11"])
            .status
            .code(),
        Some(EXIT_CAPABILITY)
    );
    assert_eq!(
        wild11(&["fibers", "--kind", "epsilon", "--p", "9"])
            .status
            .code(),
        Some(EXIT_USAGE)
    );
}

#[test]
fn out_file_and_threads() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fibers.json");
    let o = Command::new(env!("CARGO_BIN_EXE_wild11"))
        .args(["fibers", "--kind", "uniform", "--p", "7", "--out"])
        .arg(&path)
        .env("WILD11_THREADS", "2")
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    // infinity, t=0, one rational node and one closed point of degree 10
    assert_eq!(v["fibers"].as_array().unwrap().len(), 4);

    let bad = Command::new(env!("CARGO_BIN_EXE_wild11"))
        .args(["cover-check"])
        .env("WILD11_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
}

#[test]
fn timing_is_opt_in() {
    let plain = cmd_analyze(ModelKind::Epsilon, 1, 11, false).unwrap();
    assert!(plain.meta.timing_ms.is_none());
    let timed = cmd_analyze(ModelKind::Epsilon, 1, 11, true).unwrap();
    assert!(timed.meta.timing_ms.unwrap().contains_key("equivariant"));
}
