use std::fs;
use std::path::Path;
use std::process::Command;

use qappell::formats::{parse_report_json, parse_table_json, table_json, FamilyRecord};
use qappell_core::verify::witness_residual;
use qappell_core::{AppellFamily, FamilyKind, QContext, Rational};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn qappell(args: &[&str]) -> Run {
    qappell_in(args, None)
}

fn qappell_in(args: &[&str], out_dir: Option<&Path>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qappell"));
    cmd.args(args).env_remove(qappell::OUT_DIR_ENV);
    if let Some(dir) = out_dir {
        cmd.env(qappell::OUT_DIR_ENV, dir);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn bernoulli_degree_one_rows() {
    let r = qappell(&["table", "--family", "bernoulli", "--q", "1/2", "--degree", "1"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stdout, "# family=bernoulli q=1/2\n1\nx + y - 2/3\n");
}

#[test]
fn degree_zero_is_one_constant_row() {
    let r = qappell(&["table", "--family", "euler", "--q", "3/2", "--degree", "0"]);
    assert_eq!(r.stdout, "# family=euler q=3/2\n1\n");
}

#[test]
fn custom_family_from_aq_file() {
    let dir = tempfile::tempdir().unwrap();
    let aq = dir.path().join("aq.json");
    fs::write(&aq, r#"["1", "0", "0"]"#).unwrap();
    let r = qappell(&["table", "--family", "custom", "--aq", path_str(&aq), "--q", "1/2", "--degree", "2"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stdout, "# family=custom q=1/2\n1\nx + y\nx^2 + 3/2*x*y + 1/2*y^2\n");
}

#[test]
fn number_sequences() {
    let r = qappell(&["numbers", "--family", "genocchi", "--q", "2/3", "--degree", "3"]);
    let rows: Vec<&str> = r.stdout.lines().skip(1).collect();
    assert_eq!(&rows[..2], ["0", "1"]);

    let r = qappell(&["numbers", "--family", "euler", "--q", "1", "--degree", "3", "--format", "csv"]);
    assert_eq!(r.stdout, "family,q,n,value\neuler,1,0,1\neuler,1,1,-1/2\neuler,1,2,0\neuler,1,3,1/4\n");

    let r = qappell(&["numbers", "--family", "bernoulli", "--q", "1/2", "--degree", "0"]);
    assert_eq!(r.stdout, "# family=bernoulli q=1/2\n1\n");
}

#[test]
fn usage_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["verify", "--q", "-1"],
        &["verify", "--q", "0"],
        &["verify", "--q", "1/0"],
        &["table", "--q", "one"],
        &["table", "--format", "pdf"],
        &["table", "--family", "hermite"],
        &["numbers", "--family", "custom"],
        &["verify", "--degree", "1"],
        &["export", "report", "--format", "latex"],
        &["frobnicate"],
    ];
    for args in cases {
        let r = qappell(args);
        assert_eq!(r.code, 2, "{args:?}: {}", r.stderr);
    }
}

#[test]
fn unreadable_and_unwritable_paths_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    let r = qappell(&["verify", "--table", path_str(&missing)]);
    assert_eq!(r.code, 1);

    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let target = blocker.join("sub").join("table.json");
    let r = qappell(&["export", "table", "--family", "euler", "--q", "1/2", "--degree", "2", "--out", path_str(&target)]);
    assert_eq!(r.code, 1, "{}", r.stderr);
}

#[test]
fn malformed_table_file_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    fs::write(&path, "{ not json").unwrap();
    assert_eq!(qappell(&["verify", "--table", path_str(&path)]).code, 2);
}

#[test]
fn core_suite_exits_zero() {
    let r = qappell(&["verify", "--suite", "core", "--family", "all", "--q", "1/2,2/3,3/2", "--degree", "12"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let report = parse_report_json(&r.stdout).unwrap();
    assert!(report.all_hard_passed());
    assert_eq!(report.config.families, ["bernoulli", "euler", "genocchi"]);
}

#[test]
fn theorems_report_has_findings_but_exit_reflects_hard_checks() {
    let r = qappell(&["verify", "--suite", "theorems", "--variants", "on", "--family", "euler", "--q", "1/2,3/2", "--degree", "6"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let report = parse_report_json(&r.stdout).unwrap();
    assert!(report.results.iter().any(|c| c.name == "recurrence" && !c.passed));
    assert!(report.results.iter().any(|c| c.name == "lemmas" && c.matrix.is_some()));
}

#[test]
fn empty_family_list_is_an_empty_passing_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.json");
    fs::write(&path, "[]").unwrap();
    let r = qappell(&["verify", "--table", path_str(&path)]);
    assert_eq!(r.code, 0);
    assert!(parse_report_json(&r.stdout).unwrap().results.is_empty());
}

#[test]
fn report_goes_to_env_directory() {
    let dir = tempfile::tempdir().unwrap();
    let r = qappell_in(&["verify", "--suite", "core", "--family", "euler", "--q", "1/2", "--degree", "4"], Some(dir.path()));
    assert_eq!(r.code, 0);
    assert!(r.stdout.is_empty());
    let report = parse_report_json(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert!(report.all_hard_passed());
}

#[test]
fn export_defaults_to_env_directory() {
    let dir = tempfile::tempdir().unwrap();
    let r = qappell_in(&["export", "numbers", "--family", "genocchi", "--q", "2", "--degree", "3", "--format", "csv"], Some(dir.path()));
    assert_eq!(r.code, 0, "{}", r.stderr);
    let text = fs::read_to_string(dir.path().join("numbers.csv")).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.lines().skip(1).all(|l| l.starts_with("genocchi,2,")));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    for (what, format) in [("table", "json"), ("numbers", "latex"), ("report", "json"), ("report", "csv")] {
        let a = dir.path().join(format!("a-{what}.{format}"));
        let b = dir.path().join(format!("b-{what}.{format}"));
        for out in [&a, &b] {
            let r = qappell(&[
                "export", what, "--family", "all", "--q", "1/2,1", "--degree", "5", "--suite", "all", "--variants", "on",
                "--format", format, "--out", path_str(out),
            ]);
            assert_eq!(r.code, 0, "{}", r.stderr);
        }
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap(), "{what} {format}");
    }
}

#[test]
fn exported_table_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.json");
    let r = qappell(&["export", "table", "--family", "all", "--q", "2/3,1", "--degree", "6", "--out", path_str(&path)]);
    assert_eq!(r.code, 0);
    let text = fs::read_to_string(&path).unwrap();
    let fams = parse_table_json(&text).unwrap();
    let mut expected = Vec::new();
    for kind in FamilyKind::NAMED {
        for q in [Rational::new(2, 3), Rational::one()] {
            expected.push(AppellFamily::named(kind, &QContext::new(q).unwrap(), 6).unwrap());
        }
    }
    assert_eq!(fams, expected);
    assert_eq!(table_json(&fams), text);

    let r = qappell(&["verify", "--table", path_str(&path), "--suite", "core"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
}

#[test]
fn report_json_round_trips() {
    let r = qappell(&["verify", "--family", "genocchi", "--q", "1/2,1", "--degree", "5", "--variants", "on"]);
    let report = parse_report_json(&r.stdout).unwrap();
    assert_eq!(qappell::formats::report_json(&report), r.stdout);
}

#[test]
fn tampered_table_fails_with_reproducible_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.json");
    let ctx = QContext::new(Rational::new(3, 2)).unwrap();
    let fam = AppellFamily::named(FamilyKind::Bernoulli, &ctx, 8).unwrap();
    let mut record = FamilyRecord::from_family(&fam);
    let bumped = &record.polys[5].coeff(2, 1) + &Rational::new(1, 7);
    record.polys[5] = record.polys[5].add(&qappell_core::Poly2::monomial(2, 1, Rational::new(1, 7)));
    assert_eq!(record.polys[5].coeff(2, 1), bumped);
    fs::write(&path, serde_json::to_string(&[record]).unwrap()).unwrap();

    let r = qappell(&["verify", "--table", path_str(&path), "--suite", "core"]);
    assert_eq!(r.code, 1, "{}", r.stderr);
    assert!(r.stderr.contains("FAIL lowering bernoulli q=3/2"));

    let report = parse_report_json(&r.stdout).unwrap();
    let tampered = parse_table_json(&fs::read_to_string(&path).unwrap()).unwrap().remove(0);
    let mut witnessed = 0;
    for res in report.hard_failures() {
        let w = res.first_failure.as_ref().expect("failed checks carry a witness");
        let again = witness_residual(&tampered, w, res.variant.as_ref()).unwrap();
        assert!(!again.is_zero());
        assert_eq!(&again, &w.residual);
        witnessed += 1;
    }
    assert!(witnessed >= 2);

    // the same command is deterministic, witness included
    assert_eq!(qappell(&["verify", "--table", path_str(&path), "--suite", "core"]).stdout, r.stdout);
}

#[test]
fn latex_table_matches_golden_file() {
    let r = qappell(&["table", "--family", "bernoulli", "--q", "1/2", "--degree", "2", "--format", "latex"]);
    let golden = include_str!("golden/bernoulli_half_degree2.tex");
    assert_eq!(r.stdout, golden);
    assert_eq!(r.stdout.matches("\\begin{tabular}").count(), 1);
    assert_eq!(r.stdout.matches("\\end{tabular}").count(), 1);
}
