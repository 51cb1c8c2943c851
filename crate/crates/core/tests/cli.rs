use clap::Parser;

use tq_core::cli::{exit_code, run, run_cli, Cli, ReportSet, SCHEMA};
use tq_core::report::{Params, Report, Tag};
use tq_core::Error;

fn capture(args: &[&str]) -> (i32, String) {
    let cli = Cli::try_parse_from(std::iter::once("tq").chain(args.iter().copied())).unwrap();
    let mut out = Vec::new();
    let code = run_cli(&cli, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn without_timing(mut set: ReportSet) -> ReportSet {
    for r in &mut set.reports {
        r.elapsed_ms = 0;
    }
    set
}

#[test]
fn qsystem_suite_passes() {
    let (code, out) = capture(&["verify", "qsystem", "--r", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let set: ReportSet = serde_json::from_str(&out).unwrap();
    assert_eq!(set.schema, SCHEMA);
    assert!(!set.reports.is_empty());
    assert!(set.reports.iter().all(Report::passed));
}

#[test]
fn json_output_is_deterministic_and_round_trips() {
    let args = ["verify", "tsystem", "--r", "2", "--order", "4", "--seed", "7", "--format", "json"];
    let (c1, a) = capture(&args);
    let (c2, b) = capture(&args);
    assert_eq!((c1, c2), (0, 0));
    let sa: ReportSet = serde_json::from_str(&a).unwrap();
    let sb: ReportSet = serde_json::from_str(&b).unwrap();
    let back: ReportSet = serde_json::from_str(&serde_json::to_string(&sa).unwrap()).unwrap();
    assert_eq!(back, sa);
    assert_eq!(without_timing(sa.clone()), without_timing(sb));
    let names: Vec<_> = sa.reports.iter().map(|r| r.check_name.clone()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn text_lines_start_with_status() {
    let (code, out) = capture(&["verify", "qq", "--M", "2", "--N", "1"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
    assert!(lines.iter().all(|l| l.starts_with("PASS qq/")), "{out}");
}

#[test]
fn seeded_family_file_reloads() {
    let dir = std::env::temp_dir().join(format!("tq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("family.json");
    let path_s = path.to_str().unwrap();
    let (code, _) = capture(&["seed", "--r", "2", "--order", "3", "--seed", "5", "--out", path_s]);
    assert_eq!(code, 0);
    let (code, out) = capture(&["verify", "qq", "--family", path_s]);
    assert_eq!(code, 0, "{out}");
    std::fs::write(&path, "{\"schema\": 3}").unwrap();
    let (code, _) = capture(&["verify", "qq", "--family", path_s]);
    assert_eq!(code, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(["tq", "verify", "qq", "--bogus"]), 2);
    assert_eq!(run(["tq", "verify", "nothing"]), 2);
    assert_eq!(run(["tq", "verify", "qq", "--t-num", "1"]), 2);
    assert_eq!(run(["tq", "verify", "tsystem", "--M", "2", "--N", "1"]), 2);
}

#[test]
fn chars_table_is_json() {
    let (code, out) = capture(&["chars", "--r", "2", "--smax", "1", "--format", "json"]);
    assert_eq!(code, 0);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&out).unwrap();
    assert_eq!(rows.len(), 2 + 2 + 3);
    assert!(rows.iter().all(|r| r.get("z-sample").is_some() && r.get("value").is_some()));
}

#[test]
fn exit_policy_separates_proven_from_conjectures() {
    let fail = |tag| Report::from_exact("x", Params::new(), tag, || Ok(tq_core::exactring::rat(1, 1)));
    let err = Report::from_exact("y", Params::new(), Tag::Proven, || Err(Error::NotInvertible));
    let soft = vec![fail(Tag::Conjecture), fail(Tag::Expected)];
    assert_eq!(exit_code(&soft, false), 0);
    assert_eq!(exit_code(&soft, true), 1);
    assert_eq!(exit_code(&[fail(Tag::Proven)], false), 1);
    assert_eq!(exit_code(&[err], false), 1);
}
