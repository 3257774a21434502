use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use logcalc::files::{self, ReportData};
use logcalc_core::suites::{comb_suite, taylor_suite};

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn logcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logcalc")).args(args).output().expect("binary runs")
}

fn logcalc_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_logcalc"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn eval_prints_canonical_form() {
    let o = logcalc(&["eval", "2*x + lg(x)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "lg(x) + 2*x\n");
    let o = logcalc(&["eval", "x^(1/2)*lg(x)^2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["series"], "x^(1/2)*lg(x)^2");
    assert_eq!(v["terms"], 1);
}

#[test]
fn parse_errors_exit_two_with_position() {
    let o = logcalc(&["eval", "x^(1/7)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("1:3"), "{}", stderr(&o));
    let o = logcalc(&["eval", "x +* 2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_flags_are_rejected() {
    assert_eq!(logcalc(&["check", "comb", "--kmin", "3"]).status.code(), Some(2));
    assert_eq!(logcalc(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn odd_lattice_is_a_usage_error() {
    assert_eq!(logcalc(&["--lattice", "7", "eval", "x"]).status.code(), Some(2));
}

#[test]
fn diff_and_subst() {
    assert_eq!(stdout(&logcalc(&["diff", "x^2*lg(x)", "--times", "2"])), "3 + 2*lg(x)\n");
    assert_eq!(stdout(&logcalc(&["diff", "x^(1/2)", "--op", "x"])), "(1/2)*x^(1/2)\n");
    assert_eq!(stdout(&logcalc(&["subst", "x^2", "--kind", "shift", "--order", "3"])), "2*x*y + x^2 + y^2 + O(y^4)\n");
    assert_eq!(stdout(&logcalc(&["subst", "x^(1/2)", "--kind", "exp", "--zeta", "Pi"])), "(e(1/2))*x^(1/2)\n");
    assert_eq!(stdout(&logcalc(&["subst", "lg(x)", "--kind", "inverse"])), "-lg(x)\n");
}

#[test]
fn taylor_report_lists_check_ids() {
    let o = logcalc(&["check", "taylor", "--order", "6", "--samples", "50", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for id in ["ck1", "ck2"] {
        assert!(out.lines().any(|l| l.contains("PASS") && l.contains(id)), "{out}");
    }
}

#[test]
fn json_report_matches_library() {
    let o = logcalc(&["check", "comb", "--kmax", "10", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let got: ReportData = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(got, ReportData::from(&comb_suite(10)));
    let o = logcalc(&["check", "taylor", "--order", "4", "--samples", "5", "--seed", "3", "--format", "json"]);
    let got: ReportData = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(got, ReportData::from(&taylor_suite(5, 4, 3).unwrap()));
}

#[test]
fn omega_pipeline_returns_the_input() {
    let table = std::fs::read(data("jordan_table.json")).unwrap();
    let once = logcalc(&["derive", "omega", "--r", "0", &data("jordan_table.json")]);
    assert_eq!(once.status.code(), Some(0));
    let twice = logcalc_stdin(&["derive", "omega", "--r", "-1", "-"], &once.stdout);
    assert_eq!(twice.status.code(), Some(0), "{}", stderr(&twice));
    assert_eq!(twice.stdout, table);
}

#[test]
fn a_r_pipeline_returns_the_input() {
    let table = std::fs::read(data("jordan_table.json")).unwrap();
    let once = logcalc(&["derive", "ar", "--r", "1", &data("jordan_table.json")]);
    let twice = logcalc_stdin(&["derive", "ar", "--r", "-2", "-"], &once.stdout);
    assert_eq!(twice.stdout, table);
}

#[test]
fn xt_routes_agree() {
    let path = data("jordan_table.json");
    let direct = logcalc(&["derive", "xt", "--t", "1", &path]);
    for route in ["homs", "vandermonde"] {
        let other = logcalc(&["derive", "xt", "--t", "1", "--route", route, &path]);
        assert_eq!(other.stdout, direct.stdout, "{route}");
    }
}

#[test]
fn shift_takes_three_integers() {
    let path = data("jordan_table.json");
    assert_eq!(logcalc(&["derive", "shift", "--s", "1,-1,0", &path]).status.code(), Some(0));
    assert_eq!(logcalc(&["derive", "shift", "--s", "1,2", &path]).status.code(), Some(2));
}

#[test]
fn stored_table_passes_and_fails_by_axiom_set() {
    let path = data("jordan_table.json");
    assert_eq!(logcalc(&["check", "intertwiner", &path]).status.code(), Some(0));
    let dir = std::env::temp_dir().join("logcalc-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let gen =
        logcalc(&["solve", "fusion", "--modules", "@jordan:0:2", "@jordan:0:2", "@jordan:0:2", "--axioms", "l0", "--emit", "generic"]);
    let p = dir.join("generic.json");
    std::fs::write(&p, &gen.stdout).unwrap();
    let o = logcalc(&["check", "intertwiner", p.to_str().unwrap(), "--axioms", "full"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("FAIL") && out.contains("witness:"), "{out}");
}

#[test]
fn solve_reports_dimension() {
    let o = logcalc(&["solve", "fusion", "--modules", "@sl2:2", "@sl2:2", "@sl2:1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim"], 1);
    let with_vertex = logcalc(&[
        "solve",
        "fusion",
        "--modules",
        &data("jordan_half.json"),
        &data("trivial.json"),
        &data("jordan_half.json"),
        "--axioms",
        "l0",
        "--vertex",
        &data("nilpotent_vertex.json"),
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&with_vertex)).unwrap();
    assert_eq!(v["dim"], 1);
}

#[test]
fn rejected_module_names_relation() {
    let o = logcalc(&["check", "modules", &data("bad_bracket.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("[L(0),L(1)]=-L(1)"), "{}", stderr(&o));
}

#[test]
fn schema_errors_carry_a_pointer() {
    let text = std::fs::read_to_string(data("jordan_half.json")).unwrap().replace("\"1/2\",\n    \"1/2\"", "\"1/2\",\n    7");
    let err = files::parse_module(&text).unwrap_err().to_string();
    assert!(err.starts_with("/weights/1:"), "{err}");
    let o = logcalc_stdin(&["roundtrip", "-"], text.as_bytes());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn data_files_round_trip_byte_for_byte() {
    let names = ["jordan_half.json", "trivial.json", "jordan_table.json", "nilpotent_vertex.json"];
    let paths: Vec<String> = names.iter().map(|n| data(n)).collect();
    let mut args = vec!["roundtrip"];
    args.extend(paths.iter().map(String::as_str));
    let o = logcalc(&args);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn fuzz_via_cli() {
    let o = logcalc(&["roundtrip", "--fuzz", "300", "--seed", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
