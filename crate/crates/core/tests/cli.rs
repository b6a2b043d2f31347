use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn cubnf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubnf"))
        .args(args)
        .env_remove("CUBNF_FUEL")
        .output()
        .expect("run cubnf")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn corpus(rel: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(rel).display().to_string()
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn check_reports_ok_and_exits_zero() {
    let f = scratch("ok.cub", "(assert-cof (hyps (= i j) (= j 0)) (= i 0))\n(assert-eq-nf (ctx) S1 (loop 0) base)\n");
    let o = cubnf(&["check", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("2 ok, 0 with warnings, 0 errors"));
}

#[test]
fn refuted_assertion_exits_one() {
    let f = scratch("bad.cub", "(assert-cof (hyps) (or (= i 0) (= i 1)))\n");
    let o = cubnf(&["check", "--json", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["files"][0]["decls"][0]["kind"], "assertion-failed");
    assert_eq!(v["summary"]["errors"], 1);
}

#[test]
fn warnings_exit_two_and_fail_under_strict() {
    let f = corpus("positive/hcomp_stuck_opaque.cub");
    let o = cubnf(&["check", &f]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("side-condition-unknown"));
    let o = cubnf(&["check", "--strict", &f]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn fuel_comes_from_the_environment() {
    let f = corpus("positive/path_app_frontier.cub");
    let o = Command::new(env!("CARGO_BIN_EXE_cubnf"))
        .args(["check", &f])
        .env("CUBNF_FUEL", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    assert_eq!(cubnf(&["check", "--fuel", "0", &f]).status.code(), Some(2));
    assert_eq!(cubnf(&["check", &f]).status.code(), Some(0));
}

#[test]
fn missing_file_is_an_error() {
    let o = cubnf(&["check", "/nonexistent/file.cub"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("io-error"));
}

#[test]
fn cof_queries() {
    assert_eq!(stdout(&cubnf(&["cof", "forall", "i", "(= i 0)"])).trim(), "bot");
    assert_eq!(stdout(&cubnf(&["cof", "eq", "(= 0 1)", "bot"])).trim(), "true");
    assert_eq!(stdout(&cubnf(&["cof", "dnf", "top"])).trim(), "top");
    assert_eq!(stdout(&cubnf(&["cof", "entails", "(= i j)", "(= j 1)", "(= i 1)"])).trim(), "true");
    assert_eq!(
        stdout(&cubnf(&["cof", "dnf", "--json", "(or (= i 0) (= 0 1))"])).trim(),
        r#"{"result":["(= 0 i)"]}"#
    );
    let o = cubnf(&["cof", "eq", "(= i", "bot"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn subst_decays_to_the_backup() {
    let f = corpus("positive/path_loop.cub");
    assert_eq!(stdout(&cubnf(&["subst", &f, "loop-point", "i", "1"])).trim(), "base");
    let f = corpus("positive/path_app_frontier.cub");
    assert_eq!(stdout(&cubnf(&["subst", &f, "at-i", "i", "0"])).trim(), "true");
    let f = corpus("positive/bool_literals.cub");
    let o = cubnf(&["subst", &f, "missing", "i", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn eq_compares_named_forms() {
    let f = scratch(
        "eq.cub",
        "(nf a (ctx (dim i)) s1 (loop i))\n(nf b (ctx (dim i)) s1 (up s1 (star top) (split top (top (loop i)))))\n(nf c (ctx (dim i)) s1 base)\n",
    );
    let f = f.to_str().unwrap();
    assert_eq!(stdout(&cubnf(&["eq", f, "a", "b"])).trim(), "true");
    assert_eq!(stdout(&cubnf(&["eq", f, "a", "c"])).trim(), "false");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(cubnf(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(cubnf(&["--help"]).status.code(), Some(0));
}
