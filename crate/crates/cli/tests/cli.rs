use std::process::{Command, Output};

fn ansatz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ansatz"))
        .args(args)
        .env_remove("ANSATZ_PRECISION_EXP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn even_constants_show_pi_multiple() {
    let o = ansatz(&["constants", "--case", "even", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("alpha0/alpha1 = 32*pi"), "{}", stdout(&o));
}

#[test]
fn odd_constants_are_graded() {
    let o = ansatz(&["constants", "--case", "odd", "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(1216/21)*(2pi)^2"), "{}", stdout(&o));
}

#[test]
fn general_constraint_is_enclosed() {
    let o = ansatz(&["constants", "--case", "general", "--k", "1", "--m1", "0", "--m2", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let line = out.lines().find(|l| l.starts_with("alpha0/alpha1")).expect("constraint line");
    assert!(line.contains("in [2.603686921806994448514509110"), "{line}");
}

#[test]
fn solvable_profile_is_printed() {
    let o = ansatz(&["solve", "--case", "even", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("verdict: Solvable"));
    assert!(out.contains("phi tau-coeffs: [0, 1, -1/2]"), "{out}");
}

#[test]
fn certified_no_solution_exits_two() {
    let o = ansatz(&["solve", "--case", "general", "--k", "5", "--m1", "0", "--m2", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("NoSolution"));
    assert!(stderr(&o).contains("witness"));
}

#[test]
fn invalid_scenario_exits_one() {
    assert_eq!(ansatz(&["solve", "--case", "even", "--k", "3"]).status.code(), Some(1));
    assert_eq!(ansatz(&["solve", "--case", "even"]).status.code(), Some(1));
    assert_eq!(ansatz(&["solve", "--case", "even", "--k", "2", "--alpha1", "-1/2"]).status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(ansatz(&["solve", "--bogus"]).status.code(), Some(1));
    assert_eq!(ansatz(&[]).status.code(), Some(1));
    assert_eq!(ansatz(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_named_checks() {
    let o = ansatz(&["verify", "R-table", "volume-constants"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[0].starts_with("PASS R-table ("));
    assert!(lines[1].starts_with("PASS volume-constants ("));
    assert!(lines[0].contains(" s"));
    assert_eq!(ansatz(&["verify", "no-such-check"]).status.code(), Some(1));
}

#[test]
fn verify_all_in_suite_order() {
    let o = ansatz(&["verify", "--all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    let ids: Vec<&str> = out.lines().filter_map(|l| l.strip_prefix("PASS ")).map(|l| l.split(' ').next().unwrap()).collect();
    assert_eq!(ids, ansatz_core::verify::CHECK_IDS);
    assert!(out.contains("12 of 12 checks passed"));
}

#[test]
fn plot_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for p in [&a, &b] {
        let o = ansatz(&["plot", "--case", "even", "--k", "2", "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
    let a = std::fs::read(a).unwrap();
    assert_eq!(a, std::fs::read(b).unwrap());
    let svg = String::from_utf8(a).unwrap();
    assert!(svg.contains(r#"viewBox="0 0 800 500""#));
    assert!(svg.contains(">phi<"));
}

#[test]
fn plot_with_s() {
    let o = ansatz(&["plot", "--case", "odd", "--k", "3", "--with-s"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("<path").count(), 3);
}

#[test]
fn plot_without_solution_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("none.svg");
    let o = ansatz(&["plot", "--case", "even", "--k", "6", "--out", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("witness: Q changes sign"));
    assert!(!p.exists());
}

#[test]
fn csv_has_header_and_grid() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("rows.csv");
    let o = ansatz(&["solve", "--case", "even", "--k", "2", "--csv", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let mut r = csv::Reader::from_path(&p).unwrap();
    let header: Vec<String> = r.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, ["tau", "phi", "s", "F", "f", "rho", "rho_rel_dev"]);
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 512);
    for row in &rows {
        let dev: f64 = row[6].parse().unwrap();
        assert!(dev.abs() < 1e-8);
    }
}

#[test]
fn json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for case in [["--case", "general", "--k", "3"], ["--case", "odd", "--k", "5"]] {
        let first = ansatz(&[&["constants", "--json"][..], &case].concat());
        assert_eq!(first.status.code(), Some(0));
        let path = dir.path().join("scenario.json");
        std::fs::write(&path, &first.stdout).unwrap();
        let again = ansatz(&["constants", "--json", "--scenario", path.to_str().unwrap()]);
        assert_eq!(again.status.code(), Some(0), "{}", stderr(&again));
        assert_eq!(first.stdout, again.stdout);
    }
}

#[test]
fn export_embeds_report() {
    let o = ansatz(&["export", "--case", "general", "--k", "2", "--alpha1", "3/2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["scenario"]["alpha1"], "3/2");
    assert_eq!(v["report"]["verdict"], "solvable");
    assert!(v["alpha0_over_alpha1"]["enclosure"]["lo"].is_string());
}

#[test]
fn precision_from_env_and_flag() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_ansatz"));
        c.args(["constants", "--case", "even", "--k", "2"]).args(extra);
        match env {
            Some(v) => c.env("ANSATZ_PRECISION_EXP", v),
            None => c.env_remove("ANSATZ_PRECISION_EXP"),
        };
        let out = String::from_utf8(c.output().unwrap().stdout).unwrap();
        let line = out.lines().find(|l| l.starts_with("alpha0/alpha1")).unwrap().to_string();
        let lo = line.split('[').nth(1).unwrap().split(',').next().unwrap().to_string();
        lo.split('.').nth(1).unwrap().len()
    };
    assert_eq!(run(None, &[]), 30);
    assert_eq!(run(Some("12"), &[]), 12);
    assert_eq!(run(Some("12"), &["--precision-exp", "20"]), 20);
}

#[test]
fn sweep_is_sorted() {
    let o = ansatz(&["sweep", "--case", "even", "--k-min", "1", "--k-max", "8", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let ks: Vec<u64> = v.as_array().unwrap().iter().map(|r| r["k"].as_u64().unwrap()).collect();
    assert_eq!(ks, [2, 4, 6, 8]);
    let verdicts: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["verdict"].as_str().unwrap()).collect();
    assert_eq!(verdicts, ["solvable", "solvable", "no_solution", "no_solution"]);
}
