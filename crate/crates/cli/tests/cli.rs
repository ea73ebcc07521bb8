use std::fs;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn elkat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_elkat"))
        .args(args)
        .env_remove("ELKAT_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const FC: &str = "FrenchChef(Soyer)\nCrepe <= some contains . Flour\nCrepe & some contains . Sugar <= Dessert\n";
const BM: &str = "BrazilianSinger(Caetano)\nBossaNova <= BrazilianMusicStyle\nViolaBuriti <= some madeFrom . Buriti\n";

#[test]
fn entail_on_example_ontologies() {
    let dir = TempDir::new().unwrap();
    let fc = write(&dir, "fc.el", FC);
    let bm = write(&dir, "bm.el", BM);
    let cases = [
        (&fc, "Crepe <= Dessert", "NOT-ENTAILED"),
        (&fc, "Crepe & some contains . Sugar <= Dessert", "ENTAILED"),
        (&bm, "BossaNova <= BrazilianMusicStyle", "ENTAILED"),
    ];
    for (file, axiom, expected) in cases {
        let o = elkat(&["entail", file, "--axiom", axiom]);
        assert!(o.status.success());
        assert_eq!(stdout(&o).trim(), expected, "{axiom}");
    }
}

#[test]
fn unsat_reports_the_failing_check() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.elk", "K[1] (A <= B)\n!K[1] (A <= B)\n");
    let o = elkat(&["sat", "--mode", "conjunctive", &f]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("UNSAT"));
    let check: Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(check["condition"], 2);
    assert_eq!(check["sigma"], serde_json::json!(["1"]));
}

#[test]
fn sat_with_witness() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.elk", "K[1] (A <= B)\n!K[2] (A <= B)\nK[1] K[2] A(a)\n");
    for mode in ["conjunctive", "full"] {
        let o = elkat(&["sat", "--mode", mode, "--witness", "--json", &f]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["sat"], true);
        assert!(v["witness"]["worlds"].as_array().unwrap().len() >= 2);
    }
    let o = elkat(&["model", &f]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["point"].is_u64());
}

#[test]
fn brute_mode() {
    let dir = TempDir::new().unwrap();
    let sat = write(&dir, "s.elk", "K[1] A(a)\n!K[2] A(a)\n");
    let unsat = write(&dir, "u.elk", "K[1] A(a)\n!A(a)\n");
    assert_eq!(stdout(&elkat(&["sat", "--mode", "brute", &sat])).trim(), "SAT");
    assert_eq!(
        stdout(&elkat(&["sat", "--mode", "brute", &unsat])).trim(),
        "NO-MODEL-WITHIN-BOUNDS"
    );
    assert_eq!(elkat(&["sat", "--mode", "brute", "--max-domain", "9", &sat]).status.code(), Some(2));
}

#[test]
fn unprefixed_negated_conjunction_is_rejected() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.elk", "!((A <= B) && (B <= A))\n");
    let o = elkat(&["sat", "--mode", "conjunctive", &f]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("fragment"));
    let o = elkat(&["sat", "--mode", "full", &f]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "SAT");
}

#[test]
fn bad_input_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.elk", "K[1] (A <=\n");
    assert_eq!(elkat(&["sat", &f]).status.code(), Some(2));
    assert_eq!(elkat(&["sat", "/nonexistent/file.elk"]).status.code(), Some(2));
    assert_eq!(elkat(&["entail", &f, "--axiom", "A <= B"]).status.code(), Some(2));
    assert_eq!(elkat(&["frobnicate"]).status.code(), Some(2));
}

fn learn_config(dir: &TempDir, learner: &str, extra: &str) -> String {
    write(dir, "target.el", "ViolaBuriti <= some madeFrom . Buriti\nBuriti <= BrazilianTree\n");
    write(
        dir,
        &format!("{learner}.json"),
        &format!(r#"{{"backend": "el", "target_file": "target.el", "learner": "{learner}"{extra}}}"#),
    )
}

fn learn(config: &str, seed: Option<&str>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_elkat"));
    c.args(["learn", config]).env_remove("ELKAT_SEED");
    if let Some(s) = seed {
        c.env("ELKAT_SEED", s);
    }
    c.output().unwrap()
}

#[test]
fn learn_sessions() {
    let dir = TempDir::new().unwrap();
    for learner in ["alg3", "exact", "exact-wrapped", "epistemic-wrapped"] {
        let cfg = learn_config(&dir, learner, "");
        let o = learn(&cfg, None);
        assert!(o.status.success(), "{learner}: {}", String::from_utf8_lossy(&o.stderr));
        let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(r["equivalent"], true, "{learner}");
        assert_eq!(r["sound"], true, "{learner}");
        assert_eq!(r["finished"], true, "{learner}");
    }
}

#[test]
fn learn_budget_exhaustion_fails() {
    let dir = TempDir::new().unwrap();
    let cfg = learn_config(&dir, "alg3", r#", "budget": 0"#);
    let o = learn(&cfg, None);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn learn_rejects_unknown_fields() {
    let dir = TempDir::new().unwrap();
    let cfg = learn_config(&dir, "alg3", r#", "colour": "blue""#);
    assert_eq!(learn(&cfg, None).status.code(), Some(2));
}

#[test]
fn seed_override_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let cfg = learn_config(&dir, "alg3", r#", "oracle_strategy": "adversarial""#);
    let a = learn(&cfg, Some("17"));
    let b = learn(&cfg, Some("17"));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let r: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(r["seed"], 17);
    assert_eq!(learn(&cfg, Some("seventeen")).status.code(), Some(2));
}

#[test]
fn thm2_counts() {
    for n in 1..=4usize {
        let o = elkat(&["experiment", "thm2", "--n", &n.to_string()]);
        assert!(o.status.success());
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert!(v["ex_queries"].as_u64().unwrap() >= 1 << n);
        assert_eq!(v["eq_queries"], 1);
    }
    assert_eq!(elkat(&["experiment", "thm2", "--n", "0"]).status.code(), Some(2));
}

#[test]
fn prop_target_needs_an_exact_style_learner() {
    let dir = TempDir::new().unwrap();
    write(&dir, "t.prop", "p -> q\nq & r -> s\n");
    let ok = write(&dir, "ok.json", r#"{"backend": "prop", "target_file": "t.prop", "learner": "exact-wrapped"}"#);
    let bad = write(&dir, "bad.json", r#"{"backend": "prop", "target_file": "t.prop", "learner": "alg3"}"#);
    let o = learn(&ok, None);
    assert!(o.status.success());
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["equivalent"], true);
    assert_eq!(learn(&bad, None).status.code(), Some(2));
}
