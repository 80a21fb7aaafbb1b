use std::path::Path;

use normsynth::{LabeledTraceSet, Trace};
use normsynth_cli::{dispatch, CommandOutcome};
use serde_json::Value;

const INSEPARABLE: &str = r#"{"propositions":["a","b"],"positive":[[{"a":false,"b":false},{"a":true,"b":false},{"a":false,"b":true}]],"negative":[[{"a":false,"b":false},{"a":false,"b":false},{"a":true,"b":false},{"a":false,"b":true}]]}"#;

fn run(args: &[&str]) -> CommandOutcome {
    dispatch(std::iter::once("normsynth").chain(args.iter().copied()))
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn json(out: &CommandOutcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn inseparable_example_has_no_solution() {
    let dir = tempfile::tempdir().unwrap();
    let traces = dir.path().join("insep.json");
    std::fs::write(&traces, INSEPARABLE).unwrap();
    for kind in ["prohibition", "obligation"] {
        for engine in ["sat", "brute"] {
            let out = run(&["synth", "--kind", kind, "--traces", p(&traces), "--engine", engine]);
            assert_eq!(out.code, 1);
            assert!(out.stdout.contains("NO SOLUTION"), "{}", out.stdout);
        }
        let out = run(&["oracle", "--kind", kind, "--traces", p(&traces)]);
        assert_eq!(out.code, 1);
    }
}

#[test]
fn gen3sat_family_counts() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("g.json");
    let out = run(&["gen3sat", "--vars", "3", "--clauses", "2", "--seed", "7", "--kind", "prohibition", "--out", p(&out_path)]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let gamma = LabeledTraceSet::load(&out_path).unwrap();
    assert_eq!((gamma.negative().len(), gamma.positive().len()), (4, 31));
    let cnf = std::fs::read_to_string(dir.path().join("g.cnf")).unwrap();
    assert!(cnf.contains("p cnf 3 2"));

    // reading the sidecar back regenerates the same file
    let again = dir.path().join("h.json");
    let out = run(&["gen3sat", "--input", p(&dir.path().join("g.cnf")), "--kind", "prohibition", "--out", p(&again)]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(std::fs::read(&out_path).unwrap(), std::fs::read(&again).unwrap());
}

fn split(gamma: &LabeledTraceSet, traces: &[Trace], positive: bool) -> LabeledTraceSet {
    let (p, n) = if positive { (traces.to_vec(), vec![]) } else { (vec![], traces.to_vec()) };
    LabeledTraceSet::new(gamma.vocab().clone(), p, n).unwrap()
}

#[test]
fn synthesized_norm_checks_against_its_traces() {
    let dir = tempfile::tempdir().unwrap();
    let traces = dir.path().join("g.json");
    let mut checked = 0;
    for (kind, seed) in [("prohibition", "1"), ("obligation", "2")] {
        let out = run(&["gen3sat", "--vars", "3", "--clauses", "3", "--seed", seed, "--kind", kind, "--out", p(&traces)]);
        assert_eq!(out.code, 0);
        let norm = dir.path().join("n.json");
        let out = run(&["--format", "json", "synth", "--kind", kind, "--traces", p(&traces), "--emit-norm", p(&norm)]);
        if out.code == 1 {
            continue;
        }
        assert_eq!(out.code, 0, "{}", out.stderr);
        let doc = json(&out);
        assert_eq!(doc["schema"], 1);
        assert_eq!(doc["verification"], "ok");

        let gamma = LabeledTraceSet::load(&traces).unwrap();
        for (positive, expected) in [(true, 0), (false, 1)] {
            let part = dir.path().join("part.json");
            split(&gamma, if positive { gamma.positive() } else { gamma.negative() }, positive).save(&part).unwrap();
            let out = run(&["--format", "json", "check", "--norm", p(&norm), "--traces", p(&part)]);
            assert_eq!(out.code, expected);
            for row in json(&out)["traces"].as_array().unwrap() {
                assert_eq!(row["verdict"], if positive { "obeyed" } else { "violated" });
            }
        }
        checked += 1;
    }
    assert!(checked > 0);
}

#[test]
fn revise_reports_distance_and_changes() {
    let dir = tempfile::tempdir().unwrap();
    let traces = dir.path().join("t.json");
    std::fs::write(
        &traces,
        r#"{"propositions":["a","b"],"positive":[[{"a":true,"b":false},{"a":false,"b":false}]],"negative":[[{"a":true,"b":false},{"a":false,"b":true}]]}"#,
    )
    .unwrap();
    let norm = dir.path().join("n.json");
    std::fs::write(&norm, r#"{"kind":"prohibition","condition":"a","target":"false","deadline":"false"}"#).unwrap();

    let out = run(&["--format", "json", "revise", "--norm", p(&norm), "--traces", p(&traces), "--minimize"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let doc = json(&out);
    assert_eq!(doc["distance"], 1);
    assert_eq!(doc["verification"], "ok");
    assert_eq!(doc["changes"]["target"]["added"], serde_json::json!([{"a": false, "b": true}]));

    let out = run(&["revise", "--norm", p(&norm), "--traces", p(&traces), "--max-dist", "0"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("NO SOLUTION"));

    let out = run(&["check", "--norm", p(&norm), "--traces", p(&traces)]);
    assert_eq!(out.code, 0);
}

#[test]
fn errors_map_to_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    assert_eq!(run(&["synth", "--kind", "prohibition", "--traces", p(&missing)]).code, 2);
    assert_eq!(run(&["synth", "--kind", "maybe", "--traces", "x"]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&["revise", "--norm", "a", "--traces", "b"]).code, 2);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"propositions":["a"],"positive":[],"negative":[[]]}"#).unwrap();
    let out = run(&["synth", "--kind", "obligation", "--traces", p(&bad)]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("empty trace at negative[0]"), "{}", out.stderr);

    let traces = dir.path().join("g.json");
    run(&["gen3sat", "--vars", "3", "--clauses", "4", "--kind", "prohibition", "--out", p(&traces)]);
    let out = run(&["synth", "--kind", "prohibition", "--traces", p(&traces), "--engine", "brute"]);
    assert_eq!(out.code, 3);
    let out = run(&["--format", "json", "oracle", "--kind", "prohibition", "--traces", p(&traces), "--cap", "3"]);
    assert_eq!(out.code, 3);
    assert_eq!(json(&out)["exit"], 3);

    let out = run(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("synth"));
}

#[test]
fn step_budget_is_a_resource_limit() {
    let dir = tempfile::tempdir().unwrap();
    let traces = dir.path().join("g.json");
    run(&["gen3sat", "--vars", "6", "--clauses", "30", "--seed", "3", "--kind", "prohibition", "--out", p(&traces)]);
    let out = run(&["synth", "--kind", "prohibition", "--traces", p(&traces), "--solver", "dpll", "--max-steps", "1"]);
    assert_eq!(out.code, 3, "{}", out.stdout);
}
