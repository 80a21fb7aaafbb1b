//! Human and JSON renderings shared by the subcommands.

use normsynth::sat::SolveStats;
use normsynth::synthesis::{Counterexample, EngineStats, Verification};
use normsynth::{Role, State, StateSetTriple, Universe, Verdict, Vocabulary};
use serde_json::{json, Map, Value};

pub const SCHEMA: u64 = 1;

/// `{a, c}`: the propositions true in the state.
pub fn state_human(state: &State, vocab: &Vocabulary) -> String {
    let trues: Vec<&str> = vocab
        .names()
        .iter()
        .zip(state.bits())
        .filter(|(_, &b)| b)
        .map(|(n, _)| n.as_str())
        .collect();
    format!("{{{}}}", trues.join(", "))
}

pub fn states_human<I: IntoIterator<Item = usize>>(indices: I, universe: &Universe, vocab: &Vocabulary) -> String {
    let parts: Vec<String> = indices
        .into_iter()
        .map(|i| state_human(universe.state(i), vocab))
        .collect();
    format!("[{}]", parts.join(", "))
}

pub fn states_json<I: IntoIterator<Item = usize>>(indices: I, universe: &Universe, vocab: &Vocabulary) -> Value {
    Value::Array(
        indices
            .into_iter()
            .map(|i| universe.state(i).to_json(vocab))
            .collect(),
    )
}

pub fn role_label(role: Role, triple: &StateSetTriple) -> String {
    match role {
        Role::Target => format!("target ({})", triple.kind.letter()),
        other => other.as_str().to_string(),
    }
}

pub fn triple_json(triple: &StateSetTriple, universe: &Universe, vocab: &Vocabulary) -> Value {
    let mut map = Map::new();
    map.insert("kind".into(), json!(triple.kind.as_str()));
    for role in Role::ALL {
        map.insert(role.as_str().into(), states_json(triple.get(role).iter(), universe, vocab));
    }
    Value::Object(map)
}

pub fn triple_human(triple: &StateSetTriple, universe: &Universe, vocab: &Vocabulary, out: &mut String) {
    for role in Role::ALL {
        out.push_str(&format!(
            "  {:<14} {}\n",
            format!("{}:", role_label(role, triple)),
            states_human(triple.get(role).iter(), universe, vocab)
        ));
    }
}

pub fn verdict_json(verdict: Verdict) -> Value {
    match verdict {
        Verdict::Violated(w) => json!({"verdict": "violated", "witness": {"i": w.i, "j": w.j}}),
        Verdict::Obeyed => json!({"verdict": "obeyed", "witness": null}),
    }
}

pub fn verification_json(v: &Verification) -> Value {
    match v {
        Verification::Ok => json!("ok"),
        Verification::Counterexample(cex) => counterexample_json(cex),
    }
}

pub fn counterexample_json(cex: &Counterexample) -> Value {
    json!({
        "label": cex.label.as_str(),
        "trace": cex.trace,
        "witness": cex.witness.map(|w| json!({"i": w.i, "j": w.j})),
    })
}

pub fn verification_human(v: &Verification) -> String {
    match v {
        Verification::Ok => "ok".into(),
        Verification::Counterexample(cex) => format!("FAILED: {cex}"),
    }
}

pub fn solve_stats_json(s: &SolveStats) -> Value {
    json!({
        "variables": s.variables,
        "clauses": s.clauses,
        "decisions": s.decisions,
        "propagations": s.propagations,
        "conflicts": s.conflicts,
        "learned": s.learned,
    })
}

pub fn solve_stats_human(s: &SolveStats) -> String {
    format!(
        "variables={} clauses={} decisions={} propagations={} conflicts={} learned={}",
        s.variables, s.clauses, s.decisions, s.propagations, s.conflicts, s.learned
    )
}

pub fn engine_stats_json(s: &EngineStats) -> Value {
    match s {
        EngineStats::Sat(stats) => solve_stats_json(stats),
        EngineStats::BruteForce { candidates } => json!({"candidates": candidates}),
    }
}

pub fn engine_stats_human(s: &EngineStats) -> String {
    match s {
        EngineStats::Sat(stats) => solve_stats_human(stats),
        EngineStats::BruteForce { candidates } => format!("candidates={candidates}"),
    }
}

/// Pretty JSON with a trailing newline.
pub fn render_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
