//! States, traces, labeled trace sets and the trace file format.

use std::collections::HashMap;
use std::fmt;
use std::io::{Read, Write};
use std::path::Path;

use serde_json::{Map, Value};
use thiserror::Error;

use crate::prop::{Vocabulary, VocabularyError};

/// A total assignment of truth values to the propositions of a vocabulary,
/// stored in vocabulary order. The bit vector doubles as the canonical key.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    bits: Vec<bool>,
}

impl State {
    pub fn new(bits: Vec<bool>) -> Self {
        State { bits }
    }

    pub fn width(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, atom: usize) -> bool {
        self.bits[atom]
    }

    /// JSON object form, keys in vocabulary order.
    pub fn to_json(&self, vocab: &Vocabulary) -> Value {
        let mut map = Map::new();
        for (name, &bit) in vocab.names().iter().zip(&self.bits) {
            map.insert(name.clone(), Value::Bool(bit));
        }
        Value::Object(map)
    }
}

impl fmt::Debug for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: String = self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
        write!(f, "State({bits})")
    }
}

/// A non-empty finite sequence of states.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Trace(Vec<State>);

impl Trace {
    /// Returns `None` for an empty sequence.
    pub fn new(states: Vec<State>) -> Option<Self> {
        if states.is_empty() {
            None
        } else {
            Some(Trace(states))
        }
    }

    pub fn states(&self) -> &[State] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Positive,
    Negative,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::Positive => "positive",
            Label::Negative => "negative",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed trace document: {0}")]
    Malformed(String),
    #[error(transparent)]
    Vocabulary(#[from] VocabularyError),
    #[error("empty trace at {label}[{trace}]")]
    EmptyTrace { label: Label, trace: usize },
    #[error("{label}[{trace}] state {state}: unknown proposition {prop:?}")]
    UnknownProposition {
        label: Label,
        trace: usize,
        state: usize,
        prop: String,
    },
    #[error("{label}[{trace}] state {state}: missing proposition {prop:?}")]
    MissingProposition {
        label: Label,
        trace: usize,
        state: usize,
        prop: String,
    },
    #[error("{label}[{trace}] state {state}: expected {expected} propositions, found {found}")]
    WidthMismatch {
        label: Label,
        trace: usize,
        state: usize,
        expected: usize,
        found: usize,
    },
}

/// Γ = Γ_T ⊎ Γ_F over a shared vocabulary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledTraceSet {
    vocab: Vocabulary,
    positive: Vec<Trace>,
    negative: Vec<Trace>,
}

impl LabeledTraceSet {
    pub fn new(vocab: Vocabulary, positive: Vec<Trace>, negative: Vec<Trace>) -> Result<Self, TraceError> {
        for (label, traces) in [(Label::Positive, &positive), (Label::Negative, &negative)] {
            for (t, trace) in traces.iter().enumerate() {
                for (s, state) in trace.states().iter().enumerate() {
                    if state.width() != vocab.len() {
                        return Err(TraceError::WidthMismatch {
                            label,
                            trace: t,
                            state: s,
                            expected: vocab.len(),
                            found: state.width(),
                        });
                    }
                }
            }
        }
        Ok(LabeledTraceSet {
            vocab,
            positive,
            negative,
        })
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn positive(&self) -> &[Trace] {
        &self.positive
    }

    pub fn negative(&self) -> &[Trace] {
        &self.negative
    }

    pub fn traces(&self, label: Label) -> &[Trace] {
        match label {
            Label::Positive => &self.positive,
            Label::Negative => &self.negative,
        }
    }

    /// All traces with their labels, positives first.
    pub fn labeled(&self) -> impl Iterator<Item = (Label, usize, &Trace)> {
        let pos = self.positive.iter().enumerate().map(|(i, t)| (Label::Positive, i, t));
        let neg = self.negative.iter().enumerate().map(|(i, t)| (Label::Negative, i, t));
        pos.chain(neg)
    }

    pub fn total_length(&self) -> usize {
        self.positive.iter().chain(&self.negative).map(Trace::len).sum()
    }

    /// S(Γ) in first-occurrence order.
    pub fn universe(&self) -> Universe {
        let mut universe = Universe::default();
        for trace in self.positive.iter().chain(&self.negative) {
            for state in trace.states() {
                universe.insert(state);
            }
        }
        universe
    }

    /// Parses the JSON trace file format.
    pub fn from_json_str(text: &str) -> Result<Self, TraceError> {
        let doc: Value = serde_json::from_str(text)?;
        Self::from_json(&doc)
    }

    pub fn from_json(doc: &Value) -> Result<Self, TraceError> {
        let obj = doc
            .as_object()
            .ok_or_else(|| TraceError::Malformed("top level must be an object".into()))?;
        for key in obj.keys() {
            if !matches!(key.as_str(), "propositions" | "positive" | "negative") {
                return Err(TraceError::Malformed(format!("unexpected key {key:?}")));
            }
        }
        let props = obj
            .get("propositions")
            .and_then(Value::as_array)
            .ok_or_else(|| TraceError::Malformed("\"propositions\" must be an array".into()))?;
        let names = props
            .iter()
            .map(|p| {
                p.as_str()
                    .map(str::to_owned)
                    .ok_or_else(|| TraceError::Malformed("proposition names must be strings".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let vocab = Vocabulary::new(names)?;
        let positive = parse_traces(obj.get("positive"), Label::Positive, &vocab)?;
        let negative = parse_traces(obj.get("negative"), Label::Negative, &vocab)?;
        Ok(LabeledTraceSet {
            vocab,
            positive,
            negative,
        })
    }

    pub fn from_reader<R: Read>(mut reader: R) -> Result<Self, TraceError> {
        let mut text = String::new();
        reader.read_to_string(&mut text)?;
        Self::from_json_str(&text)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, TraceError> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    /// Canonical text form: one trace per line, propositions and traces in
    /// their stored order.
    pub fn to_canonical_json(&self) -> String {
        let mut out = String::new();
        out.push_str("{\n  \"propositions\": [");
        let names: Vec<String> = self.vocab.names().iter().map(|n| json_string(n)).collect();
        out.push_str(&names.join(", "));
        out.push_str("],\n");
        for (label, traces, last) in [
            (Label::Positive, &self.positive, false),
            (Label::Negative, &self.negative, true),
        ] {
            out.push_str(&format!("  \"{}\": [", label.as_str()));
            if traces.is_empty() {
                out.push(']');
            } else {
                out.push('\n');
                for (i, trace) in traces.iter().enumerate() {
                    out.push_str("    [");
                    let states: Vec<String> = trace
                        .states()
                        .iter()
                        .map(|s| self.state_json_inline(s))
                        .collect();
                    out.push_str(&states.join(", "));
                    out.push(']');
                    if i + 1 < traces.len() {
                        out.push(',');
                    }
                    out.push('\n');
                }
                out.push_str("  ]");
            }
            out.push_str(if last { "\n" } else { ",\n" });
        }
        out.push_str("}\n");
        out
    }

    fn state_json_inline(&self, state: &State) -> String {
        let fields: Vec<String> = self
            .vocab
            .names()
            .iter()
            .zip(state.bits())
            .map(|(name, bit)| format!("{}: {}", json_string(name), bit))
            .collect();
        format!("{{{}}}", fields.join(", "))
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        w.write_all(self.to_canonical_json().as_bytes())
    }

    pub fn save(&self, path: impl AsRef<Path>) -> std::io::Result<()> {
        std::fs::write(path, self.to_canonical_json())
    }
}

fn json_string(s: &str) -> String {
    Value::String(s.to_owned()).to_string()
}

fn parse_traces(value: Option<&Value>, label: Label, vocab: &Vocabulary) -> Result<Vec<Trace>, TraceError> {
    let Some(value) = value else {
        return Err(TraceError::Malformed(format!("missing \"{label}\" array")));
    };
    let traces = value
        .as_array()
        .ok_or_else(|| TraceError::Malformed(format!("\"{label}\" must be an array of traces")))?;
    let mut out = Vec::with_capacity(traces.len());
    for (t, trace) in traces.iter().enumerate() {
        let states = trace
            .as_array()
            .ok_or_else(|| TraceError::Malformed(format!("{label}[{t}] must be an array of states")))?;
        let mut parsed = Vec::with_capacity(states.len());
        for (s, state) in states.iter().enumerate() {
            parsed.push(parse_state(state, vocab, label, t, s)?);
        }
        out.push(Trace::new(parsed).ok_or(TraceError::EmptyTrace { label, trace: t })?);
    }
    Ok(out)
}

fn parse_state(value: &Value, vocab: &Vocabulary, label: Label, trace: usize, state: usize) -> Result<State, TraceError> {
    let obj = value.as_object().ok_or_else(|| {
        TraceError::Malformed(format!("{label}[{trace}] state {state} must be an object"))
    })?;
    let mut bits: Vec<Option<bool>> = vec![None; vocab.len()];
    for (key, v) in obj {
        let Some(atom) = vocab.lookup(key) else {
            return Err(TraceError::UnknownProposition {
                label,
                trace,
                state,
                prop: key.clone(),
            });
        };
        let bit = v.as_bool().ok_or_else(|| {
            TraceError::Malformed(format!(
                "{label}[{trace}] state {state}: value of {key:?} must be a boolean"
            ))
        })?;
        bits[atom] = Some(bit);
    }
    let bits = bits
        .into_iter()
        .enumerate()
        .map(|(atom, bit)| {
            bit.ok_or_else(|| TraceError::MissingProposition {
                label,
                trace,
                state,
                prop: vocab.name(atom).to_owned(),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(State::new(bits))
}

/// Deduplicated states of a trace set with a stable index per state.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Universe {
    states: Vec<State>,
    index: HashMap<State, usize>,
}

impl Universe {
    pub fn from_states<'a, I: IntoIterator<Item = &'a State>>(states: I) -> Self {
        let mut u = Universe::default();
        for s in states {
            u.insert(s);
        }
        u
    }

    fn insert(&mut self, state: &State) -> usize {
        if let Some(&i) = self.index.get(state) {
            return i;
        }
        let i = self.states.len();
        self.states.push(state.clone());
        self.index.insert(state.clone(), i);
        i
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn state(&self, i: usize) -> &State {
        &self.states[i]
    }

    pub fn index_of(&self, state: &State) -> Option<usize> {
        self.index.get(state).copied()
    }

    /// Maps a trace to universe indices. `None` if a state is not in the universe.
    pub fn index_trace(&self, trace: &Trace) -> Option<Vec<usize>> {
        trace.states().iter().map(|s| self.index_of(s)).collect()
    }
}

/// A trace set with every state replaced by its universe index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexedTraces {
    pub universe_size: usize,
    pub positive: Vec<Vec<usize>>,
    pub negative: Vec<Vec<usize>>,
}

impl IndexedTraces {
    pub fn new(gamma: &LabeledTraceSet, universe: &Universe) -> Self {
        let index = |traces: &[Trace]| {
            traces
                .iter()
                .map(|t| universe.index_trace(t).expect("universe covers every trace state"))
                .collect()
        };
        IndexedTraces {
            universe_size: universe.len(),
            positive: index(gamma.positive()),
            negative: index(gamma.negative()),
        }
    }

    pub fn labeled(&self) -> impl Iterator<Item = (Label, usize, &[usize])> {
        let pos = self.positive.iter().enumerate().map(|(i, t)| (Label::Positive, i, t.as_slice()));
        let neg = self.negative.iter().enumerate().map(|(i, t)| (Label::Negative, i, t.as_slice()));
        pos.chain(neg)
    }
}
