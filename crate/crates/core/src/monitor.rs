//! Violation checking for conditional prohibitions and obligations.
//!
//! [`check`] decides violation in one left-to-right pass. [`check_by_definition`]
//! enumerates every `(i, j, k)` and exists only as a reference.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};
use thiserror::Error;

use crate::prop::{parse_formula, ParseError, PropFormula, Vocabulary, VocabularyMismatch};
use crate::trace::{State, Trace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NormKind {
    Prohibition,
    Obligation,
}

impl NormKind {
    pub const ALL: [NormKind; 2] = [NormKind::Prohibition, NormKind::Obligation];

    pub fn as_str(self) -> &'static str {
        match self {
            NormKind::Prohibition => "prohibition",
            NormKind::Obligation => "obligation",
        }
    }

    /// One-letter tag used for the target component (`P` or `O`).
    pub fn letter(self) -> char {
        match self {
            NormKind::Prohibition => 'P',
            NormKind::Obligation => 'O',
        }
    }
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NormKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "prohibition" | "P" => Ok(NormKind::Prohibition),
            "obligation" | "O" => Ok(NormKind::Obligation),
            other => Err(format!("unknown norm kind {other:?}")),
        }
    }
}

/// The three components of a norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Condition,
    Target,
    Deadline,
}

impl Role {
    pub const ALL: [Role; 3] = [Role::Condition, Role::Target, Role::Deadline];

    pub fn as_str(self) -> &'static str {
        match self {
            Role::Condition => "condition",
            Role::Target => "target",
            Role::Deadline => "deadline",
        }
    }
}

/// `(condition, Z(target), deadline)` with `Z` given by `kind`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionalNorm {
    pub kind: NormKind,
    pub condition: PropFormula,
    pub target: PropFormula,
    pub deadline: PropFormula,
}

#[derive(Debug, Error)]
pub enum NormFileError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed norm document: {0}")]
    Malformed(String),
    #[error("in {field}: {source}")]
    Formula {
        field: &'static str,
        #[source]
        source: ParseError,
    },
}

impl ConditionalNorm {
    pub fn new(kind: NormKind, condition: PropFormula, target: PropFormula, deadline: PropFormula) -> Self {
        ConditionalNorm {
            kind,
            condition,
            target,
            deadline,
        }
    }

    pub fn parse(kind: NormKind, condition: &str, target: &str, deadline: &str, vocab: &Vocabulary) -> Result<Self, NormFileError> {
        let field = |field: &'static str, text: &str| {
            parse_formula(text, vocab).map_err(|source| NormFileError::Formula { field, source })
        };
        Ok(ConditionalNorm::new(
            kind,
            field("condition", condition)?,
            field("target", target)?,
            field("deadline", deadline)?,
        ))
    }

    pub fn formula(&self, role: Role) -> &PropFormula {
        match role {
            Role::Condition => &self.condition,
            Role::Target => &self.target,
            Role::Deadline => &self.deadline,
        }
    }

    /// Number of propositions the formulas need.
    pub fn required_width(&self) -> usize {
        Role::ALL
            .iter()
            .filter_map(|&r| self.formula(r).max_atom())
            .max()
            .map_or(0, |a| a + 1)
    }

    pub fn from_json(doc: &Value, vocab: &Vocabulary) -> Result<Self, NormFileError> {
        let obj = doc
            .as_object()
            .ok_or_else(|| NormFileError::Malformed("top level must be an object".into()))?;
        for key in obj.keys() {
            if !matches!(key.as_str(), "kind" | "condition" | "target" | "deadline") {
                return Err(NormFileError::Malformed(format!("unexpected key {key:?}")));
            }
        }
        let text = |key: &str| {
            obj.get(key)
                .and_then(Value::as_str)
                .ok_or_else(|| NormFileError::Malformed(format!("{key:?} must be a string")))
        };
        let kind = match text("kind")? {
            "prohibition" => NormKind::Prohibition,
            "obligation" => NormKind::Obligation,
            other => {
                return Err(NormFileError::Malformed(format!(
                    "\"kind\" must be \"prohibition\" or \"obligation\", got {other:?}"
                )))
            }
        };
        Self::parse(kind, text("condition")?, text("target")?, text("deadline")?, vocab)
    }

    pub fn from_json_str(text: &str, vocab: &Vocabulary) -> Result<Self, NormFileError> {
        Self::from_json(&serde_json::from_str(text)?, vocab)
    }

    pub fn load(path: impl AsRef<std::path::Path>, vocab: &Vocabulary) -> Result<Self, NormFileError> {
        Self::from_json_str(&std::fs::read_to_string(path)?, vocab)
    }

    pub fn to_json(&self, vocab: &Vocabulary) -> Value {
        json!({
            "kind": self.kind.as_str(),
            "condition": self.condition.display(vocab).to_string(),
            "target": self.target.display(vocab).to_string(),
            "deadline": self.deadline.display(vocab).to_string(),
        })
    }
}

/// Indices `(i, j)` of a violation, 1-based. `j` is the target index for a
/// prohibition and the deadline index for an obligation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ViolationWitness {
    pub i: usize,
    pub j: usize,
}

impl fmt::Display for ViolationWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Violated(ViolationWitness),
    Obeyed,
}

impl Verdict {
    pub fn is_violated(self) -> bool {
        matches!(self, Verdict::Violated(_))
    }

    pub fn witness(self) -> Option<ViolationWitness> {
        match self {
            Verdict::Violated(w) => Some(w),
            Verdict::Obeyed => None,
        }
    }
}

/// Single-pass check over a trace of `len` positions where
/// `holds(role, k)` reports whether the role's formula is true at 0-based
/// position `k`. Returns the lexicographically smallest witness.
pub fn scan<F>(kind: NormKind, len: usize, mut holds: F) -> Verdict
where
    F: FnMut(Role, usize) -> bool,
{
    // earliest detachment index still able to produce a violation
    let mut open: Option<usize> = None;
    for k in 0..len {
        let cond = holds(Role::Condition, k);
        match kind {
            NormKind::Prohibition => {
                if cond && open.is_none() {
                    open = Some(k);
                }
                if let Some(i) = open {
                    if holds(Role::Target, k) {
                        return Verdict::Violated(ViolationWitness { i: i + 1, j: k + 1 });
                    }
                }
                if holds(Role::Deadline, k) {
                    // a deadline at k closes every earlier window; k itself may reopen
                    open = if cond { Some(k) } else { None };
                }
            }
            NormKind::Obligation => {
                if holds(Role::Target, k) {
                    open = None;
                } else if cond && open.is_none() {
                    open = Some(k);
                }
                if let Some(i) = open {
                    if holds(Role::Deadline, k) {
                        return Verdict::Violated(ViolationWitness { i: i + 1, j: k + 1 });
                    }
                }
            }
        }
    }
    Verdict::Obeyed
}

/// Direct enumeration of the violation definitions, O(n³).
pub fn scan_by_definition<F>(kind: NormKind, len: usize, holds: F) -> Verdict
where
    F: Fn(Role, usize) -> bool,
{
    for i in 0..len {
        if !holds(Role::Condition, i) {
            continue;
        }
        for j in i..len {
            let violated = match kind {
                NormKind::Prohibition => {
                    holds(Role::Target, j) && !(i + 1..j).any(|k| holds(Role::Deadline, k))
                }
                NormKind::Obligation => {
                    holds(Role::Deadline, j) && !(i..=j).any(|k| holds(Role::Target, k))
                }
            };
            if violated {
                return Verdict::Violated(ViolationWitness { i: i + 1, j: j + 1 });
            }
        }
    }
    Verdict::Obeyed
}

fn check_width(norm: &ConditionalNorm, states: &[State]) -> Result<(), VocabularyMismatch> {
    let required = norm.required_width();
    match states.iter().find(|s| s.width() < required) {
        Some(s) => Err(VocabularyMismatch {
            required,
            width: s.width(),
        }),
        None => Ok(()),
    }
}

/// Evaluates all three formulas at every position once.
fn truth_table(norm: &ConditionalNorm, states: &[State]) -> Vec<[bool; 3]> {
    states
        .iter()
        .map(|s| Role::ALL.map(|r| norm.formula(r).eval_unchecked(s.bits())))
        .collect()
}

/// Checks `norm` on `trace` in a single pass.
pub fn check(norm: &ConditionalNorm, trace: &Trace) -> Result<Verdict, VocabularyMismatch> {
    check_states(norm, trace.states())
}

pub fn check_states(norm: &ConditionalNorm, states: &[State]) -> Result<Verdict, VocabularyMismatch> {
    check_width(norm, states)?;
    Ok(scan(norm.kind, states.len(), |role, k| {
        norm.formula(role).eval_unchecked(states[k].bits())
    }))
}

/// Reference checker: enumerates `(i, j, k)` as in the definitions.
pub fn check_by_definition(norm: &ConditionalNorm, trace: &Trace) -> Result<Verdict, VocabularyMismatch> {
    check_width(norm, trace.states())?;
    let table = truth_table(norm, trace.states());
    Ok(scan_by_definition(norm.kind, table.len(), |role, k| table[k][role as usize]))
}

/// Prohibition-only entry point.
pub fn check_prohibition(norm: &ConditionalNorm, trace: &Trace) -> Result<Verdict, VocabularyMismatch> {
    assert_eq!(norm.kind, NormKind::Prohibition, "expected a prohibition");
    check(norm, trace)
}

/// Obligation-only entry point.
pub fn check_obligation(norm: &ConditionalNorm, trace: &Trace) -> Result<Verdict, VocabularyMismatch> {
    assert_eq!(norm.kind, NormKind::Obligation, "expected an obligation");
    check(norm, trace)
}
