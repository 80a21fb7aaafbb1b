//! Norm synthesis over the observed states S(Γ).
//!
//! A candidate norm is a [`StateSetTriple`]: one subset of the universe per
//! role. [`encode`] turns "some triple classifies Γ correctly" into CNF;
//! [`brute_force_synthesize`] enumerates every triple instead.

use std::fmt;

use thiserror::Error;

use crate::monitor::{self, ConditionalNorm, NormKind, Role, Verdict, ViolationWitness};
use crate::prop::{formula_from_state_set, Vocabulary};
use crate::sat::{self, CnfSystem, Lit, Model, SolveError, SolveStats, SolverConfig, Var, VarTag};
use crate::trace::{IndexedTraces, Label, LabeledTraceSet, Universe};

/// Subset of a universe, as a membership vector over universe indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet(Vec<bool>);

impl StateSet {
    pub fn empty(universe_size: usize) -> Self {
        StateSet(vec![false; universe_size])
    }

    pub fn full(universe_size: usize) -> Self {
        StateSet(vec![true; universe_size])
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe_size: usize, members: I) -> Self {
        let mut set = Self::empty(universe_size);
        for i in members {
            set.insert(i);
        }
        set
    }

    pub fn from_membership(bits: Vec<bool>) -> Self {
        StateSet(bits)
    }

    pub fn universe_size(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn insert(&mut self, i: usize) {
        self.0[i] = true;
    }

    pub fn remove(&mut self, i: usize) {
        self.0[i] = false;
    }

    pub fn len(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.0.iter().any(|&b| b)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn complement(&self) -> StateSet {
        StateSet(self.0.iter().map(|b| !b).collect())
    }

    /// Members of `self` missing from `other`.
    pub fn difference<'a>(&'a self, other: &'a StateSet) -> impl Iterator<Item = usize> + 'a {
        self.iter().filter(move |&i| !other.contains(i))
    }

    pub fn symmetric_difference_len(&self, other: &StateSet) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// `(X_C, X_Z, X_D)` over a universe; `X_Z` is `X_P` or `X_O` by `kind`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateSetTriple {
    pub kind: NormKind,
    pub condition: StateSet,
    pub target: StateSet,
    pub deadline: StateSet,
}

impl StateSetTriple {
    pub fn empty(kind: NormKind, universe_size: usize) -> Self {
        StateSetTriple {
            kind,
            condition: StateSet::empty(universe_size),
            target: StateSet::empty(universe_size),
            deadline: StateSet::empty(universe_size),
        }
    }

    pub fn universe_size(&self) -> usize {
        self.condition.universe_size()
    }

    pub fn get(&self, role: Role) -> &StateSet {
        match role {
            Role::Condition => &self.condition,
            Role::Target => &self.target,
            Role::Deadline => &self.deadline,
        }
    }

    pub fn get_mut(&mut self, role: Role) -> &mut StateSet {
        match role {
            Role::Condition => &mut self.condition,
            Role::Target => &mut self.target,
            Role::Deadline => &mut self.deadline,
        }
    }

    /// Projects a norm onto a universe by evaluating each formula per state.
    pub fn project(norm: &ConditionalNorm, universe: &Universe) -> Self {
        let project = |role: Role| {
            StateSet(
                universe
                    .states()
                    .iter()
                    .map(|s| norm.formula(role).eval_unchecked(s.bits()))
                    .collect(),
            )
        };
        StateSetTriple {
            kind: norm.kind,
            condition: project(Role::Condition),
            target: project(Role::Target),
            deadline: project(Role::Deadline),
        }
    }

    /// The norm whose formulas are the state-description disjunctions of
    /// the three sets.
    pub fn to_norm(&self, universe: &Universe, vocab: &Vocabulary) -> ConditionalNorm {
        let formula = |role: Role| {
            formula_from_state_set(self.get(role).iter().map(|i| universe.state(i)), vocab)
                .expect("universe states share the vocabulary")
        };
        ConditionalNorm::new(
            self.kind,
            formula(Role::Condition),
            formula(Role::Target),
            formula(Role::Deadline),
        )
    }

    /// Verdict on a trace of universe indices, by set membership.
    pub fn check_indexed(&self, trace: &[usize]) -> Verdict {
        monitor::scan(self.kind, trace.len(), |role, k| self.get(role).contains(trace[k]))
    }

    /// Whether the triple violates every negative and no positive trace.
    pub fn classifies(&self, traces: &IndexedTraces) -> bool {
        traces.negative.iter().all(|t| self.check_indexed(t).is_violated())
            && traces.positive.iter().all(|t| !self.check_indexed(t).is_violated())
    }
}

/// First trace a triple misclassifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Counterexample {
    pub label: Label,
    pub trace: usize,
    /// The violation found on a positive trace; `None` for a negative trace
    /// that is not violated.
    pub witness: Option<ViolationWitness>,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.witness {
            Some(w) => write!(f, "{}[{}] is violated at {w}", self.label, self.trace),
            None => write!(f, "{}[{}] is not violated", self.label, self.trace),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verification {
    Ok,
    Counterexample(Counterexample),
}

impl Verification {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verification::Ok)
    }
}

/// Checks the norm induced by `triple` against every trace of `gamma`,
/// negatives first. The triple must be over `gamma`'s universe.
pub fn verify_triple(triple: &StateSetTriple, gamma: &LabeledTraceSet) -> Verification {
    let universe = gamma.universe();
    assert_eq!(
        triple.universe_size(),
        universe.len(),
        "triple is not over this trace set's universe"
    );
    let norm = triple.to_norm(&universe, gamma.vocab());
    verify_norm(&norm, gamma)
}

/// Checks an arbitrary norm against every trace of `gamma`, negatives first.
pub fn verify_norm(norm: &ConditionalNorm, gamma: &LabeledTraceSet) -> Verification {
    for (t, trace) in gamma.negative().iter().enumerate() {
        let verdict = monitor::check(norm, trace).expect("norm over the trace vocabulary");
        if !verdict.is_violated() {
            return Verification::Counterexample(Counterexample {
                label: Label::Negative,
                trace: t,
                witness: None,
            });
        }
    }
    for (t, trace) in gamma.positive().iter().enumerate() {
        let verdict = monitor::check(norm, trace).expect("norm over the trace vocabulary");
        if let Verdict::Violated(w) = verdict {
            return Verification::Counterexample(Counterexample {
                label: Label::Positive,
                trace: t,
                witness: Some(w),
            });
        }
    }
    Verification::Ok
}

/// A CNF system for a synthesis problem plus the membership variables.
#[derive(Debug, Clone)]
pub struct Encoding {
    pub kind: NormKind,
    pub system: CnfSystem,
    /// `core[role][state]`
    core: [Vec<Var>; 3],
}

impl Encoding {
    pub fn universe_size(&self) -> usize {
        self.core[0].len()
    }

    pub fn core_var(&self, role: Role, state: usize) -> Var {
        self.core[role as usize][state]
    }

    /// Core variables in layout order: all conditions, then targets, then deadlines.
    pub fn core_vars(&self) -> impl Iterator<Item = (Role, usize, Var)> + '_ {
        Role::ALL
            .into_iter()
            .flat_map(move |r| self.core[r as usize].iter().enumerate().map(move |(s, &v)| (r, s, v)))
    }

    /// Reads the triple off a model; auxiliary variables are ignored.
    pub fn decode(&self, model: &Model) -> StateSetTriple {
        let mut triple = StateSetTriple::empty(self.kind, self.universe_size());
        for (var, tag) in self.system.tags().iter().enumerate() {
            if let VarTag::Core { role, state } = *tag {
                if model.value(Var(var as u32)) {
                    triple.get_mut(role).insert(state);
                }
            }
        }
        triple
    }
}

/// Upper bound on the clause count of [`encode`]: `2 · Σ_ρ |ρ|²(|ρ| + 2)`.
pub fn clause_bound(traces: &IndexedTraces) -> usize {
    traces
        .positive
        .iter()
        .chain(&traces.negative)
        .map(|t| 2 * t.len() * t.len() * (t.len() + 2))
        .sum()
}

/// Encodes "a triple over the universe classifies every trace".
///
/// Negative trace: a witness `w_ij` per window with one-directional
/// definitions and the requirement `∨ w_ij`. Positive trace: one clause per
/// window stating that it does not produce a violation.
pub fn encode(kind: NormKind, traces: &IndexedTraces) -> Encoding {
    let n = traces.universe_size;
    let mut system = CnfSystem::new();
    let core = Role::ALL.map(|role| {
        (0..n)
            .map(|state| system.new_var(VarTag::Core { role, state }))
            .collect::<Vec<_>>()
    });
    let var = |role: Role, state: usize| core[role as usize][state];
    let c = |s| var(Role::Condition, s);
    let z = |s| var(Role::Target, s);
    let d = |s| var(Role::Deadline, s);

    for trace in &traces.negative {
        let len = trace.len();
        let mut requirement = Vec::with_capacity(len * (len + 1) / 2);
        for i in 0..len {
            for j in i..len {
                let w = system.new_var(VarTag::Witness);
                requirement.push(w.positive());
                system.add_clause([w.negative(), c(trace[i]).positive()]);
                match kind {
                    NormKind::Prohibition => {
                        system.add_clause([w.negative(), z(trace[j]).positive()]);
                        for &k in &trace[i + 1..j.max(i + 1)] {
                            system.add_clause([w.negative(), d(k).negative()]);
                        }
                    }
                    NormKind::Obligation => {
                        system.add_clause([w.negative(), d(trace[j]).positive()]);
                        for &k in &trace[i..=j] {
                            system.add_clause([w.negative(), z(k).negative()]);
                        }
                    }
                }
            }
        }
        system.add_clause(requirement);
    }

    for trace in &traces.positive {
        let len = trace.len();
        for i in 0..len {
            for j in i..len {
                let mut clause: Vec<Lit> = vec![c(trace[i]).negative()];
                match kind {
                    NormKind::Prohibition => {
                        clause.push(z(trace[j]).negative());
                        clause.extend(trace[i + 1..j.max(i + 1)].iter().map(|&k| d(k).positive()));
                    }
                    NormKind::Obligation => {
                        clause.push(d(trace[j]).negative());
                        clause.extend(trace[i..=j].iter().map(|&k| z(k).positive()));
                    }
                }
                system.add_clause(clause);
            }
        }
    }

    Encoding { kind, system, core }
}

pub fn encode_prohibition(gamma: &LabeledTraceSet) -> Encoding {
    encode(NormKind::Prohibition, &IndexedTraces::new(gamma, &gamma.universe()))
}

pub fn encode_obligation(gamma: &LabeledTraceSet) -> Encoding {
    encode(NormKind::Obligation, &IndexedTraces::new(gamma, &gamma.universe()))
}

pub const DEFAULT_BRUTE_FORCE_CAP: usize = 18;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthesisError {
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("brute force needs {needed} bits of enumeration but the cap is {cap}")]
    CapExceeded { needed: usize, cap: usize },
    #[error("internal error: synthesized triple fails verification ({0})")]
    Unsound(Counterexample),
}

/// Calls `visit` on every triple that classifies `traces`, in canonical
/// order: the 3·|S| membership bits read as an integer counting up from
/// zero, conditions in the low bits, then targets, then deadlines. Stops
/// early when `visit` returns `false`. Returns the number of candidates examined.
pub fn enumerate_solutions<F>(kind: NormKind, traces: &IndexedTraces, cap: usize, mut visit: F) -> Result<u64, SynthesisError>
where
    F: FnMut(StateSetTriple) -> bool,
{
    let n = traces.universe_size;
    let bits = 3 * n;
    if bits > cap || bits >= 64 {
        return Err(SynthesisError::CapExceeded { needed: bits, cap });
    }
    let member = |mask: u64, role: Role, state: usize| mask >> (role as usize * n + state) & 1 == 1;
    let check = |mask: u64, trace: &[usize]| {
        monitor::scan(kind, trace.len(), |role, k| member(mask, role, trace[k])).is_violated()
    };
    let mut examined = 0;
    for mask in 0..1u64 << bits {
        examined += 1;
        let ok = traces.negative.iter().all(|t| check(mask, t))
            && traces.positive.iter().all(|t| !check(mask, t));
        if ok {
            let set = |role: Role| StateSet((0..n).map(|s| member(mask, role, s)).collect());
            let triple = StateSetTriple {
                kind,
                condition: set(Role::Condition),
                target: set(Role::Target),
                deadline: set(Role::Deadline),
            };
            if !visit(triple) {
                break;
            }
        }
    }
    Ok(examined)
}

/// Every triple over S(Γ) that classifies Γ, in canonical order.
pub fn brute_force_synthesize(gamma: &LabeledTraceSet, kind: NormKind, cap: usize) -> Result<Vec<StateSetTriple>, SynthesisError> {
    let traces = IndexedTraces::new(gamma, &gamma.universe());
    let mut out = Vec::new();
    enumerate_solutions(kind, &traces, cap, |t| {
        out.push(t);
        true
    })?;
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SynthesisEngine {
    Sat(SolverConfig),
    BruteForce { cap: usize },
}

impl Default for SynthesisEngine {
    fn default() -> Self {
        SynthesisEngine::Sat(SolverConfig::default())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngineStats {
    Sat(SolveStats),
    BruteForce { candidates: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub triple: StateSetTriple,
    pub norm: ConditionalNorm,
    /// No negative traces, so the never-detached norm was returned.
    pub trivial: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SynthesisOutcome {
    Solution(Solution),
    NoSolution,
}

impl SynthesisOutcome {
    pub fn solution(&self) -> Option<&Solution> {
        match self {
            SynthesisOutcome::Solution(s) => Some(s),
            SynthesisOutcome::NoSolution => None,
        }
    }

    pub fn is_solution(&self) -> bool {
        self.solution().is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthesisResult {
    pub outcome: SynthesisOutcome,
    pub stats: EngineStats,
}

/// Finds a triple classifying `gamma`, or proves none exists. Any returned
/// triple has passed [`verify_triple`].
pub fn synthesize(gamma: &LabeledTraceSet, kind: NormKind, engine: &SynthesisEngine) -> Result<SynthesisResult, SynthesisError> {
    let universe = gamma.universe();
    let traces = IndexedTraces::new(gamma, &universe);
    let (triple, stats) = match engine {
        SynthesisEngine::Sat(config) => {
            let encoding = encode(kind, &traces);
            let solved = sat::solve(&encoding.system, config)?;
            let triple = solved.outcome.model().map(|m| encoding.decode(m));
            (triple, EngineStats::Sat(solved.stats))
        }
        SynthesisEngine::BruteForce { cap } => {
            let mut first = None;
            let candidates = enumerate_solutions(kind, &traces, *cap, |t| {
                first = Some(t);
                false
            })?;
            (first, EngineStats::BruteForce { candidates })
        }
    };
    let outcome = match triple {
        None => SynthesisOutcome::NoSolution,
        Some(triple) => SynthesisOutcome::Solution(finish(triple, gamma, &universe)?),
    };
    Ok(SynthesisResult { outcome, stats })
}

/// Builds the solution record after re-checking the triple through its
/// induced formulas.
pub(crate) fn finish(triple: StateSetTriple, gamma: &LabeledTraceSet, universe: &Universe) -> Result<Solution, SynthesisError> {
    let norm = triple.to_norm(universe, gamma.vocab());
    if let Verification::Counterexample(cex) = verify_norm(&norm, gamma) {
        return Err(SynthesisError::Unsound(cex));
    }
    Ok(Solution {
        triple,
        norm,
        trivial: gamma.negative().is_empty(),
    })
}
