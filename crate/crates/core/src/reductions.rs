//! 3SAT instances and their reductions to prohibition and obligation synthesis.
//!
//! Both reductions use two anchor states `s` (detachment) and `t` and, per
//! variable `x_i`, a pair `u_i` ("x_i is true") and `v_i` ("x_i is false").
//! A clause over `x_j, x_k, x_l` becomes the positive trace
//! `(s, z_j, z_k, z_l, t)` with `z = u` for a positive literal and `z = v`
//! for a negative one.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::monitor::{NormKind, Role};
use crate::prop::Vocabulary;
use crate::synthesis::{verify_triple, Counterexample, StateSet, StateSetTriple, Verification};
use crate::trace::{LabeledTraceSet, State, Trace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("a 3SAT instance needs at least one variable")]
    NoVariables,
    #[error("clause {clause} mentions variable {var} outside 1..={num_vars}")]
    VariableOutOfRange { clause: usize, var: i64, num_vars: usize },
    #[error("oracle enumerates at most 2^{cap} assignments, instance has {num_vars} variables")]
    OracleCap { num_vars: usize, cap: usize },
    #[error("triple is not a solution of the generated instance: {0}")]
    NotASolution(Counterexample),
    #[error("assignment has {got} values, instance has {want} variables")]
    AssignmentLength { got: usize, want: usize },
    #[error("DIMACS: {0}")]
    Dimacs(String),
}

/// A literal: variable index (1-based) with sign.
pub type Literal = i64;

/// Clauses of exactly three literals over `x_1..x_m`. Repeated and
/// complementary literals inside a clause are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThreeSatInstance {
    num_vars: usize,
    clauses: Vec<[Literal; 3]>,
}

impl ThreeSatInstance {
    pub fn new(num_vars: usize, clauses: Vec<[Literal; 3]>) -> Result<Self, ReductionError> {
        if num_vars == 0 {
            return Err(ReductionError::NoVariables);
        }
        for (c, clause) in clauses.iter().enumerate() {
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > num_vars {
                    return Err(ReductionError::VariableOutOfRange {
                        clause: c,
                        var: lit,
                        num_vars,
                    });
                }
            }
        }
        Ok(ThreeSatInstance { num_vars, clauses })
    }

    /// All eight sign patterns over `x_1, x_2, x_3`: unsatisfiable.
    pub fn complete_unsat() -> Self {
        let clauses = (0..8)
            .map(|mask: i64| [1, 2, 3].map(|v| if mask >> (v - 1) & 1 == 1 { -v } else { v }))
            .collect();
        ThreeSatInstance::new(3, clauses).expect("well formed")
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    /// `assignment[i]` is the value of `x_{i+1}`.
    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|clause| clause.iter().any(|&l| literal_value(l, assignment)))
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for [a, b, c] in &self.clauses {
            out.push_str(&format!("{a} {b} {c} 0\n"));
        }
        out
    }

    /// Reads DIMACS CNF text whose clauses all have exactly three literals.
    pub fn from_dimacs(text: &str) -> Result<Self, ReductionError> {
        let err = |m: String| ReductionError::Dimacs(m);
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('p') {
                let fields: Vec<&str> = rest.split_whitespace().collect();
                match fields.as_slice() {
                    ["cnf", v, c] if header.is_none() => {
                        let parse = |s: &str| s.parse::<usize>().map_err(|e| err(format!("line {}: {e}", lineno + 1)));
                        header = Some((parse(v)?, parse(c)?));
                    }
                    _ => return Err(err(format!("line {}: bad problem line", lineno + 1))),
                }
                continue;
            }
            if header.is_none() {
                return Err(err(format!("line {}: clause before problem line", lineno + 1)));
            }
            for tok in line.split_whitespace() {
                let lit: i64 = tok.parse().map_err(|e| err(format!("line {}: {e}", lineno + 1)))?;
                if lit == 0 {
                    let clause: [Literal; 3] = current
                        .as_slice()
                        .try_into()
                        .map_err(|_| err(format!("clause {} has {} literals, expected 3", clauses.len() + 1, current.len())))?;
                    clauses.push(clause);
                    current.clear();
                } else {
                    current.push(lit);
                }
            }
        }
        let (num_vars, num_clauses) = header.ok_or_else(|| err("missing problem line".into()))?;
        if !current.is_empty() {
            return Err(err("last clause is not terminated by 0".into()));
        }
        if clauses.len() != num_clauses {
            return Err(err(format!("header announces {num_clauses} clauses, found {}", clauses.len())));
        }
        ThreeSatInstance::new(num_vars, clauses)
    }
}

impl fmt::Display for ThreeSatInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lit = |l: Literal| {
            if l < 0 {
                format!("!x{}", -l)
            } else {
                format!("x{l}")
            }
        };
        let parts: Vec<String> = self
            .clauses
            .iter()
            .map(|c| format!("({} | {} | {})", lit(c[0]), lit(c[1]), lit(c[2])))
            .collect();
        f.write_str(&parts.join(" & "))
    }
}

fn literal_value(lit: Literal, assignment: &[bool]) -> bool {
    let value = assignment[lit.unsigned_abs() as usize - 1];
    if lit > 0 {
        value
    } else {
        !value
    }
}

/// Uniform random instance: each literal picks its variable uniformly (with
/// replacement) and its sign by a fair coin. Deterministic in `seed`.
pub fn random_3sat(num_vars: usize, num_clauses: usize, seed: u64) -> ThreeSatInstance {
    assert!(num_vars >= 1, "need at least one variable");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let clauses = (0..num_clauses)
        .map(|_| {
            [(); 3].map(|_| {
                let var = rng.gen_range(1..=num_vars) as Literal;
                if rng.gen_bool(0.5) {
                    -var
                } else {
                    var
                }
            })
        })
        .collect();
    ThreeSatInstance { num_vars, clauses }
}

pub const ORACLE_MAX_VARS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sat3Outcome {
    Satisfiable(Vec<bool>),
    Unsatisfiable,
}

impl Sat3Outcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, Sat3Outcome::Satisfiable(_))
    }
}

/// Truth-table decision for up to [`ORACLE_MAX_VARS`] variables. Returns the
/// first satisfying assignment in counting order (`x_1` the low bit).
pub fn sat3_oracle(phi: &ThreeSatInstance) -> Result<Sat3Outcome, ReductionError> {
    let m = phi.num_vars;
    if m > ORACLE_MAX_VARS {
        return Err(ReductionError::OracleCap {
            num_vars: m,
            cap: ORACLE_MAX_VARS,
        });
    }
    let mut assignment = vec![false; m];
    for mask in 0u32..1 << m {
        for (i, a) in assignment.iter_mut().enumerate() {
            *a = mask >> i & 1 == 1;
        }
        if phi.is_satisfied_by(&assignment) {
            return Ok(Sat3Outcome::Satisfiable(assignment));
        }
    }
    Ok(Sat3Outcome::Unsatisfiable)
}

/// How gadget states are represented as propositional assignments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StateEncoding {
    /// One proposition per gadget state: `q_s, q_t, q_u1, q_v1, ...`.
    #[default]
    OneHot,
    /// Gadget number in binary over `b0, b1, ...`; `s = 0`, `t = 1`,
    /// `u_i = 2i`, `v_i = 2i + 1`.
    Binary,
}

/// A generated synthesis instance with the gadget-state bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionArtifacts {
    pub kind: NormKind,
    pub instance: ThreeSatInstance,
    pub gamma: LabeledTraceSet,
    pub s: State,
    pub t: State,
    /// `u[i]` stands for `x_{i+1}` true.
    pub u: Vec<State>,
    /// `v[i]` stands for `x_{i+1}` false.
    pub v: Vec<State>,
}

struct Gadgets {
    vocab: Vocabulary,
    s: State,
    t: State,
    u: Vec<State>,
    v: Vec<State>,
}

impl Gadgets {
    fn new(m: usize, encoding: StateEncoding) -> Self {
        let count = 2 * m + 2;
        match encoding {
            StateEncoding::OneHot => {
                let mut names = vec!["q_s".to_string(), "q_t".to_string()];
                for i in 1..=m {
                    names.push(format!("q_u{i}"));
                    names.push(format!("q_v{i}"));
                }
                let vocab = Vocabulary::new(names).expect("distinct identifiers");
                let state = |k: usize| State::new((0..count).map(|p| p == k).collect());
                Gadgets {
                    vocab,
                    s: state(0),
                    t: state(1),
                    u: (1..=m).map(|i| state(2 * i)).collect(),
                    v: (1..=m).map(|i| state(2 * i + 1)).collect(),
                }
            }
            StateEncoding::Binary => {
                let width = (usize::BITS - (count - 1).leading_zeros()) as usize;
                let vocab = Vocabulary::new((0..width).map(|b| format!("b{b}"))).expect("distinct identifiers");
                let state = |k: usize| State::new((0..width).map(|b| k >> b & 1 == 1).collect());
                Gadgets {
                    vocab,
                    s: state(0),
                    t: state(1),
                    u: (1..=m).map(|i| state(2 * i)).collect(),
                    v: (1..=m).map(|i| state(2 * i + 1)).collect(),
                }
            }
        }
    }

    fn z(&self, lit: Literal) -> State {
        let i = lit.unsigned_abs() as usize - 1;
        if lit > 0 {
            self.u[i].clone()
        } else {
            self.v[i].clone()
        }
    }
}

fn trace(states: &[&State]) -> Trace {
    Trace::new(states.iter().map(|&s| s.clone()).collect()).expect("gadget traces are non-empty")
}

/// Builds the synthesis instance for `phi`. See [`gen_prohibition`] and
/// [`gen_obligation`] for the trace families.
pub fn generate(kind: NormKind, phi: &ThreeSatInstance, encoding: StateEncoding) -> ReductionArtifacts {
    let m = phi.num_vars();
    let g = Gadgets::new(m, encoding);
    let (s, t) = (&g.s, &g.t);

    let mut negative = vec![trace(&[s, t])];
    for i in 0..m {
        negative.push(trace(&[s, &g.v[i], t, s, &g.u[i], t]));
    }

    let mut positive = vec![trace(&[s]), trace(&[t])];
    for i in 0..m {
        let (u, v) = (&g.u[i], &g.v[i]);
        positive.push(trace(&[s, v, u, t]));
        if kind == NormKind::Prohibition {
            positive.extend([
                trace(&[v]),
                trace(&[u]),
                trace(&[v, t]),
                trace(&[u, t]),
                trace(&[s, v]),
                trace(&[s, u]),
            ]);
        }
    }
    if kind == NormKind::Prohibition {
        for i in 0..m {
            for j in i + 1..m {
                positive.push(trace(&[&g.v[i], &g.u[j]]));
                positive.push(trace(&[&g.u[j], &g.v[i]]));
            }
        }
    }
    for clause in phi.clauses() {
        let [a, b, c] = clause.map(|l| g.z(l));
        positive.push(trace(&[s, &a, &b, &c, t]));
    }

    let gamma = LabeledTraceSet::new(g.vocab, positive, negative).expect("gadget states share the vocabulary");
    ReductionArtifacts {
        kind,
        instance: phi.clone(),
        gamma,
        s: g.s,
        t: g.t,
        u: g.u,
        v: g.v,
    }
}

/// Prohibition reduction. Negative: `(s, t)` and `(s, v_i, t, s, u_i, t)`.
/// Positive: `(s)`, `(t)`; per variable `(s, v_i, u_i, t)`, `(v_i)`, `(u_i)`,
/// `(v_i, t)`, `(u_i, t)`, `(s, v_i)`, `(s, u_i)`; for each pair `i < j`,
/// `(v_i, u_j)` and `(u_j, v_i)`; one clause trace per clause.
pub fn gen_prohibition(phi: &ThreeSatInstance, encoding: StateEncoding) -> ReductionArtifacts {
    generate(NormKind::Prohibition, phi, encoding)
}

/// Obligation reduction. Negative traces as for prohibitions; positive:
/// `(s)`, `(t)`, `(s, v_i, u_i, t)` per variable and the clause traces.
pub fn gen_obligation(phi: &ThreeSatInstance, encoding: StateEncoding) -> ReductionArtifacts {
    generate(NormKind::Obligation, phi, encoding)
}

impl ReductionArtifacts {
    fn index(&self, state: &State) -> usize {
        self.gamma
            .universe()
            .index_of(state)
            .expect("gadget states occur in the negative traces")
    }

    /// The role whose `u_i`/`v_i` membership encodes the assignment:
    /// deadline for prohibitions, target for obligations.
    pub fn assignment_role(&self) -> Role {
        match self.kind {
            NormKind::Prohibition => Role::Deadline,
            NormKind::Obligation => Role::Target,
        }
    }

    /// Universe indices of `(s, t, u, v)`.
    pub fn gadget_indices(&self) -> (usize, usize, Vec<usize>, Vec<usize>) {
        let universe = self.gamma.universe();
        let idx = |s: &State| universe.index_of(s).expect("gadget state in universe");
        (
            idx(&self.s),
            idx(&self.t),
            self.u.iter().map(idx).collect(),
            self.v.iter().map(idx).collect(),
        )
    }

    /// Triple for assignment `f`: `X_C = {s}`, `t` in the target
    /// (prohibition) or deadline (obligation) set, and `u_i` or `v_i` in the
    /// remaining set according to `f(x_i)`.
    pub fn assignment_to_triple(&self, f: &[bool]) -> Result<StateSetTriple, ReductionError> {
        let m = self.instance.num_vars();
        if f.len() != m {
            return Err(ReductionError::AssignmentLength { got: f.len(), want: m });
        }
        let n = self.gamma.universe().len();
        let mut triple = StateSetTriple::empty(self.kind, n);
        triple.condition.insert(self.index(&self.s));
        let t_role = match self.kind {
            NormKind::Prohibition => Role::Target,
            NormKind::Obligation => Role::Deadline,
        };
        triple.get_mut(t_role).insert(self.index(&self.t));
        let role = self.assignment_role();
        for (i, &value) in f.iter().enumerate() {
            let state = if value { &self.u[i] } else { &self.v[i] };
            let idx = self.index(state);
            triple.get_mut(role).insert(idx);
        }
        Ok(triple)
    }

    /// Reads `f(x_i) = [u_i in the assignment role's set]` off a triple that
    /// solves the generated instance.
    pub fn triple_to_assignment(&self, triple: &StateSetTriple) -> Result<Vec<bool>, ReductionError> {
        if let Verification::Counterexample(cex) = verify_triple(triple, &self.gamma) {
            return Err(ReductionError::NotASolution(cex));
        }
        let set: &StateSet = triple.get(self.assignment_role());
        Ok(self.u.iter().map(|u| set.contains(self.index(u))).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(lits: [Literal; 3]) -> ThreeSatInstance {
        ThreeSatInstance::new(lits.iter().map(|l| l.unsigned_abs() as usize).max().unwrap(), vec![lits]).unwrap()
    }

    #[test]
    fn instance_validation() {
        assert_eq!(ThreeSatInstance::new(0, vec![]), Err(ReductionError::NoVariables));
        assert!(matches!(
            ThreeSatInstance::new(2, vec![[1, -3, 2]]),
            Err(ReductionError::VariableOutOfRange { var: -3, .. })
        ));
        assert!(ThreeSatInstance::new(2, vec![[1, 0, 2]]).is_err());
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(sat3_oracle(&ThreeSatInstance::complete_unsat()).unwrap(), Sat3Outcome::Unsatisfiable);
        let phi = ThreeSatInstance::new(3, vec![[1, -2, 3]]).unwrap();
        assert!(sat3_oracle(&phi).unwrap().is_sat());
        let big = ThreeSatInstance::new(21, vec![]).unwrap();
        assert!(matches!(sat3_oracle(&big), Err(ReductionError::OracleCap { .. })));
    }

    #[test]
    fn random_is_deterministic_and_in_range() {
        let a = random_3sat(5, 10, 42);
        assert_eq!(a, random_3sat(5, 10, 42));
        assert_ne!(a, random_3sat(5, 10, 43));
        assert_eq!(a.clauses().len(), 10);
        assert!(ThreeSatInstance::new(5, a.clauses().to_vec()).is_ok());
    }

    #[test]
    fn dimacs_round_trip_and_errors() {
        let phi = random_3sat(4, 6, 1);
        assert_eq!(ThreeSatInstance::from_dimacs(&phi.to_dimacs()).unwrap(), phi);
        let commented = "c hello\np cnf 2 1\n1 -2\n 2 0\n";
        assert_eq!(ThreeSatInstance::from_dimacs(commented).unwrap().clauses(), &[[1, -2, 2]]);
        for bad in ["1 2 3 0\n", "p cnf 3 1\n1 2 0\n", "p cnf 3 2\n1 2 3 0\n", "p cnf 3 1\n1 2 3\n", "p cnf 2 1\n1 2 3 0\n"] {
            assert!(ThreeSatInstance::from_dimacs(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn prohibition_gadget_for_single_variable() {
        let art = gen_prohibition(&single([1, 1, 1]), StateEncoding::OneHot);
        let (s, t, u, v) = (&art.s, &art.t, &art.u[0], &art.v[0]);
        let want_neg = vec![trace(&[s, t]), trace(&[s, v, t, s, u, t])];
        let want_pos = vec![
            trace(&[s]),
            trace(&[t]),
            trace(&[s, v, u, t]),
            trace(&[v]),
            trace(&[u]),
            trace(&[v, t]),
            trace(&[u, t]),
            trace(&[s, v]),
            trace(&[s, u]),
            trace(&[s, u, u, u, t]),
        ];
        assert_eq!(art.gamma.negative(), want_neg.as_slice());
        assert_eq!(art.gamma.positive(), want_pos.as_slice());
        assert_eq!(art.gamma.vocab().names(), &["q_s", "q_t", "q_u1", "q_v1"]);
    }

    #[test]
    fn family_sizes() {
        let phi = random_3sat(3, 2, 5);
        let p = gen_prohibition(&phi, StateEncoding::OneHot);
        assert_eq!((p.gamma.negative().len(), p.gamma.positive().len()), (4, 31));
        let o = gen_obligation(&single([1, 1, 1]), StateEncoding::OneHot);
        assert_eq!((o.gamma.negative().len(), o.gamma.positive().len()), (2, 4));
        for m in 1..=6 {
            for n in [1, 4, 9] {
                let phi = random_3sat(m, n, (m * 100 + n) as u64);
                let p = gen_prohibition(&phi, StateEncoding::OneHot);
                assert_eq!(p.gamma.negative().len(), 1 + m);
                assert_eq!(p.gamma.positive().len(), 2 + 7 * m + m * (m - 1) + n);
                let o = gen_obligation(&phi, StateEncoding::Binary);
                assert_eq!(o.gamma.negative().len(), 1 + m);
                assert_eq!(o.gamma.positive().len(), 2 + m + n);
                assert_eq!(p.gamma.universe().len(), 2 * m + 2);
                assert_eq!(o.gamma.universe().len(), 2 * m + 2);
            }
        }
    }

    #[test]
    fn binary_encoding_is_compact_and_distinct() {
        let phi = random_3sat(3, 1, 0);
        let art = gen_prohibition(&phi, StateEncoding::Binary);
        // 8 gadget states need 3 bits
        assert_eq!(art.gamma.vocab().len(), 3);
        assert_eq!(art.gamma.universe().len(), 8);
        let one = gen_obligation(&single([1, 1, -1]), StateEncoding::Binary);
        assert_eq!(one.gamma.vocab().len(), 2);
    }

    #[test]
    fn satisfying_assignment_maps_to_verified_triple() {
        let phi = single([1, 1, 1]);
        let art = gen_prohibition(&phi, StateEncoding::OneHot);
        let (s, t, u, v) = art.gadget_indices();
        let good = art.assignment_to_triple(&[true]).unwrap();
        assert_eq!(good.condition, StateSet::from_indices(4, [s]));
        assert_eq!(good.target, StateSet::from_indices(4, [t]));
        assert_eq!(good.deadline, StateSet::from_indices(4, [u[0]]));
        assert!(verify_triple(&good, &art.gamma).is_ok());
        assert_eq!(art.triple_to_assignment(&good).unwrap(), vec![true]);

        let bad = art.assignment_to_triple(&[false]).unwrap();
        assert_eq!(bad.deadline, StateSet::from_indices(4, [v[0]]));
        // the clause trace (s, u1, u1, u1, t) is positive but now violated
        match verify_triple(&bad, &art.gamma) {
            Verification::Counterexample(cex) => {
                assert_eq!(cex.label, crate::trace::Label::Positive);
                assert_eq!(cex.trace, 9);
            }
            Verification::Ok => panic!("falsifying assignment verified"),
        }
        assert!(matches!(art.triple_to_assignment(&bad), Err(ReductionError::NotASolution(_))));
        assert!(art.assignment_to_triple(&[true, false]).is_err());
    }

    #[test]
    fn obligation_assignment_round_trip() {
        let phi = ThreeSatInstance::new(2, vec![[1, -2, -2], [-1, 2, 2]]).unwrap();
        let art = gen_obligation(&phi, StateEncoding::OneHot);
        for f in [[true, true], [false, false]] {
            let triple = art.assignment_to_triple(&f).unwrap();
            assert!(verify_triple(&triple, &art.gamma).is_ok());
            assert_eq!(art.triple_to_assignment(&triple).unwrap(), f);
        }
        let triple = art.assignment_to_triple(&[true, false]).unwrap();
        assert!(!verify_triple(&triple, &art.gamma).is_ok());
    }
}
