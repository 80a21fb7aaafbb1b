//! Minimal revision of a norm so that it classifies a trace set.
//!
//! Norms are compared as triples over S(Γ): the distance is the total size
//! of the three symmetric differences, so it ranges over `0..=3·|S|`.

use thiserror::Error;

use crate::monitor::{ConditionalNorm, NormKind, Role};
use crate::sat::{self, at_most_k, Lit, SolveError, SolveStats, SolverConfig};
use crate::synthesis::{self, encode, Solution, StateSetTriple, SynthesisError};
use crate::trace::{IndexedTraces, LabeledTraceSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum DistanceError {
    #[error("triples range over universes of different sizes ({0} and {1})")]
    Universe(usize, usize),
    #[error("cannot compare a {0} with a {1}")]
    Kind(NormKind, NormKind),
}

/// `|X_C Δ X'_C| + |X_Z Δ X'_Z| + |X_D Δ X'_D|`.
pub fn distance(a: &StateSetTriple, b: &StateSetTriple) -> Result<usize, DistanceError> {
    if a.kind != b.kind {
        return Err(DistanceError::Kind(a.kind, b.kind));
    }
    if a.universe_size() != b.universe_size() {
        return Err(DistanceError::Universe(a.universe_size(), b.universe_size()));
    }
    Ok(Role::ALL
        .iter()
        .map(|&r| a.get(r).symmetric_difference_len(b.get(r)))
        .sum())
}

/// Largest possible distance over a universe of `universe_size` states.
pub fn max_distance(universe_size: usize) -> usize {
    3 * universe_size
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Budget {
    AtMost(usize),
    Minimize,
}

#[derive(Debug, Clone)]
pub struct RevisionProblem<'a> {
    pub gamma: &'a LabeledTraceSet,
    pub reference: &'a ConditionalNorm,
    pub budget: Budget,
}

/// States added to and removed from one component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentChange {
    pub role: Role,
    pub added: Vec<usize>,
    pub removed: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Revision {
    pub reference: StateSetTriple,
    pub solution: Solution,
    pub distance: usize,
}

impl Revision {
    pub fn changes(&self) -> Vec<ComponentChange> {
        Role::ALL
            .iter()
            .map(|&role| {
                let before = self.reference.get(role);
                let after = self.solution.triple.get(role);
                ComponentChange {
                    role,
                    added: after.difference(before).collect(),
                    removed: before.difference(after).collect(),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RevisionOutcome {
    Revised(Revision),
    NoSolution { reference: StateSetTriple },
}

impl RevisionOutcome {
    pub fn revision(&self) -> Option<&Revision> {
        match self {
            RevisionOutcome::Revised(r) => Some(r),
            RevisionOutcome::NoSolution { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RevisionResult {
    pub outcome: RevisionOutcome,
    /// Budgets probed, in order, with their feasibility.
    pub probes: Vec<(usize, bool)>,
    pub stats: SolveStats,
}

struct Prober<'a> {
    traces: IndexedTraces,
    reference: StateSetTriple,
    config: &'a SolverConfig,
    probes: Vec<(usize, bool)>,
    stats: SolveStats,
}

impl Prober<'_> {
    /// A classifying triple within distance `bound` of the reference, if any.
    fn probe(&mut self, bound: usize) -> Result<Option<StateSetTriple>, SolveError> {
        let mut encoding = encode(self.reference.kind, &self.traces);
        // literal true exactly when the variable differs from the reference
        let mismatch: Vec<Lit> = encoding
            .core_vars()
            .map(|(role, state, var)| {
                if self.reference.get(role).contains(state) {
                    var.negative()
                } else {
                    var.positive()
                }
            })
            .collect();
        at_most_k(&mut encoding.system, &mismatch, bound);
        let solved = sat::solve(&encoding.system, self.config)?;
        self.stats.accumulate(&solved.stats);
        let found = solved.outcome.model().map(|m| encoding.decode(m));
        self.probes.push((bound, found.is_some()));
        Ok(found)
    }
}

/// Solves the revision problem. With [`Budget::Minimize`] the result is at
/// the smallest feasible distance, found by binary search.
pub fn revise(problem: &RevisionProblem<'_>, config: &SolverConfig) -> Result<RevisionResult, SynthesisError> {
    let gamma = problem.gamma;
    let universe = gamma.universe();
    let reference = StateSetTriple::project(problem.reference, &universe);
    let mut prober = Prober {
        traces: IndexedTraces::new(gamma, &universe),
        reference: reference.clone(),
        config,
        probes: Vec::new(),
        stats: SolveStats::default(),
    };
    let max = max_distance(universe.len());

    let found = match problem.budget {
        Budget::AtMost(m) => prober.probe(m.min(max))?,
        Budget::Minimize => {
            // the unrestricted probe doubles as the plain synthesis check
            match prober.probe(max)? {
                None => None,
                Some(first) => {
                    let mut best_distance = distance(&reference, &first).expect("same universe");
                    let mut best = first;
                    let mut lo = 0;
                    while lo < best_distance {
                        let mid = lo + (best_distance - lo) / 2;
                        match prober.probe(mid)? {
                            Some(t) => {
                                let d = distance(&reference, &t).expect("same universe");
                                debug_assert!(d <= mid);
                                best_distance = d;
                                best = t;
                            }
                            None => lo = mid + 1,
                        }
                    }
                    Some(best)
                }
            }
        }
    };

    let outcome = match found {
        None => RevisionOutcome::NoSolution { reference },
        Some(triple) => {
            let d = distance(&reference, &triple).expect("same universe");
            let solution = synthesis::finish(triple, gamma, &universe)?;
            RevisionOutcome::Revised(Revision {
                reference,
                solution,
                distance: d,
            })
        }
    };
    Ok(RevisionResult {
        outcome,
        probes: prober.probes,
        stats: prober.stats,
    })
}

/// Smallest distance from `reference` to any classifying triple, by
/// enumeration. `None` when no triple classifies `gamma`.
pub fn brute_force_min_distance(gamma: &LabeledTraceSet, reference: &StateSetTriple, cap: usize) -> Result<Option<usize>, SynthesisError> {
    let traces = IndexedTraces::new(gamma, &gamma.universe());
    let mut best: Option<usize> = None;
    synthesis::enumerate_solutions(reference.kind, &traces, cap, |t| {
        let d = distance(reference, &t).expect("same universe");
        best = Some(best.map_or(d, |b| b.min(d)));
        true
    })?;
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prop::Vocabulary;
    use crate::synthesis::StateSet;
    use crate::trace::{State, Trace};

    fn onehot_gamma(n: usize, positive: &[&[usize]], negative: &[&[usize]]) -> LabeledTraceSet {
        let vocab = Vocabulary::new((0..n).map(|i| format!("q{i}"))).unwrap();
        let state = |i: usize| State::new((0..n).map(|k| k == i).collect());
        let traces = |ts: &[&[usize]]| {
            ts.iter()
                .map(|t| Trace::new(t.iter().map(|&i| state(i)).collect()).unwrap())
                .collect()
        };
        LabeledTraceSet::new(vocab, traces(positive), traces(negative)).unwrap()
    }

    fn triple(kind: NormKind, n: usize, c: &[usize], z: &[usize], d: &[usize]) -> StateSetTriple {
        StateSetTriple {
            kind,
            condition: StateSet::from_indices(n, c.iter().copied()),
            target: StateSet::from_indices(n, z.iter().copied()),
            deadline: StateSet::from_indices(n, d.iter().copied()),
        }
    }

    #[test]
    fn distance_examples() {
        let p = NormKind::Prohibition;
        let a = triple(p, 3, &[0], &[1], &[2]);
        assert_eq!(distance(&a, &a), Ok(0));
        let b = triple(p, 3, &[0], &[1], &[]);
        assert_eq!(distance(&a, &b), Ok(1));
        let c = StateSetTriple {
            kind: p,
            condition: a.condition.complement(),
            target: a.target.complement(),
            deadline: a.deadline.complement(),
        };
        assert_eq!(distance(&a, &c), Ok(9));
        assert_eq!(max_distance(3), 9);
        assert_eq!(
            distance(&a, &triple(NormKind::Obligation, 3, &[], &[], &[])),
            Err(DistanceError::Kind(p, NormKind::Obligation))
        );
        assert_eq!(distance(&a, &triple(p, 2, &[], &[], &[])), Err(DistanceError::Universe(3, 2)));
    }

    #[test]
    fn correct_reference_is_kept() {
        let g = onehot_gamma(2, &[&[0], &[1]], &[&[0, 1]]);
        let v = g.vocab().clone();
        let norm = ConditionalNorm::parse(NormKind::Prohibition, "q0", "q1", "false", &v).unwrap();
        let problem = RevisionProblem {
            gamma: &g,
            reference: &norm,
            budget: Budget::Minimize,
        };
        let r = revise(&problem, &SolverConfig::default()).unwrap();
        let rev = r.outcome.revision().unwrap();
        assert_eq!(rev.distance, 0);
        assert_eq!(rev.solution.triple, rev.reference);
    }

    #[test]
    fn one_edit_repairs_missing_target() {
        // s = q0, t = q1; reference X_C = {s}, X_P = X_D = {}
        let g = onehot_gamma(2, &[&[0], &[1]], &[&[0, 1]]);
        let v = g.vocab().clone();
        let norm = ConditionalNorm::parse(NormKind::Prohibition, "q0 & !q1", "false", "false", &v).unwrap();
        let reference = StateSetTriple::project(&norm, &g.universe());
        assert_eq!(brute_force_min_distance(&g, &reference, 18).unwrap(), Some(1));
        let problem = RevisionProblem {
            gamma: &g,
            reference: &norm,
            budget: Budget::Minimize,
        };
        let r = revise(&problem, &SolverConfig::default()).unwrap();
        let rev = r.outcome.revision().unwrap();
        assert_eq!(rev.distance, 1);
        let changes = rev.changes();
        assert_eq!(changes[1].added, vec![1]);
        assert!(changes.iter().map(|c| c.added.len() + c.removed.len()).sum::<usize>() == 1);

        let strict = RevisionProblem {
            budget: Budget::AtMost(0),
            ..problem
        };
        let r = revise(&strict, &SolverConfig::default()).unwrap();
        assert!(r.outcome.revision().is_none());
    }

    #[test]
    fn inseparable_example_has_no_revision_at_max_budget() {
        let g = onehot_gamma(3, &[&[0, 1, 2]], &[&[0, 0, 1, 2]]);
        let v = g.vocab().clone();
        for kind in NormKind::ALL {
            let norm = ConditionalNorm::parse(kind, "q0", "q1", "q2", &v).unwrap();
            let problem = RevisionProblem {
                gamma: &g,
                reference: &norm,
                budget: Budget::AtMost(9),
            };
            let r = revise(&problem, &SolverConfig::default()).unwrap();
            assert!(matches!(r.outcome, RevisionOutcome::NoSolution { .. }));
        }
    }
}
