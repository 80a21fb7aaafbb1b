mod common;

use normsynth::revision::{brute_force_min_distance, max_distance, RevisionOutcome};
use normsynth::sat::{Engine, SolverConfig};
use normsynth::synthesis::SynthesisEngine;
use normsynth::{distance, revise, synthesize, Budget, ConditionalNorm, LabeledTraceSet, NormKind, Role, RevisionProblem, StateSetTriple};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_reference<R: Rng>(rng: &mut R, gamma: &LabeledTraceSet, kind: NormKind) -> (ConditionalNorm, StateSetTriple) {
    let universe = gamma.universe();
    let mut triple = StateSetTriple::empty(kind, universe.len());
    for role in Role::ALL {
        for s in 0..universe.len() {
            if rng.gen_bool(0.4) {
                triple.get_mut(role).insert(s);
            }
        }
    }
    (triple.to_norm(&universe, gamma.vocab()), triple)
}

fn oracle_min(kind: NormKind, gamma: &LabeledTraceSet, reference: &common::Sets) -> Option<usize> {
    let (universe, pos, neg) = common::index(gamma);
    common::all_solutions(kind, universe.len(), &pos, &neg)
        .iter()
        .map(|x| (0..3).map(|r| x[r].iter().zip(&reference[r]).filter(|(a, b)| a != b).count()).sum())
        .min()
}

#[test]
fn minimized_distance_is_optimal() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut revised = 0;
    for case in 0..120 {
        let gamma = common::random_gamma(&mut rng, 4, 6, 5);
        let kind = NormKind::ALL[case % 2];
        let (norm, triple) = random_reference(&mut rng, &gamma, kind);
        let expected = oracle_min(kind, &gamma, &common::sets_of(&triple));
        assert_eq!(brute_force_min_distance(&gamma, &triple, 12).unwrap(), expected);
        for engine in [Engine::Cdcl, Engine::Dpll] {
            let problem = RevisionProblem { gamma: &gamma, reference: &norm, budget: Budget::Minimize };
            let result = revise(&problem, &SolverConfig { engine, max_steps: None }).unwrap();
            match (&result.outcome, expected) {
                (RevisionOutcome::Revised(r), Some(d)) => {
                    assert_eq!(r.distance, d, "case {case}");
                    assert_eq!(distance(&r.reference, &r.solution.triple).unwrap(), d);
                    assert_eq!(r.reference, triple);
                    revised += 1;
                }
                (RevisionOutcome::NoSolution { .. }, None) => {}
                (got, want) => panic!("case {case}: {got:?} vs {want:?}"),
            }
            // a probe at m is feasible exactly when m reaches the optimum
            for &(m, ok) in &result.probes {
                assert_eq!(ok, expected.is_some_and(|d| m >= d), "case {case} probe {m}");
            }
            let probes = (max_distance(triple.universe_size()) + 1).ilog2() as usize + 2;
            assert!(result.probes.len() <= probes, "{:?}", result.probes);
        }
    }
    assert!(revised > 60);
}

#[test]
fn fixed_budget_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for case in 0..80 {
        let gamma = common::random_gamma(&mut rng, 4, 6, 5);
        let kind = NormKind::ALL[case % 2];
        let (norm, triple) = random_reference(&mut rng, &gamma, kind);
        let best = oracle_min(kind, &gamma, &common::sets_of(&triple));
        for m in 0..=max_distance(triple.universe_size()) {
            let problem = RevisionProblem { gamma: &gamma, reference: &norm, budget: Budget::AtMost(m) };
            let result = revise(&problem, &SolverConfig::default()).unwrap();
            let feasible = best.is_some_and(|d| d <= m);
            assert_eq!(result.outcome.revision().is_some(), feasible, "case {case} m {m}");
            if let Some(r) = result.outcome.revision() {
                assert!(r.distance <= m);
            }
        }
    }
}

#[test]
fn revising_at_maximum_matches_synthesis() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for case in 0..200 {
        let gamma = common::random_gamma(&mut rng, 4, 6, 5);
        for kind in NormKind::ALL {
            let (norm, triple) = random_reference(&mut rng, &gamma, kind);
            let problem = RevisionProblem {
                gamma: &gamma,
                reference: &norm,
                budget: Budget::AtMost(max_distance(triple.universe_size())),
            };
            let revised = revise(&problem, &SolverConfig::default()).unwrap();
            let synthesized = synthesize(&gamma, kind, &SynthesisEngine::default()).unwrap();
            assert_eq!(revised.outcome.revision().is_some(), synthesized.outcome.is_solution(), "case {case} {kind}");
        }
    }
}
