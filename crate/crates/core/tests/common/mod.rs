//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use normsynth::{LabeledTraceSet, NormKind, State, Trace, Vocabulary};
use rand::Rng;

/// Smallest `(i, j)` (1-based) violating a norm, by direct enumeration of
/// the violation definitions. `c`, `z`, `d` report membership per position.
pub fn violation(kind: NormKind, len: usize, c: &dyn Fn(usize) -> bool, z: &dyn Fn(usize) -> bool, d: &dyn Fn(usize) -> bool) -> Option<(usize, usize)> {
    for i in 0..len {
        for j in i..len {
            if !c(i) {
                continue;
            }
            let hit = match kind {
                NormKind::Prohibition => z(j) && !(i + 1..j).any(d),
                NormKind::Obligation => d(j) && !(i..=j).any(z),
            };
            if hit {
                return Some((i + 1, j + 1));
            }
        }
    }
    None
}

/// A triple as plain membership vectors `[condition, target, deadline]`.
pub type Sets = [Vec<bool>; 3];

pub fn violates_indexed(kind: NormKind, sets: &Sets, trace: &[usize]) -> bool {
    violation(
        kind,
        trace.len(),
        &|k| sets[0][trace[k]],
        &|k| sets[1][trace[k]],
        &|k| sets[2][trace[k]],
    )
    .is_some()
}

pub fn classifies(kind: NormKind, sets: &Sets, positive: &[Vec<usize>], negative: &[Vec<usize>]) -> bool {
    negative.iter().all(|t| violates_indexed(kind, sets, t)) && !positive.iter().any(|t| violates_indexed(kind, sets, t))
}

/// Every classifying triple over `n` states, in counting order of the mask
/// with bit `role * n + state`.
pub fn all_solutions(kind: NormKind, n: usize, positive: &[Vec<usize>], negative: &[Vec<usize>]) -> Vec<Sets> {
    let mut out = Vec::new();
    for mask in 0u64..1 << (3 * n) {
        let sets: Sets = std::array::from_fn(|r| (0..n).map(|s| mask >> (r * n + s) & 1 == 1).collect());
        if classifies(kind, &sets, positive, negative) {
            out.push(sets);
        }
    }
    out
}

/// Universe in first-occurrence order (positives first) and both trace lists
/// as universe indices.
pub fn index(gamma: &LabeledTraceSet) -> (Vec<State>, Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let mut universe: Vec<State> = Vec::new();
    let mut idx = |s: &State| match universe.iter().position(|u| u == s) {
        Some(i) => i,
        None => {
            universe.push(s.clone());
            universe.len() - 1
        }
    };
    let positive: Vec<Vec<usize>> = gamma.positive().iter().map(|t| t.states().iter().map(&mut idx).collect()).collect();
    let negative: Vec<Vec<usize>> = gamma.negative().iter().map(|t| t.states().iter().map(&mut idx).collect()).collect();
    (universe, positive, negative)
}

pub fn sets_of(triple: &normsynth::StateSetTriple) -> Sets {
    [&triple.condition, &triple.target, &triple.deadline]
        .map(|s| (0..s.universe_size()).map(|i| s.contains(i)).collect())
}

/// Random trace set over two propositions: at most `max_states` distinct
/// states, at most `max_traces` traces of length at most `max_len`, with at
/// least one trace.
pub fn random_gamma<R: Rng>(rng: &mut R, max_states: usize, max_traces: usize, max_len: usize) -> LabeledTraceSet {
    let vocab = Vocabulary::new(["a", "b"]).unwrap();
    let mut pool: Vec<usize> = (0..4).collect();
    for i in (1..pool.len()).rev() {
        pool.swap(i, rng.gen_range(0..=i));
    }
    pool.truncate(rng.gen_range(1..=max_states.min(4)));
    let state = |k: usize| State::new(vec![k & 1 == 1, k & 2 == 2]);
    let count = rng.gen_range(1..=max_traces);
    let (mut positive, mut negative) = (Vec::new(), Vec::new());
    for _ in 0..count {
        let len = rng.gen_range(1..=max_len);
        let trace = Trace::new((0..len).map(|_| state(pool[rng.gen_range(0..pool.len())])).collect()).unwrap();
        if rng.gen_bool(0.5) {
            positive.push(trace);
        } else {
            negative.push(trace);
        }
    }
    LabeledTraceSet::new(vocab, positive, negative).unwrap()
}

/// Truth-table satisfiability of clauses over `m` variables.
pub fn satisfiable(m: usize, clauses: &[[i64; 3]]) -> Option<Vec<bool>> {
    (0u64..1 << m).map(|mask| (0..m).map(|i| mask >> i & 1 == 1).collect::<Vec<bool>>()).find(|f| {
        clauses
            .iter()
            .all(|c| c.iter().any(|&l| f[l.unsigned_abs() as usize - 1] == (l > 0)))
    })
}
