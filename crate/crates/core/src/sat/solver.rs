use thiserror::Error;

use super::{CnfSystem, Lit, Var};

/// Search procedure behind [`solve`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    /// Backtracking with unit propagation and chronological backtracking.
    Dpll,
    /// Conflict-driven clause learning with first-UIP backjumping.
    #[default]
    Cdcl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    pub engine: Engine,
    /// Cap on decisions plus conflicts; `None` is unbounded.
    pub max_steps: Option<u64>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            engine: Engine::Cdcl,
            max_steps: Some(50_000_000),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("step budget of {limit} exhausted after {decisions} decisions and {conflicts} conflicts")]
    ResourceLimit {
        limit: u64,
        decisions: u64,
        conflicts: u64,
    },
    #[error("internal error: model falsifies clause {clause}")]
    BadModel { clause: usize },
}

/// Total assignment, indexed by variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model(Vec<bool>);

impl Model {
    pub fn value(&self, var: Var) -> bool {
        self.0[var.index()]
    }

    pub fn lit(&self, lit: Lit) -> bool {
        self.value(lit.var()) != lit.is_negated()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatOutcome {
    Satisfiable(Model),
    Unsatisfiable,
}

impl SatOutcome {
    pub fn model(&self) -> Option<&Model> {
        match self {
            SatOutcome::Satisfiable(m) => Some(m),
            SatOutcome::Unsatisfiable => None,
        }
    }

    pub fn is_sat(&self) -> bool {
        matches!(self, SatOutcome::Satisfiable(_))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub variables: usize,
    pub clauses: usize,
    pub decisions: u64,
    pub propagations: u64,
    pub conflicts: u64,
    pub learned: u64,
}

impl SolveStats {
    /// Field-wise sum, for reporting several solver runs together.
    pub fn accumulate(&mut self, other: &SolveStats) {
        self.variables = self.variables.max(other.variables);
        self.clauses = self.clauses.max(other.clauses);
        self.decisions += other.decisions;
        self.propagations += other.propagations;
        self.conflicts += other.conflicts;
        self.learned += other.learned;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solved {
    pub outcome: SatOutcome,
    pub stats: SolveStats,
}

/// Decides `sys`. Branches on the lowest-index unassigned variable, false
/// first, so results are reproducible. Any model is checked against every
/// clause before it is returned.
pub fn solve(sys: &CnfSystem, config: &SolverConfig) -> Result<Solved, SolveError> {
    let mut search = Search::new(sys, config);
    let result = if search.load(sys) {
        search.run()
    } else {
        Ok(SatOutcome::Unsatisfiable)
    };
    let stats = search.stats;
    let outcome = result?;
    if let SatOutcome::Satisfiable(model) = &outcome {
        if let Some(clause) = sys.first_falsified(model.as_slice()) {
            return Err(SolveError::BadModel { clause });
        }
    }
    Ok(Solved { outcome, stats })
}

const UNASSIGNED: u8 = 2;

struct Search<'a> {
    config: &'a SolverConfig,
    clauses: Vec<Vec<Lit>>,
    /// clause indices watching each literal code
    watches: Vec<Vec<usize>>,
    /// 0 = false, 1 = true, 2 = unassigned
    values: Vec<u8>,
    levels: Vec<usize>,
    reasons: Vec<Option<usize>>,
    trail: Vec<Lit>,
    /// trail position where each decision level starts
    level_starts: Vec<usize>,
    /// decision literal per level and whether it is the second branch (DPLL)
    decisions: Vec<(Lit, bool)>,
    queue_head: usize,
    next_branch: usize,
    seen: Vec<bool>,
    stats: SolveStats,
}

impl<'a> Search<'a> {
    fn new(sys: &CnfSystem, config: &'a SolverConfig) -> Self {
        let n = sys.num_vars();
        Search {
            config,
            clauses: Vec::with_capacity(sys.num_clauses()),
            watches: vec![Vec::new(); 2 * n],
            values: vec![UNASSIGNED; n],
            levels: vec![0; n],
            reasons: vec![None; n],
            trail: Vec::with_capacity(n),
            level_starts: Vec::new(),
            decisions: Vec::new(),
            queue_head: 0,
            next_branch: 0,
            seen: vec![false; n],
            stats: SolveStats {
                variables: n,
                clauses: sys.num_clauses(),
                ..SolveStats::default()
            },
        }
    }

    fn value(&self, lit: Lit) -> u8 {
        match self.values[lit.var().index()] {
            UNASSIGNED => UNASSIGNED,
            v => v ^ lit.is_negated() as u8,
        }
    }

    fn level(&self) -> usize {
        self.level_starts.len()
    }

    fn assign(&mut self, lit: Lit, reason: Option<usize>) {
        let v = lit.var().index();
        self.values[v] = !lit.is_negated() as u8;
        self.levels[v] = self.level();
        self.reasons[v] = reason;
        self.trail.push(lit);
    }

    fn attach(&mut self, clause: Vec<Lit>) -> usize {
        let idx = self.clauses.len();
        self.watches[(!clause[0]).code()].push(idx);
        self.watches[(!clause[1]).code()].push(idx);
        self.clauses.push(clause);
        idx
    }

    /// Loads the clauses; `false` if unsatisfiable at level 0.
    fn load(&mut self, sys: &CnfSystem) -> bool {
        for clause in sys.clauses() {
            match clause.len() {
                0 => return false,
                1 => match self.value(clause[0]) {
                    0 => return false,
                    1 => {}
                    _ => self.assign(clause[0], None),
                },
                _ => {
                    self.attach(clause.clone());
                }
            }
        }
        true
    }

    fn budget_exceeded(&self) -> Option<SolveError> {
        let limit = self.config.max_steps?;
        (self.stats.decisions + self.stats.conflicts > limit).then_some(SolveError::ResourceLimit {
            limit,
            decisions: self.stats.decisions,
            conflicts: self.stats.conflicts,
        })
    }

    /// Unit propagation; returns the index of a falsified clause on conflict.
    fn propagate(&mut self) -> Option<usize> {
        while self.queue_head < self.trail.len() {
            let p = self.trail[self.queue_head];
            self.queue_head += 1;
            self.stats.propagations += 1;
            let false_lit = !p;
            let watchers = std::mem::take(&mut self.watches[p.code()]);
            let mut kept = Vec::with_capacity(watchers.len());
            let mut conflict = None;
            let mut iter = watchers.into_iter();
            for ci in iter.by_ref() {
                let clause = &mut self.clauses[ci];
                if clause[0] == false_lit {
                    clause.swap(0, 1);
                }
                let first = clause[0];
                if self.value(first) == 1 {
                    kept.push(ci);
                    continue;
                }
                let clause = &mut self.clauses[ci];
                let replacement = (2..clause.len()).find(|&k| {
                    let l = clause[k];
                    let v = self.values[l.var().index()];
                    v == UNASSIGNED || (v ^ l.is_negated() as u8) == 1
                });
                if let Some(k) = replacement {
                    let clause = &mut self.clauses[ci];
                    clause.swap(1, k);
                    let watch = (!clause[1]).code();
                    self.watches[watch].push(ci);
                    continue;
                }
                kept.push(ci);
                match self.value(first) {
                    0 => {
                        conflict = Some(ci);
                        break;
                    }
                    _ => self.assign(first, Some(ci)),
                }
            }
            kept.extend(iter);
            self.watches[p.code()] = kept;
            if conflict.is_some() {
                return conflict;
            }
        }
        None
    }

    fn backtrack(&mut self, level: usize) {
        if self.level() <= level {
            return;
        }
        let start = self.level_starts[level];
        for lit in self.trail.drain(start..) {
            let v = lit.var().index();
            self.values[v] = UNASSIGNED;
            self.reasons[v] = None;
            self.next_branch = self.next_branch.min(v);
        }
        self.level_starts.truncate(level);
        self.decisions.truncate(level);
        self.queue_head = self.trail.len();
    }

    fn decide(&mut self, lit: Lit, second_branch: bool) {
        self.level_starts.push(self.trail.len());
        self.decisions.push((lit, second_branch));
        self.assign(lit, None);
    }

    fn pick_branch(&mut self) -> Option<Var> {
        while self.next_branch < self.values.len() {
            if self.values[self.next_branch] == UNASSIGNED {
                return Some(Var(self.next_branch as u32));
            }
            self.next_branch += 1;
        }
        None
    }

    fn run(&mut self) -> Result<SatOutcome, SolveError> {
        loop {
            if let Some(conflict) = self.propagate() {
                self.stats.conflicts += 1;
                if self.level() == 0 {
                    return Ok(SatOutcome::Unsatisfiable);
                }
                let resolved = match self.config.engine {
                    Engine::Dpll => self.flip_last_decision(),
                    Engine::Cdcl => {
                        self.learn(conflict);
                        true
                    }
                };
                if !resolved {
                    return Ok(SatOutcome::Unsatisfiable);
                }
                if let Some(err) = self.budget_exceeded() {
                    return Err(err);
                }
                continue;
            }
            let Some(var) = self.pick_branch() else {
                let model = self.values.iter().map(|&v| v == 1).collect();
                return Ok(SatOutcome::Satisfiable(Model(model)));
            };
            self.stats.decisions += 1;
            if let Some(err) = self.budget_exceeded() {
                return Err(err);
            }
            self.decide(var.negative(), false);
        }
    }

    /// DPLL: undo to the deepest decision whose other branch is unexplored
    /// and take that branch. `false` when the search space is exhausted.
    fn flip_last_decision(&mut self) -> bool {
        while let Some(&(lit, second)) = self.decisions.last() {
            let level = self.level();
            self.backtrack(level - 1);
            if !second {
                self.decide(!lit, true);
                return true;
            }
        }
        false
    }

    /// CDCL: derive the first-UIP clause, backjump and assert it.
    fn learn(&mut self, conflict: usize) {
        let current = self.level();
        let mut learnt: Vec<Lit> = vec![Lit(0)];
        let mut pending = 0usize;
        let mut clause = conflict;
        let mut idx = self.trail.len();
        let mut implied: Option<Lit> = None;
        loop {
            let lits = &self.clauses[clause];
            let skip = usize::from(implied.is_some());
            for &q in &lits[skip..] {
                let v = q.var().index();
                if !self.seen[v] && self.levels[v] > 0 {
                    self.seen[v] = true;
                    if self.levels[v] == current {
                        pending += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                idx -= 1;
                if self.seen[self.trail[idx].var().index()] {
                    break;
                }
            }
            let p = self.trail[idx];
            self.seen[p.var().index()] = false;
            pending -= 1;
            implied = Some(p);
            if pending == 0 {
                break;
            }
            clause = self.reasons[p.var().index()].expect("implied literal has a reason");
        }
        let uip = implied.expect("conflict involves the current level");
        learnt[0] = !uip;
        for l in &learnt[1..] {
            self.seen[l.var().index()] = false;
        }

        let mut backjump = 0;
        if learnt.len() > 1 {
            let (pos, lvl) = learnt[1..]
                .iter()
                .enumerate()
                .map(|(k, l)| (k + 1, self.levels[l.var().index()]))
                .max_by_key(|&(k, lvl)| (lvl, std::cmp::Reverse(k)))
                .expect("non-empty tail");
            learnt.swap(1, pos);
            backjump = lvl;
        }
        self.backtrack(backjump);
        self.stats.learned += 1;
        let asserting = learnt[0];
        if learnt.len() == 1 {
            self.assign(asserting, None);
        } else {
            let ci = self.attach(learnt);
            self.assign(asserting, Some(ci));
        }
    }
}
