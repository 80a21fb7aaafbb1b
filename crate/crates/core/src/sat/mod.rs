//! CNF systems, cardinality constraints and a complete SAT procedure.

mod card;
mod solver;

use std::fmt;
use std::ops::Not;

pub use card::at_most_k;
pub use solver::{solve, Engine, Model, SatOutcome, SolveError, SolveStats, Solved, SolverConfig};

use crate::monitor::Role;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub u32);

impl Var {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn positive(self) -> Lit {
        Lit::new(self, false)
    }

    pub fn negative(self) -> Lit {
        Lit::new(self, true)
    }
}

/// A literal, packed as `2 * var + negated`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(u32);

impl Lit {
    pub fn new(var: Var, negated: bool) -> Self {
        Lit(var.0 << 1 | negated as u32)
    }

    pub fn var(self) -> Var {
        Var(self.0 >> 1)
    }

    pub fn is_negated(self) -> bool {
        self.0 & 1 == 1
    }

    pub(crate) fn code(self) -> usize {
        self.0 as usize
    }

    /// DIMACS integer (1-based, sign = polarity).
    pub fn to_dimacs(self) -> i64 {
        let v = self.var().0 as i64 + 1;
        if self.is_negated() {
            -v
        } else {
            v
        }
    }

    pub fn from_dimacs(n: i64) -> Option<Self> {
        if n == 0 {
            return None;
        }
        let var = Var(u32::try_from(n.unsigned_abs() - 1).ok()?);
        Some(Lit::new(var, n < 0))
    }
}

impl Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// What a variable stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarTag {
    /// Membership of universe state `state` in the set for `role`.
    Core { role: Role, state: usize },
    /// Violation witness for a negative trace.
    Witness,
    /// Sequential-counter register.
    Counter,
    Free,
}

/// A clause list over `num_vars` variables with per-variable tags.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CnfSystem {
    tags: Vec<VarTag>,
    clauses: Vec<Vec<Lit>>,
    has_empty_clause: bool,
}

impl CnfSystem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn new_var(&mut self, tag: VarTag) -> Var {
        let v = Var(self.tags.len() as u32);
        self.tags.push(tag);
        v
    }

    pub fn num_vars(&self) -> usize {
        self.tags.len()
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn tag(&self, var: Var) -> VarTag {
        self.tags[var.index()]
    }

    pub fn tags(&self) -> &[VarTag] {
        &self.tags
    }

    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    pub fn has_empty_clause(&self) -> bool {
        self.has_empty_clause
    }

    /// Adds a clause. Duplicate literals are merged and tautologies dropped;
    /// returns `false` if the clause was dropped.
    ///
    /// Panics on a literal whose variable was not allocated.
    pub fn add_clause<I: IntoIterator<Item = Lit>>(&mut self, lits: I) -> bool {
        let mut clause: Vec<Lit> = lits.into_iter().collect();
        for lit in &clause {
            assert!(
                lit.var().index() < self.tags.len(),
                "literal {lit:?} refers to an unallocated variable"
            );
        }
        clause.sort_unstable();
        clause.dedup();
        if clause.windows(2).any(|w| w[0].var() == w[1].var()) {
            return false;
        }
        if clause.is_empty() {
            self.has_empty_clause = true;
        }
        self.clauses.push(clause);
        true
    }

    /// Whether `assignment` (indexed by variable) satisfies every clause.
    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.first_falsified(assignment).is_none()
    }

    pub fn first_falsified(&self, assignment: &[bool]) -> Option<usize> {
        self.clauses.iter().position(|clause| {
            !clause
                .iter()
                .any(|&l| assignment[l.var().index()] != l.is_negated())
        })
    }

    /// DIMACS CNF text.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars(), self.num_clauses());
        for clause in &self.clauses {
            for lit in clause {
                out.push_str(&lit.to_dimacs().to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }
}
