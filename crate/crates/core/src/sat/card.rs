use super::{CnfSystem, Lit, VarTag};

/// Adds clauses that hold iff at most `k` of `lits` are true, using a
/// sequential counter (`(n - 1) * k` registers, O(n * k) clauses).
///
/// Returns the number of clauses added.
pub fn at_most_k(sys: &mut CnfSystem, lits: &[Lit], k: usize) -> usize {
    let before = sys.num_clauses();
    let n = lits.len();
    if k >= n {
        return 0;
    }
    if k == 0 {
        for &x in lits {
            sys.add_clause([!x]);
        }
        return sys.num_clauses() - before;
    }

    // reg[i][j] true when at least j + 1 of lits[0..=i] are true
    let reg: Vec<Vec<Lit>> = (0..n - 1)
        .map(|_| (0..k).map(|_| sys.new_var(VarTag::Counter).positive()).collect())
        .collect();

    sys.add_clause([!lits[0], reg[0][0]]);
    for r in &reg[0][1..] {
        sys.add_clause([!*r]);
    }
    for i in 1..n - 1 {
        let x = lits[i];
        sys.add_clause([!x, reg[i][0]]);
        sys.add_clause([!reg[i - 1][0], reg[i][0]]);
        for j in 1..k {
            sys.add_clause([!x, !reg[i - 1][j - 1], reg[i][j]]);
            sys.add_clause([!reg[i - 1][j], reg[i][j]]);
        }
        sys.add_clause([!x, !reg[i - 1][k - 1]]);
    }
    sys.add_clause([!lits[n - 1], !reg[n - 2][k - 1]]);
    sys.num_clauses() - before
}
