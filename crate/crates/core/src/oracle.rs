//! Brute-force semantic oracles.
//!
//! These deliberately share nothing with the hitting/dyadic machinery: they
//! enumerate total assignments over the variables involved and evaluate
//! clauses directly. They are the independent side of every cross-check in
//! the crate.

use crate::clause::Clause;
use crate::clause_set::ClauseSet;
use crate::error::{Error, Result};
use crate::literal::Var;

pub const DEFAULT_ORACLE_BOUND: usize = 24;
const HARD_LIMIT: usize = 40;

/// A clause over compact variable indices: polarity masks.
#[derive(Clone, Copy)]
struct MaskClause {
    pos: u64,
    neg: u64,
}

impl MaskClause {
    #[inline]
    fn satisfied_by(self, assignment: u64) -> bool {
        (assignment & self.pos) | (!assignment & self.neg) != 0
    }

    fn last_index(self) -> Option<usize> {
        let all = self.pos | self.neg;
        (all != 0).then(|| 63 - all.leading_zeros() as usize)
    }
}

fn compile(clauses: &[Clause], vars: &[Var]) -> Vec<MaskClause> {
    clauses
        .iter()
        .map(|c| {
            let mut m = MaskClause { pos: 0, neg: 0 };
            for l in c.literals() {
                let idx = vars.binary_search(&l.var()).expect("variable indexed");
                if l.is_positive() {
                    m.pos |= 1 << idx;
                } else {
                    m.neg |= 1 << idx;
                }
            }
            m
        })
        .collect()
}

/// Exhaustive satisfiability and equivalence checks up to `bound` variables.
#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    pub bound: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            bound: DEFAULT_ORACLE_BOUND,
        }
    }
}

impl Oracle {
    pub fn new(bound: usize) -> Self {
        Oracle {
            bound: bound.min(HARD_LIMIT),
        }
    }

    fn check_bound(&self, n: usize) -> Result<()> {
        if n > self.bound {
            return Err(Error::BoundExceeded {
                what: "oracle variable count",
                limit: self.bound as u64,
                actual: n as u64,
            });
        }
        Ok(())
    }

    /// True iff some total assignment satisfies every clause.
    pub fn is_satisfiable(&self, f: &ClauseSet) -> Result<bool> {
        self.check_bound(f.n())?;
        let masks = compile(f.clauses(), f.vars());
        // Each clause is checked once its highest variable is assigned.
        let mut watches: Vec<Vec<MaskClause>> = vec![Vec::new(); f.n()];
        for m in masks {
            match m.last_index() {
                Some(i) => watches[i].push(m),
                None => return Ok(false),
            }
        }
        Ok(search(&watches, 0, 0))
    }

    /// Same satisfying total assignments over var(F) ∪ var(G).
    pub fn equivalent(&self, f: &ClauseSet, g: &ClauseSet) -> Result<bool> {
        let vars = f.union(g).vars().to_vec();
        self.check_bound(vars.len())?;
        let mf = compile(f.clauses(), &vars);
        let mg = compile(g.clauses(), &vars);
        let eval = |ms: &[MaskClause], a: u64| ms.iter().all(|m| m.satisfied_by(a));
        Ok((0..1u64 << vars.len()).all(|a| eval(&mf, a) == eval(&mg, a)))
    }

    /// No clause can be removed without changing the set of models.
    pub fn is_irredundant(&self, f: &ClauseSet) -> Result<bool> {
        self.check_bound(f.n())?;
        for c in f.clauses() {
            if self.equivalent(f, &f.without(c))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn search(watches: &[Vec<MaskClause>], depth: usize, assignment: u64) -> bool {
    if depth == watches.len() {
        return true;
    }
    for value in [false, true] {
        let a = if value {
            assignment | 1 << depth
        } else {
            assignment
        };
        if watches[depth].iter().all(|m| m.satisfied_by(a)) && search(watches, depth + 1, a) {
            return true;
        }
    }
    false
}

pub fn sat_oracle(f: &ClauseSet) -> Result<bool> {
    Oracle::default().is_satisfiable(f)
}

pub fn is_logically_equivalent(f: &ClauseSet, g: &ClauseSet) -> Result<bool> {
    Oracle::default().equivalent(f, g)
}

pub fn is_irredundant(f: &ClauseSet) -> Result<bool> {
    Oracle::default().is_irredundant(f)
}
