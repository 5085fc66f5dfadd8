//! Clause-factors, clause-factorisations and clause-irreducibility.

use serde::{Deserialize, Serialize};

use crate::clause::Clause;
use crate::clause_set::ClauseSet;
use crate::error::{Error, Result};
use crate::literal::{Literal, Var};
use crate::oracle::Oracle;
use crate::singular::singularity_profile;
use crate::transforms::find_fs_pairs;

pub const DEFAULT_FACTOR_BOUND: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClauseFactor {
    pub subset: ClauseSet,
    pub intersection: Clause,
    pub residue: ClauseSet,
    pub trivial: bool,
}

impl ClauseFactor {
    /// Assembles the record for `subset ⊆ parent` without checking the
    /// factor condition.
    fn build(parent: &ClauseSet, subset: ClauseSet) -> ClauseFactor {
        let intersection = subset.intersection().expect("non-empty subset");
        let residue = ClauseSet::new(subset.iter().map(|c| c.difference(&intersection)));
        // F′ = F and F′ unsatisfiable; a factor is unsatisfiable iff its
        // intersection is ⊥.
        let trivial = subset.c() == 1 || (subset.c() == parent.c() && intersection.is_empty());
        ClauseFactor {
            subset,
            intersection,
            residue,
            trivial,
        }
    }

    pub fn size(&self) -> usize {
        self.subset.c()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorisation {
    pub cofactor: ClauseSet,
    pub pivot: Clause,
    pub residual: ClauseSet,
    pub shared_variables: Vec<Var>,
}

impl Factorisation {
    pub fn reassemble(&self) -> ClauseSet {
        pointed_or(&self.cofactor, &self.pivot, &self.residual).expect("pivot is in the cofactor")
    }

    pub fn is_trivial(&self) -> bool {
        self.cofactor.is_bottom() || self.residual.is_bottom()
    }

    /// `δ(F) = δ(F₀) + δ(G) − 1 + |var(F₀) ∩ var(G)|`, where F is the
    /// reassembled clause-set.
    pub fn deficiency_identity_holds(&self) -> bool {
        let f = self.reassemble();
        f.deficiency()
            == self.cofactor.deficiency() + self.residual.deficiency() - 1
                + self.shared_variables.len() as i64
    }

    /// The side conditions: `var(C) ∩ var(G) = ∅` and the union is disjoint.
    pub fn side_conditions_hold(&self) -> bool {
        let disjoint_vars = self.pivot.vars().all(|v| !self.residual.has_var(v));
        let rest = self.cofactor.without(&self.pivot);
        let factor = ClauseSet::new([self.pivot.clone()]).combinatorial_or(&self.residual);
        disjoint_vars && factor.iter().all(|c| !rest.contains(c))
    }
}

/// `(F ∖ {C}) ∪ ({C} ∨ G)`.
pub fn pointed_or(f: &ClauseSet, pivot: &Clause, g: &ClauseSet) -> Result<ClauseSet> {
    if !f.contains(pivot) {
        return Err(Error::PivotNotInSet(pivot.clone()));
    }
    let factor = ClauseSet::new([pivot.clone()]).combinatorial_or(g);
    Ok(f.without(pivot).union(&factor))
}

fn check_subset(f: &ClauseSet, s: &ClauseSet) -> Result<()> {
    if s.is_top() {
        return Err(Error::EmptySubset);
    }
    if !s.is_subset_of(f) {
        return Err(Error::NotSubset);
    }
    Ok(())
}

fn clash_criterion(f: &ClauseSet, s: &ClauseSet, inter: &Clause) -> bool {
    f.iter().filter(|c| !s.contains(c)).all(|d| inter.clashes_with(d))
}

/// Decides whether `s ⊆ f` is a clause-factor. For UHIT `f` the clash
/// criterion decides; otherwise the residue is checked with the oracle.
pub fn is_clause_factor(f: &ClauseSet, s: &ClauseSet) -> Result<ClauseFactor> {
    check_subset(f, s)?;
    if f.is_uhit() {
        let candidate = ClauseFactor::build(f, s.clone());
        return if clash_criterion(f, s, &candidate.intersection) {
            Ok(candidate)
        } else {
            Err(Error::NotAFactor)
        };
    }
    is_clause_factor_by_oracle(f, s, &Oracle::default())
}

/// The definitional test: the residue must be unsatisfiable.
pub fn is_clause_factor_by_oracle(
    f: &ClauseSet,
    s: &ClauseSet,
    oracle: &Oracle,
) -> Result<ClauseFactor> {
    check_subset(f, s)?;
    let candidate = ClauseFactor::build(f, s.clone());
    if oracle.is_satisfiable(&candidate.residue)? {
        Err(Error::NotAFactor)
    } else {
        Ok(candidate)
    }
}

/// Which subset sizes the DFS still has to visit, after the shortcuts.
#[derive(Debug, Clone)]
struct SizePlan {
    wanted: Vec<bool>,
}

impl SizePlan {
    fn new(c: usize, nontrivial_only: bool, has_fs_pair: bool, has_full_var: bool) -> Self {
        let mut wanted = vec![false; c + 1];
        for (k, w) in wanted.iter_mut().enumerate().skip(1) {
            let trivial = k == 1 || k == c;
            *w = !(trivial && nontrivial_only);
        }
        // Sizes 2 and c−1 are produced directly from fs-pairs and unit clauses.
        for k in [2, c.saturating_sub(1)] {
            if k > 1 && k < c {
                wanted[k] = false;
            }
        }
        if !has_fs_pair {
            for w in wanted.iter_mut().take(5.min(c)).skip(3) {
                *w = false;
            }
        }
        if !has_full_var && c >= 4 {
            for w in wanted.iter_mut().take(c).skip((c - 3).max(2)) {
                *w = false;
            }
        }
        SizePlan { wanted }
    }

    fn min(&self) -> Option<usize> {
        self.wanted.iter().position(|&w| w)
    }

    fn max(&self) -> Option<usize> {
        self.wanted.iter().rposition(|&w| w)
    }
}

struct Dfs<'a> {
    cls: &'a [Clause],
    plan: &'a SizePlan,
    min: usize,
    max: usize,
    stop_at_first: bool,
}

impl Dfs<'_> {
    /// `excluded` clauses must each clash with the running intersection.
    fn run(
        &self,
        next: usize,
        chosen: &mut Vec<usize>,
        excluded: &mut Vec<usize>,
        inter: Option<&Clause>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if self.stop_at_first && !out.is_empty() {
            return;
        }
        let remaining = self.cls.len() - next;
        if chosen.len() > self.max || chosen.len() + remaining < self.min {
            return;
        }
        if next == self.cls.len() {
            if self.plan.wanted[chosen.len()] {
                out.push(chosen.clone());
            }
            return;
        }
        // include
        let new_inter = match inter {
            Some(i) => i.intersection(&self.cls[next]),
            None => self.cls[next].clone(),
        };
        let alive = excluded.iter().all(|&j| new_inter.clashes_with(&self.cls[j]))
            // ⊥ clashes with nothing: only the whole set can still qualify
            && (!new_inter.is_empty() || excluded.is_empty());
        if alive {
            chosen.push(next);
            self.run(next + 1, chosen, excluded, Some(&new_inter), out);
            chosen.pop();
        }
        // exclude
        if inter.is_none_or(|i| i.clashes_with(&self.cls[next])) {
            excluded.push(next);
            self.run(next + 1, chosen, excluded, inter, out);
            excluded.pop();
        }
    }
}

fn require_enumerable(f: &ClauseSet, bound: usize) -> Result<()> {
    if f.c() > bound {
        return Err(Error::BoundExceeded {
            what: "factor enumeration clause count",
            limit: bound as u64,
            actual: f.c() as u64,
        });
    }
    if !f.is_uhit() {
        return Err(Error::NotUhit);
    }
    Ok(())
}

/// Size-2 factors are the fs-pairs, size-(c−1) factors come from unit
/// clauses. Both are nontrivial once the size is strictly between 1 and c.
fn shortcut_factors(f: &ClauseSet) -> Vec<ClauseSet> {
    let c = f.c();
    let mut out = Vec::new();
    if c > 2 {
        for p in find_fs_pairs(f) {
            out.push(ClauseSet::new([p.left, p.right]));
        }
    }
    if c >= 4 {
        for u in f.unit_clauses() {
            out.push(f.without(u));
        }
    }
    out
}

fn collect_factors(
    f: &ClauseSet,
    nontrivial_only: bool,
    stop_at_first: bool,
) -> Vec<ClauseFactor> {
    let c = f.c();
    let plan = SizePlan::new(
        c,
        nontrivial_only,
        !find_fs_pairs(f).is_empty(),
        !f.full_variables().is_empty(),
    );
    let mut subsets = shortcut_factors(f);
    if stop_at_first && !subsets.is_empty() {
        subsets.truncate(1);
    } else if let (Some(min), Some(max)) = (plan.min(), plan.max()) {
        let dfs = Dfs {
            cls: f.clauses(),
            plan: &plan,
            min,
            max,
            stop_at_first,
        };
        let mut found = Vec::new();
        if stop_at_first || c < 12 {
            dfs.run(0, &mut Vec::new(), &mut Vec::new(), None, &mut found);
        } else {
            found = parallel_dfs(&dfs);
        }
        subsets.extend(
            found
                .into_iter()
                .map(|idx| ClauseSet::new(idx.into_iter().map(|i| f.clauses()[i].clone()))),
        );
    }
    let mut factors: Vec<ClauseFactor> = subsets
        .into_iter()
        .map(|s| ClauseFactor::build(f, s))
        .collect();
    factors.sort_by(|a, b| (a.size(), &a.subset).cmp(&(b.size(), &b.subset)));
    factors.dedup();
    factors
}

/// Splits on the include/exclude decisions for the first few clauses.
fn parallel_dfs(dfs: &Dfs<'_>) -> Vec<Vec<usize>> {
    use rayon::prelude::*;
    const SPLIT: usize = 4;
    let prefixes: Vec<u32> = (0..1u32 << SPLIT).collect();
    let mut all: Vec<Vec<usize>> = prefixes
        .into_par_iter()
        .flat_map_iter(|mask| {
            let mut chosen = Vec::new();
            let mut excluded = Vec::new();
            let mut inter: Option<Clause> = None;
            for i in 0..SPLIT {
                if mask >> i & 1 == 1 {
                    let next = match &inter {
                        Some(x) => x.intersection(&dfs.cls[i]),
                        None => dfs.cls[i].clone(),
                    };
                    inter = Some(next);
                    chosen.push(i);
                } else {
                    excluded.push(i);
                }
            }
            let mut out = Vec::new();
            let consistent = match &inter {
                None => true,
                Some(x) => {
                    excluded.iter().all(|&j| x.clashes_with(&dfs.cls[j]))
                        && (!x.is_empty() || excluded.is_empty())
                }
            };
            if consistent {
                dfs.run(SPLIT, &mut chosen, &mut excluded, inter.as_ref(), &mut out);
            }
            out
        })
        .collect();
    all.sort();
    all
}

/// All factors of a UHIT (only the nontrivial ones if asked), ordered by
/// size and then by clause order.
pub fn enumerate_factors(f: &ClauseSet, nontrivial_only: bool) -> Result<Vec<ClauseFactor>> {
    enumerate_factors_bounded(f, nontrivial_only, DEFAULT_FACTOR_BOUND)
}

pub fn enumerate_factors_bounded(
    f: &ClauseSet,
    nontrivial_only: bool,
    bound: usize,
) -> Result<Vec<ClauseFactor>> {
    require_enumerable(f, bound)?;
    Ok(collect_factors(f, nontrivial_only, false))
}

/// Some nontrivial factor, if one exists.
pub fn find_nontrivial_factor(f: &ClauseSet) -> Result<Option<ClauseFactor>> {
    find_nontrivial_factor_bounded(f, DEFAULT_FACTOR_BOUND)
}

pub fn find_nontrivial_factor_bounded(f: &ClauseSet, bound: usize) -> Result<Option<ClauseFactor>> {
    if !f.is_uhit() {
        return Err(Error::NotUhit);
    }
    if f.c() <= 2 {
        return Ok(None);
    }
    // Singular and full variables hand us factors directly.
    let profile = singularity_profile(f);
    let full = f.full_variables();
    if let Some(&v) = profile.singular.first().or(full.first()) {
        let pos = f.occurrence_set(Literal::positive(v));
        let neg = f.occurrence_set(Literal::negative(v));
        for s in [pos.clone(), neg.clone(), pos.union(&neg)] {
            if s.c() > 1 && s.c() < f.c() {
                return Ok(Some(ClauseFactor::build(f, s)));
            }
        }
    }
    require_enumerable(f, bound)?;
    Ok(collect_factors(f, true, true).into_iter().next())
}

pub fn is_clause_irreducible(f: &ClauseSet) -> Result<bool> {
    find_nontrivial_factor(f).map(|x| x.is_none())
}

pub fn factorise(f: &ClauseSet, factor: &ClauseFactor) -> Result<Factorisation> {
    let checked = match is_clause_factor(f, &factor.subset) {
        Ok(x) => x,
        Err(Error::EmptySubset | Error::NotSubset) => return Err(Error::NotAFactor),
        Err(e) => return Err(e),
    };
    let cofactor = f
        .without_all(checked.subset.clauses())
        .with_clauses([checked.intersection.clone()]);
    let shared_variables = cofactor
        .vars()
        .iter()
        .copied()
        .filter(|&v| checked.residue.has_var(v))
        .collect();
    Ok(Factorisation {
        cofactor,
        pivot: checked.intersection,
        residual: checked.residue,
        shared_variables,
    })
}

/// A nontrivial clause-factorisation, if one exists.
pub fn find_nontrivial_factorisation(f: &ClauseSet) -> Result<Option<Factorisation>> {
    match find_nontrivial_factor(f)? {
        Some(fac) => factorise(f, &fac).map(Some),
        None => Ok(None),
    }
}

/// The clause `F` is logically equivalent to, if any.
pub fn clause_equivalent(f: &ClauseSet) -> Result<Clause> {
    clause_equivalent_with(f, &Oracle::default())
}

pub fn clause_equivalent_with(f: &ClauseSet, oracle: &Oracle) -> Result<Clause> {
    let Some(c) = f.intersection() else {
        return Err(Error::NotAClause);
    };
    let residue = ClauseSet::new(f.iter().map(|d| d.difference(&c)));
    if oracle.is_satisfiable(&residue)? {
        return Err(Error::NotAClause);
    }
    debug_assert!(oracle
        .equivalent(f, &ClauseSet::new([c.clone()]))
        .unwrap_or(true));
    Ok(c)
}

/// Recursive splitting along nontrivial factorisations. The result depends
/// on which factor is found first; no uniqueness is claimed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Decomposition {
    Irreducible(ClauseSet),
    Split {
        pivot: Clause,
        cofactor: Box<Decomposition>,
        residual: Box<Decomposition>,
    },
}

impl Decomposition {
    pub fn leaves(&self) -> Vec<&ClauseSet> {
        match self {
            Decomposition::Irreducible(f) => vec![f],
            Decomposition::Split {
                cofactor, residual, ..
            } => {
                let mut v = cofactor.leaves();
                v.extend(residual.leaves());
                v
            }
        }
    }
}

pub fn decompose(f: &ClauseSet) -> Result<Decomposition> {
    Ok(match find_nontrivial_factorisation(f)? {
        None => Decomposition::Irreducible(f.clone()),
        Some(fz) => Decomposition::Split {
            cofactor: Box::new(decompose(&fz.cofactor)?),
            residual: Box::new(decompose(&fz.residual)?),
            pivot: fz.pivot,
        },
    })
}
