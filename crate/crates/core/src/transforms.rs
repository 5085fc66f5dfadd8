//! Local rewriting: resolution, DP-reduction, full-subsumption pairs and
//! nearly-full-subsumption flips.

use serde::{Deserialize, Serialize};

use crate::clause::Clause;
use crate::clause_set::ClauseSet;
use crate::error::{Error, Result};
use crate::literal::{Literal, Var};

/// C ◇ D, defined when exactly one literal of `c` is complemented in `d`.
pub fn resolve(c: &Clause, d: &Clause) -> Result<Clause> {
    let clashes = c.clashing_literals(d);
    if clashes.len() != 1 {
        return Err(Error::NotResolvable(c.clone(), d.clone()));
    }
    let v = clashes[0].var();
    let r = c
        .without_var(v)
        .union(&d.without_var(v))
        .expect("single clash removed");
    Ok(r)
}

/// DP_v(F): every clause mentioning `v` is replaced by the resolvents on `v`
/// with exactly one clash.
pub fn dp_reduce(f: &ClauseSet, v: Var) -> Result<ClauseSet> {
    if !f.has_var(v) {
        return Err(Error::UnknownVariable(v));
    }
    let pos = f.occurrences(Literal::positive(v));
    let neg = f.occurrences(Literal::negative(v));
    let mut out: Vec<Clause> = f
        .iter()
        .filter(|c| !c.contains_var(v))
        .cloned()
        .collect();
    for c in &pos {
        for d in &neg {
            if c.clash_count(d) == 1 {
                out.push(resolve(c, d)?);
            }
        }
    }
    Ok(ClauseSet::new(out))
}

/// Two clauses differing in exactly one complemented variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FsPair {
    pub left: Clause,
    pub right: Clause,
    pub resolvent: Clause,
    pub resolution_variable: Var,
}

impl FsPair {
    /// Recognises `{c, d}` as an fs-pair, normalising `left < right`.
    pub fn from_clauses(c: &Clause, d: &Clause) -> Option<FsPair> {
        if c.clash_count(d) != 1 || c.symmetric_difference_len(d) != 2 {
            return None;
        }
        let (left, right) = if c <= d { (c, d) } else { (d, c) };
        let x = left.clashing_literals(right)[0];
        Some(FsPair {
            left: left.clone(),
            right: right.clone(),
            resolvent: left.without_var(x.var()),
            resolution_variable: x.var(),
        })
    }
}

/// Result of an fs-resolution or fs-extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FsStep {
    pub result: ClauseSet,
    /// No variable lost (resolution) or none introduced (extension).
    pub strict: bool,
}

pub fn find_fs_pairs(f: &ClauseSet) -> Vec<FsPair> {
    let cls = f.clauses();
    let mut out = Vec::new();
    for (i, a) in cls.iter().enumerate() {
        for b in &cls[i + 1..] {
            if a.len().abs_diff(b.len()) != 0 {
                continue;
            }
            if let Some(p) = FsPair::from_clauses(a, b) {
                out.push(p);
            }
        }
    }
    out.sort();
    out
}

/// Has an fs-pair whose resolvent is not already present.
pub fn is_fs_resolvable(f: &ClauseSet) -> bool {
    find_fs_pairs(f).iter().any(|p| !f.contains(&p.resolvent))
}

/// Has an fs-pair whose resolution keeps every variable.
pub fn is_strictly_fs_resolvable(f: &ClauseSet) -> bool {
    find_fs_pairs(f)
        .iter()
        .any(|p| fs_resolve(f, p).is_ok_and(|s| s.strict))
}

pub fn fs_resolve(f: &ClauseSet, p: &FsPair) -> Result<FsStep> {
    if !f.contains(&p.left) || !f.contains(&p.right) {
        return Err(Error::PairNotInSet);
    }
    if f.contains(&p.resolvent) {
        return Err(Error::ResolventPresent(p.resolvent.clone()));
    }
    let result = f
        .without_all(&[p.left.clone(), p.right.clone()])
        .with_clauses([p.resolvent.clone()]);
    let strict = result.n() == f.n();
    Ok(FsStep { result, strict })
}

/// Replaces `c` by `c ∪ {v}` and `c ∪ {v̄}`.
pub fn fs_extend(f: &ClauseSet, c: &Clause, v: Var) -> Result<FsStep> {
    if !f.contains(c) {
        return Err(Error::ClauseNotInSet(c.clone()));
    }
    if c.contains_var(v) {
        return Err(Error::VariableInClause(v));
    }
    let a = c.with_literal(Literal::positive(v))?;
    let b = c.with_literal(Literal::negative(v))?;
    for x in [&a, &b] {
        if f.contains(x) {
            return Err(Error::ResultClausePresent(x.clone()));
        }
    }
    let strict = f.has_var(v);
    Ok(FsStep {
        result: f.without(c).with_clauses([a, b]),
        strict,
    })
}

/// `{E ∪ {x}, E ∪ {x̄, y}}`: resolvable with symmetric difference 3.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NfsPair {
    pub with_resolution_literal: Clause,
    pub with_side_literal: Clause,
    pub resolution_literal: Literal,
    pub side_literal: Literal,
    pub common_part: Clause,
}

impl NfsPair {
    pub fn from_clauses(c: &Clause, d: &Clause) -> Option<NfsPair> {
        if c.clash_count(d) != 1 || c.symmetric_difference_len(d) != 3 {
            return None;
        }
        // The clause holding the side literal is the longer one.
        let (short, long) = if c.len() < d.len() { (c, d) } else { (d, c) };
        if long.len() != short.len() + 1 {
            return None;
        }
        let x = short.clashing_literals(long)[0];
        let common = short.without_var(x.var());
        let rest = long.difference(&common);
        let y = rest.literals().iter().copied().find(|&l| l != x.complement())?;
        Some(NfsPair {
            with_resolution_literal: short.clone(),
            with_side_literal: long.clone(),
            resolution_literal: x,
            side_literal: y,
            common_part: common,
        })
    }

    /// The flipped clauses `E ∪ {x, ȳ}` and `E ∪ {y}`.
    pub fn flipped(&self) -> (Clause, Clause) {
        let a = self
            .common_part
            .with_literal(self.resolution_literal)
            .and_then(|c| c.with_literal(self.side_literal.complement()))
            .expect("flip clause is clash-free");
        let b = self
            .common_part
            .with_literal(self.side_literal)
            .expect("flip clause is clash-free");
        (a, b)
    }

    pub fn clauses(&self) -> [&Clause; 2] {
        [&self.with_resolution_literal, &self.with_side_literal]
    }
}

pub fn find_nfs_pairs(f: &ClauseSet) -> Vec<NfsPair> {
    let cls = f.clauses();
    let mut out = Vec::new();
    for (i, a) in cls.iter().enumerate() {
        for b in &cls[i + 1..] {
            if a.len().abs_diff(b.len()) != 1 {
                continue;
            }
            if let Some(p) = NfsPair::from_clauses(a, b) {
                out.push(p);
            }
        }
    }
    out.sort();
    out
}

/// Pairs whose flip clauses are both absent, i.e. where a flip is allowed.
pub fn find_flippable_pairs(f: &ClauseSet) -> Vec<NfsPair> {
    find_nfs_pairs(f)
        .into_iter()
        .filter(|p| {
            let (a, b) = p.flipped();
            !f.contains(&a) && !f.contains(&b)
        })
        .collect()
}

pub fn nfs_flip(f: &ClauseSet, p: &NfsPair) -> Result<ClauseSet> {
    if !f.contains(&p.with_resolution_literal) || !f.contains(&p.with_side_literal) {
        return Err(Error::PairNotInSet);
    }
    let (a, b) = p.flipped();
    for x in [&a, &b] {
        if f.contains(x) {
            return Err(Error::FlipClausePresent(x.clone()));
        }
    }
    Ok(f
        .without_all(&[p.with_resolution_literal.clone(), p.with_side_literal.clone()])
        .with_clauses([a, b]))
}
