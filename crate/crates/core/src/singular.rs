//! Singular variables, singular DP-reduction and the nonsingular normal form.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clause::Clause;
use crate::clause_set::ClauseSet;
use crate::error::{Error, Result};
use crate::literal::{Literal, Var};
use crate::transforms::{dp_reduce, FsPair};

/// Classification of the singular variables of a clause-set.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityProfile {
    /// Variables with `min(ldeg(v), ldeg(v̄)) = 1`.
    pub singular: Vec<Var>,
    /// Singular variables of total degree 2.
    pub one_singular: Vec<Var>,
    pub non_one_singular: Vec<Var>,
}

impl SingularityProfile {
    pub fn nsv(&self) -> usize {
        self.singular.len()
    }

    pub fn nosv(&self) -> usize {
        self.one_singular.len()
    }

    pub fn nnosv(&self) -> usize {
        self.non_one_singular.len()
    }

    pub fn is_nonsingular(&self) -> bool {
        self.singular.is_empty()
    }
}

pub fn is_singular_var(f: &ClauseSet, v: Var) -> bool {
    let a = f.ldeg(Literal::positive(v));
    let b = f.ldeg(Literal::negative(v));
    a.min(b) == 1
}

pub fn singularity_profile(f: &ClauseSet) -> SingularityProfile {
    let mut p = SingularityProfile::default();
    for &v in f.vars() {
        if !is_singular_var(f, v) {
            continue;
        }
        p.singular.push(v);
        if f.vdeg(v) == 2 {
            p.one_singular.push(v);
        } else {
            p.non_one_singular.push(v);
        }
    }
    p
}

pub fn is_nonsingular(f: &ClauseSet) -> bool {
    f.vars().iter().all(|&v| !is_singular_var(f, v))
}

/// DP-reduction on a singular variable.
pub fn sdp_reduce(f: &ClauseSet, v: Var) -> Result<ClauseSet> {
    if !f.has_var(v) || !is_singular_var(f, v) {
        return Err(Error::NotSingular(v));
    }
    dp_reduce(f, v)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalFormResult {
    pub normal_form: ClauseSet,
    pub reduction_order: Vec<Var>,
    pub singularity_index: usize,
}

/// sNF(F), eliminating the smallest singular variable first.
pub fn snf(f: &ClauseSet) -> Result<NormalFormResult> {
    snf_with(f, |_| 0)
}

/// sNF(F) with a caller-chosen elimination order: `choose` receives the
/// current singular variables (ascending) and returns an index into them.
pub fn snf_with(f: &ClauseSet, mut choose: impl FnMut(&[Var]) -> usize) -> Result<NormalFormResult> {
    if !f.is_uhit() {
        return Err(Error::NotUhit);
    }
    let mut current = f.clone();
    let mut order = Vec::new();
    loop {
        let singular = singularity_profile(&current).singular;
        if singular.is_empty() {
            break;
        }
        let v = singular[choose(&singular) % singular.len()];
        let next = dp_reduce(&current, v)?;
        debug_assert!(next.is_uhit(), "singular DP-reduction left UHIT");
        debug_assert_eq!(next.c() + 1, current.c());
        order.push(v);
        current = next;
    }
    Ok(NormalFormResult {
        singularity_index: order.len(),
        normal_form: current,
        reduction_order: order,
    })
}

pub fn singularity_index(f: &ClauseSet) -> Result<usize> {
    snf(f).map(|r| r.singularity_index)
}

/// One singular hitting extension with its witness subset G′.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularExtension {
    pub result: ClauseSet,
    pub witness: ClauseSet,
    pub extension_literal: Literal,
}

fn extend_with(f: &ClauseSet, witness: &[&Clause], x: Literal) -> ClauseSet {
    let inter = witness
        .iter()
        .skip(1)
        .fold(witness[0].clone(), |acc, c| acc.intersection(c));
    let removed: Vec<Clause> = witness.iter().map(|c| (*c).clone()).collect();
    let mut add = Vec::with_capacity(witness.len() + 1);
    add.push(inter.with_literal(x).expect("fresh variable"));
    for c in witness {
        add.push(c.with_literal(x.complement()).expect("fresh variable"));
    }
    f.without_all(&removed).with_clauses(add)
}

/// All m-singular hitting extensions of `f` with the fresh literal
/// `max(var(F)) + 1`: for each `G′ ⊆ F`, `|G′| = m`, whose intersection
/// clashes with every clause outside `G′`.
pub fn singular_hitting_extensions(f: &ClauseSet, m: usize) -> Result<Vec<SingularExtension>> {
    if !f.is_uhit() {
        return Err(Error::NotUhit);
    }
    let c = f.c();
    if m == 0 || m > c {
        return Err(Error::BadArity { m, c });
    }
    let x = Literal::positive(f.max_var() + 1);
    let cls = f.clauses();
    let mut witnesses: Vec<Vec<usize>> = (0..c)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut out = Vec::new();
            let mut chosen = vec![first];
            extension_subsets(cls, m, &mut chosen, cls[first].clone(), &mut out);
            out
        })
        .collect();
    witnesses.sort();
    Ok(witnesses
        .into_iter()
        .map(|idx| {
            let w: Vec<&Clause> = idx.iter().map(|&i| &cls[i]).collect();
            SingularExtension {
                result: extend_with(f, &w, x),
                witness: ClauseSet::new(w.iter().map(|c| (*c).clone())),
                extension_literal: x,
            }
        })
        .collect())
}

/// The singular hitting extension for one witness subset `G′`, with the
/// fresh literal `max(var(F)) + 1`.
pub fn singular_extension_by(f: &ClauseSet, witness: &ClauseSet) -> Result<ClauseSet> {
    if !f.is_uhit() {
        return Err(Error::NotUhit);
    }
    if witness.is_top() {
        return Err(Error::EmptySubset);
    }
    if !witness.is_subset_of(f) {
        return Err(Error::NotSubset);
    }
    let inter = witness.intersection().unwrap();
    if !f.iter().filter(|c| !witness.contains(c)).all(|d| inter.clashes_with(d)) {
        return Err(Error::NotAFactor);
    }
    let w: Vec<&Clause> = witness.iter().collect();
    Ok(extend_with(f, &w, Literal::positive(f.max_var() + 1)))
}

fn extension_subsets(
    cls: &[Clause],
    m: usize,
    chosen: &mut Vec<usize>,
    inter: Clause,
    out: &mut Vec<Vec<usize>>,
) {
    if chosen.len() == m {
        let ok = cls
            .iter()
            .enumerate()
            .filter(|(i, _)| !chosen.contains(i))
            .all(|(_, d)| inter.clashes_with(d));
        if ok {
            out.push(chosen.clone());
        }
        return;
    }
    // ⊥ clashes with nothing, so only the whole set survives.
    if inter.is_empty() && m < cls.len() {
        return;
    }
    let last = *chosen.last().unwrap();
    let need = m - chosen.len();
    for next in last + 1..=cls.len() - need {
        chosen.push(next);
        extension_subsets(cls, m, chosen, inter.intersection(&cls[next]), out);
        chosen.pop();
    }
}

/// Adds the unit clause `{x}` and `x̄` to every other clause.
pub fn full_singular_unit_extension(f: &ClauseSet) -> ClauseSet {
    let x = Literal::positive(f.max_var() + 1);
    let mut cls: Vec<Clause> = f
        .iter()
        .map(|c| c.with_literal(x.complement()).expect("fresh variable"))
        .collect();
    cls.push(Clause::from_sorted(vec![x]));
    ClauseSet::new(cls)
}

/// A singular tuple of one or two variables whose elimination strictly
/// shrinks the singular set.
pub fn choose_singular_tuple(f: &ClauseSet) -> Result<Vec<Var>> {
    if !f.is_uhit() {
        return Err(Error::NotUhit);
    }
    let profile = singularity_profile(f);
    if profile.singular.is_empty() {
        return Err(Error::Nonsingular);
    }
    if let Some(&v) = profile.non_one_singular.first() {
        return Ok(vec![v]);
    }
    let v = profile.one_singular[0];
    let main = f.occurrences(Literal::positive(v))[0];
    let rest = main.without_var(v);
    if rest.literals().iter().all(|&x| f.ldeg(x) >= 3) {
        return Ok(vec![v]);
    }
    rest.literals()
        .iter()
        .find(|&&x| f.ldeg(x) == 2 && f.ldeg(x.complement()) >= 2)
        .map(|x| vec![v, x.var()])
        .ok_or(Error::NoEligibleCompanion(v))
}

/// Eliminates the variables of a tuple in order.
pub fn dp_reduce_tuple(f: &ClauseSet, tuple: &[Var]) -> Result<ClauseSet> {
    tuple.iter().try_fold(f.clone(), |g, &v| dp_reduce(&g, v))
}

/// `{⋂F_v, ⋂F_v̄}` for a singular variable of a UHIT.
pub fn fs_pair_of_singular(f: &ClauseSet, v: Var) -> Result<FsPair> {
    if !f.is_uhit() {
        return Err(Error::NotUhit);
    }
    if !f.has_var(v) || !is_singular_var(f, v) {
        return Err(Error::NotSingular(v));
    }
    let a = f.occurrence_set(Literal::positive(v)).intersection().unwrap();
    let b = f.occurrence_set(Literal::negative(v)).intersection().unwrap();
    FsPair::from_clauses(&a, &b).ok_or_else(|| {
        Error::PreconditionViolation(format!("intersections {a} and {b} do not form an fs-pair"))
    })
}

/// Unit-clause propagation until no unit clause remains (or ⊥ is reached).
pub fn unit_propagate(f: &ClauseSet) -> ClauseSet {
    let mut g = f.clone();
    while !g.is_bottom() {
        let Some(u) = g.unit_clauses().first().map(|c| c.literals()[0]) else {
            break;
        };
        g = g.assign(u);
    }
    g
}
