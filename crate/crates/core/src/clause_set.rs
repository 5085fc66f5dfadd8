use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::clause::Clause;
use crate::dyadic::DyadicSum;
use crate::error::{Error, Result};
use crate::literal::{Literal, Var};

/// A finite set of clauses in canonical order, with cached variable set and
/// literal degrees. Values are immutable; every operation returns a new set.
#[derive(Clone, Serialize, Deserialize)]
#[serde(from = "Vec<Clause>", into = "Vec<Clause>")]
pub struct ClauseSet {
    clauses: Vec<Clause>,
    vars: Vec<Var>,
    degrees: BTreeMap<Literal, usize>,
}

/// `(n, c, δ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Measures {
    pub n: usize,
    pub c: usize,
    pub delta: i64,
}

impl ClauseSet {
    /// Builds a clause-set; duplicate clauses collapse (set semantics).
    pub fn new(clauses: impl IntoIterator<Item = Clause>) -> Self {
        let mut clauses: Vec<Clause> = clauses.into_iter().collect();
        clauses.sort_unstable();
        clauses.dedup();
        Self::from_sorted(clauses)
    }

    pub(crate) fn from_sorted(clauses: Vec<Clause>) -> Self {
        let mut degrees = BTreeMap::new();
        for c in &clauses {
            for &l in c.literals() {
                *degrees.entry(l).or_insert(0) += 1;
            }
        }
        let mut vars: Vec<Var> = degrees.keys().map(|l| l.var()).collect();
        vars.dedup();
        ClauseSet {
            clauses,
            vars,
            degrees,
        }
    }

    pub fn from_ints(clauses: &[&[i32]]) -> Result<Self> {
        let cls = clauses
            .iter()
            .map(|c| Clause::from_ints(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(cls))
    }

    /// ⊤, the empty clause-set.
    pub fn top() -> Self {
        Self::from_sorted(Vec::new())
    }

    /// {⊥}.
    pub fn bottom() -> Self {
        Self::from_sorted(vec![Clause::empty()])
    }

    /// A(V): all full clauses over `vars`.
    pub fn full(vars: &[Var]) -> Self {
        vars.iter().fold(Self::bottom(), |acc, &v| {
            let pair = Self::new([
                Clause::from_sorted(vec![Literal::positive(v)]),
                Clause::from_sorted(vec![Literal::negative(v)]),
            ]);
            acc.combinatorial_or(&pair)
        })
    }

    #[inline]
    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Clause> {
        self.clauses.iter()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.vars.len()
    }

    #[inline]
    pub fn c(&self) -> usize {
        self.clauses.len()
    }

    #[inline]
    pub fn deficiency(&self) -> i64 {
        self.c() as i64 - self.n() as i64
    }

    pub fn measures(&self) -> Measures {
        Measures {
            n: self.n(),
            c: self.c(),
            delta: self.deficiency(),
        }
    }

    pub fn is_top(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn is_bottom(&self) -> bool {
        self.clauses.len() == 1 && self.clauses[0].is_empty()
    }

    /// Sorted variable set var(F).
    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn max_var(&self) -> Var {
        self.vars.last().copied().unwrap_or(0)
    }

    pub fn has_var(&self, v: Var) -> bool {
        self.vars.binary_search(&v).is_ok()
    }

    pub fn ldeg(&self, l: Literal) -> usize {
        self.degrees.get(&l).copied().unwrap_or(0)
    }

    pub fn vdeg(&self, v: Var) -> usize {
        self.ldeg(Literal::positive(v)) + self.ldeg(Literal::negative(v))
    }

    pub fn contains(&self, c: &Clause) -> bool {
        self.clauses.binary_search(c).is_ok()
    }

    pub fn index_of(&self, c: &Clause) -> Option<usize> {
        self.clauses.binary_search(c).ok()
    }

    /// F_x: the clauses containing `x`.
    pub fn occurrences(&self, x: Literal) -> Vec<&Clause> {
        self.clauses.iter().filter(|c| c.contains(x)).collect()
    }

    pub fn occurrence_set(&self, x: Literal) -> ClauseSet {
        Self::from_sorted(self.occurrences(x).into_iter().cloned().collect())
    }

    /// ⋂F; `None` for ⊤.
    pub fn intersection(&self) -> Option<Clause> {
        let (first, rest) = self.clauses.split_first()?;
        Some(rest.iter().fold(first.clone(), |acc, c| acc.intersection(c)))
    }

    pub fn full_variables(&self) -> Vec<Var> {
        self.vars
            .iter()
            .copied()
            .filter(|&v| self.vdeg(v) == self.c())
            .collect()
    }

    pub fn unit_clauses(&self) -> Vec<&Clause> {
        self.clauses.iter().filter(|c| c.len() == 1).collect()
    }

    pub fn without(&self, c: &Clause) -> ClauseSet {
        Self::from_sorted(self.clauses.iter().filter(|d| *d != c).cloned().collect())
    }

    pub fn without_all(&self, remove: &[Clause]) -> ClauseSet {
        Self::from_sorted(
            self.clauses
                .iter()
                .filter(|d| !remove.contains(d))
                .cloned()
                .collect(),
        )
    }

    pub fn with_clauses(&self, add: impl IntoIterator<Item = Clause>) -> ClauseSet {
        Self::new(self.clauses.iter().cloned().chain(add))
    }

    pub fn union(&self, other: &ClauseSet) -> ClauseSet {
        self.with_clauses(other.clauses.iter().cloned())
    }

    pub fn is_subset_of(&self, other: &ClauseSet) -> bool {
        self.clauses.iter().all(|c| other.contains(c))
    }

    /// True iff every two distinct clauses clash.
    pub fn is_hitting(&self) -> bool {
        for (i, a) in self.clauses.iter().enumerate() {
            for b in &self.clauses[i + 1..] {
                if !a.clashes_with(b) {
                    return false;
                }
            }
        }
        true
    }

    /// Σ_{C∈F} 2^(−|C|), exact.
    pub fn dyadic_sum(&self) -> DyadicSum {
        self.clauses
            .iter()
            .map(|c| DyadicSum::inverse_power_of_two(c.len() as u32))
            .sum()
    }

    /// Hitting and dyadic sum exactly 1.
    pub fn is_uhit(&self) -> bool {
        self.is_hitting() && self.dyadic_sum().is_one()
    }

    /// F ∨ G: all non-clashing unions C ∪ D.
    pub fn combinatorial_or(&self, other: &ClauseSet) -> ClauseSet {
        let mut out = Vec::with_capacity(self.c() * other.c());
        for a in &self.clauses {
            for b in &other.clauses {
                if let Some(u) = a.union(b) {
                    out.push(u);
                }
            }
        }
        Self::new(out)
    }

    /// Sets `x` to true: clauses containing `x` vanish, `x̄` is deleted
    /// elsewhere.
    pub fn apply_literal(&self, x: Literal) -> Result<ClauseSet> {
        if !self.has_var(x.var()) {
            return Err(Error::UnknownVariable(x.var()));
        }
        Ok(self.assign(x))
    }

    /// Like `apply_literal` but without the membership check.
    pub(crate) fn assign(&self, x: Literal) -> ClauseSet {
        let neg = Clause::from_sorted(vec![x.complement()]);
        Self::new(
            self.clauses
                .iter()
                .filter(|c| !c.contains(x))
                .map(|c| c.difference(&neg)),
        )
    }

    /// Applies a literal map to every clause.
    pub(crate) fn map_literals(&self, f: impl Fn(Literal) -> Literal) -> ClauseSet {
        Self::new(self.clauses.iter().map(|c| c.map_literals(&f)))
    }

    /// Renames variables `v ↦ v + offset`.
    pub fn shifted(&self, offset: Var) -> ClauseSet {
        self.map_literals(|l| Literal::with_sign(l.var() + offset, l.is_positive()))
    }

    /// Renames variables onto 1..=n in increasing order.
    pub fn compacted(&self) -> ClauseSet {
        let vars = self.vars.clone();
        self.map_literals(|l| {
            let idx = vars.binary_search(&l.var()).unwrap() as Var + 1;
            Literal::with_sign(idx, l.is_positive())
        })
    }

    pub fn to_ints(&self) -> Vec<Vec<i32>> {
        self.clauses.iter().map(|c| c.to_ints()).collect()
    }

    pub fn literal_degrees(&self) -> &BTreeMap<Literal, usize> {
        &self.degrees
    }
}

impl PartialEq for ClauseSet {
    fn eq(&self, other: &Self) -> bool {
        self.clauses == other.clauses
    }
}

impl Eq for ClauseSet {}

impl Hash for ClauseSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.clauses.hash(state);
    }
}

impl PartialOrd for ClauseSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ClauseSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.clauses.cmp(&other.clauses)
    }
}

impl From<Vec<Clause>> for ClauseSet {
    fn from(v: Vec<Clause>) -> Self {
        ClauseSet::new(v)
    }
}

impl From<ClauseSet> for Vec<Clause> {
    fn from(f: ClauseSet) -> Self {
        f.clauses
    }
}

impl FromIterator<Clause> for ClauseSet {
    fn from_iter<I: IntoIterator<Item = Clause>>(iter: I) -> Self {
        ClauseSet::new(iter)
    }
}

impl<'a> IntoIterator for &'a ClauseSet {
    type Item = &'a Clause;
    type IntoIter = std::slice::Iter<'a, Clause>;

    fn into_iter(self) -> Self::IntoIter {
        self.clauses.iter()
    }
}

impl fmt::Display for ClauseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return write!(f, "⊤");
        }
        write!(f, "{{")?;
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for ClauseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn cs(v: &[&[i32]]) -> ClauseSet {
        ClauseSet::from_ints(v).unwrap()
    }

    fn dt3() -> ClauseSet {
        cs(&[&[1, 2, 3], &[-1, -2, -3], &[-1, 2], &[-2, 3], &[-3, 1]])
    }

    #[test]
    fn measures_examples() {
        let m = dt3().measures();
        assert_eq!((m.n, m.c, m.delta), (3, 5, 2));
        let m = ClauseSet::bottom().measures();
        assert_eq!((m.n, m.c, m.delta), (0, 1, 1));
        let m = ClauseSet::full(&[1, 2, 3]).measures();
        assert_eq!((m.n, m.c, m.delta), (3, 8, 5));
    }

    #[test]
    fn hitting_examples() {
        assert!(dt3().is_hitting());
        assert!(!cs(&[&[1], &[2]]).is_hitting());
        assert!(cs(&[&[1, 2], &[-1, -2]]).is_hitting());
    }

    #[test]
    fn dyadic_sum_examples() {
        assert!(dt3().dyadic_sum().is_one());
        let half = cs(&[&[1, 2], &[-1, -2]]).dyadic_sum();
        assert_eq!(half, DyadicSum::new(BigUint::from(1u32), 1));
        assert!(ClauseSet::top().dyadic_sum().is_zero());
    }

    #[test]
    fn uhit_examples() {
        assert!(cs(&[&[1, 2], &[-1, -2], &[-1, 2], &[-2, 1]]).is_uhit());
        assert!(!cs(&[&[1, 2], &[-1, -2]]).is_uhit());
        assert!(ClauseSet::bottom().is_uhit());
        assert!(!ClauseSet::top().is_uhit());
    }

    #[test]
    fn combinatorial_or_examples() {
        let a = cs(&[&[1]]);
        let b = cs(&[&[2], &[-2]]);
        assert_eq!(a.combinatorial_or(&b), cs(&[&[1, 2], &[1, -2]]));
        assert_eq!(dt3().combinatorial_or(&ClauseSet::bottom()), dt3());
        let a1 = cs(&[&[1], &[-1]]);
        let a2 = cs(&[&[2], &[-2]]);
        assert_eq!(a1.combinatorial_or(&a2), ClauseSet::full(&[1, 2]));
        assert_eq!(ClauseSet::full(&[1, 2]).c(), 4);
    }

    #[test]
    fn apply_literal_examples() {
        // {1,2,3} and {-3,1} vanish; -1 is deleted from the other clauses.
        let got = dt3().apply_literal(Literal::positive(1)).unwrap();
        assert_eq!(got, cs(&[&[-2, -3], &[2], &[-2, 3]]));
        assert!(!crate::oracle::sat_oracle(&got).unwrap());
        let got = ClauseSet::full(&[1, 2])
            .apply_literal(Literal::positive(1))
            .unwrap();
        assert_eq!(got, cs(&[&[2], &[-2]]));
        let got = cs(&[&[1]]).apply_literal(Literal::positive(1)).unwrap();
        assert!(got.is_top());
        assert_eq!(
            dt3().apply_literal(Literal::positive(9)),
            Err(Error::UnknownVariable(9))
        );
    }

    #[test]
    fn degrees_and_intersection() {
        let f = dt3();
        assert_eq!(f.ldeg(Literal::positive(1)), 2);
        assert_eq!(f.ldeg(Literal::negative(1)), 2);
        assert_eq!(f.vdeg(2), 4);
        assert_eq!(f.intersection(), Some(Clause::empty()));
        assert_eq!(ClauseSet::top().intersection(), None);
        let g = cs(&[&[1, 2], &[1, -2]]);
        assert_eq!(g.intersection(), Some(Clause::from_ints(&[1]).unwrap()));
        assert_eq!(g.full_variables(), vec![1, 2]);
    }

    #[test]
    fn duplicate_clauses_collapse() {
        let f = cs(&[&[1, 2], &[2, 1], &[-1]]);
        assert_eq!(f.c(), 2);
    }

    #[test]
    fn variables_need_not_be_contiguous() {
        let f = cs(&[&[5, 9], &[-5], &[5, -9]]);
        assert_eq!(f.vars(), &[5, 9]);
        assert_eq!(f.n(), 2);
        assert_eq!(f.compacted(), cs(&[&[1, 2], &[-1], &[1, -2]]));
    }
}
