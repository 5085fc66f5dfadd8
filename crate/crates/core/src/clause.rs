use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::literal::{Literal, Var};

/// A clash-free set of literals, kept in canonical literal order.
///
/// When every variable is at most 64 the clause also carries polarity
/// bitmaps, which turn clash tests into two ANDs. Wider clauses fall back to
/// a sorted merge.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "Vec<Literal>", into = "Vec<Literal>")]
pub struct Clause {
    lits: Vec<Literal>,
    pos: u64,
    neg: u64,
    narrow: bool,
}

impl Clause {
    /// The empty clause ⊥.
    pub fn empty() -> Self {
        Clause {
            lits: Vec::new(),
            pos: 0,
            neg: 0,
            narrow: true,
        }
    }

    /// Builds a clause, removing duplicate literals. A clause containing a
    /// literal together with its complement is rejected.
    pub fn new(lits: impl IntoIterator<Item = Literal>) -> Result<Self> {
        let mut lits: Vec<Literal> = lits.into_iter().collect();
        lits.sort_unstable();
        lits.dedup();
        for w in lits.windows(2) {
            if w[0].var() == w[1].var() {
                return Err(Error::ClashingLiterals(w[0]));
            }
        }
        Ok(Self::from_sorted(lits))
    }

    pub fn from_ints(values: &[i32]) -> Result<Self> {
        let lits = values
            .iter()
            .map(|&v| Literal::new(v))
            .collect::<Result<Vec<_>>>()?;
        Self::new(lits)
    }

    /// `lits` must already be sorted, deduplicated and clash-free.
    pub(crate) fn from_sorted(lits: Vec<Literal>) -> Self {
        debug_assert!(lits.windows(2).all(|w| w[0].var() < w[1].var()));
        let mut pos = 0u64;
        let mut neg = 0u64;
        let mut narrow = true;
        for l in &lits {
            let v = l.var();
            if v > 64 {
                narrow = false;
                continue;
            }
            let bit = 1u64 << (v - 1);
            if l.is_positive() {
                pos |= bit;
            } else {
                neg |= bit;
            }
        }
        Clause {
            lits,
            pos,
            neg,
            narrow,
        }
    }

    #[inline]
    pub fn literals(&self) -> &[Literal] {
        &self.lits
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.lits.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn contains(&self, l: Literal) -> bool {
        if self.narrow && l.var() <= 64 {
            let bit = 1u64 << (l.var() - 1);
            return if l.is_positive() {
                self.pos & bit != 0
            } else {
                self.neg & bit != 0
            };
        }
        self.lits.binary_search(&l).is_ok()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.contains(Literal::positive(v)) || self.contains(Literal::negative(v))
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.lits.iter().map(|l| l.var())
    }

    /// Number of literals `x` in `self` with the complement of `x` in `other`.
    pub fn clash_count(&self, other: &Clause) -> usize {
        if self.narrow && other.narrow {
            return ((self.pos & other.neg) | (self.neg & other.pos)).count_ones() as usize;
        }
        let (mut i, mut j, mut count) = (0, 0, 0);
        while i < self.lits.len() && j < other.lits.len() {
            let (a, b) = (self.lits[i], other.lits[j]);
            match a.var().cmp(&b.var()) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    if a != b {
                        count += 1;
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        count
    }

    #[inline]
    pub fn clashes_with(&self, other: &Clause) -> bool {
        if self.narrow && other.narrow {
            return (self.pos & other.neg) | (self.neg & other.pos) != 0;
        }
        self.clash_count(other) > 0
    }

    /// The clashing literals, taken from `self`.
    pub fn clashing_literals(&self, other: &Clause) -> Vec<Literal> {
        self.lits
            .iter()
            .copied()
            .filter(|l| other.contains(l.complement()))
            .collect()
    }

    pub fn is_subset_of(&self, other: &Clause) -> bool {
        if self.narrow && other.narrow {
            return self.pos & !other.pos == 0 && self.neg & !other.neg == 0;
        }
        self.lits.iter().all(|l| other.contains(*l))
    }

    pub fn intersection(&self, other: &Clause) -> Clause {
        let lits = self
            .lits
            .iter()
            .copied()
            .filter(|l| other.contains(*l))
            .collect();
        Clause::from_sorted(lits)
    }

    /// `self ∖ other`.
    pub fn difference(&self, other: &Clause) -> Clause {
        let lits = self
            .lits
            .iter()
            .copied()
            .filter(|l| !other.contains(*l))
            .collect();
        Clause::from_sorted(lits)
    }

    /// Union of two clauses; `None` when the union would clash.
    pub fn union(&self, other: &Clause) -> Option<Clause> {
        if self.clashes_with(other) {
            return None;
        }
        let mut lits = Vec::with_capacity(self.len() + other.len());
        lits.extend_from_slice(&self.lits);
        lits.extend_from_slice(&other.lits);
        lits.sort_unstable();
        lits.dedup();
        Some(Clause::from_sorted(lits))
    }

    /// Size of the symmetric difference of the two literal sets.
    pub fn symmetric_difference_len(&self, other: &Clause) -> usize {
        let common = self.lits.iter().filter(|l| other.contains(**l)).count();
        self.len() + other.len() - 2 * common
    }

    pub fn with_literal(&self, l: Literal) -> Result<Clause> {
        if self.contains(l.complement()) {
            return Err(Error::ClashingLiterals(l));
        }
        let mut lits = self.lits.clone();
        if let Err(pos) = lits.binary_search(&l) {
            lits.insert(pos, l);
        }
        Ok(Clause::from_sorted(lits))
    }

    pub fn without_var(&self, v: Var) -> Clause {
        Clause::from_sorted(self.lits.iter().copied().filter(|l| l.var() != v).collect())
    }

    pub fn to_ints(&self) -> Vec<i32> {
        self.lits.iter().map(|l| l.get()).collect()
    }

    /// Applies a literal map; unmapped literals are kept.
    pub(crate) fn map_literals(&self, f: impl Fn(Literal) -> Literal) -> Clause {
        let mut lits: Vec<Literal> = self.lits.iter().map(|&l| f(l)).collect();
        lits.sort_unstable();
        Clause::from_sorted(lits)
    }
}

impl PartialEq for Clause {
    fn eq(&self, other: &Self) -> bool {
        self.lits == other.lits
    }
}

impl Eq for Clause {}

impl Hash for Clause {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.lits.hash(state);
    }
}

impl Ord for Clause {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lits.cmp(&other.lits)
    }
}

impl PartialOrd for Clause {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<Vec<Literal>> for Clause {
    type Error = Error;

    fn try_from(lits: Vec<Literal>) -> Result<Self> {
        Clause::new(lits)
    }
}

impl From<Clause> for Vec<Literal> {
    fn from(c: Clause) -> Self {
        c.lits
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lits.is_empty() {
            return write!(f, "⊥");
        }
        write!(f, "{{")?;
        for (i, l) in self.lits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", l)?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[i32]) -> Clause {
        Clause::from_ints(v).unwrap()
    }

    #[test]
    fn rejects_clashing_literals() {
        assert!(matches!(
            Clause::from_ints(&[1, -1]),
            Err(Error::ClashingLiterals(_))
        ));
    }

    #[test]
    fn duplicates_are_removed() {
        assert_eq!(c(&[2, 1, 2]), c(&[1, 2]));
        assert_eq!(c(&[2, 1, 2]).len(), 2);
    }

    #[test]
    fn wide_and_narrow_clash_tests_agree() {
        let a = c(&[1, -2, 70]);
        let b = c(&[-1, 2, -70]);
        assert!(!a.narrow);
        assert_eq!(a.clash_count(&b), 3);
        let a2 = c(&[1, -2, 7]);
        let b2 = c(&[-1, 2, -7]);
        assert_eq!(a2.clash_count(&b2), 3);
        assert!(c(&[100]).clashes_with(&c(&[-100, 3])));
        assert!(!c(&[100]).clashes_with(&c(&[100, 3])));
    }

    #[test]
    fn set_operations() {
        let a = c(&[1, 2, 3]);
        let b = c(&[-1, 2]);
        assert_eq!(a.intersection(&b), c(&[2]));
        assert_eq!(a.difference(&b), c(&[1, 3]));
        assert_eq!(a.symmetric_difference_len(&b), 3);
        assert!(a.union(&b).is_none());
        assert_eq!(c(&[1]).union(&c(&[2])), Some(c(&[1, 2])));
        assert!(c(&[2]).is_subset_of(&a));
        assert!(Clause::empty().is_subset_of(&a));
    }

    #[test]
    fn clause_order_is_lexicographic() {
        let mut v = vec![c(&[1, 2]), c(&[-1]), c(&[1]), Clause::empty(), c(&[1, -2])];
        v.sort();
        assert_eq!(
            v,
            vec![Clause::empty(), c(&[1]), c(&[1, 2]), c(&[1, -2]), c(&[-1])]
        );
    }
}
