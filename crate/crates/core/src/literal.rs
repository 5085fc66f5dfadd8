use std::cmp::Ordering;
use std::fmt;
use std::num::NonZeroI32;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Variables are positive integers; no contiguity is required.
pub type Var = u32;

/// A literal is a nonzero integer; its variable is the absolute value and
/// complementation is arithmetic negation.
///
/// Literals order by variable first, with the positive literal before the
/// negative one.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i32", into = "i32")]
pub struct Literal(NonZeroI32);

impl Literal {
    pub fn new(value: i32) -> Result<Self> {
        NonZeroI32::new(value).map(Literal).ok_or(Error::ZeroLiteral)
    }

    /// Positive literal of `v`. Panics for `v == 0` or `v > i32::MAX`.
    pub fn positive(v: Var) -> Self {
        let value = i32::try_from(v).expect("variable out of range");
        Literal(NonZeroI32::new(value).expect("variable 0"))
    }

    pub fn negative(v: Var) -> Self {
        Self::positive(v).complement()
    }

    pub fn with_sign(v: Var, positive: bool) -> Self {
        if positive {
            Self::positive(v)
        } else {
            Self::negative(v)
        }
    }

    #[inline]
    pub fn var(self) -> Var {
        self.0.get().unsigned_abs()
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        self.0.get() > 0
    }

    #[inline]
    pub fn complement(self) -> Self {
        Literal(-self.0)
    }

    #[inline]
    pub fn get(self) -> i32 {
        self.0.get()
    }
}

impl Ord for Literal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.var()
            .cmp(&other.var())
            .then_with(|| other.is_positive().cmp(&self.is_positive()))
    }
}

impl PartialOrd for Literal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<i32> for Literal {
    type Error = Error;

    fn try_from(value: i32) -> Result<Self> {
        Literal::new(value)
    }
}

impl From<Literal> for i32 {
    fn from(l: Literal) -> i32 {
        l.get()
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.get())
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.get())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_is_rejected() {
        assert_eq!(Literal::new(0), Err(Error::ZeroLiteral));
    }

    #[test]
    fn ordering_is_variable_then_sign() {
        let mut lits: Vec<Literal> = [-2, 3, 1, -1, 2]
            .iter()
            .map(|&v| Literal::new(v).unwrap())
            .collect();
        lits.sort();
        let got: Vec<i32> = lits.iter().map(|l| l.get()).collect();
        assert_eq!(got, vec![1, -1, 2, -2, 3]);
    }

    #[test]
    fn complement_is_an_involution() {
        for v in [-7, -1, 1, 42] {
            let l = Literal::new(v).unwrap();
            assert_eq!(l.complement().complement(), l);
            assert_eq!(l.complement().var(), l.var());
            assert_ne!(l.complement(), l);
        }
    }
}
