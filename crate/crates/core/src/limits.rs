//! Work limits, with environment overrides.

use crate::error::{Error, Result};
use crate::factor::DEFAULT_FACTOR_BOUND;
use crate::oracle::DEFAULT_ORACLE_BOUND;
use crate::search::enumerate::DEFAULT_WORK_LIMIT;

pub const ORACLE_BOUND_VAR: &str = "UHITLAB_ORACLE_BOUND";
pub const WORK_LIMIT_VAR: &str = "UHITLAB_WORK_LIMIT";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub oracle_bound: usize,
    pub work_limit: u64,
    pub factor_bound: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            oracle_bound: DEFAULT_ORACLE_BOUND,
            work_limit: DEFAULT_WORK_LIMIT,
            factor_bound: DEFAULT_FACTOR_BOUND,
        }
    }
}

fn parse_var<T: std::str::FromStr>(name: &str, value: Option<String>) -> Result<Option<T>> {
    match value {
        None => Ok(None),
        Some(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::PreconditionViolation(format!("{name}={s:?} is not a number"))),
    }
}

impl Limits {
    /// Defaults, overridden by `UHITLAB_ORACLE_BOUND` / `UHITLAB_WORK_LIMIT`.
    pub fn from_env() -> Result<Self> {
        Self::from_lookup(|k| std::env::var(k).ok())
    }

    pub fn from_lookup(lookup: impl Fn(&str) -> Option<String>) -> Result<Self> {
        let mut l = Limits::default();
        if let Some(b) = parse_var(ORACLE_BOUND_VAR, lookup(ORACLE_BOUND_VAR))? {
            l.oracle_bound = b;
        }
        if let Some(w) = parse_var(WORK_LIMIT_VAR, lookup(WORK_LIMIT_VAR))? {
            l.work_limit = w;
        }
        Ok(l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides() {
        let l = Limits::from_lookup(|k| match k {
            ORACLE_BOUND_VAR => Some("12".into()),
            WORK_LIMIT_VAR => Some(" 500 ".into()),
            _ => None,
        })
        .unwrap();
        assert_eq!(l.oracle_bound, 12);
        assert_eq!(l.work_limit, 500);
        assert_eq!(Limits::from_lookup(|_| None).unwrap(), Limits::default());
        assert!(Limits::from_lookup(|_| Some("lots".into())).is_err());
    }
}
