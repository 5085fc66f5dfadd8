use thiserror::Error;

use crate::clause::Clause;
use crate::literal::{Literal, Var};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("literal 0 is not a literal")]
    ZeroLiteral,
    #[error("clause contains both {0} and its complement")]
    ClashingLiterals(Literal),
    #[error("{what}: {actual} exceeds the configured bound {limit}")]
    BoundExceeded {
        what: &'static str,
        limit: u64,
        actual: u64,
    },
    #[error("variable {0} does not occur in the clause-set")]
    UnknownVariable(Var),
    #[error("clauses {0} and {1} are not resolvable (need exactly one clash)")]
    NotResolvable(Clause, Clause),
    #[error("the pair is not contained in the clause-set")]
    PairNotInSet,
    #[error("resolvent {0} is already in the clause-set")]
    ResolventPresent(Clause),
    #[error("clause {0} is not in the clause-set")]
    ClauseNotInSet(Clause),
    #[error("variable {0} already occurs in the clause")]
    VariableInClause(Var),
    #[error("extension clause {0} is already in the clause-set")]
    ResultClausePresent(Clause),
    #[error("flip clause {0} is already in the clause-set")]
    FlipClausePresent(Clause),
    #[error("variable {0} is not singular")]
    NotSingular(Var),
    #[error("the clause-set is not an unsatisfiable hitting clause-set")]
    NotUhit,
    #[error("subset size {m} is outside 1..={c}")]
    BadArity { m: usize, c: usize },
    #[error("the clause-set has no singular variable")]
    Nonsingular,
    #[error("no companion literal with degree 2 exists for 1-singular variable {0}")]
    NoEligibleCompanion(Var),
    #[error("pivot clause {0} is not in the pointed clause-set")]
    PivotNotInSet(Clause),
    #[error("the subset is not a clause-factor")]
    NotAFactor,
    #[error("the clause-set is not logically equivalent to a single clause")]
    NotAClause,
    #[error("empty subset")]
    EmptySubset,
    #[error("the given clauses are not a subset of the clause-set")]
    NotSubset,
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
