pub mod clause;
pub mod clause_set;
pub mod dyadic;
pub mod error;
pub mod literal;
pub mod oracle;
pub mod transforms;
pub mod iso;
pub mod singular;
pub mod factor;
pub mod search;
pub mod dimacs;
pub mod limits;
pub mod report;
pub mod catalog;
pub mod verify;

pub use clause::Clause;
pub use clause_set::{ClauseSet, Measures};
pub use dyadic::DyadicSum;
pub use error::{Error, Result};
pub use factor::{ClauseFactor, Decomposition, Factorisation};
pub use iso::{canonical_form, is_isomorphic, IsoClass};
pub use literal::{Literal, Var};
pub use oracle::Oracle;
pub use search::{EnumerationTask, FlipOutcome, FlipPath};
pub use singular::{NormalFormResult, SingularityProfile};
pub use transforms::{FsPair, NfsPair};
