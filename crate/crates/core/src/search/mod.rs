//! Instance generators, exhaustive enumeration, and search over nfs-flips.

pub mod enumerate;
pub mod flips;
pub mod generators;
pub mod nfs;

pub use enumerate::{enumerate_uhit, enumerate_uhit_with_limit, EnumerationTask};
pub use flips::{flip_for_double_two, flips_toward_fs, DoubleTwoWitness};
pub use generators::{
    a1, construct_dt, construct_km, dt2, dt3, random_uhit, DtKind, Generated, OpsMix, TraceStep,
};
pub use nfs::{
    nfs_search, FlipOutcome, FlipPath, FlipStep, NfsSearch, DEFAULT_BREADTH_BOUND, DEFAULT_DEPTH_BOUND,
};
