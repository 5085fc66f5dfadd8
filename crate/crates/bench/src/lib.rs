//! Shared fixtures for the benchmarks.

use uhitlab::search::{construct_km, dt3, random_uhit, OpsMix};
use uhitlab::ClauseSet;

/// Named instances of increasing size.
pub fn fixtures() -> Vec<(String, ClauseSet)> {
    let mut out = vec![("dt3".to_string(), dt3())];
    for m in [2, 3] {
        out.push((format!("k{m}"), construct_km(m).expect("m >= 1")));
    }
    for n in [6, 9] {
        out.push((format!("random_n{n}"), random_uhit(7, n, &OpsMix::default()).instance));
    }
    out
}
