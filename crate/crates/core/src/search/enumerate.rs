//! Exhaustive enumeration of UHIT by deficiency.
//!
//! A UHIT over exactly the variables `1..=n` is the same thing as a
//! partition of the n-cube into subcubes, one per clause (the assignments
//! falsifying it). We backtrack on the first uncovered point, choosing the
//! set of fixed coordinates of the subcube through it.

use std::collections::{BTreeSet, HashSet};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clause::Clause;
use crate::clause_set::ClauseSet;
use crate::error::{Error, Result};
use crate::iso::canonical_form;
use crate::literal::Literal;
use crate::singular::is_nonsingular;

/// Points are bits of a u64, so six variables at most.
pub const MAX_ENUMERATION_VARS: usize = 6;
pub const DEFAULT_WORK_LIMIT: u64 = 2_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationTask {
    pub n_max: usize,
    pub delta: i64,
    pub nonsingular_only: bool,
    pub up_to_iso: bool,
}

impl EnumerationTask {
    pub fn new(n_max: usize, delta: i64) -> Self {
        EnumerationTask {
            n_max,
            delta,
            nonsingular_only: false,
            up_to_iso: true,
        }
    }

    pub fn nonsingular(mut self) -> Self {
        self.nonsingular_only = true;
        self
    }

    pub fn labelled(mut self) -> Self {
        self.up_to_iso = false;
        self
    }
}

struct Cube {
    n: usize,
    /// `masks[s][p]`: points agreeing with `p` on the coordinates in `s`.
    masks: Vec<Vec<u64>>,
}

impl Cube {
    fn new(n: usize) -> Self {
        let points = 1usize << n;
        let masks = (0..1usize << n)
            .map(|s| {
                (0..points)
                    .map(|p| {
                        (0..points)
                            .filter(|q| (q ^ p) & s == 0)
                            .fold(0u64, |m, q| m | 1 << q)
                    })
                    .collect()
            })
            .collect();
        Cube { n, masks }
    }

    fn all(&self) -> u64 {
        if self.n == 6 {
            u64::MAX
        } else {
            (1u64 << (1 << self.n)) - 1
        }
    }

    fn clause(&self, s: usize, p: usize) -> Clause {
        Clause::from_sorted(
            (0..self.n)
                .filter(|i| s >> i & 1 == 1)
                .map(|i| Literal::with_sign(i as u32 + 1, p >> i & 1 == 0))
                .collect(),
        )
    }
}

/// Chosen subcubes as `(coordinate set, base point)`.
type Chosen = [(usize, usize)];

struct Search<'a> {
    cube: &'a Cube,
    /// Coordinate sets ordered by size.
    subsets: Vec<usize>,
    min_len: usize,
    work: &'a AtomicU64,
    limit: u64,
    aborted: &'a AtomicBool,
}

impl Search<'_> {
    /// Fewest subcubes of dimension ≤ n − min_len summing to `r` points.
    fn feasible(&self, r: u64, parts: usize) -> bool {
        if parts == 0 {
            return r == 0;
        }
        let e = self.cube.n - self.min_len;
        let min_parts = (r >> e) + (r & ((1 << e) - 1)).count_ones() as u64;
        min_parts <= parts as u64 && parts as u64 <= r
    }

    fn run(&self, uncovered: u64, parts: usize, chosen: &mut Vec<(usize, usize)>, out: &mut dyn FnMut(&Chosen)) {
        if self.aborted.load(Ordering::Relaxed) {
            return;
        }
        if self.work.fetch_add(1, Ordering::Relaxed) >= self.limit {
            self.aborted.store(true, Ordering::Relaxed);
            return;
        }
        if uncovered == 0 {
            out(chosen);
            return;
        }
        let p = uncovered.trailing_zeros() as usize;
        for &s in &self.subsets {
            let m = self.cube.masks[s][p];
            if m & !uncovered != 0 {
                continue;
            }
            let rest = uncovered & !m;
            if !self.feasible(rest.count_ones() as u64, parts - 1) {
                continue;
            }
            chosen.push((s, p));
            self.run(rest, parts - 1, chosen, out);
            chosen.pop();
        }
    }
}

fn to_clause_set(cube: &Cube, chosen: &[(usize, usize)]) -> ClauseSet {
    ClauseSet::new(chosen.iter().map(|&(s, p)| cube.clause(s, p)))
}

/// All UHIT with `n ≤ n_max` and the given deficiency: canonical
/// representatives when `up_to_iso`, otherwise every instance whose
/// variables are exactly `1..=n`. Sorted by `n`, then clause order.
pub fn enumerate_uhit(task: &EnumerationTask) -> Result<Vec<ClauseSet>> {
    enumerate_uhit_with_limit(task, DEFAULT_WORK_LIMIT)
}

pub fn enumerate_uhit_with_limit(task: &EnumerationTask, work_limit: u64) -> Result<Vec<ClauseSet>> {
    if task.delta < 1 {
        return Err(Error::PreconditionViolation(format!(
            "deficiency {} < 1: no UHIT exists",
            task.delta
        )));
    }
    if task.n_max > MAX_ENUMERATION_VARS {
        return Err(Error::BoundExceeded {
            what: "enumeration variable count",
            limit: MAX_ENUMERATION_VARS as u64,
            actual: task.n_max as u64,
        });
    }
    let work = AtomicU64::new(0);
    let aborted = AtomicBool::new(false);
    let mut out = Vec::new();
    for n in 0..=task.n_max {
        let c = n as i64 + task.delta;
        let mut found = enumerate_n(task, n, c as usize, &work, work_limit, &aborted);
        if aborted.load(Ordering::Relaxed) {
            return Err(Error::BoundExceeded {
                what: "enumeration work",
                limit: work_limit,
                actual: work.load(Ordering::Relaxed),
            });
        }
        found.sort();
        out.extend(found);
    }
    Ok(out)
}

fn enumerate_n(
    task: &EnumerationTask,
    n: usize,
    c: usize,
    work: &AtomicU64,
    limit: u64,
    aborted: &AtomicBool,
) -> Vec<ClauseSet> {
    if n == 0 {
        return if c == 1 { vec![ClauseSet::bottom()] } else { Vec::new() };
    }
    if c < 2 || c as u64 > 1 << n {
        return Vec::new();
    }
    let cube = Cube::new(n);
    let all_vars = (1usize << n) - 1;
    // With symmetry breaking the subcube through point 0 belongs to a
    // shortest clause, on coordinates {0, .., k-1}.
    let firsts: Vec<usize> = if task.up_to_iso {
        (1..=n).map(|k| (1 << k) - 1).collect()
    } else {
        (1..1usize << n).collect()
    };
    let accept = |chosen: &[(usize, usize)]| -> Option<ClauseSet> {
        if chosen.iter().fold(0, |a, &(s, _)| a | s) != all_vars {
            return None;
        }
        let f = to_clause_set(&cube, chosen);
        debug_assert!(f.is_uhit());
        if task.nonsingular_only && !is_nonsingular(&f) {
            return None;
        }
        Some(if task.up_to_iso {
            canonical_form(&f).canonical
        } else {
            f
        })
    };
    let results: Vec<HashSet<ClauseSet>> = firsts
        .par_iter()
        .map(|&first| {
            let first_len = first.count_ones() as usize;
            let min_len = if task.up_to_iso { first_len } else { 1 };
            let mut subsets: Vec<usize> = (1..1usize << n)
                .filter(|s| s.count_ones() as usize >= min_len)
                .collect();
            subsets.sort_by_key(|s| s.count_ones());
            let search = Search {
                cube: &cube,
                subsets,
                min_len,
                work,
                limit,
                aborted,
            };
            let mut local = HashSet::new();
            let m = cube.masks[first][0];
            let rest = cube.all() & !m;
            if search.feasible(rest.count_ones() as u64, c - 1) {
                let mut chosen = vec![(first, 0)];
                search.run(rest, c - 1, &mut chosen, &mut |ch| {
                    if let Some(f) = accept(ch) {
                        local.insert(f);
                    }
                });
            }
            local
        })
        .collect();
    let merged: BTreeSet<ClauseSet> = results.into_iter().flatten().collect();
    merged.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_isomorphic;
    use crate::search::generators::{dt2, dt3};

    #[test]
    fn delta_one_n0_is_bottom() {
        let r = enumerate_uhit(&EnumerationTask::new(0, 1)).unwrap();
        assert_eq!(r, vec![ClauseSet::bottom()]);
    }

    #[test]
    fn delta_two_nonsingular() {
        let r = enumerate_uhit(&EnumerationTask::new(4, 2).nonsingular()).unwrap();
        assert_eq!(r.len(), 2);
        assert!(is_isomorphic(&r[0], &dt2()));
        assert!(is_isomorphic(&r[1], &dt3()));
    }

    #[test]
    fn labelled_counts_small() {
        // {⊥} and {{1},{-1}}
        let r = enumerate_uhit(&EnumerationTask::new(1, 1).labelled()).unwrap();
        assert_eq!(r.len(), 2);
        // δ=1, n=2: {{a},{ā,b},{ā,b̄}}: 2 choices of the unit variable × 2 signs
        let r = enumerate_uhit(&EnumerationTask::new(2, 1).labelled()).unwrap();
        assert_eq!(r.iter().filter(|f| f.n() == 2).count(), 4);
        assert!(r.iter().all(|f| f.is_uhit() && f.deficiency() == 1));
    }

    #[test]
    fn labelled_matches_iso_classes() {
        let task = EnumerationTask::new(3, 2);
        let iso = enumerate_uhit(&task).unwrap();
        let lab = enumerate_uhit(&task.labelled()).unwrap();
        let classes: BTreeSet<ClauseSet> = lab.iter().map(|f| canonical_form(f).canonical).collect();
        assert_eq!(classes.into_iter().collect::<Vec<_>>().len(), iso.len());
        for f in &iso {
            assert!(lab.iter().any(|g| is_isomorphic(f, g)));
        }
    }

    #[test]
    fn work_limit_enforced() {
        let e = enumerate_uhit_with_limit(&EnumerationTask::new(4, 2), 10).unwrap_err();
        assert!(matches!(e, Error::BoundExceeded { what: "enumeration work", .. }));
        assert!(enumerate_uhit(&EnumerationTask::new(7, 2)).is_err());
    }
}
