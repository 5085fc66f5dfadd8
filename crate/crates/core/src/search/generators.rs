//! Named instances and seeded random UHIT construction.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::clause::Clause;
use crate::clause_set::ClauseSet;
use crate::error::{Error, Result};
use crate::factor::{enumerate_factors, pointed_or};
use crate::literal::{Literal, Var};
use crate::singular::singular_extension_by;
use crate::transforms::{find_flippable_pairs, fs_extend, nfs_flip};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DtKind {
    Dt2,
    Dt3,
    /// A(n): all full clauses over variables 1..=n.
    Full(u32),
}

pub fn construct_dt(kind: DtKind) -> ClauseSet {
    let ints: &[&[i32]] = match kind {
        DtKind::Dt2 => &[&[1, 2], &[-1, -2], &[-1, 2], &[-2, 1]],
        DtKind::Dt3 => &[&[1, 2, 3], &[-1, -2, -3], &[-1, 2], &[-2, 3], &[-3, 1]],
        DtKind::Full(n) => return ClauseSet::full(&(1..=n).collect::<Vec<Var>>()),
    };
    ClauseSet::from_ints(ints).expect("literal instance")
}

pub fn dt2() -> ClauseSet {
    construct_dt(DtKind::Dt2)
}

pub fn dt3() -> ClauseSet {
    construct_dt(DtKind::Dt3)
}

/// `{{v}, {v̄}}`.
pub fn a1() -> ClauseSet {
    construct_dt(DtKind::Full(1))
}

/// K_1 = Dt3; K_{m+1} = ({{v}} ∨ K_m) ∪ ({{v̄}} ∨ F′) with F′ a copy of Dt3
/// on the next three variables and `v` the variable after those.
pub fn construct_km(m: usize) -> Result<ClauseSet> {
    if m == 0 {
        return Err(Error::PreconditionViolation("K_m needs m >= 1".into()));
    }
    let mut k = dt3();
    for _ in 1..m {
        let base = k.max_var();
        let copy = dt3().shifted(base);
        let v = base + 4;
        let pos = ClauseSet::new([Clause::from_sorted(vec![Literal::positive(v)])]);
        let neg = ClauseSet::new([Clause::from_sorted(vec![Literal::negative(v)])]);
        k = pos.combinatorial_or(&k).union(&neg.combinatorial_or(&copy));
    }
    Ok(k)
}

/// Relative weights of the construction steps in [`random_uhit`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OpsMix {
    pub fs_nonstrict: u32,
    pub fs_strict: u32,
    pub singular_extension: u32,
    pub pointed_or: u32,
    pub flip: u32,
    /// Steps that would push the deficiency above this are skipped.
    pub delta_cap: Option<i64>,
}

impl Default for OpsMix {
    fn default() -> Self {
        OpsMix {
            fs_nonstrict: 3,
            fs_strict: 1,
            singular_extension: 2,
            pointed_or: 1,
            flip: 3,
            delta_cap: None,
        }
    }
}

impl OpsMix {
    pub fn only_nonstrict() -> Self {
        OpsMix {
            fs_nonstrict: 1,
            fs_strict: 0,
            singular_extension: 0,
            pointed_or: 0,
            flip: 0,
            delta_cap: None,
        }
    }

    fn weights(&self) -> [u32; 5] {
        [
            self.fs_nonstrict,
            self.fs_strict,
            self.singular_extension,
            self.pointed_or,
            self.flip,
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TraceStep {
    Seed(ClauseSet),
    FsExtension { clause: Clause, var: Var, strict: bool },
    SingularExtension { witness: ClauseSet },
    PointedOr { pivot: Clause, residual: ClauseSet },
    Flip { pair: [Clause; 2] },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generated {
    pub instance: ClauseSet,
    pub trace: Vec<TraceStep>,
}

/// Small UHIT seeds; A(V) for |V| ≤ 2, Dt2 and Dt3.
fn pick_seed(rng: &mut ChaCha8Rng) -> ClauseSet {
    match rng.gen_range(0..5) {
        0 => ClauseSet::bottom(),
        1 => a1(),
        2 => construct_dt(DtKind::Full(2)),
        3 => dt2(),
        _ => dt3(),
    }
}

/// A UHIT built by a seeded random sequence of UHIT-preserving steps until
/// it has at least `target_n` variables (or a step budget runs out).
pub fn random_uhit(seed: u64, target_n: usize, mix: &OpsMix) -> Generated {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = if mix.pointed_or == 0 && mix.fs_strict == 0 {
        ClauseSet::bottom()
    } else {
        pick_seed(&mut rng)
    };
    let mut f = start.clone();
    let mut trace = vec![TraceStep::Seed(start)];
    let weights = mix.weights();
    let total: u32 = weights.iter().sum();
    if total == 0 {
        return Generated { instance: f, trace };
    }
    let budget = 40 * target_n + 40;
    for _ in 0..budget {
        if f.n() >= target_n {
            break;
        }
        let mut pick = rng.gen_range(0..total);
        let op = weights
            .iter()
            .position(|&w| {
                if pick < w {
                    true
                } else {
                    pick -= w;
                    false
                }
            })
            .unwrap();
        if let Some((g, step)) = apply_op(op, &f, mix, &mut rng) {
            debug_assert!(g.is_uhit(), "generator step left UHIT: {step:?}");
            f = g;
            trace.push(step);
        }
    }
    debug_assert!(f.is_uhit());
    Generated { instance: f, trace }
}

fn within_cap(mix: &OpsMix, delta: i64) -> bool {
    mix.delta_cap.is_none_or(|cap| delta <= cap)
}

fn apply_op(
    op: usize,
    f: &ClauseSet,
    mix: &OpsMix,
    rng: &mut ChaCha8Rng,
) -> Option<(ClauseSet, TraceStep)> {
    let fresh = f.max_var() + 1;
    match op {
        0 => {
            let c = f.clauses().choose(rng)?.clone();
            let step = fs_extend(f, &c, fresh).ok()?;
            Some((step.result, TraceStep::FsExtension { clause: c, var: fresh, strict: false }))
        }
        1 => {
            if !within_cap(mix, f.deficiency() + 1) {
                return None;
            }
            let c = f.clauses().choose(rng)?.clone();
            let free: Vec<Var> = f.vars().iter().copied().filter(|&v| !c.contains_var(v)).collect();
            let v = *free.choose(rng)?;
            let step = fs_extend(f, &c, v).ok()?;
            Some((step.result, TraceStep::FsExtension { clause: c, var: v, strict: true }))
        }
        2 => {
            if f.c() > 14 {
                return None;
            }
            let factors = enumerate_factors(f, false).ok()?;
            let w = factors.choose(rng)?.subset.clone();
            let g = singular_extension_by(f, &w).ok()?;
            Some((g, TraceStep::SingularExtension { witness: w }))
        }
        3 => {
            let pivot = f.clauses().choose(rng)?.clone();
            let residual = pick_seed(rng).shifted(f.max_var());
            if !within_cap(mix, f.deficiency() + residual.deficiency() - 1) {
                return None;
            }
            let g = pointed_or(f, &pivot, &residual).ok()?;
            Some((g, TraceStep::PointedOr { pivot, residual }))
        }
        _ => {
            let pairs = find_flippable_pairs(f);
            let p = pairs.choose(rng)?;
            let g = nfs_flip(f, p).ok()?;
            let [a, b] = p.clauses();
            Some((g, TraceStep::Flip { pair: [a.clone(), b.clone()] }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::singular::is_nonsingular;

    #[test]
    fn named_instances() {
        assert_eq!(dt2().c(), 4);
        assert_eq!(dt2().deficiency(), 2);
        assert_eq!(dt3().c(), 5);
        assert_eq!(dt3().deficiency(), 2);
        assert_eq!(a1(), ClauseSet::from_ints(&[&[1], &[-1]]).unwrap());
        assert_eq!(construct_dt(DtKind::Full(0)), ClauseSet::bottom());
        assert_eq!(construct_dt(DtKind::Full(3)).c(), 8);
    }

    #[test]
    fn km_family() {
        assert_eq!(construct_km(1).unwrap(), dt3());
        for m in 1..=5 {
            let k = construct_km(m).unwrap();
            assert_eq!(k.n(), 4 * m - 1);
            assert_eq!(k.deficiency(), m as i64 + 1);
            assert!(k.is_uhit());
            assert!(is_nonsingular(&k));
        }
        let k2 = construct_km(2).unwrap();
        assert_eq!((k2.n(), k2.c()), (7, 10));
        assert!(construct_km(0).is_err());
    }

    #[test]
    fn nonstrict_only_stays_at_deficiency_one() {
        for seed in 0..20 {
            let g = random_uhit(seed, 6, &OpsMix::only_nonstrict());
            assert!(g.instance.is_uhit());
            assert_eq!(g.instance.deficiency(), 1);
            assert_eq!(g.instance.n(), 6);
        }
    }

    #[test]
    fn default_mix_is_uhit_and_reproducible() {
        for seed in 0..20 {
            let g = random_uhit(seed, 6, &OpsMix::default());
            assert!(g.instance.is_uhit());
            assert_eq!(g, random_uhit(seed, 6, &OpsMix::default()));
        }
    }

    #[test]
    fn delta_cap_is_respected() {
        let mix = OpsMix {
            delta_cap: Some(3),
            ..OpsMix::default()
        };
        for seed in 0..20 {
            let g = random_uhit(seed, 7, &mix);
            assert!(g.instance.is_uhit());
            assert!(g.instance.deficiency() <= 3);
        }
    }
}
