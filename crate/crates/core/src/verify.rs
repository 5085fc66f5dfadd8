//! The acceptance criteria as runnable checks.
//!
//! Each criterion returns a [`CriterionResult`]; the `core` suite holds the
//! exact small-example checks, `extended` the property runs over generated
//! and enumerated pools.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clause::Clause;
use crate::clause_set::ClauseSet;
use crate::error::{Error, Result};
use crate::factor::{
    enumerate_factors, factorise, is_clause_factor, is_clause_factor_by_oracle,
    is_clause_irreducible,
};
use crate::iso::{canonical_form, is_isomorphic};
use crate::literal::Literal;
use crate::oracle::{sat_oracle, Oracle};
use crate::search::enumerate::{enumerate_uhit, EnumerationTask};
use crate::search::generators::{construct_km, dt2, dt3, random_uhit, OpsMix};
use crate::search::nfs::{nfs_search, FlipOutcome, DEFAULT_BREADTH_BOUND, DEFAULT_DEPTH_BOUND};
use crate::singular::{
    is_nonsingular, singular_hitting_extensions, singularity_index, singularity_profile, snf,
    snf_with,
};
use crate::transforms::{
    find_flippable_pairs, find_fs_pairs, fs_resolve, is_fs_resolvable, is_strictly_fs_resolvable,
    nfs_flip, NfsPair,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Core,
    Extended,
}

impl Suite {
    pub fn criteria(self) -> &'static [u8] {
        match self {
            Suite::Core => &[1, 2, 3, 4, 5, 11],
            Suite::Extended => &[6, 7, 8, 9, 10],
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "core" => Ok(Suite::Core),
            "extended" => Ok(Suite::Extended),
            _ => Err(Error::PreconditionViolation(format!(
                "unknown suite {s:?} (expected core or extended)"
            ))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Core => "core",
            Suite::Extended => "extended",
        })
    }
}

/// `(id, title, runtime budget in ms)`.
pub const CRITERIA: [(u8, &str, u64); 11] = [
    (1, "Dt2/Dt3 exact properties", 1_000),
    (2, "nfs-flip of Dt3", 1_000),
    (3, "K_m family", 1_000),
    (4, "nonsingular deficiency-2 classes", 60_000),
    (5, "non-fs-resolvable classes with c <= 5", 120_000),
    (6, "confluence of singular DP-reduction", 60_000),
    (7, "singularity inequalities", 60_000),
    (8, "factor tests agree with the oracle", 300_000),
    (9, "irreducible deficiency 2/3 instances are nfs-reducible", 600_000),
    (10, "deficiency-3 variable bound monitor", 120_000),
    (11, "UHIT test agrees with the SAT oracle", 120_000),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u64,
    pub budget_ms: u64,
}

impl CriterionResult {
    pub fn within_budget(&self) -> bool {
        self.elapsed_ms <= self.budget_ms
    }
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} criterion {:>2} ({}) [{} ms / {} ms]: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed_ms,
            self.budget_ms,
            self.detail
        )
    }
}

/// A failed check; library errors also count as failures.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(format!("error: {e}"))
    }
}

type Check = std::result::Result<String, Failure>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(Failure(format!($($msg)+)));
        }
    };
}

/// Runs one criterion. Its runtime budget is recorded and counts towards
/// `passed`.
pub fn run_criterion(id: u8) -> Result<CriterionResult> {
    let &(_, title, budget_ms) = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .ok_or_else(|| Error::PreconditionViolation(format!("no criterion {id}")))?;
    let check: fn() -> Check = match id {
        1 => exact_examples,
        2 => flip_example,
        3 => km_family,
        4 => delta_two_classes,
        5 => small_classes,
        6 => confluence,
        7 => inequalities,
        8 => factor_cross_validation,
        9 => nfs_reducibility,
        10 => variable_bound_monitor,
        _ => oracle_independence,
    };
    let start = Instant::now();
    let outcome = check();
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let (mut passed, mut detail) = match outcome {
        Ok(d) => (true, d),
        Err(Failure(d)) => (false, d),
    };
    if passed && elapsed_ms > budget_ms {
        passed = false;
        detail = format!("over budget; {detail}");
    }
    Ok(CriterionResult {
        id,
        title: title.to_string(),
        passed,
        detail,
        elapsed_ms,
        budget_ms,
    })
}

pub fn run_suite(suite: Suite) -> Vec<CriterionResult> {
    suite
        .criteria()
        .iter()
        .map(|&id| run_criterion(id).expect("suite ids are known"))
        .collect()
}

fn ints(f: &[&[i32]]) -> ClauseSet {
    ClauseSet::from_ints(f).expect("literal table is valid")
}

fn exact_examples() -> Check {
    for (name, f) in [("Dt2", dt2()), ("Dt3", dt3())] {
        ensure!(f.is_uhit(), "{name} is not UHIT");
        ensure!(f.deficiency() == 2, "{name} has deficiency {}", f.deficiency());
        ensure!(is_nonsingular(&f), "{name} is singular");
    }
    let k = enumerate_factors(&dt2(), true)?.len();
    ensure!(k == 4, "Dt2 has {k} nontrivial factors, expected 4");
    ensure!(is_clause_irreducible(&dt3())?, "Dt3 has a nontrivial factor");
    Ok("Dt2, Dt3 UHIT, deficiency 2, nonsingular; Dt2 has 4 nontrivial factors; Dt3 irreducible".into())
}

fn flip_example() -> Check {
    let f = dt3();
    let first = Clause::from_ints(&[1, 2, 3])?;
    let third = Clause::from_ints(&[-1, 2])?;
    let pair = NfsPair::from_clauses(&first, &third);
    ensure!(pair.is_some(), "first and third clause of Dt3 are not an nfs-pair");
    let g = nfs_flip(&f, &pair.unwrap())?;
    let expected = ints(&[&[2, 3], &[-1, -2, -3], &[-1, 2, -3], &[-2, 3], &[-3, 1]]);
    ensure!(g == expected, "flip gave {g}, expected {expected}");
    ensure!(g.is_uhit(), "flip result is not UHIT");
    let mut strict = 0;
    for p in find_fs_pairs(&g) {
        if fs_resolve(&g, &p)?.strict {
            strict += 1;
        }
    }
    ensure!(strict == 2, "{strict} strict fs-pairs, expected 2");
    let (pos, neg) = (g.ldeg(Literal::positive(1)), g.ldeg(Literal::negative(1)));
    ensure!(pos == 1 && neg == 2, "variable 1 has degrees ({pos}, {neg}), expected 2-singular");
    let nf = snf(&g)?;
    ensure!(is_isomorphic(&nf.normal_form, &dt2()), "snf {} is not isomorphic to Dt2", nf.normal_form);
    ensure!(nf.singularity_index == 1, "singularity index {}", nf.singularity_index);
    Ok("flip matches; 2 strict fs-pairs; snf isomorphic to Dt2, index 1".into())
}

fn km_family() -> Check {
    for m in 1..=5usize {
        let k = construct_km(m)?;
        ensure!(k.is_uhit(), "K_{m} is not UHIT");
        ensure!(is_nonsingular(&k), "K_{m} is singular");
        ensure!(k.deficiency() == m as i64 + 1, "K_{m} has deficiency {}", k.deficiency());
        ensure!(k.n() == 4 * m - 1, "K_{m} has {} variables, expected {}", k.n(), 4 * m - 1);
    }
    Ok("K_1..K_5 nonsingular UHIT with deficiency m+1 and 4m-1 variables; K_2 has 7".into())
}

fn delta_two_classes() -> Check {
    let classes = enumerate_uhit(&EnumerationTask::new(4, 2).nonsingular())?;
    let ns: Vec<usize> = classes.iter().map(|f| f.n()).collect();
    ensure!(ns == [2, 3], "class sizes {ns:?}, expected [2, 3]");
    ensure!(is_isomorphic(&classes[0], &dt2()), "n=2 class is not Dt2");
    ensure!(is_isomorphic(&classes[1], &dt3()), "n=3 class is not Dt3");
    Ok("2 classes (Dt2 at n=2, Dt3 at n=3), none at n=4".into())
}

/// Every UHIT class with at most five clauses.
fn classes_up_to_five_clauses() -> Result<Vec<ClauseSet>> {
    let mut out = Vec::new();
    for delta in 1..=5i64 {
        out.extend(enumerate_uhit(&EnumerationTask::new((5 - delta) as usize, delta))?);
    }
    Ok(out)
}

fn small_classes() -> Check {
    let classes = classes_up_to_five_clauses()?;
    let stuck: Vec<&ClauseSet> = classes.iter().filter(|f| !is_fs_resolvable(f)).collect();
    ensure!(
        stuck.len() == 2 && stuck.iter().any(|f| f.is_bottom()) && stuck.iter().any(|f| is_isomorphic(f, &dt3())),
        "non-fs-resolvable classes: {}",
        stuck.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("; ")
    );
    Ok(format!("{} classes; only the empty clause and Dt3 are not fs-resolvable", classes.len()))
}

fn confluence() -> Check {
    let mix = OpsMix::default();
    let (mut instances, mut seed) = (0, 0u64);
    while instances < 200 {
        seed += 1;
        ensure!(seed < 20_000, "only {instances} singular instances from {seed} seeds");
        let f = random_uhit(seed, 3 + (seed % 6) as usize, &mix).instance;
        if is_nonsingular(&f) {
            continue;
        }
        instances += 1;
        let reference = snf(&f)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..5 {
            let r = snf_with(&f, |vs| rng.gen_range(0..vs.len()))?;
            ensure!(
                r.normal_form == reference.normal_form,
                "seed {seed}: order {:?} gave {}, default gave {}",
                r.reduction_order,
                r.normal_form,
                reference.normal_form
            );
            ensure!(
                r.singularity_index == reference.singularity_index,
                "seed {seed}: singularity index {} vs {}",
                r.singularity_index,
                reference.singularity_index
            );
        }
    }
    Ok(format!("200 singular instances x 5 orders (seeds 1..={seed}) agree"))
}

/// Random walk of nfs-flips, returning every state visited.
fn flip_walk(f: &ClauseSet, steps: usize, rng: &mut ChaCha8Rng) -> Result<Vec<ClauseSet>> {
    let mut cur = f.clone();
    let mut out = Vec::new();
    for _ in 0..steps {
        let pairs = find_flippable_pairs(&cur);
        let Some(p) = pairs.choose(rng) else { break };
        cur = nfs_flip(&cur, p)?;
        out.push(cur.clone());
    }
    Ok(out)
}

/// Random constructions with deficiency at most 3, their normal forms and
/// the states of short flip walks from those.
fn constructed_pool(count: u64) -> Result<Vec<ClauseSet>> {
    let mix = OpsMix {
        delta_cap: Some(3),
        ..OpsMix::default()
    };
    let per_seed: Vec<Vec<ClauseSet>> = (0..count)
        .into_par_iter()
        .map(|seed| {
            let f = random_uhit(seed, 3 + (seed % 5) as usize, &mix).instance;
            let nf = snf(&f)?.normal_form;
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
            let mut out = vec![f, nf.clone()];
            for g in flip_walk(&nf, 6, &mut rng)? {
                let g_nf = snf(&g)?.normal_form;
                out.push(g);
                out.push(g_nf);
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(dedup_classes(per_seed.into_iter().flatten()))
}

fn dedup_classes(fs: impl IntoIterator<Item = ClauseSet>) -> Vec<ClauseSet> {
    let all: Vec<ClauseSet> = fs.into_iter().collect();
    let canon: BTreeSet<ClauseSet> = all.par_iter().map(|f| canonical_form(f).canonical).collect();
    canon.into_iter().collect()
}

fn enumerated(tasks: &[EnumerationTask]) -> Result<Vec<ClauseSet>> {
    let mut out = Vec::new();
    for t in tasks {
        out.extend(enumerate_uhit(t)?);
    }
    Ok(out)
}

fn inequalities() -> Check {
    let mut pool = enumerated(&[
        EnumerationTask::new(5, 1),
        EnumerationTask::new(5, 2),
        EnumerationTask::new(5, 3),
        EnumerationTask::new(4, 4),
        EnumerationTask::new(5, 4).nonsingular(),
    ])?;
    let mix = OpsMix::default();
    let generated: Vec<ClauseSet> = (0..300u64)
        .into_par_iter()
        .map(|seed| random_uhit(seed, 2 + (seed % 7) as usize, &mix).instance)
        .collect();
    for f in &generated {
        pool.push(snf(f)?.normal_form);
    }
    pool.extend(generated);
    let resolutions: Vec<usize> = pool
        .par_iter()
        .map(|f| -> std::result::Result<usize, Failure> {
            let p = singularity_profile(f);
            let nf = snf(f)?;
            let si = nf.singularity_index;
            ensure!(2 * p.nsv() >= si, "{f}: nsv {} < singind {si} / 2", p.nsv());
            ensure!(
                si <= 2 * p.nosv() + p.nnosv(),
                "{f}: singind {si} > 2*{} + {}",
                p.nosv(),
                p.nnosv()
            );
            ensure!(
                si == f.c() - nf.normal_form.c() && si == f.n() - nf.normal_form.n(),
                "{f}: singind {si} does not match the clause and variable drop"
            );
            if !p.is_nonsingular() {
                return Ok(0);
            }
            let pairs = find_fs_pairs(f);
            for pair in &pairs {
                let g = fs_resolve(f, pair)?.result;
                let s = singularity_index(&g)?;
                ensure!(s <= 3, "{f}: fs-resolution on {} gives singind {s}", pair.resolution_variable);
            }
            Ok(pairs.len())
        })
        .collect::<std::result::Result<_, _>>()?;
    Ok(format!(
        "{} instances; {} fs-resolutions of nonsingular instances checked",
        pool.len(),
        resolutions.iter().sum::<usize>()
    ))
}

fn subsets_of(f: &ClauseSet, mask: u32) -> ClauseSet {
    ClauseSet::new(
        f.iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, c)| c.clone()),
    )
}

fn factor_cross_validation() -> Check {
    let tasks: Vec<EnumerationTask> = (1..=12).map(|d| EnumerationTask::new(4, d)).collect();
    let pool = enumerated(&tasks)?;
    let oracle = Oracle::default();
    let counts: Vec<usize> = pool
        .par_iter()
        .map(|f| -> std::result::Result<usize, Failure> {
            let c = f.c();
            let mut by_size: Vec<BTreeSet<ClauseSet>> = vec![BTreeSet::new(); c + 1];
            for mask in 1u32..(1 << c) {
                let s = subsets_of(f, mask);
                let clash = match is_clause_factor(f, &s) {
                    Ok(_) => true,
                    Err(Error::NotAFactor) => false,
                    Err(e) => return Err(e.into()),
                };
                let by_oracle = match is_clause_factor_by_oracle(f, &s, &oracle) {
                    Ok(_) => true,
                    Err(Error::NotAFactor) => false,
                    Err(e) => return Err(e.into()),
                };
                ensure!(clash == by_oracle, "{f}: subset {s}: clash test {clash}, oracle {by_oracle}");
                if clash {
                    by_size[s.c()].insert(s);
                }
            }
            for (m, factors) in by_size.iter().enumerate().skip(1) {
                let witnesses: BTreeSet<ClauseSet> = singular_hitting_extensions(f, m)?
                    .into_iter()
                    .map(|e| e.witness)
                    .collect();
                ensure!(
                    &witnesses == factors,
                    "{f}: {} extension witnesses vs {} factors of size {m}",
                    witnesses.len(),
                    factors.len()
                );
            }
            Ok((1usize << c) - 1)
        })
        .collect::<std::result::Result<_, _>>()?;
    Ok(format!(
        "{} classes with n <= 4, {} subsets agree; extension witnesses match factors",
        pool.len(),
        counts.iter().sum::<usize>()
    ))
}

/// Post-flip property of a nonsingular `f`: every flip has singularity index
/// at most 1, and when `f` has no fs-pair an index of 1 leaves a normal
/// form with a nontrivial factorisation sharing variables.
fn check_post_flip(f: &ClauseSet) -> std::result::Result<usize, Failure> {
    let pairs = find_flippable_pairs(f);
    let fs_resolvable = is_fs_resolvable(f);
    for p in &pairs {
        let g = nfs_flip(f, p)?;
        let nf = snf(&g)?;
        let si = nf.singularity_index;
        ensure!(si <= 1, "{f}: flip gives singularity index {si}");
        if si == 1 && !fs_resolvable {
            let mut shared = false;
            for fac in enumerate_factors(&nf.normal_form, true)? {
                if !factorise(&nf.normal_form, &fac)?.shared_variables.is_empty() {
                    shared = true;
                    break;
                }
            }
            ensure!(shared, "{f}: normal form {} after flip has no factorisation with shared variables", nf.normal_form);
        }
    }
    Ok(pairs.len())
}

fn nfs_reducibility() -> Check {
    let dt3_path = nfs_search(&dt3(), 1, DEFAULT_BREADTH_BOUND)?;
    ensure!(dt3_path.outcome == FlipOutcome::FoundReducible, "Dt3: {:?} at depth 1", dt3_path.outcome);
    let mut pool = enumerated(&[
        EnumerationTask::new(5, 2),
        EnumerationTask::new(5, 3),
        EnumerationTask::new(6, 2).nonsingular(),
        EnumerationTask::new(6, 3).nonsingular(),
    ])?;
    pool.extend(constructed_pool(500)?);
    let pool = dedup_classes(pool.into_iter().filter(|f| matches!(f.deficiency(), 2 | 3)));
    let results: Vec<(usize, usize, usize)> = pool
        .par_iter()
        .map(|f| -> std::result::Result<(usize, usize, usize), Failure> {
            let flips = if is_nonsingular(f) { check_post_flip(f)? } else { 0 };
            if !is_clause_irreducible(f)? {
                return Ok((0, 0, flips));
            }
            let path = nfs_search(f, DEFAULT_DEPTH_BOUND, DEFAULT_BREADTH_BOUND)?;
            ensure!(path.outcome == FlipOutcome::FoundReducible, "{f}: {:?}", path.outcome);
            ensure!(path.is_valid(), "{f}: returned flip path does not replay");
            Ok((1, path.len(), flips))
        })
        .collect::<std::result::Result<_, _>>()?;
    let irreducible: usize = results.iter().map(|r| r.0).sum();
    let longest = results.iter().map(|r| r.1).max().unwrap_or(0);
    let flips: usize = results.iter().map(|r| r.2).sum();
    Ok(format!(
        "{} classes with deficiency 2/3; {irreducible} irreducible, all reducible within {longest} flips; \
         {flips} flips satisfy the post-flip property",
        pool.len()
    ))
}

/// Proven values of the maximal variable count of nonsingular UHIT by
/// deficiency: 0 at deficiency 1, 3 at deficiency 2.
const MAX_N: [usize; 3] = [0, 0, 3];

fn factorisation_bounds(f: &ClauseSet) -> std::result::Result<bool, Failure> {
    let k = f.deficiency();
    let n = f.n();
    let strictly = is_strictly_fs_resolvable(f);
    if strictly {
        ensure!(n <= MAX_N[k as usize - 1] + 3, "{f}: strictly fs-resolvable with n = {n}");
        ensure!(n as i64 <= 4 * k - 6, "{f}: strictly fs-resolvable with n = {n} > 4k-6");
    }
    let factors = enumerate_factors(f, true)?;
    for fac in &factors {
        let fz = factorise(f, fac)?;
        let (f0, g) = (&fz.cofactor, &fz.residual);
        let s = fz.shared_variables.len();
        ensure!(fz.deficiency_identity_holds(), "{f}: deficiency identity fails for {}", fac.subset);
        for (name, d) in [("cofactor", f0.deficiency()), ("residual", g.deficiency())] {
            ensure!((1..k).contains(&d), "{f}: {name} deficiency {d} outside 1..{k}");
        }
        let (p0, pg) = (singularity_profile(f0), singularity_profile(g));
        let sing0_in_g = p0.singular.iter().filter(|&&v| g.has_var(v)).count();
        let f0_in_singg = pg.singular.iter().filter(|&&v| f0.has_var(v)).count();
        ensure!(
            p0.nsv() <= sing0_in_g + 1 && sing0_in_g <= s && (s as i64) < k,
            "{f}: cofactor nsv {} with s = {s}",
            p0.nsv()
        );
        ensure!(
            pg.nsv() <= f0_in_singg && f0_in_singg <= s && (s as i64) < k,
            "{f}: residual nsv {} with s = {s}",
            pg.nsv()
        );
        if !strictly {
            ensure!(p0.nosv() == 0 && pg.nosv() == 0, "{f}: 1-singular variable in a factor side");
            let bound = MAX_N[f0.deficiency() as usize] + MAX_N[g.deficiency() as usize] + s + 1;
            ensure!(n <= bound, "{f}: n = {n} > {bound}");
            ensure!(n as i64 <= 4 * k - 5 - 3 * s as i64, "{f}: n = {n} > 4k-5-3s with s = {s}");
        }
    }
    Ok(!factors.is_empty())
}

fn variable_bound_monitor() -> Check {
    let mut pool = enumerated(&[
        EnumerationTask::new(6, 2).nonsingular(),
        EnumerationTask::new(6, 3).nonsingular(),
    ])?;
    pool.push(construct_km(2)?);
    for f in constructed_pool(500)? {
        pool.push(snf(&f)?.normal_form);
    }
    let pool = dedup_classes(pool.into_iter().filter(|f| matches!(f.deficiency(), 2 | 3)));
    let checked: Vec<(i64, usize, bool)> = pool
        .par_iter()
        .map(|f| -> std::result::Result<(i64, usize, bool), Failure> {
            ensure!(is_nonsingular(f), "{f}: normal form is singular");
            let k = f.deficiency();
            let bound = if k == 2 { 3 } else { 7 };
            ensure!(f.n() <= bound, "{f}: deficiency {k} with {} variables", f.n());
            Ok((k, f.n(), factorisation_bounds(f)?))
        })
        .collect::<std::result::Result<_, _>>()?;
    let max3 = checked.iter().filter(|c| c.0 == 3).map(|c| c.1).max().unwrap_or(0);
    ensure!(max3 == 7, "largest deficiency-3 instance has {max3} variables; K_2 should reach 7");
    let reducible = checked.iter().filter(|c| c.2).count();
    Ok(format!(
        "{} nonsingular classes (deficiency 2/3): n <= 3 resp. n <= 7, max 7 attained; \
         factorisation bounds hold on {reducible} reducible ones",
        checked.len()
    ))
}

fn oracle_independence() -> Check {
    let classes = classes_up_to_five_clauses()?;
    let mut pool = classes.clone();
    for f in &classes {
        for c in f.iter() {
            pool.push(f.without(c));
        }
    }
    let mut agreeing = 0;
    for f in &pool {
        let by_oracle = f.is_hitting() && !sat_oracle(f)?;
        ensure!(f.is_uhit() == by_oracle, "{f}: is_uhit {} vs oracle {by_oracle}", f.is_uhit());
        agreeing += 1;
    }
    Ok(format!("{agreeing} instances ({} classes and their one-clause deletions) agree", classes.len()))
}
