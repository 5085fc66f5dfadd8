//! Brute-force reference implementations working on raw literal tables.
//! They share nothing with the library beyond `ClauseSet::to_ints`.

#![allow(dead_code)]

use std::collections::BTreeSet;

use uhitlab::ClauseSet;

pub type Cnf = Vec<Vec<i32>>;

pub fn cnf(f: &ClauseSet) -> Cnf {
    normalise(f.to_ints())
}

pub fn normalise(mut f: Cnf) -> Cnf {
    for c in &mut f {
        c.sort_by_key(|l| (l.abs(), *l));
        c.dedup();
    }
    f.sort();
    f.dedup();
    f
}

pub fn vars(f: &Cnf) -> Vec<i32> {
    let s: BTreeSet<i32> = f.iter().flatten().map(|l| l.abs()).collect();
    s.into_iter().collect()
}

/// Truth-table satisfiability.
pub fn sat(f: &Cnf) -> bool {
    let vs = vars(f);
    assert!(vs.len() <= 24, "truth table too large");
    (0u64..1 << vs.len()).any(|a| {
        f.iter().all(|c| {
            c.iter().any(|&l| {
                let i = vs.binary_search(&l.abs()).unwrap();
                (a >> i & 1 == 1) == (l > 0)
            })
        })
    })
}

pub fn clash(c: &[i32], d: &[i32]) -> bool {
    c.iter().any(|l| d.contains(&-l))
}

pub fn hitting(f: &Cnf) -> bool {
    (0..f.len()).all(|i| (i + 1..f.len()).all(|j| clash(&f[i], &f[j])))
}

pub fn uhit(f: &Cnf) -> bool {
    hitting(f) && !sat(f)
}

pub fn deficiency(f: &Cnf) -> i64 {
    f.len() as i64 - vars(f).len() as i64
}

pub fn degrees(f: &Cnf, v: i32) -> (usize, usize) {
    let pos = f.iter().filter(|c| c.contains(&v)).count();
    let neg = f.iter().filter(|c| c.contains(&-v)).count();
    (pos, neg)
}

pub fn singular_vars(f: &Cnf) -> Vec<i32> {
    vars(f)
        .into_iter()
        .filter(|&v| {
            let (p, n) = degrees(f, v);
            p.min(n) == 1
        })
        .collect()
}

pub fn nonsingular(f: &Cnf) -> bool {
    singular_vars(f).is_empty()
}

/// DP-elimination of `v`: all non-tautological resolvents plus the clauses
/// without `v`.
pub fn dp(f: &Cnf, v: i32) -> Cnf {
    let mut out: Vec<Vec<i32>> = f.iter().filter(|c| !c.contains(&v) && !c.contains(&-v)).cloned().collect();
    for c in f.iter().filter(|c| c.contains(&v)) {
        for d in f.iter().filter(|d| d.contains(&-v)) {
            let mut r: Vec<i32> = c.iter().chain(d.iter()).copied().filter(|l| l.abs() != v).collect();
            r.sort();
            r.dedup();
            if !r.iter().any(|l| r.contains(&-l)) {
                out.push(r);
            }
        }
    }
    normalise(out)
}

/// Singular DP-reduction to a fixed point; `pick` chooses among the
/// current singular variables. Returns the result and the step count.
pub fn sdp_normal_form(f: &Cnf, mut pick: impl FnMut(usize) -> usize) -> (Cnf, usize) {
    let mut cur = normalise(f.clone());
    let mut steps = 0;
    loop {
        let sv = singular_vars(&cur);
        if sv.is_empty() {
            return (cur, steps);
        }
        cur = dp(&cur, sv[pick(sv.len())]);
        steps += 1;
    }
}

fn intersection(f: &Cnf, mask: u64) -> Vec<i32> {
    let mut it = f.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, c)| c);
    let first = it.next().expect("non-empty subset").clone();
    it.fold(first, |acc, c| acc.into_iter().filter(|l| c.contains(l)).collect())
}

/// Residue of the subset is unsatisfiable.
pub fn is_factor(f: &Cnf, mask: u64) -> bool {
    let inter = intersection(f, mask);
    let residue: Cnf = f
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, c)| c.iter().copied().filter(|l| !inter.contains(l)).collect())
        .collect();
    !sat(&residue)
}

pub fn is_trivial(f: &Cnf, mask: u64) -> bool {
    let size = mask.count_ones() as usize;
    size == 1 || (size == f.len() && intersection(f, mask).is_empty())
}

/// Every factor as a normalised subset.
pub fn factors(f: &Cnf, nontrivial_only: bool) -> BTreeSet<Cnf> {
    (1u64..1 << f.len())
        .filter(|&m| is_factor(f, m) && !(nontrivial_only && is_trivial(f, m)))
        .map(|m| subset(f, m))
        .collect()
}

pub fn subset(f: &Cnf, mask: u64) -> Cnf {
    normalise(
        f.iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, c)| c.clone())
            .collect(),
    )
}

/// Two clauses differing in exactly one complemented literal.
pub fn has_fs_pair(f: &Cnf) -> bool {
    (0..f.len()).any(|i| {
        (i + 1..f.len()).any(|j| {
            let (c, d) = (&f[i], &f[j]);
            c.len() == d.len()
                && c.iter().filter(|l| d.contains(&-**l)).count() == 1
                && c.iter().filter(|l| d.contains(l)).count() == c.len() - 1
        })
    })
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..k {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// All renamings with sign flips from `vars(a)` onto `vars(b)` that map
/// `a` onto `b`.
pub fn isomorphisms(a: &Cnf, b: &Cnf) -> usize {
    let (va, vb) = (vars(a), vars(b));
    if va.len() != vb.len() || a.len() != b.len() {
        return 0;
    }
    let profile = |f: &Cnf| {
        let mut l: Vec<usize> = f.iter().map(|c| c.len()).collect();
        l.sort();
        l
    };
    if profile(a) != profile(b) {
        return 0;
    }
    let target = normalise(b.clone());
    let mut count = 0;
    for p in permutations(va.len()) {
        for signs in 0u32..1 << va.len() {
            let map = |l: i32| {
                let i = va.binary_search(&l.abs()).unwrap();
                let flip = if signs >> i & 1 == 1 { -1 } else { 1 };
                vb[p[i]] * l.signum() * flip
            };
            let img = normalise(a.iter().map(|c| c.iter().map(|&l| map(l)).collect()).collect());
            if img == target {
                count += 1;
            }
        }
    }
    count
}

pub fn isomorphic(a: &Cnf, b: &Cnf) -> bool {
    isomorphisms(a, b) > 0
}

/// Number of labelled copies on the same variable set: `n!·2^n / |Aut|`.
pub fn orbit_size(f: &Cnf) -> u64 {
    let n = vars(f).len() as u64;
    let group = (1..=n).product::<u64>() << n;
    group / isomorphisms(f, f) as u64
}

pub fn dt2() -> Cnf {
    normalise(vec![vec![1, 2], vec![-1, -2], vec![-1, 2], vec![1, -2]])
}

pub fn dt3() -> Cnf {
    normalise(vec![vec![1, 2, 3], vec![-1, -2, -3], vec![-1, 2], vec![-2, 3], vec![-3, 1]])
}
