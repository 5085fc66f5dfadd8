//! Isomorphism of clause-sets under variable renaming combined with
//! per-variable sign flips, and canonical forms.
//!
//! The canonical form is computed on the literal/clause incidence structure
//! (literal nodes joined to their complement and to the clauses containing
//! them). Colour refinement splits the literal nodes into invariant cells,
//! and the search individualises literals of the first non-singleton cell
//! until every literal is distinguished. Each leaf yields a labelling onto
//! variables `1..=n`; the least image under length-lexicographic clause order
//! is the canonical form. Because refinement and cell choice are
//! isomorphism-invariant, isomorphic inputs explore the same set of images.

use std::collections::{BTreeMap, HashMap};

use parking_lot::Mutex;
use serde::{Deserialize, Serialize};

use crate::clause::Clause;
use crate::clause_set::ClauseSet;
use crate::literal::{Literal, Var};

/// Canonical representative of an isomorphism class together with the
/// literal bijection that maps the input onto it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoClass {
    pub canonical: ClauseSet,
    /// Image of the positive literal of every variable of the input.
    pub mapping: BTreeMap<Var, Literal>,
}

impl IsoClass {
    pub fn map_literal(&self, l: Literal) -> Literal {
        let img = self.mapping[&l.var()];
        if l.is_positive() {
            img
        } else {
            img.complement()
        }
    }

    pub fn apply(&self, f: &ClauseSet) -> ClauseSet {
        f.map_literals(|l| self.map_literal(l))
    }
}

struct Incidence {
    n: usize,
    /// clause node k → literal nodes
    clause_lits: Vec<Vec<usize>>,
    /// literal node → clause nodes
    lit_clauses: Vec<Vec<usize>>,
    vars: Vec<Var>,
}

impl Incidence {
    fn new(f: &ClauseSet) -> Self {
        let vars = f.vars().to_vec();
        let n = vars.len();
        let mut lit_clauses = vec![Vec::new(); 2 * n];
        let mut clause_lits = Vec::with_capacity(f.c());
        for (k, c) in f.iter().enumerate() {
            let nodes: Vec<usize> = c.literals().iter().map(|&l| lit_node(&vars, l)).collect();
            for &u in &nodes {
                lit_clauses[u].push(k);
            }
            clause_lits.push(nodes);
        }
        Incidence {
            n,
            clause_lits,
            lit_clauses,
            vars,
        }
    }

    fn node_count(&self) -> usize {
        2 * self.n + self.clause_lits.len()
    }

    fn initial_colours(&self) -> Vec<u32> {
        let sigs: Vec<(u32, u32, Vec<u32>)> = (0..self.node_count())
            .map(|u| {
                if u < 2 * self.n {
                    (0, 0, Vec::new())
                } else {
                    (1, self.clause_lits[u - 2 * self.n].len() as u32, Vec::new())
                }
            })
            .collect();
        rank(&sigs)
    }

    /// Colour refinement to the coarsest stable partition below `colours`.
    fn refine(&self, colours: &mut Vec<u32>) {
        let mut cells = count_distinct(colours);
        loop {
            let sigs: Vec<(u32, u32, Vec<u32>)> = (0..self.node_count())
                .map(|u| {
                    if u < 2 * self.n {
                        let mut nb: Vec<u32> = self.lit_clauses[u]
                            .iter()
                            .map(|&k| colours[2 * self.n + k])
                            .collect();
                        nb.sort_unstable();
                        (colours[u], colours[u ^ 1], nb)
                    } else {
                        let mut nb: Vec<u32> = self.clause_lits[u - 2 * self.n]
                            .iter()
                            .map(|&l| colours[l])
                            .collect();
                        nb.sort_unstable();
                        (colours[u], 0, nb)
                    }
                })
                .collect();
            let next = rank(&sigs);
            let next_cells = count_distinct(&next);
            *colours = next;
            if next_cells == cells {
                break;
            }
            cells = next_cells;
        }
    }

    fn individualise(&self, colours: &[u32], node: usize) -> Vec<u32> {
        let sigs: Vec<(u32, u32, Vec<u32>)> = colours
            .iter()
            .enumerate()
            .map(|(u, &col)| (col, u32::from(u != node), Vec::new()))
            .collect();
        let mut next = rank(&sigs);
        self.refine(&mut next);
        next
    }

    /// First non-singleton literal cell (by colour), as node list.
    fn target_cell(&self, colours: &[u32]) -> Option<Vec<usize>> {
        let mut by_colour: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (u, &col) in colours.iter().enumerate().take(2 * self.n) {
            by_colour.entry(col).or_default().push(u);
        }
        by_colour.into_values().find(|cell| cell.len() > 1)
    }

    /// Labelling induced by a discrete literal colouring.
    fn labelling(&self, colours: &[u32]) -> Vec<Literal> {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&i| colours[2 * i].min(colours[2 * i + 1]));
        let mut image = vec![Literal::positive(1); 2 * self.n];
        for (rank, &i) in order.iter().enumerate() {
            let v = rank as Var + 1;
            let pos_first = colours[2 * i] < colours[2 * i + 1];
            image[2 * i] = Literal::with_sign(v, pos_first);
            image[2 * i + 1] = Literal::with_sign(v, !pos_first);
        }
        image
    }

    fn image(&self, labels: &[Literal]) -> Vec<Clause> {
        let mut cls: Vec<Clause> = self
            .clause_lits
            .iter()
            .map(|nodes| {
                let mut lits: Vec<Literal> = nodes.iter().map(|&u| labels[u]).collect();
                lits.sort_unstable();
                Clause::from_sorted(lits)
            })
            .collect();
        cls.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        cls
    }
}

fn lit_node(vars: &[Var], l: Literal) -> usize {
    let i = vars.binary_search(&l.var()).expect("variable of the clause-set");
    2 * i + usize::from(!l.is_positive())
}

fn rank<T: Ord + Clone>(sigs: &[T]) -> Vec<u32> {
    let mut sorted: Vec<T> = sigs.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sigs.iter()
        .map(|s| sorted.binary_search(s).unwrap() as u32)
        .collect()
}

fn count_distinct(colours: &[u32]) -> usize {
    let mut v = colours.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

struct Best {
    key: Vec<Clause>,
    labels: Vec<Literal>,
}

fn search(inc: &Incidence, colours: Vec<u32>, best: &mut Option<Best>) {
    match inc.target_cell(&colours) {
        None => {
            let labels = inc.labelling(&colours);
            let key = inc.image(&labels);
            if best.as_ref().is_none_or(|b| key < b.key) {
                *best = Some(Best { key, labels });
            }
        }
        Some(cell) => {
            for u in cell {
                let next = inc.individualise(&colours, u);
                search(inc, next, best);
            }
        }
    }
}

pub fn canonical_form(f: &ClauseSet) -> IsoClass {
    let inc = Incidence::new(f);
    let mut colours = inc.initial_colours();
    inc.refine(&mut colours);
    let mut best = None;
    search(&inc, colours, &mut best);
    let Best { key, labels } = best.expect("search reaches a leaf");
    let mapping = inc
        .vars
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, labels[2 * i]))
        .collect();
    IsoClass {
        canonical: ClauseSet::new(key),
        mapping,
    }
}

/// Cheap isomorphism invariants: measures, clause sizes, degree pairs.
fn fingerprint(f: &ClauseSet) -> (usize, usize, Vec<usize>, Vec<(usize, usize)>) {
    let mut sizes: Vec<usize> = f.iter().map(|c| c.len()).collect();
    sizes.sort_unstable();
    let mut degs: Vec<(usize, usize)> = f
        .vars()
        .iter()
        .map(|&v| {
            let a = f.ldeg(Literal::positive(v));
            let b = f.ldeg(Literal::negative(v));
            (a.min(b), a.max(b))
        })
        .collect();
    degs.sort_unstable();
    (f.n(), f.c(), sizes, degs)
}

pub fn is_isomorphic(f: &ClauseSet, g: &ClauseSet) -> bool {
    if fingerprint(f) != fingerprint(g) {
        return false;
    }
    canonical_form(f).canonical == canonical_form(g).canonical
}

/// Bounded memo for canonical forms. Lookups never change results; when the
/// cache is full new entries are simply not stored.
pub struct CanonCache {
    capacity: usize,
    map: Mutex<HashMap<ClauseSet, ClauseSet>>,
}

impl CanonCache {
    pub fn new(capacity: usize) -> Self {
        CanonCache {
            capacity,
            map: Mutex::new(HashMap::new()),
        }
    }

    pub fn canonical(&self, f: &ClauseSet) -> ClauseSet {
        if let Some(c) = self.map.lock().get(f) {
            return c.clone();
        }
        let c = canonical_form(f).canonical;
        let mut map = self.map.lock();
        if map.len() < self.capacity {
            map.entry(f.clone()).or_insert_with(|| c.clone());
        }
        c
    }

    pub fn len(&self) -> usize {
        self.map.lock().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cs(v: &[&[i32]]) -> ClauseSet {
        ClauseSet::from_ints(v).unwrap()
    }

    fn dt2() -> ClauseSet {
        cs(&[&[1, 2], &[-1, -2], &[-1, 2], &[-2, 1]])
    }

    fn dt3() -> ClauseSet {
        cs(&[&[1, 2, 3], &[-1, -2, -3], &[-1, 2], &[-2, 3], &[-3, 1]])
    }

    #[test]
    fn renaming_invariance() {
        let renamed = dt2().map_literals(|l| {
            let v = if l.var() == 1 { 5 } else { 9 };
            Literal::with_sign(v, l.is_positive())
        });
        assert_eq!(canonical_form(&renamed).canonical, canonical_form(&dt2()).canonical);
    }

    #[test]
    fn sign_flip_invariance() {
        let flipped = dt3().map_literals(|l| l.complement());
        assert_eq!(canonical_form(&flipped).canonical, canonical_form(&dt3()).canonical);
    }

    #[test]
    fn distinct_classes() {
        assert_ne!(canonical_form(&dt2()).canonical, canonical_form(&dt3()).canonical);
        assert!(!is_isomorphic(&dt2(), &dt3()));
    }

    #[test]
    fn mapping_reproduces_canonical() {
        let f = cs(&[&[2, 3], &[-1, -2, -3], &[-1, 2, -3], &[-2, 3], &[-3, 1]]);
        let iso = canonical_form(&f);
        assert_eq!(iso.apply(&f), iso.canonical);
        for (&v, &img) in &iso.mapping {
            assert_eq!(
                iso.map_literal(Literal::negative(v)),
                img.complement()
            );
        }
        assert_eq!(canonical_form(&iso.canonical).canonical, iso.canonical);
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(canonical_form(&ClauseSet::top()).canonical, ClauseSet::top());
        assert_eq!(canonical_form(&ClauseSet::bottom()).canonical, ClauseSet::bottom());
    }

    #[test]
    fn cache_is_transparent() {
        let cache = CanonCache::new(1);
        let a = cache.canonical(&dt2());
        let b = cache.canonical(&dt3());
        assert_eq!(cache.len(), 1);
        assert_eq!(a, canonical_form(&dt2()).canonical);
        assert_eq!(b, canonical_form(&dt3()).canonical);
        assert_eq!(cache.canonical(&dt2()), a);
    }

    /// A random mixed symmetry: permutation of `vars` plus sign flips.
    fn scramble(f: &ClauseSet, perm_seed: &[usize], signs: &[bool], offset: Var) -> ClauseSet {
        let vars = f.vars().to_vec();
        let mut perm: Vec<usize> = (0..vars.len()).collect();
        for i in (1..vars.len()).rev() {
            perm.swap(i, perm_seed[i % perm_seed.len()] % (i + 1));
        }
        f.map_literals(|l| {
            let i = vars.binary_search(&l.var()).unwrap();
            let target = vars[perm[i]] + offset;
            let flip = signs[i % signs.len()];
            Literal::with_sign(target, l.is_positive() != flip)
        })
    }

    proptest! {
        #[test]
        fn canonical_form_is_constant_on_orbits(
            perm in proptest::collection::vec(0usize..16, 8),
            signs in proptest::collection::vec(any::<bool>(), 8),
            offset in 0u32..20,
            which in 0usize..4,
        ) {
            let f = match which {
                0 => dt2(),
                1 => dt3(),
                2 => cs(&[&[2, 3], &[-1, -2, -3], &[-1, 2, -3], &[-2, 3], &[-3, 1]]),
                _ => ClauseSet::full(&[1, 2, 3]),
            };
            let g = scramble(&f, &perm, &signs, offset);
            prop_assert_eq!(canonical_form(&g).canonical, canonical_form(&f).canonical);
            prop_assert!(is_isomorphic(&f, &g));
        }
    }
}
