//! One-shot diagnostic of a clause-set.

use serde::{Deserialize, Serialize};

use crate::clause_set::{ClauseSet, Measures};
use crate::error::{Error, Result};
use crate::factor::enumerate_factors_bounded;
use crate::iso::canonical_form;
use crate::oracle::{Oracle, DEFAULT_ORACLE_BOUND};
use crate::search::nfs::{nfs_search, FlipOutcome};
use crate::singular::{singularity_profile, snf, SingularityProfile};
use crate::transforms::{find_fs_pairs, find_nfs_pairs};

/// Stable 64-bit FNV-1a digest of a canonical clause-set, shown as hex.
pub fn canonical_id(canonical: &ClauseSet) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for c in canonical.iter() {
        for l in c.literals() {
            for b in l.get().to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
        }
        // clause separator
        h ^= 0xff;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    format!("{h:016x}")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfSummary {
    pub canonical_id: String,
    pub canonical: ClauseSet,
    pub singularity_index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipSummary {
    pub outcome: FlipOutcome,
    pub flips: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub input_id: String,
    pub measures: Measures,
    pub hitting: bool,
    pub uhit: bool,
    /// `None` when the variable count exceeds the oracle bound.
    pub satisfiable: Option<bool>,
    pub dyadic_sum: String,
    pub singularity: SingularityProfile,
    pub snf: Option<SnfSummary>,
    /// `None` when not UHIT or above the enumeration bound.
    pub nontrivial_factor_count: Option<usize>,
    pub factor_witnesses: Vec<ClauseSet>,
    pub irreducible: Option<bool>,
    pub fs_pairs: usize,
    pub nfs_pairs: usize,
    pub flip_search: Option<FlipSummary>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportOptions {
    pub witness_cap: usize,
    pub factor_bound: usize,
    pub oracle_bound: usize,
    /// `(depth, breadth)` bounds; only run on clause-irreducible UHIT.
    pub flip_search: Option<(usize, usize)>,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            witness_cap: 8,
            factor_bound: crate::factor::DEFAULT_FACTOR_BOUND,
            oracle_bound: DEFAULT_ORACLE_BOUND,
            flip_search: None,
        }
    }
}

pub fn analyse(f: &ClauseSet, input_id: &str, opts: &ReportOptions) -> Result<AnalysisReport> {
    let uhit = f.is_uhit();
    let mut report = AnalysisReport {
        input_id: input_id.to_string(),
        measures: f.measures(),
        hitting: f.is_hitting(),
        uhit,
        satisfiable: if uhit {
            Some(false)
        } else {
            Oracle::new(opts.oracle_bound).is_satisfiable(f).ok()
        },
        dyadic_sum: f.dyadic_sum().to_string(),
        singularity: singularity_profile(f),
        snf: None,
        nontrivial_factor_count: None,
        factor_witnesses: Vec::new(),
        irreducible: None,
        fs_pairs: find_fs_pairs(f).len(),
        nfs_pairs: find_nfs_pairs(f).len(),
        flip_search: None,
    };
    if !uhit {
        return Ok(report);
    }
    let nf = snf(f)?;
    let canonical = canonical_form(&nf.normal_form).canonical;
    report.snf = Some(SnfSummary {
        canonical_id: canonical_id(&canonical),
        canonical,
        singularity_index: nf.singularity_index,
    });
    match enumerate_factors_bounded(f, true, opts.factor_bound) {
        Ok(factors) => {
            report.nontrivial_factor_count = Some(factors.len());
            report.irreducible = Some(factors.is_empty());
            report.factor_witnesses = factors
                .into_iter()
                .take(opts.witness_cap)
                .map(|x| x.subset)
                .collect();
        }
        Err(Error::BoundExceeded { .. }) => {
            log::warn!("{input_id}: {} clauses exceed the factor bound; skipped", f.c())
        }
        Err(e) => return Err(e),
    }
    if let (Some((depth, breadth)), Some(true)) = (opts.flip_search, report.irreducible) {
        let path = nfs_search(f, depth, breadth)?;
        report.flip_search = Some(FlipSummary {
            outcome: path.outcome,
            flips: path.len(),
        });
    }
    Ok(report)
}
