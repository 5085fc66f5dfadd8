//! Line-delimited JSON catalogue of isomorphism classes.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::clause_set::ClauseSet;
use crate::error::{Error, Result};
use crate::factor::is_clause_irreducible;
use crate::iso::canonical_form;
use crate::search::enumerate::EnumerationTask;
use crate::search::nfs::{nfs_search, FlipOutcome};
use crate::singular::is_nonsingular;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Enumeration(EnumerationTask),
    Generator { name: String, params: String },
    Input { source: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogFlags {
    pub nonsingular: bool,
    pub irreducible: Option<bool>,
    pub nfs_outcome: Option<FlipOutcome>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub schema_version: u32,
    pub canonical: ClauseSet,
    pub deficiency: i64,
    pub n: usize,
    pub c: usize,
    pub flags: CatalogFlags,
    pub provenance: Provenance,
    pub tool_version: String,
}

/// What to compute beyond the cheap flags.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EntryOptions {
    pub irreducibility: bool,
    /// `(depth, breadth)`; run only on clause-irreducible classes.
    pub nfs_bounds: Option<(usize, usize)>,
}

fn compute_flags(canonical: &ClauseSet, opts: EntryOptions) -> Result<CatalogFlags> {
    let uhit = canonical.is_uhit();
    let irreducible = if (opts.irreducibility || opts.nfs_bounds.is_some()) && uhit {
        Some(is_clause_irreducible(canonical)?)
    } else {
        None
    };
    let nfs_outcome = match (opts.nfs_bounds, irreducible) {
        (Some((d, b)), Some(true)) => Some(nfs_search(canonical, d, b)?.outcome),
        _ => None,
    };
    Ok(CatalogFlags {
        nonsingular: is_nonsingular(canonical),
        irreducible,
        nfs_outcome,
    })
}

impl CatalogEntry {
    pub fn new(f: &ClauseSet, provenance: Provenance, opts: EntryOptions) -> Result<Self> {
        let canonical = canonical_form(f).canonical;
        Ok(CatalogEntry {
            schema_version: SCHEMA_VERSION,
            deficiency: canonical.deficiency(),
            n: canonical.n(),
            c: canonical.c(),
            flags: compute_flags(&canonical, opts)?,
            canonical,
            provenance,
            tool_version: TOOL_VERSION.to_string(),
        })
    }

    /// Re-derives every stored field from the clause-set.
    pub fn reverify(&self) -> Result<bool> {
        let opts = EntryOptions {
            irreducibility: self.flags.irreducible.is_some(),
            nfs_bounds: None,
        };
        let mut flags = compute_flags(&self.canonical, opts)?;
        flags.nfs_outcome = self.flags.nfs_outcome;
        Ok(canonical_form(&self.canonical).canonical == self.canonical
            && self.deficiency == self.canonical.deficiency()
            && self.n == self.canonical.n()
            && self.c == self.canonical.c()
            && flags == self.flags)
    }
}

pub fn write_entry(w: &mut impl Write, entry: &CatalogEntry) -> Result<()> {
    let line = serde_json::to_string(entry).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(w, "{line}")?;
    Ok(())
}

pub fn read_catalog(r: impl BufRead) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let entry: CatalogEntry = serde_json::from_str(&line).map_err(|e| Error::Parse {
            line: i + 1,
            column: e.column(),
            message: e.to_string(),
        })?;
        if entry.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse {
                line: i + 1,
                column: 1,
                message: format!("unsupported schema version {}", entry.schema_version),
            });
        }
        out.push(entry);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::generators::{dt2, dt3};

    #[test]
    fn round_trip_and_reverify() {
        let opts = EntryOptions {
            irreducibility: true,
            nfs_bounds: Some((8, 1000)),
        };
        let entries: Vec<_> = [dt2(), dt3()]
            .iter()
            .map(|f| {
                CatalogEntry::new(
                    f,
                    Provenance::Generator {
                        name: "dt".into(),
                        params: String::new(),
                    },
                    opts,
                )
                .unwrap()
            })
            .collect();
        assert_eq!(entries[1].flags.irreducible, Some(true));
        assert_eq!(entries[1].flags.nfs_outcome, Some(FlipOutcome::FoundReducible));
        assert_eq!(entries[0].flags.nfs_outcome, None);
        let mut buf = Vec::new();
        for e in &entries {
            write_entry(&mut buf, e).unwrap();
        }
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert!(text.contains("\"schema_version\":1"));
        let back = read_catalog(&buf[..]).unwrap();
        assert_eq!(back, entries);
        assert!(back.iter().all(|e| e.reverify().unwrap()));
        let mut tampered = back[1].clone();
        tampered.flags.irreducible = Some(false);
        assert!(!tampered.reverify().unwrap());
    }

    #[test]
    fn bad_lines_rejected() {
        assert!(matches!(
            read_catalog(&b"{nope\n"[..]),
            Err(Error::Parse { line: 1, .. })
        ));
    }
}
