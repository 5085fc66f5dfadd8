//! Breadth-first search over the nfs-flip graph for a clause-reducible
//! state, deduplicating states up to isomorphism.

use std::collections::HashSet;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clause::Clause;
use crate::clause_set::ClauseSet;
use crate::error::{Error, Result};
use crate::factor::find_nontrivial_factor;
use crate::iso::canonical_form;
use crate::transforms::{find_flippable_pairs, nfs_flip, NfsPair};

pub const DEFAULT_DEPTH_BOUND: usize = 8;
pub const DEFAULT_BREADTH_BOUND: usize = 1_000_000;
const CHECKPOINT_FORMAT: &str = "uhitlab-nfs-checkpoint";
const CHECKPOINT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FlipOutcome {
    FoundReducible,
    /// Nothing found. `complete` means the whole flip component was
    /// explored rather than a bound being hit.
    Exhausted { depth: usize, complete: bool },
    FoundFsPair,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipStep {
    pub pair: NfsPair,
    pub result: ClauseSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipPath {
    pub start: ClauseSet,
    pub steps: Vec<FlipStep>,
    pub terminal: ClauseSet,
    pub outcome: FlipOutcome,
}

impl FlipPath {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Replays every step from `start`.
    pub fn is_valid(&self) -> bool {
        let mut cur = self.start.clone();
        for s in &self.steps {
            match nfs_flip(&cur, &s.pair) {
                Ok(next) if next == s.result && next.is_uhit() => cur = next,
                _ => return false,
            }
        }
        cur == self.terminal
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Node {
    set: ClauseSet,
    parent: Option<usize>,
    pair: Option<NfsPair>,
    depth: usize,
}

/// Search state; can be written to and restored from a checkpoint file.
#[derive(Debug, Clone)]
pub struct NfsSearch {
    pub depth_bound: usize,
    pub breadth_bound: usize,
    checkpoint: Option<PathBuf>,
    nodes: Vec<Node>,
    frontier: Vec<usize>,
    visited: HashSet<ClauseSet>,
    level: usize,
}

#[derive(Serialize, Deserialize)]
struct Header {
    format: String,
    version: u32,
    depth_bound: usize,
    breadth_bound: usize,
    level: usize,
    nodes: usize,
}

#[derive(Serialize, Deserialize)]
struct NodeRecord {
    id: usize,
    parent: Option<usize>,
    pair: Option<[Clause; 2]>,
    depth: usize,
    clauses: ClauseSet,
}

#[derive(Serialize, Deserialize)]
struct FrontierRecord {
    frontier: Vec<usize>,
}

impl NfsSearch {
    pub fn new(start: &ClauseSet, depth_bound: usize, breadth_bound: usize) -> Result<Self> {
        if !start.is_uhit() {
            return Err(Error::NotUhit);
        }
        let mut visited = HashSet::new();
        visited.insert(canonical_form(start).canonical);
        Ok(NfsSearch {
            depth_bound,
            breadth_bound,
            checkpoint: None,
            nodes: vec![Node {
                set: start.clone(),
                parent: None,
                pair: None,
                depth: 0,
            }],
            frontier: vec![0],
            visited,
            level: 0,
        })
    }

    /// Writes the state after every completed level.
    pub fn with_checkpoint(mut self, path: impl Into<PathBuf>) -> Self {
        self.checkpoint = Some(path.into());
        self
    }

    pub fn visited(&self) -> usize {
        self.visited.len()
    }

    fn path_to(&self, id: usize, outcome: FlipOutcome) -> FlipPath {
        let mut steps = Vec::new();
        let mut cur = id;
        while let Some(parent) = self.nodes[cur].parent {
            steps.push(FlipStep {
                pair: self.nodes[cur].pair.clone().expect("non-root node has a pair"),
                result: self.nodes[cur].set.clone(),
            });
            cur = parent;
        }
        steps.reverse();
        FlipPath {
            start: self.nodes[0].set.clone(),
            steps,
            terminal: self.nodes[id].set.clone(),
            outcome,
        }
    }

    pub fn run(&mut self) -> Result<FlipPath> {
        if self.level == 0 && self.nodes.len() == 1 && find_nontrivial_factor(&self.nodes[0].set)?.is_some() {
            return Ok(self.path_to(0, FlipOutcome::FoundReducible));
        }
        loop {
            if self.frontier.is_empty() {
                let depth = self.nodes.iter().map(|n| n.depth).max().unwrap_or(0);
                return Ok(self.path_to(0, FlipOutcome::Exhausted { depth, complete: true }));
            }
            if self.level >= self.depth_bound || self.visited.len() >= self.breadth_bound {
                return Ok(self.path_to(
                    0,
                    FlipOutcome::Exhausted {
                        depth: self.level,
                        complete: false,
                    },
                ));
            }
            if let Some(found) = self.expand_level()? {
                return Ok(self.path_to(found, FlipOutcome::FoundReducible));
            }
            self.level += 1;
            if let Some(path) = self.checkpoint.clone() {
                self.save(&path)?;
            }
        }
    }

    /// Expands the frontier by one level; returns the first reducible child
    /// in deterministic order.
    fn expand_level(&mut self) -> Result<Option<usize>> {
        let children: Vec<Vec<(NfsPair, ClauseSet, ClauseSet)>> = self
            .frontier
            .par_iter()
            .map(|&id| {
                let f = &self.nodes[id].set;
                find_flippable_pairs(f)
                    .into_iter()
                    .map(|p| {
                        let g = nfs_flip(f, &p).expect("flippable pair");
                        let canon = canonical_form(&g).canonical;
                        (p, g, canon)
                    })
                    .collect()
            })
            .collect();
        let mut fresh = Vec::new();
        let depth = self.level + 1;
        for (&parent, kids) in self.frontier.iter().zip(children) {
            for (pair, set, canon) in kids {
                if self.visited.len() >= self.breadth_bound {
                    break;
                }
                if self.visited.insert(canon) {
                    debug_assert!(set.is_uhit());
                    self.nodes.push(Node {
                        set,
                        parent: Some(parent),
                        pair: Some(pair),
                        depth,
                    });
                    fresh.push(self.nodes.len() - 1);
                }
            }
        }
        let reducible: Vec<bool> = fresh
            .par_iter()
            .map(|&id| find_nontrivial_factor(&self.nodes[id].set).map(|x| x.is_some()))
            .collect::<Result<_>>()?;
        if let Some(pos) = reducible.iter().position(|&r| r) {
            return Ok(Some(fresh[pos]));
        }
        self.frontier = fresh;
        Ok(None)
    }

    /// Versioned JSON-lines: a header, one record per node, then the frontier.
    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        {
            let mut w = BufWriter::new(File::create(&tmp)?);
            let header = Header {
                format: CHECKPOINT_FORMAT.into(),
                version: CHECKPOINT_VERSION,
                depth_bound: self.depth_bound,
                breadth_bound: self.breadth_bound,
                level: self.level,
                nodes: self.nodes.len(),
            };
            writeln!(w, "{}", serde_json::to_string(&header).map_err(io_err)?)?;
            for (id, n) in self.nodes.iter().enumerate() {
                let rec = NodeRecord {
                    id,
                    parent: n.parent,
                    pair: n.pair.as_ref().map(|p| {
                        let [a, b] = p.clauses();
                        [a.clone(), b.clone()]
                    }),
                    depth: n.depth,
                    clauses: n.set.clone(),
                };
                writeln!(w, "{}", serde_json::to_string(&rec).map_err(io_err)?)?;
            }
            let fr = FrontierRecord {
                frontier: self.frontier.clone(),
            };
            writeln!(w, "{}", serde_json::to_string(&fr).map_err(io_err)?)?;
            w.flush()?;
        }
        std::fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn resume(path: &Path) -> Result<Self> {
        let reader = BufReader::new(File::open(path)?);
        let mut lines = reader.lines().enumerate();
        let bad = |line: usize, message: String| Error::Parse {
            line: line + 1,
            column: 1,
            message,
        };
        let (_, first) = lines.next().ok_or_else(|| bad(0, "empty checkpoint".into()))?;
        let header: Header = serde_json::from_str(&first?).map_err(|e| bad(0, e.to_string()))?;
        if header.format != CHECKPOINT_FORMAT || header.version != CHECKPOINT_VERSION {
            return Err(bad(0, format!("unsupported checkpoint {} v{}", header.format, header.version)));
        }
        let mut nodes = Vec::with_capacity(header.nodes);
        let mut frontier = None;
        for (i, line) in lines {
            let line = line?;
            if nodes.len() < header.nodes {
                let rec: NodeRecord = serde_json::from_str(&line).map_err(|e| bad(i, e.to_string()))?;
                if rec.id != nodes.len() {
                    return Err(bad(i, format!("node id {} out of order", rec.id)));
                }
                let pair = match rec.pair {
                    None => None,
                    Some([a, b]) => Some(
                        NfsPair::from_clauses(&a, &b)
                            .ok_or_else(|| bad(i, "recorded pair is not an nfs-pair".into()))?,
                    ),
                };
                nodes.push(Node {
                    set: rec.clauses,
                    parent: rec.parent,
                    pair,
                    depth: rec.depth,
                });
            } else {
                let fr: FrontierRecord = serde_json::from_str(&line).map_err(|e| bad(i, e.to_string()))?;
                frontier = Some(fr.frontier);
            }
        }
        let frontier = frontier.ok_or_else(|| bad(header.nodes + 1, "missing frontier record".into()))?;
        if nodes.is_empty() || frontier.iter().any(|&id| id >= nodes.len()) {
            return Err(bad(0, "inconsistent checkpoint".into()));
        }
        let visited = nodes.par_iter().map(|n| canonical_form(&n.set).canonical).collect();
        Ok(NfsSearch {
            depth_bound: header.depth_bound,
            breadth_bound: header.breadth_bound,
            checkpoint: Some(path.to_path_buf()),
            nodes,
            frontier,
            visited,
            level: header.level,
        })
    }
}

fn io_err(e: serde_json::Error) -> Error {
    Error::Io(e.to_string())
}

/// BFS for a clause-reducible state reachable by nfs-flips.
pub fn nfs_search(f: &ClauseSet, depth_bound: usize, breadth_bound: usize) -> Result<FlipPath> {
    NfsSearch::new(f, depth_bound, breadth_bound)?.run()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::is_clause_irreducible;
    use crate::search::generators::{a1, dt2, dt3};

    #[test]
    fn dt3_one_flip() {
        let p = nfs_search(&dt3(), DEFAULT_DEPTH_BOUND, DEFAULT_BREADTH_BOUND).unwrap();
        assert_eq!(p.outcome, FlipOutcome::FoundReducible);
        assert_eq!(p.len(), 1);
        assert!(p.is_valid());
        assert!(!is_clause_irreducible(&p.terminal).unwrap());
    }

    #[test]
    fn reducible_start_is_immediate() {
        let p = nfs_search(&dt2(), 3, 100).unwrap();
        assert_eq!(p.outcome, FlipOutcome::FoundReducible);
        assert!(p.is_empty());
    }

    #[test]
    fn a1_exhausts_at_zero() {
        let p = nfs_search(&a1(), 8, 100).unwrap();
        assert_eq!(
            p.outcome,
            FlipOutcome::Exhausted {
                depth: 0,
                complete: true
            }
        );
    }

    #[test]
    fn depth_bound_zero_is_inconclusive() {
        let p = nfs_search(&dt3(), 0, 100).unwrap();
        assert_eq!(
            p.outcome,
            FlipOutcome::Exhausted {
                depth: 0,
                complete: false
            }
        );
    }

    #[test]
    fn not_uhit_rejected() {
        let f = ClauseSet::from_ints(&[&[1]]).unwrap();
        assert_eq!(nfs_search(&f, 1, 1).unwrap_err(), Error::NotUhit);
    }

    #[test]
    fn checkpoint_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("search.jsonl");
        let mut s = NfsSearch::new(&dt3(), 0, 100).unwrap().with_checkpoint(&path);
        s.save(&path).unwrap();
        let _ = s.run().unwrap();
        let mut resumed = NfsSearch::resume(&path).unwrap();
        assert_eq!(resumed.visited(), 1);
        resumed.depth_bound = 4;
        let p = resumed.run().unwrap();
        assert_eq!(p.outcome, FlipOutcome::FoundReducible);
        assert_eq!(p.len(), 1);
        assert!(p.is_valid());
    }

    #[test]
    fn corrupt_checkpoint_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.jsonl");
        std::fs::write(&path, "{\"format\":\"other\"}\n").unwrap();
        assert!(matches!(NfsSearch::resume(&path), Err(Error::Parse { .. })));
    }
}
