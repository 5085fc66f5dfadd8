//! Constructive flip procedures: enabling an fs-resolution by one flip at a
//! variable of degrees 2/2, and walking towards an fs-pair when one
//! assignment reaches deficiency 1.

use serde::{Deserialize, Serialize};

use crate::clause_set::ClauseSet;
use crate::error::{Error, Result};
use crate::literal::{Literal, Var};
use crate::transforms::{find_fs_pairs, nfs_flip, FsPair, NfsPair};

use super::nfs::{FlipOutcome, FlipPath, FlipStep};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[allow(clippy::large_enum_variant)]
pub enum DoubleTwoWitness {
    ExistingFsPair(FsPair),
    Flip {
        pair: NfsPair,
        result: ClauseSet,
        created: FsPair,
    },
}

fn precondition(msg: impl Into<String>) -> Error {
    Error::PreconditionViolation(msg.into())
}

/// For `ldeg(v) = ldeg(v̄) = 2`: an existing fs-pair, or the nfs-pair
/// `{C₂, D₂}` with `C₂ = {v, x̄} ⊎ A ⊎ {z}`, `D₂ = {v̄} ⊎ A ⊎ {z}` whose flip
/// turns `D₂` into the partner of `D₁ = {v̄, x} ⊎ A ⊎ {z̄}`.
pub fn flip_for_double_two(f: &ClauseSet, v: Var) -> Result<DoubleTwoWitness> {
    if !f.is_uhit() {
        return Err(precondition("not an unsatisfiable hitting clause-set"));
    }
    let pos = f.occurrences(Literal::positive(v));
    let neg = f.occurrences(Literal::negative(v));
    if pos.len() != 2 || neg.len() != 2 {
        return Err(precondition(format!("variable {v} does not have degrees 2/2")));
    }
    if let Some(p) = find_fs_pairs(f).into_iter().next() {
        return Ok(DoubleTwoWitness::ExistingFsPair(p));
    }
    for (i, c2) in pos.iter().enumerate() {
        let c1 = pos[1 - i];
        for (j, d2) in neg.iter().enumerate() {
            let d1 = neg[1 - j];
            let Some(pair) = NfsPair::from_clauses(c2, d2) else {
                continue;
            };
            // D₂ is the shorter clause, v̄ the resolution literal, x̄ the side.
            if pair.resolution_literal != Literal::negative(v) {
                continue;
            }
            let x = pair.side_literal.complement();
            if !c1.contains(x) || !d1.contains(x) {
                continue;
            }
            let result = nfs_flip(f, &pair)?;
            // E ∪ {v̄, x}
            let (new_d2, _) = pair.flipped();
            let created = FsPair::from_clauses(d1, &new_d2)
                .or_else(|| find_fs_pairs(&result).into_iter().next());
            if let Some(created) = created {
                debug_assert!(result.is_uhit());
                return Ok(DoubleTwoWitness::Flip {
                    pair,
                    result,
                    created,
                });
            }
        }
    }
    Err(precondition(format!("no enabling flip found at variable {v}")))
}

/// Repeatedly lifts an fs-pair of `F[x := 1]` to an nfs-pair of `F` and
/// flips it, until `F` itself has an fs-pair.
pub fn flips_toward_fs(f: &ClauseSet, x: Literal) -> Result<FlipPath> {
    if !f.is_uhit() {
        return Err(precondition("not an unsatisfiable hitting clause-set"));
    }
    if !f.has_var(x.var()) {
        return Err(precondition(format!("literal {x} not over var(F)")));
    }
    let projected = f.assign(x);
    if projected.deficiency() != 1 {
        return Err(precondition(format!(
            "assigning {x} gives deficiency {}, not 1",
            projected.deficiency()
        )));
    }
    let limit = projected.c().saturating_sub(1);
    let mut current = f.clone();
    let mut steps = Vec::new();
    loop {
        if !find_fs_pairs(&current).is_empty() {
            break;
        }
        if steps.len() >= limit {
            return Err(precondition("flip budget c(F[x]) - 1 exceeded"));
        }
        let proj = current.assign(x);
        let fs = find_fs_pairs(&proj)
            .into_iter()
            .next()
            .ok_or_else(|| precondition("deficiency-1 projection without fs-pair"))?;
        let lift = |c: &crate::clause::Clause| {
            if current.contains(c) {
                c.clone()
            } else {
                c.with_literal(x.complement()).expect("x̄ absent")
            }
        };
        let (a, b) = (lift(&fs.left), lift(&fs.right));
        let pair = NfsPair::from_clauses(&a, &b)
            .ok_or_else(|| precondition("lifted clauses are not an nfs-pair"))?;
        let next = nfs_flip(&current, &pair)?;
        debug_assert!(next.is_uhit());
        steps.push(FlipStep {
            pair,
            result: next.clone(),
        });
        current = next;
    }
    Ok(FlipPath {
        start: f.clone(),
        steps,
        terminal: current,
        outcome: FlipOutcome::FoundFsPair,
    })
}
