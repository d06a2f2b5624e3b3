//! Ground-truth checker for candidate solutions.
//!
//! A solution is valid when every part with at least two vertices is replaced
//! by a spanning path and no two kept edges cross. Every violation is
//! reported, not just the first.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::model::{EdgeClass, EdgeId, Instance, PartId, Solution};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Violation {
    /// The choice for this part is not a permutation of its vertices, or the
    /// part received more than one choice.
    NotAPath(PartId),
    /// Both edges of a crossing pair are kept.
    UnresolvedCrossing(EdgeId, EdgeId),
    /// A part with at least two vertices has no choice.
    MissingChoice(PartId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(Vec<Violation>),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("solution references part {part}, but the instance has {parts} parts")]
    ForeignPart { part: usize, parts: usize },
}

/// Kept status of every edge; `None` for clique edges of parts whose choice
/// is missing or malformed.
fn kept_status(instance: &Instance, solution: &Solution) -> Result<(Vec<Option<bool>>, Vec<Violation>), VerifyError> {
    let parts = instance.part_count();
    let mut choice = vec![None; parts];
    let mut bad = vec![false; parts];
    for c in &solution.paths {
        let p = c.part.index();
        if p >= parts {
            return Err(VerifyError::ForeignPart { part: p, parts });
        }
        if choice[p].is_some() {
            bad[p] = true;
        }
        choice[p] = Some(c);
    }

    let edges = instance.graph().edge_count();
    let mut kept: Vec<Option<bool>> = vec![Some(true); edges];
    let mut violations = Vec::new();
    for p in instance.part_ids() {
        let vertices = instance.part(p);
        let clique = instance.clique_edges(p);
        let Some(c) = choice[p.index()] else {
            if vertices.len() >= 2 {
                violations.push(Violation::MissingChoice(p));
                for &e in clique {
                    kept[e.index()] = None;
                }
            }
            continue;
        };
        let mut sorted = c.vertices.clone();
        sorted.sort_unstable();
        if bad[p.index()] || sorted != vertices {
            violations.push(Violation::NotAPath(p));
            for &e in clique {
                kept[e.index()] = None;
            }
            continue;
        }
        for &e in clique {
            kept[e.index()] = Some(false);
        }
        for (a, b) in c.steps() {
            // Both endpoints are in the part, so the edge exists.
            let e = instance.graph().find_edge(a, b).expect("clique edge");
            kept[e.index()] = Some(true);
        }
    }
    Ok((kept, violations))
}

/// Checks a solution against the instance.
pub fn verify_solution(instance: &Instance, solution: &Solution) -> Result<Verdict, VerifyError> {
    let (kept, mut violations) = kept_status(instance, solution)?;
    for &(a, b) in instance.graph().crossings() {
        if kept[a.index()] == Some(true) && kept[b.index()] == Some(true) {
            violations.push(Violation::UnresolvedCrossing(a, b));
        }
    }
    Ok(if violations.is_empty() {
        Verdict::Valid
    } else {
        Verdict::Invalid(violations)
    })
}

/// Clique edges that are not on their part's path. Link edges never appear.
/// Parts without a well-formed choice contribute nothing.
pub fn removed_edges(instance: &Instance, solution: &Solution) -> Result<BTreeSet<EdgeId>, VerifyError> {
    let (kept, _) = kept_status(instance, solution)?;
    Ok(kept
        .iter()
        .enumerate()
        .filter(|&(i, k)| *k == Some(false) && matches!(instance.classify_edge(EdgeId(i)), EdgeClass::Clique { .. }))
        .map(|(i, _)| EdgeId(i))
        .collect())
}
