//! Linear-time decision for 1-plane instances.
//!
//! When every edge is crossed at most once, the crossings between clique
//! edges group the cliques into components of constant size: in a drawing
//! that exists, a component holds at most two cliques, none of them with
//! five or more vertices, and a four-clique crossing itself stands alone.
//! Each component is then decided by exhaustive search over the product of
//! its spanning-path domains. Crossings with link edges or with the edge
//! of a two-vertex part only forbid the clique edge involved.
//!
//! Components that break the bounds above cannot come from a real drawing;
//! they are still solved (by backtracking) and reported as warnings.

use thiserror::Error;

use crate::model::{
    path_table, EdgeClass, EdgeId, Instance, ModelError, Outcome, PartId, PathChoice, Solution, MAX_PART_SIZE,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OnePlaneError {
    #[error("edge {edge} has more than one crossing")]
    NotOnePlane { edge: EdgeId },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Ways a component can contradict what a simple 1-plane drawing allows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RealizabilityViolation {
    /// More than two cliques in one component.
    TooManyParts,
    /// A clique with at least five vertices crosses another clique.
    LargeCliqueCrossed,
    /// A four-clique with a crossing of its own also crosses another clique.
    SelfCrossingCombined,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossComponent {
    /// Member parts, ascending.
    pub parts: Vec<PartId>,
    /// Crossings between removable clique edges of the members, including
    /// crossings inside a single member.
    pub crossings: Vec<(EdgeId, EdgeId)>,
    /// Member edges that cross an unremovable edge.
    pub forbidden: Vec<EdgeId>,
    pub violation: Option<RealizabilityViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OnePlaneReport {
    pub outcome: Outcome,
    /// `(component index, violation)` for components that no simple 1-plane
    /// drawing can produce.
    pub warnings: Vec<(usize, RealizabilityViolation)>,
}

/// Ok iff no edge has two or more crossings; otherwise names the lowest such
/// edge.
pub fn assert_one_plane(instance: &Instance) -> Result<(), OnePlaneError> {
    let g = instance.graph();
    match (0..g.edge_count()).map(EdgeId).find(|&e| g.crossing_count(e) > 1) {
        Some(edge) => Err(OnePlaneError::NotOnePlane { edge }),
        None => Ok(()),
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Groups parts connected by crossings between removable clique edges.
/// Every part belongs to exactly one component; components are ordered by
/// their smallest part.
pub fn crossing_components(instance: &Instance) -> Result<Vec<CrossComponent>, OnePlaneError> {
    assert_one_plane(instance)?;
    let parts = instance.part_count();
    let part_of_edge = |e: EdgeId| match instance.classify_edge(e) {
        EdgeClass::Clique { part, .. } => part.index(),
        EdgeClass::Link => unreachable!("removable edges are clique edges"),
    };

    let mut parent: Vec<usize> = (0..parts).collect();
    for &(a, b) in instance.graph().crossings() {
        if instance.is_removable(a) && instance.is_removable(b) {
            let (ra, rb) = (find(&mut parent, part_of_edge(a)), find(&mut parent, part_of_edge(b)));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }

    let mut slot = vec![usize::MAX; parts];
    let mut comps: Vec<CrossComponent> = Vec::new();
    for p in 0..parts {
        let r = find(&mut parent, p);
        if slot[r] == usize::MAX {
            slot[r] = comps.len();
            comps.push(CrossComponent {
                parts: Vec::new(),
                crossings: Vec::new(),
                forbidden: Vec::new(),
                violation: None,
            });
        }
        comps[slot[r]].parts.push(PartId(p));
    }

    let mut self_crossed = vec![false; parts];
    for &(a, b) in instance.graph().crossings() {
        match (instance.is_removable(a), instance.is_removable(b)) {
            (true, true) => {
                let (pa, pb) = (part_of_edge(a), part_of_edge(b));
                if pa == pb {
                    self_crossed[pa] = true;
                }
                let c = slot[find(&mut parent, pa)];
                comps[c].crossings.push((a, b));
            }
            (true, false) | (false, true) => {
                let e = if instance.is_removable(a) { a } else { b };
                let c = slot[find(&mut parent, part_of_edge(e))];
                comps[c].forbidden.push(e);
            }
            (false, false) => {}
        }
    }

    for comp in &mut comps {
        if comp.parts.len() < 2 {
            continue;
        }
        comp.violation = if comp.parts.len() > 2 {
            Some(RealizabilityViolation::TooManyParts)
        } else if comp.parts.iter().any(|&p| instance.part(p).len() >= 5) {
            Some(RealizabilityViolation::LargeCliqueCrossed)
        } else if comp.parts.iter().any(|&p| self_crossed[p.index()]) {
            Some(RealizabilityViolation::SelfCrossingCombined)
        } else {
            None
        };
    }
    Ok(comps)
}

/// Candidate paths of one member and the constraints against other members.
struct Member {
    part: PartId,
    /// `(table index, kept mask)` surviving unary constraints.
    candidates: Vec<(usize, u64)>,
}

/// A crossing between two members: `(member, bit, member, bit)`.
type Link = (usize, u64, usize, u64);

fn local(instance: &Instance, e: EdgeId) -> (PartId, u64) {
    match instance.classify_edge(e) {
        EdgeClass::Clique { part, local } => (part, 1 << local),
        EdgeClass::Link => unreachable!("removable edges are clique edges"),
    }
}

/// Picks one candidate per member, or `None` if the component is infeasible.
fn solve_component(instance: &Instance, comp: &CrossComponent) -> Result<Option<Vec<(PartId, usize)>>, ModelError> {
    let position = |p: PartId| comp.parts.binary_search(&p).expect("member part");
    let mut blocked = vec![0u64; comp.parts.len()];
    for &e in &comp.forbidden {
        let (p, bit) = local(instance, e);
        blocked[position(p)] |= bit;
    }
    let mut inner: Vec<Vec<u64>> = vec![Vec::new(); comp.parts.len()];
    let mut links: Vec<Link> = Vec::new();
    for &(a, b) in &comp.crossings {
        let (pa, ba) = local(instance, a);
        let (pb, bb) = local(instance, b);
        let (ia, ib) = (position(pa), position(pb));
        if ia == ib {
            inner[ia].push(ba | bb);
        } else {
            links.push((ia, ba, ib, bb));
        }
    }

    let mut members = Vec::with_capacity(comp.parts.len());
    for (i, &p) in comp.parts.iter().enumerate() {
        let size = instance.part(p).len();
        if size > MAX_PART_SIZE {
            return Err(ModelError::PartTooLarge { part: p.index(), size });
        }
        let table = path_table(size);
        let candidates: Vec<(usize, u64)> = table
            .kept
            .iter()
            .copied()
            .enumerate()
            .filter(|&(_, kept)| kept & blocked[i] == 0 && inner[i].iter().all(|&pair| kept & pair != pair))
            .collect();
        if candidates.is_empty() {
            return Ok(None);
        }
        members.push(Member { part: p, candidates });
    }

    let mut chosen = vec![0usize; members.len()];
    let found = if members.len() == 1 {
        true
    } else {
        search(&members, &links, 0, &mut chosen)
    };
    Ok(found.then(|| {
        members
            .iter()
            .zip(&chosen)
            .map(|(m, &c)| (m.part, m.candidates[c].0))
            .collect()
    }))
}

/// Plain product search over members in order, checking each new member
/// against those already fixed.
fn search(members: &[Member], links: &[Link], depth: usize, chosen: &mut [usize]) -> bool {
    if depth == members.len() {
        return true;
    }
    'next: for c in 0..members[depth].candidates.len() {
        let kept = members[depth].candidates[c].1;
        for &(ia, ba, ib, bb) in links {
            let clash = if ia == depth && ib < depth {
                kept & ba != 0 && members[ib].candidates[chosen[ib]].1 & bb != 0
            } else if ib == depth && ia < depth {
                kept & bb != 0 && members[ia].candidates[chosen[ia]].1 & ba != 0
            } else {
                false
            };
            if clash {
                continue 'next;
            }
        }
        chosen[depth] = c;
        if search(members, links, depth + 1, chosen) {
            return true;
        }
    }
    false
}

/// Decides a 1-plane instance in time linear in vertices, edges, and
/// crossings, provided components obey the drawing bounds.
pub fn solve_one_plane(instance: &Instance) -> Result<OnePlaneReport, OnePlaneError> {
    assert_one_plane(instance)?;
    let infeasible = |warnings| OnePlaneReport {
        outcome: Outcome::Infeasible,
        warnings,
    };
    if instance
        .graph()
        .crossings()
        .iter()
        .any(|&(a, b)| !instance.is_removable(a) && !instance.is_removable(b))
    {
        return Ok(infeasible(Vec::new()));
    }

    let comps = crossing_components(instance)?;
    let warnings: Vec<(usize, RealizabilityViolation)> = comps
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.violation.map(|v| (i, v)))
        .collect();

    let mut choice = vec![None; instance.part_count()];
    for comp in &comps {
        if comp.parts.iter().all(|&p| instance.part(p).len() < 3) {
            continue;
        }
        let Some(picks) = solve_component(instance, comp)? else {
            return Ok(infeasible(warnings));
        };
        for (p, k) in picks {
            choice[p.index()] = Some(k);
        }
    }

    let mut paths = Vec::new();
    for p in instance.part_ids() {
        let vertices = instance.part(p);
        match vertices.len() {
            0 | 1 => {}
            2 => paths.push(PathChoice::new(p, vertices.to_vec())),
            size => {
                let k = choice[p.index()].expect("every clique of size >= 3 is solved");
                let order = path_table(size).order(k);
                paths.push(PathChoice::new(
                    p,
                    order.iter().map(|&i| vertices[i as usize]).collect(),
                ));
            }
        }
    }
    Ok(OnePlaneReport {
        outcome: Outcome::Feasible(Solution::new(paths)),
        warnings,
    })
}
