//! Complete backtracking search over per-clique spanning-path domains.
//!
//! Each part with at least three vertices is a variable whose values are its
//! spanning paths. Crossings become constraints:
//!
//! * two unremovable edges crossing make the instance infeasible outright;
//! * a clique edge crossing an unremovable edge is forbidden, which prunes
//!   its part's domain;
//! * two edges of the same part crossing prune that part's domain to paths
//!   keeping at most one of them;
//! * two clique edges of different parts crossing form a binary nogood.
//!
//! The search runs per connected component of the nogood graph, choosing
//! the variable with the fewest live values (ties to the lowest part) and
//! trying values in canonical path order, with forward checking.

use std::collections::BTreeSet;

use crate::model::{
    path_table, EdgeClass, EdgeId, Instance, ModelError, Outcome, PartId, PathChoice, Solution, MAX_PART_SIZE,
};

/// Default bound on enumerated or counted solutions.
pub const DEFAULT_CAP: u64 = 1_000_000;

/// Result of unary propagation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Preprocessed {
    /// Clique edges that cross a link edge or the edge of a two-vertex part.
    Forbidden(BTreeSet<EdgeId>),
    /// The first declared crossing between two unremovable edges.
    Infeasible(EdgeId, EdgeId),
}

pub fn preprocess(instance: &Instance) -> Preprocessed {
    let mut forbidden = BTreeSet::new();
    for &(a, b) in instance.graph().crossings() {
        match (instance.is_removable(a), instance.is_removable(b)) {
            (false, false) => return Preprocessed::Infeasible(a, b),
            (true, false) => {
                forbidden.insert(a);
            }
            (false, true) => {
                forbidden.insert(b);
            }
            (true, true) => {}
        }
    }
    Preprocessed::Forbidden(forbidden)
}

/// A binary nogood seen from one side: keeping `own` forces the other
/// variable to drop `other`.
#[derive(Debug, Clone, Copy)]
struct Nogood {
    own: u64,
    var: usize,
    other: u64,
}

/// Variables, pruned domains and nogoods of an instance.
pub(crate) struct Network<'a> {
    instance: &'a Instance,
    vars: Vec<PartId>,
    /// Surviving path indices into the part's table.
    domains: Vec<Vec<u32>>,
    /// Kept-edge masks parallel to `domains`.
    masks: Vec<Vec<u64>>,
    nogoods: Vec<Vec<Nogood>>,
}

impl<'a> Network<'a> {
    /// `None` when two unremovable edges cross.
    pub(crate) fn build(instance: &'a Instance) -> Result<Option<Self>, ModelError> {
        let forbidden = match preprocess(instance) {
            Preprocessed::Infeasible(..) => return Ok(None),
            Preprocessed::Forbidden(f) => f,
        };
        let mut var_of_part = vec![usize::MAX; instance.part_count()];
        let mut vars = Vec::new();
        for p in instance.part_ids() {
            let size = instance.part(p).len();
            if size > MAX_PART_SIZE {
                return Err(ModelError::PartTooLarge { part: p.index(), size });
            }
            if size >= 3 {
                var_of_part[p.index()] = vars.len();
                vars.push(p);
            }
        }

        let local_bit = |e: EdgeId| match instance.classify_edge(e) {
            EdgeClass::Clique { part, local } => (part, 1u64 << local),
            EdgeClass::Link => unreachable!("removable edges are clique edges"),
        };

        let mut blocked = vec![0u64; vars.len()];
        for &e in &forbidden {
            let (p, bit) = local_bit(e);
            blocked[var_of_part[p.index()]] |= bit;
        }
        let mut same_part: Vec<Vec<u64>> = vec![Vec::new(); vars.len()];
        let mut nogoods: Vec<Vec<Nogood>> = vec![Vec::new(); vars.len()];
        for &(a, b) in instance.graph().crossings() {
            if !(instance.is_removable(a) && instance.is_removable(b)) {
                continue;
            }
            let (pa, ba) = local_bit(a);
            let (pb, bb) = local_bit(b);
            let (va, vb) = (var_of_part[pa.index()], var_of_part[pb.index()]);
            if va == vb {
                same_part[va].push(ba | bb);
            } else {
                nogoods[va].push(Nogood {
                    own: ba,
                    var: vb,
                    other: bb,
                });
                nogoods[vb].push(Nogood {
                    own: bb,
                    var: va,
                    other: ba,
                });
            }
        }

        let mut domains = Vec::with_capacity(vars.len());
        let mut masks = Vec::with_capacity(vars.len());
        for (v, &p) in vars.iter().enumerate() {
            let table = path_table(instance.part(p).len());
            let mut dom = Vec::new();
            let mut msk = Vec::new();
            for (k, &kept) in table.kept.iter().enumerate() {
                if kept & blocked[v] != 0 || same_part[v].iter().any(|&pair| kept & pair == pair) {
                    continue;
                }
                dom.push(k as u32);
                msk.push(kept);
            }
            domains.push(dom);
            masks.push(msk);
        }
        Ok(Some(Self {
            instance,
            vars,
            domains,
            masks,
            nogoods,
        }))
    }

    /// Connected components of the nogood graph, each sorted ascending,
    /// ordered by smallest member.
    fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vars.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[start] = id;
            stack.push(start);
            let mut members = Vec::new();
            while let Some(v) = stack.pop() {
                members.push(v);
                for ng in &self.nogoods[v] {
                    if comp[ng.var] == usize::MAX {
                        comp[ng.var] = id;
                        stack.push(ng.var);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Assembles a solution from one domain index per variable.
    fn solution(&self, assigned: &[Option<usize>]) -> Solution {
        let inst = self.instance;
        let mut paths = Vec::new();
        let mut var = 0;
        for p in inst.part_ids() {
            let vertices = inst.part(p);
            match vertices.len() {
                0 | 1 => {}
                2 => paths.push(PathChoice::new(p, vertices.to_vec())),
                size => {
                    let k = self.domains[var][assigned[var].expect("complete assignment")];
                    let order = path_table(size).order(k as usize);
                    paths.push(PathChoice::new(
                        p,
                        order.iter().map(|&i| vertices[i as usize]).collect(),
                    ));
                    var += 1;
                }
            }
        }
        Solution::new(paths)
    }
}

struct Search<'n, 'a> {
    net: &'n Network<'a>,
    blocked: Vec<u64>,
    assigned: Vec<Option<usize>>,
    trail: Vec<(usize, u64)>,
}

impl<'n, 'a> Search<'n, 'a> {
    fn new(net: &'n Network<'a>) -> Self {
        let n = net.vars.len();
        Self {
            net,
            blocked: vec![0; n],
            assigned: vec![None; n],
            trail: Vec::new(),
        }
    }

    fn live(&self, v: usize) -> usize {
        let b = self.blocked[v];
        self.net.masks[v].iter().filter(|&&m| m & b == 0).count()
    }

    /// Assigns `v := di` and forward-checks; returns false on a wipe-out.
    /// The caller undoes through `undo` either way.
    fn assign(&mut self, v: usize, di: usize) -> bool {
        self.assigned[v] = Some(di);
        let kept = self.net.masks[v][di];
        let mut ok = true;
        for ng in &self.net.nogoods[v] {
            if kept & ng.own == 0 || self.assigned[ng.var].is_some() {
                continue;
            }
            let old = self.blocked[ng.var];
            if old & ng.other != 0 {
                continue;
            }
            self.trail.push((ng.var, old));
            self.blocked[ng.var] = old | ng.other;
            if self.live(ng.var) == 0 {
                ok = false;
                break;
            }
        }
        ok
    }

    fn undo(&mut self, v: usize, mark: usize) {
        while self.trail.len() > mark {
            let (var, old) = self.trail.pop().expect("trail entry");
            self.blocked[var] = old;
        }
        self.assigned[v] = None;
    }

    fn solve_mrv(&mut self, vars: &[usize]) -> bool {
        let mut pick = None;
        let mut best = usize::MAX;
        for &v in vars {
            if self.assigned[v].is_some() {
                continue;
            }
            let live = self.live(v);
            if live < best {
                best = live;
                pick = Some(v);
            }
        }
        let Some(v) = pick else {
            return true;
        };
        if best == 0 {
            return false;
        }
        for di in 0..self.net.masks[v].len() {
            if self.net.masks[v][di] & self.blocked[v] != 0 {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(v, di) && self.solve_mrv(vars) {
                return true;
            }
            self.undo(v, mark);
        }
        false
    }

    /// Visits every consistent assignment of `order[pos..]` in static order;
    /// `visit` returns false to stop.
    fn walk(&mut self, order: &[usize], pos: usize, visit: &mut dyn FnMut(&Self) -> bool) -> bool {
        let Some(&v) = order.get(pos) else {
            return visit(self);
        };
        for di in 0..self.net.masks[v].len() {
            if self.net.masks[v][di] & self.blocked[v] != 0 {
                continue;
            }
            let mark = self.trail.len();
            let ok = self.assign(v, di);
            let go_on = !ok || self.walk(order, pos + 1, visit);
            self.undo(v, mark);
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// Decides the instance and returns a verified-shape solution if one exists.
pub fn solve_exact(instance: &Instance) -> Result<Outcome, ModelError> {
    let Some(net) = Network::build(instance)? else {
        return Ok(Outcome::Infeasible);
    };
    let mut search = Search::new(&net);
    for comp in net.components() {
        if !search.solve_mrv(&comp) {
            return Ok(Outcome::Infeasible);
        }
    }
    Ok(Outcome::Feasible(net.solution(&search.assigned)))
}

/// Whether every component has a solution; assignments are discarded.
fn all_components_feasible(net: &Network<'_>) -> bool {
    let mut search = Search::new(net);
    net.components().iter().all(|comp| search.solve_mrv(comp))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub solutions: Vec<Solution>,
    /// More solutions exist beyond the cap.
    pub truncated: bool,
}

/// All solutions, up to `cap`, in canonical order: lexicographic over parts
/// in ascending index, each part's paths in canonical path order.
pub fn enumerate_solutions(instance: &Instance, cap: u64) -> Result<Enumeration, ModelError> {
    let mut result = Enumeration {
        solutions: Vec::new(),
        truncated: false,
    };
    let Some(net) = Network::build(instance)? else {
        return Ok(result);
    };
    if !all_components_feasible(&net) {
        return Ok(result);
    }
    let order: Vec<usize> = (0..net.vars.len()).collect();
    let mut search = Search::new(&net);
    search.walk(&order, 0, &mut |s: &Search<'_, '_>| {
        if result.solutions.len() as u64 >= cap {
            result.truncated = true;
            return false;
        }
        result.solutions.push(net.solution(&s.assigned));
        true
    });
    Ok(result)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Count {
    pub count: u64,
    /// The true count exceeds `cap`; `count` is then equal to `cap`.
    pub truncated: bool,
}

/// Number of solutions, saturating at `cap`. Components are counted
/// separately and multiplied.
pub fn count_solutions(instance: &Instance, cap: u64) -> Result<Count, ModelError> {
    let zero = Count {
        count: 0,
        truncated: false,
    };
    let Some(net) = Network::build(instance)? else {
        return Ok(zero);
    };
    if !all_components_feasible(&net) {
        return Ok(zero);
    }
    let mut total: u64 = 1;
    let mut truncated = false;
    for comp in net.components() {
        let mut search = Search::new(&net);
        let mut n: u64 = 0;
        search.walk(&comp, 0, &mut |_: &Search<'_, '_>| {
            n += 1;
            n <= cap
        });
        match total.checked_mul(n) {
            Some(t) if t <= cap => total = t,
            _ => {
                total = cap;
                truncated = true;
            }
        }
    }
    Ok(Count {
        count: total,
        truncated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_instance, InstanceBuilder, VertexId};
    use crate::verify::verify_solution;

    fn k4_crossed() -> Instance {
        let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        build_instance(4, &edges, &[(1, 4)], &[vec![0, 1, 2, 3]]).unwrap()
    }

    #[test]
    fn preprocess_cases() {
        let mut b = InstanceBuilder::new(4);
        for v in 0..4 {
            b.part(&[v]);
        }
        b.link(0, 1).link(2, 3).cross((0, 1), (2, 3));
        assert_eq!(
            preprocess(&b.build().unwrap()),
            Preprocessed::Infeasible(EdgeId(0), EdgeId(1))
        );

        let mut b = InstanceBuilder::new(5);
        b.part(&[0, 1, 2]);
        b.part(&[3]);
        b.part(&[4]);
        b.link(3, 4).cross((0, 1), (3, 4));
        let Preprocessed::Forbidden(f) = preprocess(&b.build().unwrap()) else {
            panic!("expected forbidden set");
        };
        assert_eq!(f.into_iter().collect::<Vec<_>>(), vec![EdgeId(0)]);

        let tri = build_instance(3, &[(0, 1), (1, 2), (0, 2)], &[], &[vec![0, 1, 2]]).unwrap();
        assert_eq!(preprocess(&tri), Preprocessed::Forbidden(BTreeSet::new()));
    }

    #[test]
    fn k4_with_crossing_is_feasible() {
        let inst = k4_crossed();
        let out = solve_exact(&inst).unwrap();
        let sol = out.solution().expect("feasible");
        assert!(verify_solution(&inst, sol).unwrap().is_valid());
        // Of the 12 paths of K4, the 4 keeping both diagonals are excluded.
        assert_eq!(count_solutions(&inst, DEFAULT_CAP).unwrap().count, 8);
    }

    #[test]
    fn triangle_counts() {
        let tri = build_instance(3, &[(0, 1), (1, 2), (0, 2)], &[], &[vec![0, 1, 2]]).unwrap();
        let all = enumerate_solutions(&tri, DEFAULT_CAP).unwrap();
        assert_eq!(all.solutions.len(), 3);
        assert!(!all.truncated);

        let mut b = InstanceBuilder::new(6);
        b.part(&[0, 1, 2]);
        b.part(&[3, 4, 5]);
        let two = b.build().unwrap();
        assert_eq!(enumerate_solutions(&two, DEFAULT_CAP).unwrap().solutions.len(), 9);
        assert_eq!(
            count_solutions(&two, DEFAULT_CAP).unwrap(),
            Count {
                count: 9,
                truncated: false
            }
        );
    }

    #[test]
    fn cap_truncates() {
        let mut b = InstanceBuilder::new(6);
        b.part(&[0, 1, 2]);
        b.part(&[3, 4, 5]);
        let two = b.build().unwrap();
        let e = enumerate_solutions(&two, 4).unwrap();
        assert_eq!(e.solutions.len(), 4);
        assert!(e.truncated);
        assert_eq!(
            count_solutions(&two, 4).unwrap(),
            Count {
                count: 4,
                truncated: true
            }
        );
    }

    #[test]
    fn enumeration_is_canonical() {
        let mut b = InstanceBuilder::new(6);
        b.part(&[0, 1, 2]);
        b.part(&[3, 4, 5]);
        let two = b.build().unwrap();
        let sols = enumerate_solutions(&two, DEFAULT_CAP).unwrap().solutions;
        assert!(sols.windows(2).all(|w| w[0].paths < w[1].paths));
        assert_eq!(sols[0].paths[0].vertices, vec![VertexId(0), VertexId(1), VertexId(2)]);
    }

    #[test]
    fn alternating_pair() {
        // Two triangles whose left edges cross and whose right edges cross.
        let mut b = InstanceBuilder::new(6);
        b.part(&[0, 1, 2]);
        b.part(&[3, 4, 5]);
        b.cross((1, 2), (4, 5)).cross((0, 2), (3, 5));
        let inst = b.build().unwrap();
        let sols = enumerate_solutions(&inst, DEFAULT_CAP).unwrap().solutions;
        assert_eq!(sols.len(), 2);
        for s in &sols {
            assert!(verify_solution(&inst, s).unwrap().is_valid());
        }
    }

    #[test]
    fn infeasible_when_unremovable_edges_cross() {
        let mut b = InstanceBuilder::new(4);
        b.part(&[0, 1]);
        b.part(&[2, 3]);
        b.cross((0, 1), (2, 3));
        let inst = b.build().unwrap();
        assert_eq!(solve_exact(&inst).unwrap(), Outcome::Infeasible);
        assert_eq!(count_solutions(&inst, 10).unwrap().count, 0);
    }

    #[test]
    fn deterministic() {
        let inst = k4_crossed();
        assert_eq!(solve_exact(&inst).unwrap(), solve_exact(&inst.clone()).unwrap());
    }
}
