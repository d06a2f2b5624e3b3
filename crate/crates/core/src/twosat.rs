//! Polynomial decision for instances whose cliques have at most three
//! vertices.
//!
//! Every triangle edge `e` gets a variable `rem_e`, "e is removed". The
//! clauses are:
//!
//! * `¬rem_e ∨ ¬rem_f` for two edges of the same triangle (at most one
//!   removed per triangle);
//! * `rem_e ∨ rem_f` for two crossing triangle edges of different parts;
//! * `rem_e` when a triangle edge crosses a link edge or a two-vertex part.
//!
//! Requiring exactly one removal per triangle would need a 3-clause. The
//! encoding only asks for at most one; extraction removes an arbitrary edge
//! from triangles left intact, which cannot create a crossing.

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use thiserror::Error;

use crate::model::{EdgeClass, EdgeId, Instance, Outcome, PartId, PathChoice, Solution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwoSatError {
    #[error("part {part} has {size} vertices; the 2-SAT encoding needs at most 3")]
    HTooLarge { part: usize, size: usize },
    #[error("assignment removes more than one edge of part {part}")]
    InvalidAssignment { part: usize },
    #[error("assignment has {got} values, expected {expected}")]
    AssignmentLength { got: usize, expected: usize },
}

/// `rem_var` if `positive`, else its negation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Lit {
    pub var: usize,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Self {
        Self { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Self { var, positive: false }
    }

    /// Negative literals take the even slot, so a fresh variable's negation
    /// is visited first and free variables lean towards "kept".
    fn node(self) -> usize {
        2 * self.var + usize::from(self.positive)
    }

    fn negate(self) -> Self {
        Self {
            var: self.var,
            positive: !self.positive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Clause {
    Unit(Lit),
    Binary(Lit, Lit),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoSatInstance {
    /// Edge behind each variable; the triangles' edges appear part by part,
    /// three consecutive variables per triangle.
    pub var_edges: Vec<EdgeId>,
    pub clauses: Vec<Clause>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwoSatBuild {
    Formula(TwoSatInstance),
    /// Two unremovable edges cross.
    Infeasible(EdgeId, EdgeId),
}

/// Variable index of every edge (`None` for edges outside triangles).
fn variable_map(instance: &Instance) -> Result<(Vec<Option<usize>>, Vec<EdgeId>), TwoSatError> {
    let mut var_of = vec![None; instance.graph().edge_count()];
    let mut var_edges = Vec::new();
    for p in instance.part_ids() {
        let size = instance.part(p).len();
        if size > 3 {
            return Err(TwoSatError::HTooLarge { part: p.index(), size });
        }
        if size == 3 {
            for &e in instance.clique_edges(p) {
                var_of[e.index()] = Some(var_edges.len());
                var_edges.push(e);
            }
        }
    }
    Ok((var_of, var_edges))
}

pub fn build_2sat(instance: &Instance) -> Result<TwoSatBuild, TwoSatError> {
    let (var_of, var_edges) = variable_map(instance)?;
    let mut clauses = Vec::new();
    for t in (0..var_edges.len()).step_by(3) {
        for (a, b) in [(t, t + 1), (t, t + 2), (t + 1, t + 2)] {
            clauses.push(Clause::Binary(Lit::neg(a), Lit::neg(b)));
        }
    }
    for &(a, b) in instance.graph().crossings() {
        match (var_of[a.index()], var_of[b.index()]) {
            (None, None) => return Ok(TwoSatBuild::Infeasible(a, b)),
            (Some(x), None) | (None, Some(x)) => clauses.push(Clause::Unit(Lit::pos(x))),
            (Some(x), Some(y)) => {
                debug_assert_ne!(x / 3, y / 3, "triangle edges are pairwise adjacent");
                clauses.push(Clause::Binary(Lit::pos(x), Lit::pos(y)));
            }
        }
    }
    Ok(TwoSatBuild::Formula(TwoSatInstance { var_edges, clauses }))
}

/// Implication-graph decision. Returns a satisfying assignment indexed by
/// variable, or `None` when unsatisfiable.
pub fn solve_2sat(formula: &TwoSatInstance) -> Option<Vec<bool>> {
    let n = formula.var_edges.len();
    let mut graph: DiGraph<(), ()> = DiGraph::with_capacity(2 * n, 2 * formula.clauses.len());
    for _ in 0..2 * n {
        graph.add_node(());
    }
    let mut implies = |from: Lit, to: Lit| {
        graph.add_edge(NodeIndex::new(from.node()), NodeIndex::new(to.node()), ());
    };
    for clause in &formula.clauses {
        match *clause {
            Clause::Unit(a) => implies(a.negate(), a),
            Clause::Binary(a, b) => {
                implies(a.negate(), b);
                implies(b.negate(), a);
            }
        }
    }
    // Components come out in reverse topological order.
    let mut comp = vec![0usize; 2 * n];
    for (i, scc) in tarjan_scc(&graph).into_iter().enumerate() {
        for node in scc {
            comp[node.index()] = i;
        }
    }
    (0..n)
        .map(|v| {
            let (f, t) = (comp[2 * v], comp[2 * v + 1]);
            (t != f).then_some(t < f)
        })
        .collect()
}

/// Turns a satisfying assignment into one spanning path per part.
pub fn extract_solution_2sat(instance: &Instance, assignment: &[bool]) -> Result<Solution, TwoSatError> {
    let (_, var_edges) = variable_map(instance)?;
    if assignment.len() != var_edges.len() {
        return Err(TwoSatError::AssignmentLength {
            got: assignment.len(),
            expected: var_edges.len(),
        });
    }
    let mut paths = Vec::new();
    let mut var = 0;
    for p in instance.part_ids() {
        let vertices = instance.part(p);
        match vertices.len() {
            2 => paths.push(PathChoice::new(p, vertices.to_vec())),
            3 => {
                let edges = &var_edges[var..var + 3];
                let flags = &assignment[var..var + 3];
                var += 3;
                let removed = match flags.iter().filter(|&&r| r).count() {
                    0 => *edges.iter().min().expect("three edges"),
                    1 => edges[flags.iter().position(|&r| r).expect("one flag")],
                    _ => return Err(TwoSatError::InvalidAssignment { part: p.index() }),
                };
                paths.push(triangle_path(instance, p, removed));
            }
            _ => {}
        }
    }
    Ok(Solution::new(paths))
}

/// The path `u - w - v` of a triangle that drops edge `(u, v)`.
fn triangle_path(instance: &Instance, p: PartId, removed: EdgeId) -> PathChoice {
    let e = instance.graph().edge(removed);
    debug_assert!(matches!(instance.classify_edge(removed), EdgeClass::Clique { part, .. } if part == p));
    let w = instance
        .part(p)
        .iter()
        .copied()
        .find(|&x| x != e.u && x != e.v)
        .expect("third vertex");
    PathChoice::new(p, vec![e.u, w, e.v])
}

/// Builds, solves, and extracts in one step.
pub fn solve_two_sat(instance: &Instance) -> Result<Outcome, TwoSatError> {
    match build_2sat(instance)? {
        TwoSatBuild::Infeasible(..) => Ok(Outcome::Infeasible),
        TwoSatBuild::Formula(f) => match solve_2sat(&f) {
            None => Ok(Outcome::Infeasible),
            Some(a) => extract_solution_2sat(instance, &a).map(Outcome::Feasible),
        },
    }
}
