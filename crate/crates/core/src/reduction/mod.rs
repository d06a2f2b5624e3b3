//! Reduction from positive 1-in-3-SAT to cliques of size at most four.
//!
//! Every triangle in the construction has a crossing-free base edge and two
//! crossed edges called left and right. A solution drops exactly one edge
//! per triangle, and that "removed side" carries the signal:
//!
//! * a **variable gadget** is a ring of `2n` triangles whose neighbours must
//!   drop opposite sides, plus `n` triangles `tau_j`, one per occurrence,
//!   that all end up dropping the same side. Right means true.
//! * a **chain** of an odd number of triangles copies the side of `tau_j` to
//!   the input triangle of the `j`-th clause containing the variable.
//! * a **clause gadget** is a crossing-free 4-clique whose edges are crossed
//!   by three input triangles; it can be turned into a path exactly when one
//!   input drops its right edge.
//!
//! The result is 3-plane and has cliques of sizes 3 and 4.

mod formula;
mod gadgets;

pub use formula::{oracle_1in3, Assignment, Formula, ORACLE_MAX_VARS};

use thiserror::Error;

use crate::model::{EdgeId, Instance, InstanceBuilder, ModelError, PartId, PathChoice, Solution, VertexId};
use gadgets::{add_chain, add_clause, add_variable, attach, Tri};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("clause {clause} mentions variable {var}, outside 1..=nvars")]
    InvalidVariable { clause: usize, var: usize },
    #[error("clause {clause} repeats a variable")]
    RepeatedVariable { clause: usize },
    #[error("chain length {len} is even; side transfer needs an odd length")]
    EvenChain { len: usize },
    #[error("formula has no clauses")]
    EmptyFormula,
    #[error("variable {var} occurs in no clause")]
    UnusedVariable { var: usize },
    #[error("{nvars} variables exceed the exhaustive oracle's limit of {ORACLE_MAX_VARS}")]
    TooLarge { nvars: usize },
    #[error("clause {clause} does not have exactly one true variable")]
    NotOneInThree { clause: usize },
    #[error("tau triangles of variable {var} disagree on the removed side")]
    InconsistentGadget { var: usize },
    #[error("assignment has {got} values, the formula has {expected} variables")]
    AssignmentLength { got: usize, expected: usize },
    #[error("need at least 3 variables, got {nvars}")]
    Underconstrained { nvars: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Edge of a gadget triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Base,
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
            Side::Base => Side::Base,
        }
    }

    /// Side removed by a triangle encoding `value`.
    pub fn of(value: bool) -> Side {
        if value {
            Side::Right
        } else {
            Side::Left
        }
    }
}

/// A gadget triangle on `vertices = [a, b, c]` with base `(a, b)`, left
/// `(b, c)` and right `(a, c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TriCliqueHandle {
    pub part: PartId,
    pub vertices: [VertexId; 3],
    pub base: EdgeId,
    pub left: EdgeId,
    pub right: EdgeId,
}

impl TriCliqueHandle {
    pub fn edge(&self, side: Side) -> EdgeId {
        match side {
            Side::Base => self.base,
            Side::Left => self.left,
            Side::Right => self.right,
        }
    }

    /// Path keeping the two edges other than `side`.
    pub fn path_removing(&self, side: Side) -> PathChoice {
        let [a, b, c] = self.vertices;
        let order = match side {
            Side::Base => vec![a, c, b],
            Side::Left => vec![b, a, c],
            Side::Right => vec![a, b, c],
        };
        PathChoice::new(self.part, order)
    }

    /// The side a spanning path of this triangle leaves out, if the path
    /// really is one.
    pub fn removed_side(&self, path: &PathChoice) -> Option<Side> {
        [Side::Base, Side::Left, Side::Right]
            .into_iter()
            .find(|&s| self.path_removing(s) == PathChoice::new(path.part, path.vertices.clone()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableWitness {
    /// 1-based variable.
    pub var: usize,
    /// `t_1..t_{2n}`.
    pub ring: Vec<TriCliqueHandle>,
    /// `tau_1..tau_n`, one per clause containing the variable.
    pub tau: Vec<TriCliqueHandle>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseWitness {
    /// Position in the formula.
    pub clause: usize,
    /// Variables in the clause's order; `rim[w]` and `inputs[w]` belong to
    /// `vars[w]`.
    pub vars: [usize; 3],
    pub part: PartId,
    pub center: VertexId,
    /// Rim vertices in clockwise order.
    pub rim: [VertexId; 3],
    /// `(v, rim[w])`.
    pub spokes: [EdgeId; 3],
    /// `(rim[w], rim[w+1])`, indices mod 3.
    pub outer: [EdgeId; 3],
    pub inputs: [TriCliqueHandle; 3],
}

impl ClauseWitness {
    /// Path of the 4-clique when `vars[true_pos]` is the true variable:
    /// drops the spoke to `rim[p]` and the rim edges `(rim[p], rim[p+1])`,
    /// `(rim[p+1], rim[p+2])`.
    pub fn path_for(&self, true_pos: usize) -> PathChoice {
        let r = |k: usize| self.rim[(true_pos + k) % 3];
        PathChoice::new(self.part, vec![r(1), self.center, r(2), r(0)])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainWitness {
    pub clause: usize,
    /// Position of the variable within the clause.
    pub position: usize,
    pub var: usize,
    /// 1-based occurrence index `j`: the chain starts at `tau_j`.
    pub occurrence: usize,
    /// `c_1..c_m`, from the variable gadget towards the clause.
    pub links: Vec<TriCliqueHandle>,
}

/// Maps formula elements to the gadget parts and edges that encode them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionWitness {
    pub nvars: usize,
    pub chain_len: usize,
    pub variables: Vec<VariableWitness>,
    pub clauses: Vec<ClauseWitness>,
    pub chains: Vec<ChainWitness>,
}

fn check_chain(len: usize) -> Result<(), ReductionError> {
    if len % 2 == 0 {
        Err(ReductionError::EvenChain { len })
    } else {
        Ok(())
    }
}

fn resolve_clause(inst: &Instance, c: usize, vars: [usize; 3], proto: &gadgets::ClauseProto) -> ClauseWitness {
    let g = inst.graph();
    let edge = |x: usize, y: usize| g.find_edge(VertexId(x), VertexId(y)).expect("4-clique edge");
    let rim = proto.rim;
    ClauseWitness {
        clause: c,
        vars,
        part: proto.part,
        center: VertexId(proto.center),
        rim: rim.map(VertexId),
        spokes: rim.map(|r| edge(proto.center, r)),
        outer: [0, 1, 2].map(|w| edge(rim[w], rim[(w + 1) % 3])),
        inputs: proto.inputs.map(|t| t.resolve(inst)),
    }
}

/// Builds the full instance for `formula` with chains of `chain_len`
/// triangles between each `tau_j` and its clause input.
pub fn reduce_formula(formula: &Formula, chain_len: usize) -> Result<(Instance, ReductionWitness), ReductionError> {
    check_chain(chain_len)?;
    if formula.clauses().is_empty() {
        return Err(ReductionError::EmptyFormula);
    }
    let occurrences = formula.occurrences();
    if let Some(i) = occurrences.iter().position(|&k| k == 0) {
        return Err(ReductionError::UnusedVariable { var: i + 1 });
    }

    let mut b = InstanceBuilder::new(0);
    let variables: Vec<_> = occurrences.iter().map(|&k| add_variable(&mut b, k)).collect();
    let clauses: Vec<_> = formula.clauses().iter().map(|_| add_clause(&mut b)).collect();

    struct ChainProto {
        clause: usize,
        position: usize,
        var: usize,
        occurrence: usize,
        links: Vec<Tri>,
    }
    let mut seen = vec![0usize; formula.nvars()];
    let mut chains = Vec::new();
    for (c, clause) in formula.clauses().iter().enumerate() {
        for (position, &x) in clause.iter().enumerate() {
            let j = seen[x - 1];
            seen[x - 1] += 1;
            let links = add_chain(&mut b, chain_len);
            attach(&mut b, &variables[x - 1].tau[j], &links[0]);
            attach(&mut b, &links[chain_len - 1], &clauses[c].inputs[position]);
            chains.push(ChainProto {
                clause: c,
                position,
                var: x,
                occurrence: j + 1,
                links,
            });
        }
    }

    let inst = b.build()?;
    let witness = ReductionWitness {
        nvars: formula.nvars(),
        chain_len,
        variables: variables
            .iter()
            .enumerate()
            .map(|(i, v)| VariableWitness {
                var: i + 1,
                ring: v.ring.iter().map(|t| t.resolve(&inst)).collect(),
                tau: v.tau.iter().map(|t| t.resolve(&inst)).collect(),
            })
            .collect(),
        clauses: clauses
            .iter()
            .enumerate()
            .map(|(c, proto)| resolve_clause(&inst, c, formula.clauses()[c], proto))
            .collect(),
        chains: chains
            .into_iter()
            .map(|ch| ChainWitness {
                clause: ch.clause,
                position: ch.position,
                var: ch.var,
                occurrence: ch.occurrence,
                links: ch.links.iter().map(|t| t.resolve(&inst)).collect(),
            })
            .collect(),
    };
    Ok((inst, witness))
}

/// A variable gadget on its own, `occurrences >= 1`.
pub fn build_variable_gadget(occurrences: usize) -> Result<(Instance, VariableWitness), ReductionError> {
    if occurrences == 0 {
        return Err(ReductionError::UnusedVariable { var: 1 });
    }
    let mut b = InstanceBuilder::new(0);
    let proto = add_variable(&mut b, occurrences);
    let inst = b.build()?;
    let witness = VariableWitness {
        var: 1,
        ring: proto.ring.iter().map(|t| t.resolve(&inst)).collect(),
        tau: proto.tau.iter().map(|t| t.resolve(&inst)).collect(),
    };
    Ok((inst, witness))
}

/// A clause gadget on its own, for the clause `(1, 2, 3)`.
pub fn build_clause_gadget() -> (Instance, ClauseWitness) {
    let mut b = InstanceBuilder::new(0);
    let proto = add_clause(&mut b);
    let inst = b.build().expect("clause gadget is well-formed");
    let witness = resolve_clause(&inst, 0, [1, 2, 3], &proto);
    (inst, witness)
}

/// A chain of `len` triangles on its own; `len` must be odd.
pub fn build_chain(len: usize) -> Result<(Instance, Vec<TriCliqueHandle>), ReductionError> {
    check_chain(len)?;
    if len == 0 {
        return Err(ReductionError::EvenChain { len });
    }
    let mut b = InstanceBuilder::new(0);
    let chain = add_chain(&mut b, len);
    let inst = b.build()?;
    let handles = chain.iter().map(|t| t.resolve(&inst)).collect();
    Ok((inst, handles))
}

/// Source triangle, `len` chain triangles, and sink triangle, attached in a
/// row. With `allow_even` the oddness check is skipped so the inverted
/// transfer of even chains can be observed.
#[derive(Debug, Clone)]
pub struct Transfer {
    pub instance: Instance,
    pub source: TriCliqueHandle,
    pub links: Vec<TriCliqueHandle>,
    pub sink: TriCliqueHandle,
}

pub fn build_transfer(len: usize, allow_even: bool) -> Result<Transfer, ReductionError> {
    if !allow_even {
        check_chain(len)?;
    }
    let mut b = InstanceBuilder::new(0);
    let source = Tri::add(&mut b);
    let links = add_chain(&mut b, len);
    let sink = Tri::add(&mut b);
    match (links.first(), links.last()) {
        (Some(first), Some(last)) => {
            attach(&mut b, &source, first);
            attach(&mut b, last, &sink);
        }
        _ => attach(&mut b, &source, &sink),
    }
    let instance = b.build()?;
    Ok(Transfer {
        source: source.resolve(&instance),
        links: links.iter().map(|t| t.resolve(&instance)).collect(),
        sink: sink.resolve(&instance),
        instance,
    })
}

/// Adds, for each edge, a link between two fresh singleton vertices that
/// crosses it, so every solution must drop the edge. Existing edge ids are
/// preserved for builder-made instances.
pub fn force_removal(instance: &Instance, edges: &[EdgeId]) -> Result<Instance, ModelError> {
    let mut b = InstanceBuilder::from_instance(instance);
    for &e in edges {
        let edge = *instance.graph().edge(e);
        let s = b.add_vertices(2);
        b.part(&[s]);
        b.part(&[s + 1]);
        b.link(s, s + 1).cross((s, s + 1), (edge.u.0, edge.v.0));
    }
    b.build()
}

/// Reads a truth value off every variable gadget: true when the `tau`
/// triangles drop their right edges, false when they drop their left edges.
pub fn extract_assignment(witness: &ReductionWitness, solution: &Solution) -> Result<Assignment, ReductionError> {
    let mut values = Vec::with_capacity(witness.nvars);
    for v in &witness.variables {
        let mut side = None;
        for tau in &v.tau {
            let s = solution
                .path(tau.part)
                .and_then(|p| tau.removed_side(p))
                .ok_or(ReductionError::InconsistentGadget { var: v.var })?;
            if s == Side::Base || side.is_some_and(|prev| prev != s) {
                return Err(ReductionError::InconsistentGadget { var: v.var });
            }
            side = Some(s);
        }
        values.push(side == Some(Side::Right));
    }
    Ok(Assignment::new(values))
}

/// Builds the solution that encodes a 1-in-3 satisfying assignment.
pub fn solution_from_assignment(
    witness: &ReductionWitness,
    assignment: &Assignment,
) -> Result<Solution, ReductionError> {
    if assignment.len() != witness.nvars {
        return Err(ReductionError::AssignmentLength {
            got: assignment.len(),
            expected: witness.nvars,
        });
    }
    let mut true_pos = Vec::with_capacity(witness.clauses.len());
    for c in &witness.clauses {
        let trues: Vec<usize> = (0..3).filter(|&w| assignment.value(c.vars[w])).collect();
        match trues[..] {
            [p] => true_pos.push(p),
            _ => return Err(ReductionError::NotOneInThree { clause: c.clause }),
        }
    }

    let mut paths = Vec::new();
    for v in &witness.variables {
        let side = Side::of(assignment.value(v.var));
        for (i, t) in v.ring.iter().enumerate() {
            // t_1, t_3, .. drop the same side as tau; t_2, t_4, .. the other.
            let s = if i % 2 == 0 { side } else { side.opposite() };
            paths.push(t.path_removing(s));
        }
        for t in &v.tau {
            paths.push(t.path_removing(side));
        }
    }
    for (c, pos) in witness.clauses.iter().zip(true_pos) {
        paths.push(c.path_for(pos));
        for (w, t) in c.inputs.iter().enumerate() {
            paths.push(t.path_removing(Side::of(w == pos)));
        }
    }
    for ch in &witness.chains {
        let side = Side::of(assignment.value(ch.var));
        for (k, t) in ch.links.iter().enumerate() {
            let s = if k % 2 == 0 { side.opposite() } else { side };
            paths.push(t.path_removing(s));
        }
    }
    paths.sort();
    Ok(Solution::new(paths))
}
