//! Line-based text formats.
//!
//! Parsing is strict: unknown directives, missing headers, stray tokens and
//! out-of-order sections are errors. Blank lines and lines starting with `#`
//! are skipped everywhere (formula files also skip `c` lines).
//!
//! Instance:
//!
//! ```text
//! c2p 1
//! n 6
//! part 0 1 2 3      # a clique; its edges are implied
//! part 4
//! part 5
//! link 4 5          # an edge between parts
//! cross 0 2 1 3     # the edges (0,2) and (1,3) cross
//! cross 4 5 0 1
//! ```
//!
//! Solution: `sol 1`, then `path <part> <v> <v> ...` per part.
//!
//! Formula: `p pp13 <nvars> <nclauses>` followed by one `x y z 0` line per
//! clause. Assignments print as `v 1 -2 3 0`.
//!
//! Witness: `witness 1`, then `wit` records; see [`write_witness`].

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::model::{EdgeId, Instance, InstanceBuilder, ModelError, PartId, PathChoice, Solution, VertexId};
use crate::reduction::{
    Assignment, ChainWitness, ClauseWitness, Formula, ReductionError, ReductionWitness, TriCliqueHandle,
    VariableWitness,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing {0}")]
    Missing(&'static str),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

/// Non-empty, non-comment lines with 1-based numbers, split on whitespace.
fn records<'a>(text: &'a str, comment: &'a [&'a str]) -> impl Iterator<Item = (usize, Vec<&'a str>)> + 'a {
    text.lines().enumerate().filter_map(move |(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks.first() {
            None => None,
            Some(t) if comment.contains(t) => None,
            Some(_) => Some((i + 1, toks)),
        }
    })
}

fn num<T: FromStr>(line: usize, tok: &str) -> Result<T, FormatError> {
    tok.parse()
        .map_err(|_| syntax(line, format!("expected a number, found `{tok}`")))
}

fn nums<T: FromStr>(line: usize, toks: &[&str]) -> Result<Vec<T>, FormatError> {
    toks.iter().map(|t| num(line, t)).collect()
}

fn arity(line: usize, toks: &[&str], n: usize) -> Result<(), FormatError> {
    if toks.len() == n + 1 {
        Ok(())
    } else {
        Err(syntax(
            line,
            format!("`{}` takes {n} values, found {}", toks[0], toks.len() - 1),
        ))
    }
}

fn header(line: usize, toks: &[&str], magic: &str) -> Result<(), FormatError> {
    if toks == [magic, "1"] {
        Ok(())
    } else {
        Err(syntax(line, format!("expected header `{magic} 1`")))
    }
}

pub fn write_instance(inst: &Instance) -> String {
    let g = inst.graph();
    let mut out = format!("c2p 1\nn {}\n", g.vertex_count());
    for part in inst.partition().parts() {
        out.push_str("part");
        for v in part {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    for e in inst.link_edges() {
        let e = g.edge(e);
        writeln!(out, "link {} {}", e.u, e.v).unwrap();
    }
    for &(a, b) in g.crossings() {
        let (a, b) = (g.edge(a), g.edge(b));
        writeln!(out, "cross {} {} {} {}", a.u, a.v, b.u, b.v).unwrap();
    }
    out
}

/// Parses through [`InstanceBuilder`], so edge ids come out canonical:
/// clique edges part by part, then links in file order.
pub fn parse_instance(text: &str) -> Result<Instance, FormatError> {
    let mut recs = records(text, &[]);
    let (l, toks) = recs.next().ok_or(FormatError::Missing("header"))?;
    header(l, &toks, "c2p")?;
    let (l, toks) = recs.next().ok_or(FormatError::Missing("vertex count"))?;
    if toks[0] != "n" {
        return Err(syntax(l, "expected `n <count>` after the header"));
    }
    arity(l, &toks, 1)?;
    let mut b = InstanceBuilder::new(num(l, toks[1])?);
    for (l, toks) in recs {
        match toks[0] {
            "part" => {
                if toks.len() < 2 {
                    return Err(syntax(l, "empty part"));
                }
                b.part(&nums(l, &toks[1..])?);
            }
            "link" => {
                arity(l, &toks, 2)?;
                b.link(num(l, toks[1])?, num(l, toks[2])?);
            }
            "cross" => {
                arity(l, &toks, 4)?;
                let v: Vec<usize> = nums(l, &toks[1..])?;
                b.cross((v[0], v[1]), (v[2], v[3]));
            }
            other => return Err(syntax(l, format!("unknown directive `{other}`"))),
        }
    }
    Ok(b.build()?)
}

pub fn write_solution(sol: &Solution) -> String {
    let mut out = String::from("sol 1\n");
    for p in &sol.paths {
        write!(out, "path {}", p.part).unwrap();
        for v in &p.vertices {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn parse_solution(text: &str) -> Result<Solution, FormatError> {
    let mut recs = records(text, &[]);
    let (l, toks) = recs.next().ok_or(FormatError::Missing("header"))?;
    header(l, &toks, "sol")?;
    let mut paths = Vec::new();
    for (l, toks) in recs {
        if toks[0] != "path" {
            return Err(syntax(l, format!("unknown directive `{}`", toks[0])));
        }
        if toks.len() < 3 {
            return Err(syntax(l, "`path` needs a part and at least one vertex"));
        }
        let vertices = nums(l, &toks[2..])?.into_iter().map(VertexId).collect();
        paths.push(PathChoice {
            part: PartId(num(l, toks[1])?),
            vertices,
        });
    }
    Ok(Solution::new(paths))
}

pub fn write_formula(f: &Formula) -> String {
    let mut out = format!("p pp13 {} {}\n", f.nvars(), f.clauses().len());
    for [x, y, z] in f.clauses() {
        writeln!(out, "{x} {y} {z} 0").unwrap();
    }
    out
}

pub fn parse_formula(text: &str) -> Result<Formula, FormatError> {
    let mut recs = records(text, &["c"]);
    let (l, toks) = recs.next().ok_or(FormatError::Missing("problem line"))?;
    if toks.len() != 4 || toks[..2] != ["p", "pp13"] {
        return Err(syntax(l, "expected `p pp13 <nvars> <nclauses>`"));
    }
    let nvars: usize = num(l, toks[2])?;
    let nclauses: usize = num(l, toks[3])?;
    let mut clauses = Vec::with_capacity(nclauses);
    for (l, toks) in recs {
        if toks.len() != 4 || toks[3] != "0" {
            return Err(syntax(l, "a clause is three variables followed by 0"));
        }
        let v: Vec<usize> = nums(l, &toks[..3])?;
        clauses.push([v[0], v[1], v[2]]);
    }
    if clauses.len() != nclauses {
        return Err(syntax(
            l,
            format!("header announces {nclauses} clauses, found {}", clauses.len()),
        ));
    }
    Ok(Formula::new(nvars, clauses)?)
}

pub fn write_assignment(a: &Assignment) -> String {
    let mut out = String::from("v");
    for (i, &b) in a.values().iter().enumerate() {
        let lit = if b { (i + 1) as i64 } else { -((i + 1) as i64) };
        write!(out, " {lit}").unwrap();
    }
    out.push_str(" 0\n");
    out
}

pub fn parse_assignment(text: &str) -> Result<Assignment, FormatError> {
    let mut recs = records(text, &["c"]);
    let (l, toks) = recs.next().ok_or(FormatError::Missing("assignment line"))?;
    if toks[0] != "v" || toks.last() != Some(&"0") {
        return Err(syntax(l, "expected `v <literals> 0`"));
    }
    if let Some((l, _)) = recs.next() {
        return Err(syntax(l, "trailing content after the assignment"));
    }
    let lits: Vec<i64> = nums(l, &toks[1..toks.len() - 1])?;
    let mut values = Vec::with_capacity(lits.len());
    for (i, &lit) in lits.iter().enumerate() {
        if lit.unsigned_abs() != (i + 1) as u64 {
            return Err(syntax(l, format!("literal {lit} out of order")));
        }
        values.push(lit > 0);
    }
    Ok(Assignment::new(values))
}

fn write_tri(out: &mut String, t: &TriCliqueHandle) {
    let [a, b, c] = t.vertices;
    writeln!(out, " {} {a} {b} {c} {} {} {}", t.part, t.base, t.left, t.right).unwrap();
}

fn parse_tri(l: usize, toks: &[&str]) -> Result<TriCliqueHandle, FormatError> {
    let v: Vec<usize> = nums(l, toks)?;
    Ok(TriCliqueHandle {
        part: PartId(v[0]),
        vertices: [VertexId(v[1]), VertexId(v[2]), VertexId(v[3])],
        base: EdgeId(v[4]),
        left: EdgeId(v[5]),
        right: EdgeId(v[6]),
    })
}

/// After the header, one record per line; a triangle is written as
/// `part a b c base left right`:
///
/// ```text
/// wit nvars <n>
/// wit chainlen <m>
/// wit ring <var> <index> <triangle>
/// wit tau <var> <index> <triangle>
/// wit clause <c> <x> <y> <z> <part> <v> <vx> <vy> <vz> <spokes: 3 edges> <outer: 3 edges>
/// wit input <c> <position> <triangle>
/// wit chain <c> <position> <var> <occurrence> <index> <triangle>
/// ```
pub fn write_witness(w: &ReductionWitness) -> String {
    let mut out = format!("witness 1\nwit nvars {}\nwit chainlen {}\n", w.nvars, w.chain_len);
    for var in &w.variables {
        for (i, t) in var.ring.iter().enumerate() {
            write!(out, "wit ring {} {i}", var.var).unwrap();
            write_tri(&mut out, t);
        }
        for (i, t) in var.tau.iter().enumerate() {
            write!(out, "wit tau {} {i}", var.var).unwrap();
            write_tri(&mut out, t);
        }
    }
    for c in &w.clauses {
        let [x, y, z] = c.vars;
        let [rx, ry, rz] = c.rim;
        write!(
            out,
            "wit clause {} {x} {y} {z} {} {} {rx} {ry} {rz}",
            c.clause, c.part, c.center
        )
        .unwrap();
        for e in c.spokes.iter().chain(&c.outer) {
            write!(out, " {e}").unwrap();
        }
        out.push('\n');
        for (pos, t) in c.inputs.iter().enumerate() {
            write!(out, "wit input {} {pos}", c.clause).unwrap();
            write_tri(&mut out, t);
        }
    }
    for ch in &w.chains {
        for (k, t) in ch.links.iter().enumerate() {
            write!(
                out,
                "wit chain {} {} {} {} {k}",
                ch.clause, ch.position, ch.var, ch.occurrence
            )
            .unwrap();
            write_tri(&mut out, t);
        }
    }
    out
}

fn expect_index(l: usize, got: usize, want: usize, what: &str) -> Result<(), FormatError> {
    if got == want {
        Ok(())
    } else {
        Err(syntax(l, format!("expected {what} {want}, found {got}")))
    }
}

pub fn parse_witness(text: &str) -> Result<ReductionWitness, FormatError> {
    let mut recs = records(text, &[]);
    let (l, toks) = recs.next().ok_or(FormatError::Missing("header"))?;
    header(l, &toks, "witness")?;
    let mut body = Vec::new();
    for (l, toks) in recs {
        if toks[0] != "wit" || toks.len() < 2 {
            return Err(syntax(l, "witness records start with `wit <kind>`"));
        }
        body.push((l, toks[1..].to_vec()));
    }
    let mut recs = body.into_iter();
    let mut scalar = |name: &'static str| -> Result<usize, FormatError> {
        let (l, toks) = recs.next().ok_or(FormatError::Missing(name))?;
        if toks[0] != name {
            return Err(syntax(l, format!("expected `{name}`")));
        }
        arity(l, &toks, 1)?;
        num(l, toks[1])
    };
    let nvars = scalar("nvars")?;
    let chain_len = scalar("chainlen")?;

    let mut w = ReductionWitness {
        nvars,
        chain_len,
        variables: Vec::new(),
        clauses: Vec::new(),
        chains: Vec::new(),
    };
    let mut pending_inputs: Vec<TriCliqueHandle> = Vec::new();
    let mut stage = 0;
    for (l, toks) in recs {
        let at = match toks[0] {
            "ring" | "tau" => 0,
            "clause" | "input" => 1,
            "chain" => 2,
            other => return Err(syntax(l, format!("unknown record `{other}`"))),
        };
        if at < stage {
            return Err(syntax(
                l,
                "records must come in the order ring/tau, clause/input, chain",
            ));
        }
        if stage == 1 && at == 2 && !w.clauses.is_empty() {
            expect_index(l, pending_inputs.len(), 3, "input count")?;
        }
        stage = at;
        match toks[0] {
            "ring" | "tau" => {
                arity(l, &toks, 9)?;
                let var: usize = num(l, toks[1])?;
                let idx: usize = num(l, toks[2])?;
                let tri = parse_tri(l, &toks[3..])?;
                if w.variables.last().is_none_or(|v| v.var != var) {
                    expect_index(l, var, w.variables.len() + 1, "variable")?;
                    w.variables.push(VariableWitness {
                        var,
                        ring: Vec::new(),
                        tau: Vec::new(),
                    });
                }
                let v = w.variables.last_mut().unwrap();
                let list = if toks[0] == "ring" {
                    if !v.tau.is_empty() {
                        return Err(syntax(l, "ring records must precede tau records"));
                    }
                    &mut v.ring
                } else {
                    &mut v.tau
                };
                expect_index(l, idx, list.len(), "index")?;
                list.push(tri);
            }
            "clause" => {
                arity(l, &toks, 15)?;
                if !w.clauses.is_empty() {
                    expect_index(l, pending_inputs.len(), 3, "input count")?;
                }
                let v: Vec<usize> = nums(l, &toks[1..])?;
                expect_index(l, v[0], w.clauses.len(), "clause")?;
                pending_inputs.clear();
                let dummy = TriCliqueHandle {
                    part: PartId(0),
                    vertices: [VertexId(0); 3],
                    base: EdgeId(0),
                    left: EdgeId(0),
                    right: EdgeId(0),
                };
                w.clauses.push(ClauseWitness {
                    clause: v[0],
                    vars: [v[1], v[2], v[3]],
                    part: PartId(v[4]),
                    center: VertexId(v[5]),
                    rim: [VertexId(v[6]), VertexId(v[7]), VertexId(v[8])],
                    spokes: [EdgeId(v[9]), EdgeId(v[10]), EdgeId(v[11])],
                    outer: [EdgeId(v[12]), EdgeId(v[13]), EdgeId(v[14])],
                    inputs: [dummy; 3],
                });
            }
            "input" => {
                arity(l, &toks, 9)?;
                let c: usize = num(l, toks[1])?;
                let pos: usize = num(l, toks[2])?;
                let Some(clause) = w.clauses.last_mut() else {
                    return Err(syntax(l, "input before any clause"));
                };
                expect_index(l, c, clause.clause, "clause")?;
                expect_index(l, pos, pending_inputs.len(), "position")?;
                let tri = parse_tri(l, &toks[3..])?;
                clause.inputs[pos] = tri;
                pending_inputs.push(tri);
            }
            _ => {
                arity(l, &toks, 12)?;
                let v: Vec<usize> = nums(l, &toks[1..6])?;
                let tri = parse_tri(l, &toks[6..])?;
                let (clause, position, var, occurrence, k) = (v[0], v[1], v[2], v[3], v[4]);
                let same = w.chains.last().is_some_and(|c| {
                    (c.clause, c.position, c.var, c.occurrence) == (clause, position, var, occurrence)
                        && k == c.links.len()
                });
                if !same {
                    expect_index(l, k, 0, "chain index")?;
                    w.chains.push(ChainWitness {
                        clause,
                        position,
                        var,
                        occurrence,
                        links: Vec::new(),
                    });
                }
                w.chains.last_mut().unwrap().links.push(tri);
            }
        }
    }
    if stage == 1 && !w.clauses.is_empty() && pending_inputs.len() != 3 {
        return Err(FormatError::Missing("clause inputs"));
    }
    Ok(w)
}
