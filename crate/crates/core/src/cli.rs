//! The `c2p` command line.
//!
//! Exit codes: 0 feasible or valid, 1 infeasible or invalid, 2 usage, I/O or
//! parse errors and inapplicable algorithms, 3 inputs that parse but break a
//! model invariant.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::exact::solve_exact;
use crate::format::{self, FormatError};
use crate::generator::{random_formula, random_instance, GenError, GenParams};
use crate::model::{Instance, Outcome};
use crate::oneplane::{solve_one_plane, OnePlaneError};
use crate::reduction::{extract_assignment, oracle_1in3, reduce_formula, Formula, ReductionError};
use crate::twosat::{solve_two_sat, TwoSatError};
use crate::verify::{verify_solution, Verdict, Violation};

#[derive(Debug, Parser)]
#[command(name = "c2p", version, about = "Cliques to spanning paths in drawn graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide an instance and print a solution if one exists.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Algorithm::Auto)]
        algorithm: Algorithm,
        /// Write the solution here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a solution against an instance.
    Verify { instance: PathBuf, solution: PathBuf },
    /// Build an instance from a 1-in-3-SAT formula.
    Reduce {
        formula: PathBuf,
        #[arg(long, default_value_t = 1)]
        chain_len: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Read the assignment encoded by a solution of a reduced instance.
    Extract {
        instance: PathBuf,
        witness: PathBuf,
        solution: PathBuf,
    },
    /// Solve a formula by exhaustive search.
    Oracle { formula: PathBuf },
    /// Generate a random instance or formula.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Print size and crossing statistics.
    Stats { instance: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    Instance(GenInstanceArgs),
    Formula {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        vars: usize,
        #[arg(long, default_value_t = 2)]
        clauses: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct GenInstanceArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 8)]
    parts: usize,
    #[arg(long, default_value_t = 1)]
    min_size: usize,
    #[arg(long, default_value_t = 3)]
    max_size: usize,
    #[arg(long, default_value_t = 0.3)]
    density: f64,
    /// Maximum crossings per edge.
    #[arg(long, default_value_t = 2)]
    cap: usize,
    #[arg(long, default_value_t = 2)]
    links: usize,
    /// With --cap 1: only produce crossing patterns a 1-plane drawing allows.
    #[arg(long)]
    realizable: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Exact,
    #[value(name = "2sat")]
    TwoSat,
    #[value(name = "1plane")]
    OnePlane,
    Auto,
}

impl Algorithm {
    /// 1-plane when no edge crosses twice, else 2-SAT for triangles, else
    /// exact search.
    pub fn resolve(self, inst: &Instance) -> Algorithm {
        match self {
            Algorithm::Auto if inst.max_crossings_per_edge() <= 1 => Algorithm::OnePlane,
            Algorithm::Auto if inst.h() <= 3 => Algorithm::TwoSat,
            Algorithm::Auto => Algorithm::Exact,
            a => a,
        }
    }
}

/// Exit code plus message.
struct Failure(i32, String);

impl Failure {
    fn usage(msg: impl ToString) -> Self {
        Failure(2, msg.to_string())
    }

    fn invariant(msg: impl ToString) -> Self {
        Failure(3, msg.to_string())
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Syntax { .. } | FormatError::Missing(_) => Failure::usage(e),
            FormatError::Model(_) | FormatError::Reduction(_) => Failure::invariant(e),
        }
    }
}

type Res = Result<i32, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::usage(format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(Failure::usage),
    }
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    Ok(format::parse_instance(&read(path)?)?)
}

fn load_formula(path: &Path) -> Result<Formula, Failure> {
    Ok(format::parse_formula(&read(path)?)?)
}

/// Runs the command line on `args` (program name first) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Res {
    match cmd {
        Command::Solve {
            instance,
            algorithm,
            out: dest,
        } => solve(&instance, algorithm, dest.as_deref(), out, err),
        Command::Verify { instance, solution } => verify(&instance, &solution, out),
        Command::Reduce {
            formula,
            chain_len,
            out: dest,
            witness,
        } => reduce(&formula, chain_len, dest.as_deref(), witness.as_deref(), out, err),
        Command::Extract {
            instance,
            witness,
            solution,
        } => extract(&instance, &witness, &solution, out),
        Command::Oracle { formula } => oracle(&formula, out),
        Command::Gen(GenCommand::Instance(a)) => gen_instance(a, out),
        Command::Gen(GenCommand::Formula {
            seed,
            vars,
            clauses,
            out: dest,
        }) => {
            let f = random_formula(seed, vars, clauses).map_err(Failure::usage)?;
            emit(out, dest.as_deref(), &format::write_formula(&f))?;
            Ok(0)
        }
        Command::Stats { instance } => stats(&instance, out),
    }
}

fn say(out: &mut dyn Write, line: impl std::fmt::Display) -> Result<(), Failure> {
    writeln!(out, "{line}").map_err(Failure::usage)
}

fn solve(path: &Path, algorithm: Algorithm, dest: Option<&Path>, out: &mut dyn Write, err: &mut dyn Write) -> Res {
    let inst = load_instance(path)?;
    let outcome = match algorithm.resolve(&inst) {
        Algorithm::Exact => solve_exact(&inst).map_err(Failure::invariant)?,
        Algorithm::TwoSat => solve_two_sat(&inst).map_err(|e| match e {
            TwoSatError::HTooLarge { .. } => Failure::usage(e),
            _ => Failure::invariant(e),
        })?,
        Algorithm::OnePlane | Algorithm::Auto => {
            let report = solve_one_plane(&inst).map_err(|e| match e {
                OnePlaneError::NotOnePlane { .. } => Failure::usage(e),
                OnePlaneError::Model(_) => Failure::invariant(e),
            })?;
            for (c, w) in &report.warnings {
                let _ = writeln!(err, "warning: component {c} is not 1-plane realizable: {w:?}");
            }
            report.outcome
        }
    };
    match outcome {
        Outcome::Feasible(sol) => {
            let text = format::write_solution(&sol);
            say(out, "feasible")?;
            emit(out, dest, &text)?;
            Ok(0)
        }
        Outcome::Infeasible => {
            say(out, "infeasible")?;
            Ok(1)
        }
    }
}

fn describe(v: &Violation) -> String {
    match v {
        Violation::NotAPath(p) => format!("part {p}: not a spanning path"),
        Violation::MissingChoice(p) => format!("part {p}: no path given"),
        Violation::UnresolvedCrossing(a, b) => format!("edges {a} and {b} cross and are both kept"),
    }
}

fn verify(inst_path: &Path, sol_path: &Path, out: &mut dyn Write) -> Res {
    let inst = load_instance(inst_path)?;
    let sol = format::parse_solution(&read(sol_path)?)?;
    match verify_solution(&inst, &sol).map_err(Failure::invariant)? {
        Verdict::Valid => {
            say(out, "valid")?;
            Ok(0)
        }
        Verdict::Invalid(vs) => {
            say(out, "invalid")?;
            for v in &vs {
                say(out, describe(v))?;
            }
            Ok(1)
        }
    }
}

fn reduce(
    path: &Path,
    chain_len: usize,
    dest: Option<&Path>,
    wit: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Res {
    let f = load_formula(path)?;
    let (inst, witness) = reduce_formula(&f, chain_len).map_err(|e| match e {
        ReductionError::EvenChain { .. } => Failure::usage(e),
        _ => Failure::invariant(e),
    })?;
    if let Some(w) = wit {
        emit(out, Some(w), &format::write_witness(&witness))?;
    }
    emit(out, dest, &format::write_instance(&inst))?;
    // Keep stdout a clean instance file when no --out is given.
    let report: &mut dyn Write = if dest.is_some() { out } else { err };
    let k = inst.max_crossings_per_edge();
    say(
        report,
        format!(
            "parts {}, crossings {}, max crossings/edge {k}, 3-plane: {}",
            inst.part_count(),
            inst.graph().crossings().len(),
            if k <= 3 { "yes" } else { "no" }
        ),
    )?;
    Ok(0)
}

fn extract(inst_path: &Path, wit_path: &Path, sol_path: &Path, out: &mut dyn Write) -> Res {
    let inst = load_instance(inst_path)?;
    let witness = format::parse_witness(&read(wit_path)?)?;
    let sol = format::parse_solution(&read(sol_path)?)?;
    if !verify_solution(&inst, &sol).map_err(Failure::invariant)?.is_valid() {
        say(out, "invalid solution")?;
        return Ok(1);
    }
    let assignment = match extract_assignment(&witness, &sol) {
        Ok(a) => a,
        Err(e) => {
            say(out, e)?;
            return Ok(1);
        }
    };
    let clauses = witness.clauses.iter().map(|c| c.vars).collect();
    let formula = Formula::new(witness.nvars, clauses).map_err(Failure::invariant)?;
    say(out, format::write_assignment(&assignment).trim_end())?;
    Ok(if formula.is_satisfied_by(&assignment) { 0 } else { 1 })
}

fn oracle(path: &Path, out: &mut dyn Write) -> Res {
    let f = load_formula(path)?;
    match oracle_1in3(&f).map_err(Failure::usage)? {
        Some(a) => {
            say(out, "satisfiable")?;
            say(out, format::write_assignment(&a).trim_end())?;
            Ok(0)
        }
        None => {
            say(out, "unsatisfiable")?;
            Ok(1)
        }
    }
}

fn gen_instance(a: GenInstanceArgs, out: &mut dyn Write) -> Res {
    let params = GenParams {
        seed: a.seed,
        parts: a.parts,
        min_part_size: a.min_size,
        max_part_size: a.max_size,
        density: a.density,
        cap: a.cap,
        links: a.links,
        realizable: a.realizable,
    };
    let inst = random_instance(&params).map_err(|e| match e {
        GenError::ParamConflict(_) => Failure::usage(e),
        GenError::Model(_) => Failure::invariant(e),
    })?;
    emit(out, a.out.as_deref(), &format::write_instance(&inst))?;
    Ok(0)
}

fn stats(path: &Path, out: &mut dyn Write) -> Res {
    let inst = load_instance(path)?;
    let g = inst.graph();
    let links: Vec<_> = inst.link_edges().collect();
    let link_link = g
        .crossings()
        .iter()
        .any(|(a, b)| links.contains(a) && links.contains(b));
    let sizes: Vec<String> = inst.partition().parts().iter().map(|p| p.len().to_string()).collect();
    say(out, format!("n {}", g.vertex_count()))?;
    say(out, format!("edges {}", g.edge_count()))?;
    say(out, format!("crossings {}", g.crossings().len()))?;
    say(out, format!("h {}", inst.h()))?;
    say(out, format!("k {}", inst.max_crossings_per_edge()))?;
    say(out, format!("parts {}", inst.part_count()))?;
    say(out, format!("part-sizes {}", sizes.join(" ")))?;
    say(
        out,
        format!("link-link-crossings {}", if link_link { "yes" } else { "no" }),
    )?;
    Ok(0)
}
