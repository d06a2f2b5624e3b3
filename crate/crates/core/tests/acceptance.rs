//! Acceptance checks, one line of output per criterion.

mod common;

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cliques2paths::exact::{enumerate_solutions, solve_exact, DEFAULT_CAP};
use cliques2paths::format::{parse_instance, write_instance};
use cliques2paths::generator::{random_formula, random_instance, GenParams};
use cliques2paths::model::EdgeId;
use cliques2paths::oneplane::solve_one_plane;
use cliques2paths::reduction::{
    build_clause_gadget, build_transfer, build_variable_gadget, extract_assignment, force_removal, oracle_1in3,
    reduce_formula, solution_from_assignment, Formula, ReductionWitness, Side,
};
use cliques2paths::twosat::solve_two_sat;
use cliques2paths::verify::{removed_edges, verify_solution};
use cliques2paths::{Instance, InstanceBuilder, Solution};

use common::{brute_solutions, small_instance};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Clauses over `1..=n` up to rotation: both cyclic orders of every triple.
fn clause_shapes(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                out.push([a, b, c]);
                out.push([a, c, b]);
            }
        }
    }
    out
}

/// The single-clause formula, every formula with at most 4 variables and at
/// most 2 clauses that uses all its variables, an unsatisfiable control,
/// and 50 seeded ones.
fn formula_corpus() -> Vec<Formula> {
    let mut out = vec![
        Formula::new(3, vec![[1, 2, 3]]).unwrap(),
        // Every triple over four variables; unsatisfiable.
        Formula::new(4, vec![[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]).unwrap(),
    ];
    let mut seen: HashSet<Formula> = out.iter().cloned().collect();
    for n in 3..=4 {
        let shapes = clause_shapes(n);
        let mut candidates: Vec<Vec<[usize; 3]>> = shapes.iter().map(|&c| vec![c]).collect();
        for &a in &shapes {
            for &b in &shapes {
                candidates.push(vec![a, b]);
            }
        }
        for clauses in candidates {
            let f = Formula::new(n, clauses).unwrap();
            if f.occurrences().iter().all(|&k| k > 0) && seen.insert(f.clone()) {
                out.push(f);
            }
        }
    }
    for seed in 0..50u64 {
        let nvars = 3 + (seed % 3) as usize;
        let nclauses = nvars.div_ceil(3) + (seed / 3 % 2) as usize;
        out.push(random_formula(seed, nvars, nclauses.min(3)).unwrap());
    }
    out
}

fn criterion_1(corpus: &[(Formula, Instance, ReductionWitness)]) -> Check {
    let (mut sat, mut unsat) = (0, 0);
    for (f, inst, witness) in corpus {
        let oracle = oracle_1in3(f).map_err(|e| e.to_string())?;
        let outcome = solve_exact(inst).map_err(|e| e.to_string())?;
        ensure!(oracle.is_some() == outcome.is_feasible(), "verdicts differ on {f:?}");
        if let Some(a) = oracle {
            sat += 1;
            let sol = solution_from_assignment(witness, &a).map_err(|e| e.to_string())?;
            ensure!(
                verify_solution(inst, &sol).unwrap().is_valid(),
                "encoded solution fails on {f:?}"
            );
            ensure!(
                extract_assignment(witness, &sol).ok() == Some(a),
                "round trip fails on {f:?}"
            );
            let found = extract_assignment(witness, outcome.solution().unwrap()).map_err(|e| e.to_string())?;
            ensure!(
                f.is_satisfied_by(&found),
                "solver's solution decodes to a non-model of {f:?}"
            );
        } else {
            unsat += 1;
        }
    }
    Ok(format!(
        "{} formulas, {sat} satisfiable, {unsat} unsatisfiable",
        corpus.len()
    ))
}

fn tau_side(witness_tau: &[cliques2paths::reduction::TriCliqueHandle], sol: &Solution) -> Vec<Option<Side>> {
    witness_tau
        .iter()
        .map(|t| sol.path(t.part).and_then(|p| t.removed_side(p)))
        .collect()
}

fn criterion_2() -> Check {
    let mut summary = Vec::new();
    for n in 1..=3 {
        let (inst, w) = build_variable_gadget(n).map_err(|e| e.to_string())?;
        let all = brute_solutions(&inst);
        let listed = enumerate_solutions(&inst, DEFAULT_CAP).unwrap();
        ensure!(
            listed.solutions.len() == all.len(),
            "n={n}: enumeration disagrees with brute force"
        );
        let mut sides = HashSet::new();
        for sol in &all {
            let s = tau_side(&w.tau, sol);
            ensure!(s.iter().all(|x| *x == s[0]), "n={n}: mixed tau sides {s:?}");
            sides.insert(s[0]);
        }
        ensure!(
            sides == HashSet::from([Some(Side::Left), Some(Side::Right)]),
            "n={n}: tau sides seen {sides:?}"
        );
        summary.push(format!("n={n}: {} solutions", all.len()));
    }
    Ok(summary.join(", "))
}

fn criterion_3() -> Check {
    let (gadget, w) = build_clause_gadget();
    for mask in 0u8..8 {
        let sides: Vec<Side> = (0..3).map(|k| Side::of(mask >> k & 1 == 1)).collect();
        let forced: Vec<EdgeId> = (0..3).map(|k| w.inputs[k].edge(sides[k])).collect();
        let inst = force_removal(&gadget, &forced).map_err(|e| e.to_string())?;
        let feasible = !brute_solutions(&inst).is_empty();
        ensure!(
            feasible == solve_exact(&inst).unwrap().is_feasible(),
            "mask {mask}: solvers disagree"
        );
        ensure!(
            feasible == (mask.count_ones() == 1),
            "mask {mask}: feasible = {feasible}"
        );
        if feasible {
            let pos = mask.trailing_zeros() as usize;
            let mut paths = vec![w.path_for(pos)];
            paths.extend((0..3).map(|k| w.inputs[k].path_removing(sides[k])));
            let sol = Solution::new(paths);
            ensure!(
                verify_solution(&inst, &sol).unwrap().is_valid(),
                "mask {mask}: pattern fails"
            );
            let removed = removed_edges(&inst, &sol).unwrap();
            let expected = [w.spokes[pos], w.outer[pos], w.outer[(pos + 1) % 3]];
            ensure!(
                expected.iter().all(|e| removed.contains(e)),
                "mask {mask}: wrong clique edges removed"
            );
        }
    }
    Ok("8 input combinations".into())
}

fn criterion_4(corpus: &[(Formula, Instance, ReductionWitness)]) -> Check {
    for (f, inst, w) in corpus {
        let g = inst.graph();
        ensure!(
            inst.max_crossings_per_edge() == 3,
            "{f:?}: max crossings {}",
            inst.max_crossings_per_edge()
        );
        ensure!(
            inst.partition().parts().iter().all(|p| p.len() == 3 || p.len() == 4),
            "{f:?}: part sizes outside {{3, 4}}"
        );
        let triangles = w
            .variables
            .iter()
            .flat_map(|v| v.ring.iter().chain(&v.tau))
            .chain(w.clauses.iter().flat_map(|c| c.inputs.iter()))
            .chain(w.chains.iter().flat_map(|c| c.links.iter()));
        for t in triangles {
            ensure!(g.crossing_count(t.base) == 0, "{f:?}: base edge {} is crossed", t.base);
        }
        for c in &w.clauses {
            ensure!(c.spokes.iter().all(|&e| g.crossing_count(e) == 1), "{f:?}: spoke count");
            ensure!(
                c.outer.iter().all(|&e| g.crossing_count(e) == 2),
                "{f:?}: outer edge count"
            );
        }
        ensure!(
            parse_instance(&write_instance(inst)).as_ref() == Ok(inst),
            "{f:?}: revalidation failed"
        );
    }
    Ok(format!("{} reduced instances", corpus.len()))
}

/// All subsets of `pairs` (edges given by endpoints) as crossings over a
/// fixed layout.
fn subsets(build: impl Fn() -> InstanceBuilder, pairs: &[((usize, usize), (usize, usize))]) -> Vec<Instance> {
    (0u32..1 << pairs.len())
        .map(|mask| {
            let mut b = build();
            for (i, &(x, y)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    b.cross(x, y);
                }
            }
            b.build().unwrap()
        })
        .collect()
}

fn two_sat_matches(inst: &Instance) -> Result<(), String> {
    let outcome = solve_two_sat(inst).map_err(|e| e.to_string())?;
    ensure!(
        outcome.is_feasible() == solve_exact(inst).unwrap().is_feasible(),
        "verdicts differ on\n{}",
        write_instance(inst)
    );
    if let Some(sol) = outcome.solution() {
        ensure!(
            verify_solution(inst, sol).unwrap().is_valid(),
            "solution fails on\n{}",
            write_instance(inst)
        );
    }
    Ok(())
}

fn criterion_5() -> Check {
    let tri = |v: usize| [(v, v + 1), (v, v + 2), (v + 1, v + 2)];
    let mut family = Vec::new();

    let pairs: Vec<_> = tri(0).into_iter().flat_map(|a| tri(3).map(move |b| (a, b))).collect();
    family.extend(subsets(
        || {
            let mut b = InstanceBuilder::new(6);
            b.part(&[0, 1, 2]);
            b.part(&[3, 4, 5]);
            b
        },
        &pairs,
    ));

    // Left (b, c) and right (a, c) of neighbouring triangles in a ring.
    let (left, right) = (|v: usize| (v + 1, v + 2), |v: usize| (v, v + 2));
    let mut ring = Vec::new();
    for i in 0..3 {
        let (x, y) = (3 * i, 3 * ((i + 1) % 3));
        ring.extend([
            (left(x), left(y)),
            (right(x), right(y)),
            (left(x), right(y)),
            (right(x), left(y)),
        ]);
    }
    family.extend(subsets(
        || {
            let mut b = InstanceBuilder::new(9);
            for i in 0..3 {
                b.part(&[3 * i, 3 * i + 1, 3 * i + 2]);
            }
            b
        },
        &ring,
    ));

    let mut mixed: Vec<_> = tri(0).into_iter().map(|a| (a, (3, 4))).collect();
    mixed.extend(tri(0).into_iter().map(|a| (a, (5, 6))));
    mixed.push(((3, 4), (5, 6)));
    family.extend(subsets(
        || {
            let mut b = InstanceBuilder::new(7);
            b.part(&[0, 1, 2]);
            b.part(&[3, 4]);
            b.part(&[5]);
            b.part(&[6]);
            b.link(5, 6);
            b
        },
        &mixed,
    ));
    let exhaustive = family.len();
    for inst in &family {
        two_sat_matches(inst)?;
    }

    let mut random = 0;
    let mut seed = 0;
    while random < 200 {
        let params = GenParams {
            seed,
            parts: 8,
            min_part_size: 1,
            max_part_size: 3,
            density: 0.35,
            cap: 3,
            links: 3,
            realizable: false,
        };
        seed += 1;
        ensure!(seed < 1000, "generator keeps rejecting parameters");
        let Ok(inst) = random_instance(&params) else { continue };
        two_sat_matches(&inst)?;
        random += 1;
    }
    Ok(format!("{exhaustive} exhaustive + {random} random instances"))
}

fn realizable(seed: u64, parts: usize) -> Instance {
    random_instance(&GenParams {
        seed,
        parts,
        min_part_size: 1,
        max_part_size: 6,
        density: 0.7,
        cap: 1,
        links: parts / 3,
        realizable: true,
    })
    .unwrap()
}

fn criterion_6() -> Check {
    let mut feasible = 0;
    for seed in 0..200 {
        let inst = realizable(seed, 12);
        let report = solve_one_plane(&inst).map_err(|e| e.to_string())?;
        ensure!(
            report.warnings.is_empty(),
            "seed {seed}: generator produced {:?}",
            report.warnings
        );
        ensure!(
            report.outcome.is_feasible() == solve_exact(&inst).unwrap().is_feasible(),
            "seed {seed}: verdicts differ"
        );
        if let Some(sol) = report.outcome.solution() {
            ensure!(
                verify_solution(&inst, sol).unwrap().is_valid(),
                "seed {seed}: solution fails"
            );
            feasible += 1;
        }
    }

    let sizes = [1000usize, 2000, 4000, 8000];
    let mut points = Vec::new();
    for &n in &sizes {
        let inst = realizable(1000 + n as u64, n);
        let mut times: Vec<Duration> = (0..7)
            .map(|_| {
                let t = Instant::now();
                for _ in 0..5 {
                    std::hint::black_box(solve_one_plane(&inst).unwrap());
                }
                t.elapsed()
            })
            .collect();
        times.sort();
        points.push(((n as f64).ln(), times[3].as_secs_f64().ln()));
    }
    let k = points.len() as f64;
    let (mx, my) = (
        points.iter().map(|p| p.0).sum::<f64>() / k,
        points.iter().map(|p| p.1).sum::<f64>() / k,
    );
    let slope = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
        / points.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    ensure!((slope - 1.0).abs() <= 0.3, "log-log slope {slope:.3}");
    Ok(format!("200 instances ({feasible} feasible), scaling slope {slope:.2}"))
}

fn criterion_7() -> Check {
    for (m, preserved) in [(1, true), (3, true), (2, false)] {
        let t = build_transfer(m, m % 2 == 0).map_err(|e| e.to_string())?;
        for side in [Side::Left, Side::Right] {
            let inst = force_removal(&t.instance, &[t.source.edge(side)]).map_err(|e| e.to_string())?;
            let all = enumerate_solutions(&inst, DEFAULT_CAP).unwrap().solutions;
            ensure!(!all.is_empty(), "m={m}: infeasible with source side {side:?}");
            let want = if preserved { side } else { side.opposite() };
            for sol in &all {
                let got = sol.path(t.sink.part).and_then(|p| t.sink.removed_side(p));
                ensure!(got == Some(want), "m={m}: source {side:?} gave sink {got:?}");
            }
        }
    }
    ensure!(
        build_transfer(2, false).is_err(),
        "even chain accepted without override"
    );
    Ok("m=1, m=3 preserve; m=2 inverts".into())
}

fn criterion_8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut feasible = 0;
    for i in 0..100 {
        let parts = rng.random_range(1..=6usize);
        // Keep the raw product within reach of the brute-force enumerator.
        let mut sizes: Vec<usize> = (0..parts).map(|_| rng.random_range(1..=4usize)).collect();
        while sizes.iter().map(|&s| [1, 1, 1, 3, 12][s]).product::<usize>() > 300_000 {
            let j = sizes.iter().position(|&s| s == 4).unwrap();
            sizes[j] = 3;
        }
        let links: Vec<(usize, usize)> = (0..rng.random_range(0..4))
            .map(|_| (rng.random_range(0..1024usize), rng.random_range(0..1024usize)))
            .collect();
        let picks: Vec<(usize, usize)> = (0..rng.random_range(0..14))
            .map(|_| (rng.random_range(0..1024usize), rng.random_range(0..1024usize)))
            .collect();
        let cap = rng.random_range(1..=3usize);
        let inst = small_instance(&sizes, &links, &picks, cap);
        let brute = brute_solutions(&inst);
        let listed = enumerate_solutions(&inst, DEFAULT_CAP).unwrap();
        ensure!(
            solve_exact(&inst).unwrap().is_feasible() == !brute.is_empty(),
            "instance {i}: verdicts differ"
        );
        ensure!(
            listed.solutions.len() == brute.len(),
            "instance {i}: solution counts differ"
        );
        let brute: HashSet<Solution> = brute.iter().map(Solution::canonical).collect();
        ensure!(
            listed.solutions.iter().all(|s| brute.contains(&s.canonical())),
            "instance {i}: unknown solution listed"
        );
        feasible += usize::from(!brute.is_empty());
    }
    Ok(format!("100 instances, {feasible} feasible"))
}

fn main() {
    let corpus: Vec<_> = formula_corpus()
        .into_iter()
        .map(|f| {
            let (inst, w) = reduce_formula(&f, 1).unwrap();
            (f, inst, w)
        })
        .collect();

    let criteria: [(&str, &dyn Fn() -> Check); 8] = [
        ("1 reduction equivalence", &|| criterion_1(&corpus)),
        ("2 variable gadget sides", &criterion_2),
        ("3 clause gadget truth table", &criterion_3),
        ("4 3-plane audit", &|| criterion_4(&corpus)),
        ("5 2-SAT agreement", &criterion_5),
        ("6 1-plane agreement and scaling", &criterion_6),
        ("7 chain parity", &criterion_7),
        ("8 exact vs brute force", &criterion_8),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {name}: {detail} ({secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why} ({secs:.2}s)");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
