// From a 1-in-3-SAT formula to an instance and back.

use std::error::Error;

use cliques2paths::exact::solve_exact;
use cliques2paths::reduction::{extract_assignment, oracle_1in3, reduce_formula, solution_from_assignment, Formula};
use cliques2paths::verify::verify_solution;

pub fn run() -> Result<(), Box<dyn Error>> {
    let f = Formula::new(4, vec![[1, 2, 3], [2, 3, 4]])?;
    let (inst, witness) = reduce_formula(&f, 1)?;
    println!(
        "{} parts, {} crossings, at most {} per edge",
        inst.part_count(),
        inst.graph().crossings().len(),
        inst.max_crossings_per_edge()
    );

    let sol = solve_exact(&inst)?
        .solution()
        .cloned()
        .ok_or("formula is satisfiable")?;
    let a = extract_assignment(&witness, &sol)?;
    println!("assignment read off the solution: {:?}", a.values());
    assert!(f.is_satisfied_by(&a));

    // The other direction: encode the oracle's assignment as a solution.
    let a = oracle_1in3(&f)?.ok_or("satisfiable")?;
    let encoded = solution_from_assignment(&witness, &a)?;
    assert!(verify_solution(&inst, &encoded)?.is_valid());
    assert_eq!(extract_assignment(&witness, &encoded)?, a);

    // Every triple over four variables: no assignment works, no path system
    // either.
    let unsat = Formula::new(4, vec![[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]])?;
    let (inst, _) = reduce_formula(&unsat, 1)?;
    assert!(oracle_1in3(&unsat)?.is_none());
    assert!(!solve_exact(&inst)?.is_feasible());
    println!("unsatisfiable formula gives an infeasible instance");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
