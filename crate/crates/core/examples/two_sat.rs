// Triangles only: each triangle drops exactly one edge, which fits a 2-SAT
// formula over "edge removed" variables.

use std::error::Error;

use cliques2paths::twosat::{build_2sat, solve_2sat, solve_two_sat, TwoSatBuild};
use cliques2paths::verify::verify_solution;
use cliques2paths::InstanceBuilder;

pub fn run() -> Result<(), Box<dyn Error>> {
    // Two edges of one triangle cross the same edge of another, and a K2
    // blocks the third edge of the first.
    let mut b = InstanceBuilder::new(8);
    b.part(&[0, 1, 2]);
    b.part(&[3, 4, 5]);
    b.part(&[6, 7]);
    b.cross((0, 1), (3, 4)).cross((1, 2), (3, 4)).cross((0, 2), (6, 7));
    let inst = b.build()?;

    let TwoSatBuild::Formula(f) = build_2sat(&inst)? else {
        return Err("unexpected direct conflict".into());
    };
    println!("{} variables, {} clauses", f.var_edges.len(), f.clauses.len());
    let assignment = solve_2sat(&f).ok_or("formula should be satisfiable")?;
    println!("removed: {:?}", assignment);

    let sol = solve_two_sat(&inst)?.solution().cloned().ok_or("feasible")?;
    assert!(verify_solution(&inst, &sol)?.is_valid());
    for p in &sol.paths {
        println!("part {}: {:?}", p.part, p.vertices);
    }

    // A 4-clique is out of scope for this solver.
    let mut b = InstanceBuilder::new(4);
    b.part(&[0, 1, 2, 3]);
    assert!(solve_two_sat(&b.build()?).is_err());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
