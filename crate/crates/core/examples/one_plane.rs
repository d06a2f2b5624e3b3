// Linear-time solving when every edge has at most one crossing.

use std::error::Error;

use cliques2paths::exact::solve_exact;
use cliques2paths::generator::{random_instance, GenParams};
use cliques2paths::oneplane::{crossing_components, solve_one_plane};
use cliques2paths::verify::verify_solution;

pub fn run() -> Result<(), Box<dyn Error>> {
    let mut agree = 0;
    for seed in 0..20 {
        let params = GenParams {
            seed,
            parts: 30,
            min_part_size: 2,
            max_part_size: 4,
            density: 0.6,
            cap: 1,
            links: 10,
            realizable: true,
        };
        let inst = random_instance(&params)?;
        let report = solve_one_plane(&inst)?;
        assert!(report.warnings.is_empty());
        if let Some(sol) = report.outcome.solution() {
            assert!(verify_solution(&inst, sol)?.is_valid());
        }
        if report.outcome.is_feasible() == solve_exact(&inst)?.is_feasible() {
            agree += 1;
        }
        if seed == 0 {
            let comps = crossing_components(&inst)?;
            let largest = comps.iter().map(|c| c.parts.len()).max().unwrap_or(0);
            println!("{} components, largest spans {largest} parts", comps.len());
        }
    }
    println!("agreement with exact search: {agree}/20");
    assert_eq!(agree, 20);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
