// A 4-clique drawn with its two diagonals crossing, solved by exhaustive
// search, then counted.

use std::error::Error;

use cliques2paths::exact::{count_solutions, enumerate_solutions, solve_exact, DEFAULT_CAP};
use cliques2paths::verify::verify_solution;
use cliques2paths::InstanceBuilder;

pub fn run() -> Result<(), Box<dyn Error>> {
    let mut b = InstanceBuilder::new(4);
    b.part(&[0, 1, 2, 3]);
    b.cross((0, 2), (1, 3));
    let k4 = b.build()?;

    let sol = solve_exact(&k4)?.solution().cloned().ok_or("K4 should be feasible")?;
    for p in &sol.paths {
        println!("part {}: {:?}", p.part, p.vertices);
    }
    assert!(verify_solution(&k4, &sol)?.is_valid());

    // Of the 12 spanning paths of K4, the four that keep both diagonals fail.
    let count = count_solutions(&k4, DEFAULT_CAP)?;
    println!("{} valid paths", count.count);
    assert_eq!(count.count, 8);
    let all = enumerate_solutions(&k4, DEFAULT_CAP)?;
    assert_eq!(all.solutions.len(), 8);

    // A link crossing another link can never be removed.
    let mut b = InstanceBuilder::new(4);
    for v in 0..4 {
        b.part(&[v]);
    }
    b.link(0, 1).link(2, 3).cross((0, 1), (2, 3));
    assert!(!solve_exact(&b.build()?)?.is_feasible());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
