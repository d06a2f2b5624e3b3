// Checking candidate path systems and reading the violations.

use std::error::Error;

use cliques2paths::model::{PartId, PathChoice, VertexId};
use cliques2paths::verify::{removed_edges, verify_solution, Verdict};
use cliques2paths::{InstanceBuilder, Solution};

fn path(part: usize, vs: &[usize]) -> PathChoice {
    PathChoice::new(PartId(part), vs.iter().copied().map(VertexId).collect())
}

pub fn run() -> Result<(), Box<dyn Error>> {
    let mut b = InstanceBuilder::new(4);
    b.part(&[0, 1, 2, 3]);
    b.cross((0, 2), (1, 3));
    let k4 = b.build()?;

    let good = Solution::new(vec![path(0, &[0, 1, 2, 3])]);
    println!("removed by 0-1-2-3: {:?}", removed_edges(&k4, &good)?);
    assert_eq!(verify_solution(&k4, &good)?, Verdict::Valid);

    // Keeps both diagonals.
    let bad = Solution::new(vec![path(0, &[1, 3, 0, 2])]);
    let verdict = verify_solution(&k4, &bad)?;
    println!("1-3-0-2: {verdict:?}");
    assert!(!verdict.is_valid());

    // Not a permutation of the part.
    let broken = Solution::new(vec![path(0, &[0, 1, 1, 3])]);
    println!("0-1-1-3: {:?}", verify_solution(&k4, &broken)?);
    assert!(verify_solution(&k4, &Solution::new(vec![path(5, &[0, 1])])).is_err());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
