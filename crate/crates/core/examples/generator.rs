// Seeded instances and formulas, printed in the text formats.

use std::error::Error;

use cliques2paths::format::{parse_instance, write_formula, write_instance};
use cliques2paths::generator::{random_formula, random_instance, GenParams};

pub fn run() -> Result<(), Box<dyn Error>> {
    let params = GenParams {
        seed: 7,
        parts: 4,
        max_part_size: 4,
        cap: 2,
        ..GenParams::default()
    };
    let inst = random_instance(&params)?;
    let text = write_instance(&inst);
    print!("{text}");
    assert_eq!(text, write_instance(&random_instance(&params)?));
    assert_eq!(parse_instance(&text)?, inst);
    assert!(inst.max_crossings_per_edge() <= 2);

    let f = random_formula(7, 5, 3)?;
    print!("{}", write_formula(&f));
    assert!(f.occurrences().iter().all(|&k| k > 0));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
