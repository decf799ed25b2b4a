// List the finitely many classes of degree d and rank r when rho = 0.

use std::error::Error;

use tropical_bn::{enumerate_class_records, lambda, rank, BnParams, ChainGraph};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for (g, r, d) in [(4, 1, 3), (6, 2, 6), (12, 3, 12)] {
        let params = BnParams::new(g, r, d)?;
        let graph = ChainGraph::standard_generic(g)?;
        let records = enumerate_class_records(&graph, &params)?;
        println!(
            "{params}: lambda = {}, {} classes",
            lambda(&params)?,
            records.len()
        );
        for rec in records.iter().take(3) {
            assert_eq!(rank(&graph, &rec.divisor)?, r as i64);
            println!("  {:?}  {}  {}", rec.tableau.cells(), rec.path, rec.divisor);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
