// Riemann-Roch on random divisors, with both ranks from the oracle.

use std::error::Error;

use tropical_bn::oracle::random_generic_graph;
use tropical_bn::{
    canonical_divisor, oracle_rank, sample_divisor, verify_riemann_roch, OracleConfig,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let config = OracleConfig::default();
    for seed in 0..3 {
        let graph = random_generic_graph(3, seed)?;
        let k = canonical_divisor(&graph);
        println!(
            "graph {seed}: rank K = {}",
            oracle_rank(&graph, &k, &config)?
        );
        for s in 0..5 {
            let d = sample_divisor(&graph, s as i64, 100 * seed + s);
            let lhs = oracle_rank(&graph, &d, &config)?;
            let rhs = oracle_rank(&graph, &(&k - &d), &config)?;
            assert!(verify_riemann_roch(&graph, &d, &config)?);
            println!(
                "  D = {d}: r(D) = {lhs}, r(K - D) = {rhs}, deg D + 1 - g = {}",
                d.degree() - 2
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
