// Rank through lingering lattice paths, checked against the brute-force oracle.

use std::error::Error;

use tropical_bn::chain_graph::rational;
use tropical_bn::{
    canonical_divisor, oracle_rank, path_of, rank, ChainGraph, Divisor, OracleConfig, Point,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let graph = ChainGraph::standard_generic(4)?;
    let config = OracleConfig::default();

    let g413 = Divisor::from_terms([
        (Point::Vertex(0), 1),
        (graph.point_at(1, &rational(2, 1))?, 1),
        (graph.point_at(2, &rational(3, 1))?, 1),
    ]);
    let samples = [
        ("D", g413),
        ("K", canonical_divisor(&graph)),
        ("3 v0", Divisor::vertex(0, 3)),
        ("v1 + v3", Divisor::vertex(1, 1) + Divisor::vertex(3, 1)),
    ];
    for (name, d) in &samples {
        let fast = rank(&graph, d)?;
        let slow = oracle_rank(&graph, d, &config)?;
        assert_eq!(fast, slow);
        println!("{name} = {d}: rank {fast}");
        if fast >= 0 {
            println!("  path in Z^1: {}", path_of(&graph, d, 1)?);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
