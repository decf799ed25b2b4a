// The chip-firing game: Noether's winning challenge and Brill's responses.

use std::error::Error;

use tropical_bn::oracle::VertexMultisets;
use tropical_bn::{brill_response, noether_witness, rank, ChainGraph, Divisor, GameOutcome, Point};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let graph = ChainGraph::standard_generic(3)?;

    // rank 0: Noether has a winning challenge of degree 1
    let d = Divisor::vertex(0, 2);
    let e = noether_witness(&graph, &d, 1)?;
    let outcome = brill_response(&graph, &d, &e)?;
    println!(
        "D = {d}, rank {}: Noether plays {e}, reduced D - E = {}",
        rank(&graph, &d)?,
        outcome.reduced()
    );
    assert!(!outcome.brill_wins());

    // rank 1: Brill answers every vertex challenge
    let k = Divisor::vertex(0, 2) + Divisor::vertex(3, 2);
    println!("D = {k}, rank {}", rank(&graph, &k)?);
    for counts in VertexMultisets::new(graph.genus() + 1, 1) {
        let n = counts.iter().position(|&c| c == 1).unwrap_or(0);
        let challenge = Divisor::point(Point::Vertex(n), 1);
        match brill_response(&graph, &k, &challenge)? {
            GameOutcome::BrillWins(answer) => println!("  E = {challenge}: D - E ~ {answer}"),
            GameOutcome::NoetherWins(bad) => {
                return Err(format!("lost to {challenge}: {bad}").into())
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
