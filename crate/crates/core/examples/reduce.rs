// Move a divisor to its v_n-reduced form for each basepoint.

use std::error::Error;

use tropical_bn::chain_graph::rational;
use tropical_bn::{equivalent, is_reduced, loop_mu, reduce, ChainGraph, Divisor, Point};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let graph = ChainGraph::standard_generic(3)?;
    let mut d = Divisor::vertex(3, 2);
    d.add_point(graph.point_at(1, &rational(1, 2))?, 1);
    d.add_point(graph.point_at(2, &rational(5, 2))?, 1);
    println!("D = {d}");

    for n in 0..=graph.genus() {
        let reduced = reduce(&graph, &d, n)?;
        assert!(is_reduced(&graph, &reduced, n));
        assert!(equivalent(&graph, &d, &reduced)?);
        println!("v{n}-reduced: {reduced}");
    }

    // two chips on one loop collapse to one chip and a vertex chip
    let pair = Divisor::from_terms([
        (graph.point_at(2, &rational(3, 2))?, 1),
        (graph.point_at(2, &rational(7, 2))?, 1),
    ]);
    let moved = reduce(&graph, &pair, 0)?;
    println!("{pair} ~ {moved}");
    assert_eq!(
        loop_mu(&graph, &pair, 2)?,
        loop_mu(&graph, &reduce(&graph, &pair, 1)?, 2)?
    );
    assert_eq!(moved.coefficient(&Point::Vertex(0)), 1);
    assert_eq!(moved.len(), 2);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
