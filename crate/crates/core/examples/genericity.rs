// Build chains of loops and test the genericity condition.

use std::error::Error;

use tropical_bn::chain_graph::rational;
use tropical_bn::{ChainGraph, Loop};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for g in [2, 4, 12] {
        let graph = ChainGraph::standard_generic(g)?;
        println!("standard g={g}: generic = {}", graph.is_generic());
    }

    // equal top and bottom edges: the ratio 1/1 fails p + q > 2g - 2
    let symmetric = ChainGraph::from_integer_lengths(&[(1, 1), (1, 1)])?;
    println!(
        "symmetric g=2: non-generic loops {:?}",
        symmetric.non_generic_loops()
    );

    // only the ratio of a loop's two edges matters
    let scaled = ChainGraph::new(vec![
        Loop::new(rational(6, 7), rational(3, 7)),
        Loop::new(rational(2, 1), rational(1, 1)),
    ])?;
    println!("scaled first loop: generic = {}", scaled.is_generic());
    assert!(scaled.is_generic());

    println!("{}", ChainGraph::standard_generic(2)?.to_json());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
