//! Divisor theory on generic chains of loops.
//!
//! The crate models the genus-`g` chain of loops with exact rational edge
//! lengths and provides:
//!
//! - divisor arithmetic, `v_n`-reduced forms and linear equivalence ([`divisor`]);
//! - lingering lattice paths and the rank criterion ([`lattice_path`]);
//! - the `rho = 0` enumeration of divisor classes through standard tableaux,
//!   and the witness/response strategies of the chip-firing game ([`brill_noether`]);
//! - an independent brute-force rank oracle ([`oracle`]);
//! - the command-line front end ([`cli`]).
//!
//! ```
//! use tropical_bn::{ChainGraph, BnParams, enumerate_classes, rank};
//!
//! let graph = ChainGraph::standard_generic(4).unwrap();
//! let params = BnParams::new(4, 1, 3).unwrap();
//! let classes = enumerate_classes(&graph, &params).unwrap();
//! assert_eq!(classes.len(), 2);
//! for d in &classes {
//!     assert_eq!(rank(&graph, d).unwrap(), 1);
//! }
//! ```

pub mod brill_noether;
pub mod chain_graph;
pub mod cli;
pub mod divisor;
pub mod error;
pub mod lattice_path;
pub mod oracle;

pub use brill_noether::{
    brill_response, enumerate_class_records, enumerate_classes, enumerate_tableaux, lambda,
    noether_witness, path_to_divisor, path_to_tableau, tableau_to_path, ClassRecord, GameOutcome,
    Tableau,
};
pub use chain_graph::{ChainGraph, Loop, Point, Rational};
pub use divisor::{
    canonical_divisor, equivalent, from_reduced_data, is_reduced, loop_mu, reduce, to_reduced_data,
    Divisor, ReducedData,
};
pub use error::{Error, Result};
pub use lattice_path::{
    build_path, has_rank_at_least, in_chamber, max_d0, max_lingering, path_exists, path_of, rank,
    rho, BnParams, LatticePath, Step,
};
pub use oracle::{oracle_rank, sample_divisor, verify_riemann_roch, OracleConfig};
