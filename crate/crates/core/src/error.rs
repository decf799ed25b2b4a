use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("genus must be at least 2, got {0}")]
    GenusTooSmall(usize),

    #[error("graph declares genus {genus} but lists {found} loops")]
    LoopCount { genus: usize, found: usize },

    #[error("loop {loop_index}: {which} length must be positive, got {value}")]
    NonPositiveLength {
        loop_index: usize,
        which: &'static str,
        value: String,
    },

    #[error(
        "graph is not generic: loop ratios ell/m violate the genericity bound at loops {loops:?}"
    )]
    NotGeneric { loops: Vec<usize> },

    #[error("vertex v{vertex} does not exist on a chain of genus {genus}")]
    VertexOutOfRange { vertex: usize, genus: usize },

    #[error("loop {loop_index} does not exist on a chain of genus {genus}")]
    LoopOutOfRange { loop_index: usize, genus: usize },

    #[error("vertex v{vertex} is not an endpoint of loop {loop_index}")]
    VertexNotOnLoop { vertex: usize, loop_index: usize },

    #[error("position {pos} lies outside (0, {length}) on loop {loop_index}")]
    PositionOutOfRange {
        loop_index: usize,
        pos: String,
        length: String,
    },

    #[error("position {pos} on loop {loop_index} is vertex v{vertex}; encode it as {{\"vertex\": {vertex}}}")]
    NonCanonicalPoint {
        loop_index: usize,
        pos: String,
        vertex: usize,
    },

    #[error("divisor has a point off the closed loop {0}")]
    PointOffLoop(usize),

    #[error("divisor is not v0-reduced")]
    NotReduced,

    #[error("invalid reduced data: {0}")]
    InvalidData(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("rho = {0}, but this operation needs rho = 0")]
    RhoNotZero(i64),

    #[error("no chamber-confined lattice path exists for (g, r, d) = ({g}, {r}, {d})")]
    NoPath { g: usize, r: usize, d: i64 },

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("invalid lattice path: {0}")]
    InvalidPath(String),

    #[error("divisor already has rank at least {0}; no witness exists")]
    RankAtLeast(usize),

    #[error("challenge divisor must be effective")]
    NotEffective,

    #[error("degree {degree} is outside the supported range 0..={max}")]
    DegreeOutOfRange { degree: i64, max: i64 },

    #[error("oracle budget of {budget} reductions exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("oracle rank search reached the cap of {0} without a failing challenge")]
    RankCapReached(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
