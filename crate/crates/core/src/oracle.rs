//! Brute-force rank computation.
//!
//! On the chain of loops, `{v_0, ..., v_g}` is a rank-determining set: `D`
//! has rank at least `r` iff `D - E` is equivalent to an effective divisor for
//! every effective `E` of degree `r` supported on the vertices. The oracle
//! checks exactly that, one `v_0`-reduction per challenge, and needs no
//! genericity assumption.

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::chain_graph::{ChainGraph, Loop, Point, Rational};
use crate::divisor::{canonical_divisor, reduce, Divisor};
use crate::error::{Error, Result};
use crate::lattice_path::up_position;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone)]
pub struct OracleConfig {
    /// Largest rank the sweep will certify before giving up.
    pub max_rank_to_test: usize,
    pub seed: u64,
    /// Maximum number of reductions across one `oracle_rank` call.
    pub budget: u64,
    /// Run each challenge sweep on the rayon pool.
    pub parallel: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_rank_to_test: usize::MAX,
            seed: 0,
            budget: DEFAULT_BUDGET,
            parallel: false,
        }
    }
}

/// Effective vertex divisors of a fixed degree on `vertices` vertices, as
/// coefficient vectors, in lexicographic order (largest weight on `v_0` first).
#[derive(Debug, Clone)]
pub struct VertexMultisets {
    next: Option<Vec<u32>>,
}

impl VertexMultisets {
    pub fn new(vertices: usize, degree: u32) -> Self {
        let next = (vertices > 0).then(|| {
            let mut v = vec![0; vertices];
            v[0] = degree;
            v
        });
        VertexMultisets { next }
    }
}

impl Iterator for VertexMultisets {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let current = self.next.take()?;
        // advance: move one unit from the rightmost nonzero slot (not the last)
        // one step right, and sweep everything after it into that slot
        let n = current.len();
        let mut succ = current.clone();
        if let Some(k) = (0..n.saturating_sub(1)).rev().find(|&k| succ[k] > 0) {
            let tail: u32 = succ[k + 1..].iter().sum();
            succ[k] -= 1;
            for slot in succ[k + 1..].iter_mut() {
                *slot = 0;
            }
            succ[k + 1] = tail + 1;
            self.next = Some(succ);
        }
        Some(current)
    }
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn vertex_divisor(counts: &[u32]) -> Divisor {
    Divisor::from_terms(
        counts
            .iter()
            .enumerate()
            .map(|(n, &c)| (Point::Vertex(n), c as i64)),
    )
}

struct Sweep<'a> {
    graph: &'a ChainGraph,
    config: &'a OracleConfig,
    used: AtomicU64,
}

impl Sweep<'_> {
    fn charge(&self, count: u64) -> Result<()> {
        let used = self.used.fetch_add(count, Ordering::Relaxed) + count;
        if used > self.config.budget {
            Err(Error::BudgetExceeded {
                budget: self.config.budget,
            })
        } else {
            Ok(())
        }
    }

    /// Whether `D - E` reduces to an effective divisor for every vertex challenge of degree `r`.
    fn survives_all(&self, reduced: &Divisor, r: usize) -> Result<bool> {
        let vertices = self.graph.genus() + 1;
        let total = binomial((vertices + r - 1) as u64, r as u64);
        let remaining = self
            .config
            .budget
            .saturating_sub(self.used.load(Ordering::Relaxed));
        if total > remaining as u128 {
            return Err(Error::BudgetExceeded {
                budget: self.config.budget,
            });
        }
        let survives = |counts: &Vec<u32>| -> Result<bool> {
            let e = vertex_divisor(counts);
            Ok(reduce(self.graph, &(reduced - &e), 0)?.is_effective())
        };
        if self.config.parallel {
            let challenges: Vec<Vec<u32>> = VertexMultisets::new(vertices, r as u32).collect();
            self.charge(challenges.len() as u64)?;
            let failures = challenges
                .par_iter()
                .map(survives)
                .collect::<Result<Vec<bool>>>()?;
            Ok(failures.into_iter().all(|ok| ok))
        } else {
            for counts in VertexMultisets::new(vertices, r as u32) {
                self.charge(1)?;
                if !survives(&counts)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

pub fn oracle_rank(graph: &ChainGraph, d: &Divisor, config: &OracleConfig) -> Result<i64> {
    d.validate(graph)?;
    let deg = d.degree();
    let g = graph.genus() as i64;
    let reduced = reduce(graph, d, 0)?;
    if deg < 0 || !reduced.is_effective() {
        return Ok(-1);
    }
    if deg > 2 * g - 2 {
        return Ok(deg - g);
    }
    let sweep = Sweep {
        graph,
        config,
        used: AtomicU64::new(1),
    };
    let mut r = 0usize;
    while (r as i64) < deg {
        if r >= config.max_rank_to_test {
            return Err(Error::RankCapReached(config.max_rank_to_test));
        }
        if !sweep.survives_all(&reduced, r + 1)? {
            break;
        }
        r += 1;
    }
    Ok(r as i64)
}

/// `r(D) - r(K - D) = deg(D) + 1 - g`, both ranks from the oracle.
pub fn verify_riemann_roch(graph: &ChainGraph, d: &Divisor, config: &OracleConfig) -> Result<bool> {
    let k = canonical_divisor(graph);
    let lhs = oracle_rank(graph, d, config)? - oracle_rank(graph, &(&k - d), config)?;
    Ok(lhs == d.degree() + 1 - graph.genus() as i64)
}

/// Relative weights of the three kinds of points `sample_divisor` draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleMix {
    pub vertex: u32,
    /// Points at `(k + 1) m_i mod L_i`, which trigger up-steps.
    pub special: u32,
    pub generic: u32,
    /// Chance, in percent, that a term gets a coefficient other than +1.
    pub irregular_percent: u32,
}

impl SampleMix {
    pub const VERTICES_ONLY: SampleMix = SampleMix {
        vertex: 1,
        special: 0,
        generic: 0,
        irregular_percent: 20,
    };
}

impl Default for SampleMix {
    fn default() -> Self {
        SampleMix {
            vertex: 2,
            special: 5,
            generic: 2,
            irregular_percent: 10,
        }
    }
}

/// Deterministic pseudo-random divisor of degree `d`.
pub fn sample_divisor(graph: &ChainGraph, d: i64, seed: u64) -> Divisor {
    sample_divisor_with(graph, d, seed, SampleMix::default())
}

pub fn sample_divisor_with(graph: &ChainGraph, d: i64, seed: u64, mix: SampleMix) -> Divisor {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = graph.genus();
    let total_weight = mix.vertex + mix.special + mix.generic;
    let terms = if d > 0 {
        rng.gen_range(0..=d as usize)
    } else {
        rng.gen_range(0..=2)
    };
    let mut out = Divisor::zero();
    for _ in 0..terms {
        let pick = rng.gen_range(0..total_weight.max(1));
        let p = if total_weight == 0 || pick < mix.vertex {
            Point::Vertex(rng.gen_range(0..=g))
        } else if pick < mix.vertex + mix.special {
            let i = rng.gen_range(1..=g);
            let height = rng.gen_range(0..=(2 * g as i64 - 2));
            graph
                .point_at(i, &up_position(graph, i, height))
                .expect("loop index in range")
        } else {
            let i = rng.gen_range(1..=g);
            let denom: i64 = rng.gen_range(2..=7);
            let length = graph.loop_length(i);
            let frac = Rational::new(BigInt::from(rng.gen_range(1..denom)), BigInt::from(denom));
            graph
                .point_at(i, &(length * frac))
                .expect("loop index in range")
        };
        let coeff = if rng.gen_range(0..100) < mix.irregular_percent {
            if rng.gen_bool(0.5) {
                -1
            } else {
                2
            }
        } else {
            1
        };
        out.add_point(p, coeff);
    }
    let fix = d - out.degree();
    out.add_point(Point::Vertex(rng.gen_range(0..=g)), fix);
    out
}

/// A randomized chain of genus `g` with rational lengths that passes the
/// genericity test.
pub fn random_generic_graph(g: usize, seed: u64) -> Result<ChainGraph> {
    if g < 2 {
        return Err(Error::GenusTooSmall(g));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = BigInt::from(2 * g as i64 - 2);
    let mut loops = Vec::with_capacity(g);
    while loops.len() < g {
        let ell = Rational::new(
            BigInt::from(rng.gen_range(1..=40i64)),
            BigInt::from(rng.gen_range(1..=6i64)),
        );
        let m = Rational::new(
            BigInt::from(rng.gen_range(1..=12i64)),
            BigInt::from(rng.gen_range(1..=6i64)),
        );
        let ratio = &ell / &m;
        if ratio.numer() + ratio.denom() > bound {
            loops.push(Loop::new(ell, m));
        }
    }
    let graph = ChainGraph::new(loops)?;
    debug_assert!(graph.is_generic());
    Ok(graph)
}
