//! Lingering lattice paths and the rank criterion on generic chains.
//!
//! A `v_0`-reduced divisor with data `(d_0; x_1, ..., x_g)` determines a path
//! `p_0, ..., p_g` in `Z^r` starting at `(d_0, d_0 - 1, ..., d_0 - r + 1)`.
//! Step `i` goes down by one in every coordinate when `x_i = 0`, up in
//! coordinate `j` when `x_i = (p_{i-1}(j) + 1) m_i mod L_i` and both
//! endpoints of the step lie in the open Weyl chamber, and lingers otherwise.
//! The divisor has rank at least `r` exactly when the path never leaves the
//! chamber.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::chain_graph::{modulo, ChainGraph, Rational};
use crate::divisor::{reduce, to_reduced_data, Divisor, ReducedData};
use crate::error::{Error, Result};

/// A triple `(g, r, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BnParams {
    pub g: usize,
    pub r: usize,
    pub d: i64,
}

impl BnParams {
    pub fn new(g: usize, r: usize, d: i64) -> Result<Self> {
        if g < 2 {
            return Err(Error::GenusTooSmall(g));
        }
        Ok(BnParams { g, r, d })
    }

    /// `rho = g - (r + 1)(g - d + r)`.
    pub fn rho(&self) -> i64 {
        let (g, r, d) = (self.g as i64, self.r as i64, self.d);
        g - (r + 1) * (g - d + r)
    }

    /// Number of `Down` steps forced on a path starting at `d_0`.
    fn down_steps(&self, d0: i64) -> i64 {
        self.g as i64 - self.d + d0
    }

    fn check_path_range(&self) -> Result<()> {
        if self.r < 1 {
            return Err(Error::InvalidParams("r must be at least 1".into()));
        }
        let max = 2 * self.g as i64 - 2;
        if self.d < 0 || self.d > max {
            return Err(Error::DegreeOutOfRange {
                degree: self.d,
                max,
            });
        }
        Ok(())
    }
}

impl fmt::Display for BnParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(g, r, d) = ({}, {}, {})", self.g, self.r, self.d)
    }
}

pub fn rho(params: &BnParams) -> i64 {
    params.rho()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Step {
    Down,
    Up(usize),
    Linger,
}

/// `y(0) > ... > y(r-1) > 0`.
pub fn in_chamber(p: &[i64]) -> bool {
    p.windows(2).all(|w| w[0] > w[1]) && p.last().is_none_or(|&last| last > 0)
}

fn up(p: &[i64], j: usize) -> Vec<i64> {
    let mut q = p.to_vec();
    q[j] += 1;
    q
}

fn down(p: &[i64]) -> Vec<i64> {
    p.iter().map(|c| c - 1).collect()
}

pub fn start_point(d0: i64, r: usize) -> Vec<i64> {
    (0..r as i64).map(|k| d0 - k).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticePath {
    r: usize,
    points: Vec<Vec<i64>>,
    steps: Vec<Step>,
}

impl LatticePath {
    /// Builds the path from a start point and a step sequence.
    pub fn from_steps(start: Vec<i64>, steps: Vec<Step>) -> Result<Self> {
        let r = start.len();
        if r == 0 {
            return Err(Error::InvalidPath("paths live in Z^r with r >= 1".into()));
        }
        let mut points = Vec::with_capacity(steps.len() + 1);
        points.push(start);
        for (k, step) in steps.iter().enumerate() {
            let prev = points.last().expect("nonempty");
            let next = match *step {
                Step::Down => down(prev),
                Step::Up(j) if j < r => up(prev, j),
                Step::Up(j) => {
                    return Err(Error::InvalidPath(format!(
                        "step {} goes up in coordinate {j} >= r = {r}",
                        k + 1
                    )))
                }
                Step::Linger => prev.clone(),
            };
            points.push(next);
        }
        Ok(LatticePath { r, points, steps })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn start(&self) -> &[i64] {
        &self.points[0]
    }

    pub fn end(&self) -> &[i64] {
        self.points.last().expect("nonempty")
    }

    /// First index `n` with `p_n` outside the chamber.
    pub fn first_exit(&self) -> Option<usize> {
        self.points.iter().position(|p| !in_chamber(p))
    }

    pub fn lies_in_chamber(&self) -> bool {
        self.first_exit().is_none()
    }

    pub fn lingering_steps(&self) -> usize {
        self.steps.iter().filter(|s| **s == Step::Linger).count()
    }

    /// For `r = 1`, the scalar sequence `p_0, ..., p_g`.
    pub fn scalar_sequence(&self) -> Option<Vec<i64>> {
        (self.r == 1).then(|| self.points.iter().map(|p| p[0]).collect())
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .points
            .iter()
            .map(|p| {
                if p.len() == 1 {
                    p[0].to_string()
                } else {
                    let inner: Vec<String> = p.iter().map(|c| c.to_string()).collect();
                    format!("({})", inner.join(","))
                }
            })
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Target coordinate `(k + 1) m_i mod L_i` for an up-step from height `k`.
pub fn up_position(graph: &ChainGraph, i: usize, height: i64) -> Rational {
    let target = graph.m(i) * Rational::from_integer(BigInt::from(height + 1));
    modulo(&target, &graph.loop_length(i))
}

/// The lingering lattice path in `Z^r` of a `v_0`-reduced divisor.
pub fn build_path(graph: &ChainGraph, data: &ReducedData, r: usize) -> Result<LatticePath> {
    graph.require_generic()?;
    if r < 1 {
        return Err(Error::InvalidParams("r must be at least 1".into()));
    }
    if data.x.len() != graph.genus() {
        return Err(Error::InvalidData(format!(
            "expected {} coordinates, got {}",
            graph.genus(),
            data.x.len()
        )));
    }
    let mut p = start_point(data.d0, r);
    let mut steps = Vec::with_capacity(graph.genus());
    for (k, x) in data.x.iter().enumerate() {
        let i = k + 1;
        let step = if x.is_zero() {
            Step::Down
        } else if in_chamber(&p) {
            let matches: Vec<usize> = (0..r)
                .filter(|&j| &up_position(graph, i, p[j]) == x)
                .collect();
            if matches.len() > 1 {
                return Err(Error::Invariant(format!(
                    "step {i}: coordinates {matches:?} all satisfy the up congruence"
                )));
            }
            match matches.first() {
                Some(&j) if in_chamber(&up(&p, j)) => Step::Up(j),
                _ => Step::Linger,
            }
        } else {
            Step::Linger
        };
        p = match step {
            Step::Down => down(&p),
            Step::Up(j) => up(&p, j),
            Step::Linger => p,
        };
        steps.push(step);
    }
    LatticePath::from_steps(start_point(data.d0, r), steps)
}

/// Path of an arbitrary divisor: reduce at `v_0`, then build.
pub fn path_of(graph: &ChainGraph, d: &Divisor, r: usize) -> Result<LatticePath> {
    let reduced = reduce(graph, d, 0)?;
    build_path(graph, &to_reduced_data(graph, &reduced)?, r)
}

pub fn has_rank_at_least(graph: &ChainGraph, d: &Divisor, r: usize) -> Result<bool> {
    graph.require_generic()?;
    d.validate(graph)?;
    let deg = d.degree();
    let g = graph.genus() as i64;
    if deg < 0 {
        return Ok(false);
    }
    if deg > 2 * g - 2 {
        return Ok(deg - g >= r as i64);
    }
    let reduced = reduce(graph, d, 0)?;
    let data = to_reduced_data(graph, &reduced)?;
    if r == 0 {
        return Ok(data.d0 >= 0);
    }
    Ok(build_path(graph, &data, r)?.lies_in_chamber())
}

pub fn rank(graph: &ChainGraph, d: &Divisor) -> Result<i64> {
    graph.require_generic()?;
    d.validate(graph)?;
    let deg = d.degree();
    let g = graph.genus() as i64;
    if deg < 0 {
        return Ok(-1);
    }
    if deg > 2 * g - 2 {
        return Ok(deg - g);
    }
    let data = to_reduced_data(graph, &reduce(graph, d, 0)?)?;
    if data.d0 < 0 {
        return Ok(-1);
    }
    let mut best = 0;
    for r in 1..=deg {
        if build_path(graph, &data, r as usize)?.lies_in_chamber() {
            best = r;
        }
    }
    Ok(best)
}

/// Best achievable outcome over chamber-confined step sequences from a fixed `d_0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Reachable {
    max_lingering: usize,
}

/// Dynamic program over `(p, downs)` states. Down and Linger are always
/// available; Up(j) needs `p + e_j` in the chamber. Every state stays in the
/// chamber and the path must use exactly `g - d + d_0` Down steps.
fn search_from(params: &BnParams, d0: i64) -> Option<Reachable> {
    let downs_needed = params.down_steps(d0);
    let g = params.g;
    if downs_needed < 0 || downs_needed > g as i64 {
        return None;
    }
    let downs_needed = downs_needed as usize;
    let start = start_point(d0, params.r);
    if !in_chamber(&start) {
        return None;
    }
    let mut layer: HashMap<(Vec<i64>, usize), usize> = HashMap::new();
    layer.insert((start, 0), 0);
    for step in 0..g {
        let remaining = g - step - 1;
        let mut next: HashMap<(Vec<i64>, usize), usize> = HashMap::new();
        let mut offer = |key: (Vec<i64>, usize), lingers: usize| {
            if key.1 > downs_needed || key.1 + remaining < downs_needed {
                return;
            }
            let slot = next.entry(key).or_insert(lingers);
            *slot = (*slot).max(lingers);
        };
        for ((p, downs), lingers) in &layer {
            let lowered = down(p);
            if in_chamber(&lowered) {
                offer((lowered, downs + 1), *lingers);
            }
            offer((p.clone(), *downs), lingers + 1);
            for j in 0..params.r {
                let raised = up(p, j);
                if in_chamber(&raised) {
                    offer((raised, *downs), *lingers);
                }
            }
        }
        layer = next;
        if layer.is_empty() {
            return None;
        }
    }
    layer
        .into_iter()
        .filter(|((_, downs), _)| *downs == downs_needed)
        .map(|(_, lingers)| lingers)
        .max()
        .map(|max_lingering| Reachable { max_lingering })
}

fn feasible_starts(params: &BnParams) -> Result<Vec<(i64, Reachable)>> {
    params.check_path_range()?;
    Ok((params.r as i64..=params.d)
        .filter_map(|d0| search_from(params, d0).map(|reach| (d0, reach)))
        .collect())
}

/// Whether some chamber-confined lingering lattice path of type `(g, r, d)`
/// exists, i.e. whether a divisor of degree `d` and rank `r` exists.
pub fn path_exists(params: &BnParams) -> Result<bool> {
    Ok(!feasible_starts(params)?.is_empty())
}

pub fn max_d0(params: &BnParams) -> Result<i64> {
    feasible_starts(params)?
        .into_iter()
        .map(|(d0, _)| d0)
        .max()
        .ok_or(no_path(params))
}

/// Maximum number of lingering steps; this is the dimension of `W^r_d`.
pub fn max_lingering(params: &BnParams) -> Result<usize> {
    feasible_starts(params)?
        .into_iter()
        .map(|(_, reach)| reach.max_lingering)
        .max()
        .ok_or(no_path(params))
}

fn no_path(params: &BnParams) -> Error {
    Error::NoPath {
        g: params.g,
        r: params.r,
        d: params.d,
    }
}
