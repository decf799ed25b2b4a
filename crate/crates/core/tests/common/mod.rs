//! Independent reference computations used by the integration tests.
//!
//! Nothing here calls the library's reduction sweep, path builder or path DP.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use tropical_bn::{ChainGraph, Divisor, Point, Rational};

fn modulo(x: &Rational, m: &Rational) -> Rational {
    let q = (x / m).floor();
    x - q * m
}

/// Abel-Jacobi image of `d` in `prod R/L_i`: every point is retracted onto
/// loop `i` (points left of the loop go to `v_{i-1}`, points right of it to
/// `v_i`) and the coordinates are summed with multiplicity.
pub fn abel_jacobi(graph: &ChainGraph, d: &Divisor) -> Vec<Rational> {
    (1..=graph.genus())
        .map(|i| {
            let m = graph.m(i).clone();
            let mut total = Rational::zero();
            for (p, c) in d.iter() {
                let pos = match p {
                    Point::Vertex(k) if *k < i => Rational::zero(),
                    Point::Vertex(_) => m.clone(),
                    Point::Interior { loop_index, pos } if *loop_index == i => pos.clone(),
                    Point::Interior { loop_index, .. } if *loop_index < i => Rational::zero(),
                    Point::Interior { .. } => m.clone(),
                };
                total += pos * Rational::from_integer(BigInt::from(c));
            }
            modulo(&total, &graph.loop_length(i))
        })
        .collect()
}

/// Linear equivalence through the Abel-Jacobi map.
pub fn aj_equivalent(graph: &ChainGraph, a: &Divisor, b: &Divisor) -> bool {
    a.degree() == b.degree() && abel_jacobi(graph, a) == abel_jacobi(graph, b)
}

/// Cell of `p` in the decomposition around `v_n` (`None` for `v_n` itself).
/// Cells left of `v_n` are loop minus its right vertex; right of `v_n`, loop
/// minus its left vertex.
fn cell(graph: &ChainGraph, p: &Point, n: usize) -> Option<usize> {
    match p {
        Point::Vertex(k) if *k == n => None,
        Point::Vertex(k) if *k < n => Some(k + 1),
        Point::Vertex(k) => Some(*k),
        Point::Interior { loop_index, .. } => {
            assert!(*loop_index <= graph.genus());
            Some(*loop_index)
        }
    }
}

/// Characterization of `v_n`-reduced divisors on the chain: effective away
/// from `v_n`, and at most one point of the divisor in each cell.
pub fn satisfies_reduced_characterization(graph: &ChainGraph, d: &Divisor, n: usize) -> bool {
    let mut count = vec![0i64; graph.genus() + 1];
    for (p, c) in d.iter() {
        if let Some(k) = cell(graph, p, n) {
            if c < 0 {
                return false;
            }
            count[k] += c;
        }
    }
    count.iter().all(|&c| c <= 1)
}

pub fn hook_length_count(rows: usize, cols: usize) -> u128 {
    let n = rows * cols;
    let mut numer: u128 = (1..=n as u128).product();
    let mut hooks: u128 = 1;
    for r in 0..rows {
        for c in 0..cols {
            hooks *= ((cols - c - 1) + (rows - r - 1) + 1) as u128;
        }
    }
    assert_eq!(numer % hooks, 0);
    numer /= hooks;
    numer
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathSummary {
    pub max_d0: i64,
    pub max_lingering: usize,
}

fn chamber(p: &[i64]) -> bool {
    p.windows(2).all(|w| w[0] > w[1]) && p.last().is_none_or(|&x| x > 0)
}

/// Enumerates every step sequence (down, linger, up in each coordinate) for
/// every start `d_0` in `r..=d` and keeps those with exactly `g - d + d_0`
/// down steps that never leave the chamber.
pub fn brute_force_paths(g: usize, r: usize, d: i64) -> Option<PathSummary> {
    let alphabet = r + 2;
    let total = alphabet.pow(g as u32);
    let mut best: Option<PathSummary> = None;
    for d0 in r as i64..=d {
        let downs_needed = g as i64 - d + d0;
        if downs_needed < 0 {
            continue;
        }
        for code in 0..total {
            let mut p: Vec<i64> = (0..r as i64).map(|k| d0 - k).collect();
            if !chamber(&p) {
                break;
            }
            let (mut downs, mut lingers, mut ok) = (0i64, 0usize, true);
            let mut c = code;
            for _ in 0..g {
                let letter = c % alphabet;
                c /= alphabet;
                match letter {
                    0 => {
                        downs += 1;
                        p.iter_mut().for_each(|x| *x -= 1);
                    }
                    1 => lingers += 1,
                    j => p[j - 2] += 1,
                }
                if !chamber(&p) {
                    ok = false;
                    break;
                }
            }
            if ok && downs == downs_needed {
                let cur = best.get_or_insert(PathSummary {
                    max_d0: d0,
                    max_lingering: lingers,
                });
                cur.max_d0 = cur.max_d0.max(d0);
                cur.max_lingering = cur.max_lingering.max(lingers);
            }
        }
    }
    best
}

/// Every effective vertex divisor of the given degree on `v_0..=v_n`.
pub fn vertex_divisors(n: usize, degree: u32) -> Vec<Divisor> {
    fn go(slot: usize, n: usize, left: u32, acc: &mut Vec<u32>, out: &mut Vec<Divisor>) {
        if slot == n {
            acc.push(left);
            out.push(Divisor::from_terms(
                acc.iter()
                    .enumerate()
                    .map(|(k, &c)| (Point::Vertex(k), c as i64)),
            ));
            acc.pop();
            return;
        }
        for c in (0..=left).rev() {
            acc.push(c);
            go(slot + 1, n, left - c, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, degree, &mut Vec::new(), &mut out);
    out
}

pub fn is_positive(x: &Rational) -> bool {
    x.is_positive()
}
