//! Divisors on the chain of loops, linear equivalence and reduced forms.
//!
//! Equivalence is decided with loop-local moves. On a single loop of length
//! `L`, a divisor supported on the loop is determined up to equivalence by
//! its degree and by `mu = sum(a_j * pos_j) mod L`. Reducing a loop toward
//! one of its endpoints replaces everything on the corresponding cell by
//! `(delta - 1)` chips on the endpoint plus one chip at the point fixed by
//! `mu`, or `delta` chips on the endpoint when that point is the endpoint.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::chain_graph::{modulo, parse_rational, ChainGraph, Point, Rational};
use crate::error::{Error, Result};

/// A finite integer combination of points. Zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Divisor {
    entries: BTreeMap<Point, i64>,
}

impl Divisor {
    pub fn zero() -> Self {
        Divisor::default()
    }

    pub fn point(p: Point, coeff: i64) -> Self {
        let mut d = Divisor::zero();
        d.add_point(p, coeff);
        d
    }

    pub fn vertex(n: usize, coeff: i64) -> Self {
        Divisor::point(Point::Vertex(n), coeff)
    }

    pub fn from_terms<I: IntoIterator<Item = (Point, i64)>>(terms: I) -> Self {
        let mut d = Divisor::zero();
        for (p, c) in terms {
            d.add_point(p, c);
        }
        d
    }

    pub fn add_point(&mut self, p: Point, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.entries.entry(p) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if *slot.get() == 0 {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
        }
    }

    pub fn coefficient(&self, p: &Point) -> i64 {
        self.entries.get(p).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.entries.values().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.entries.values().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Point, i64)> + '_ {
        self.entries.iter().map(|(p, c)| (p, *c))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// True when every point is supported on `{v_0, ..., v_g}`.
    pub fn is_vertex_supported(&self) -> bool {
        self.entries.keys().all(|p| matches!(p, Point::Vertex(_)))
    }

    pub fn validate(&self, graph: &ChainGraph) -> Result<()> {
        self.entries
            .keys()
            .try_for_each(|p| graph.validate_point(p))
    }

    /// Terms lying in `gamma_i`: loop `i` minus `v_{i-1}` (so `v_i` is included).
    pub fn restriction_to_cell(&self, i: usize) -> Divisor {
        Divisor::from_terms(
            self.entries
                .iter()
                .filter(|(p, _)| match p {
                    Point::Vertex(n) => *n == i,
                    Point::Interior { loop_index, .. } => *loop_index == i,
                })
                .map(|(p, c)| (p.clone(), *c)),
        )
    }

    fn take(&mut self, p: &Point) -> i64 {
        self.entries.remove(p).unwrap_or(0)
    }

    pub fn to_file(&self) -> DivisorFile {
        DivisorFile {
            entries: self
                .entries
                .iter()
                .map(|(p, c)| EntryFile {
                    point: match p {
                        Point::Vertex(n) => PointFile::Vertex { vertex: *n },
                        Point::Interior { loop_index, pos } => PointFile::Interior {
                            loop_index: *loop_index,
                            pos: pos.to_string(),
                        },
                    },
                    coeff: *c,
                })
                .collect(),
        }
    }

    pub fn from_file(file: &DivisorFile, graph: &ChainGraph) -> Result<Self> {
        let mut d = Divisor::zero();
        for (k, entry) in file.entries.iter().enumerate() {
            let p = match &entry.point {
                PointFile::Vertex { vertex } => {
                    graph.check_vertex(*vertex)?;
                    Point::Vertex(*vertex)
                }
                PointFile::Interior { loop_index, pos } => {
                    let pos = parse_rational(pos)
                        .map_err(|e| Error::Parse(format!("entries[{k}].point.pos: {e}")))?;
                    graph.interior_point(*loop_index, pos)?
                }
            };
            d.add_point(p, entry.coeff);
        }
        Ok(d)
    }

    pub fn from_json(text: &str, graph: &ChainGraph) -> Result<Self> {
        let file: DivisorFile = serde_json::from_str(text).map_err(|e| {
            Error::Parse(format!(
                "divisor file line {} column {}: {e}",
                e.line(),
                e.column()
            ))
        })?;
        Self::from_file(&file, graph)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("divisor serializes")
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        for (k, (p, c)) in self.entries.iter().enumerate() {
            let sign = if *c < 0 {
                "-"
            } else if k > 0 {
                "+"
            } else {
                ""
            };
            if k > 0 {
                write!(f, " {sign} ")?;
            } else {
                write!(f, "{sign}")?;
            }
            match c.abs() {
                1 => write!(f, "{p}")?,
                a => write!(f, "{a}*{p}")?,
            }
        }
        Ok(())
    }
}

impl AddAssign<&Divisor> for Divisor {
    fn add_assign(&mut self, rhs: &Divisor) {
        for (p, c) in rhs.iter() {
            self.add_point(p.clone(), c);
        }
    }
}

impl SubAssign<&Divisor> for Divisor {
    fn sub_assign(&mut self, rhs: &Divisor) {
        for (p, c) in rhs.iter() {
            self.add_point(p.clone(), -c);
        }
    }
}

impl Add<&Divisor> for &Divisor {
    type Output = Divisor;
    fn add(self, rhs: &Divisor) -> Divisor {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Divisor> for &Divisor {
    type Output = Divisor;
    fn sub(self, rhs: &Divisor) -> Divisor {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for Divisor {
    type Output = Divisor;
    fn add(mut self, rhs: Divisor) -> Divisor {
        self += &rhs;
        self
    }
}

impl Sub for Divisor {
    type Output = Divisor;
    fn sub(mut self, rhs: Divisor) -> Divisor {
        self -= &rhs;
        self
    }
}

impl Neg for &Divisor {
    type Output = Divisor;
    fn neg(self) -> Divisor {
        Divisor {
            entries: self.entries.iter().map(|(p, c)| (p.clone(), -c)).collect(),
        }
    }
}

impl Neg for Divisor {
    type Output = Divisor;
    fn neg(self) -> Divisor {
        -&self
    }
}

/// `K = sum (deg v - 2) v`: every interior vertex `v_1..v_{g-1}` has valence 4.
pub fn canonical_divisor(graph: &ChainGraph) -> Divisor {
    Divisor::from_terms((1..graph.genus()).map(|n| (Point::Vertex(n), 2)))
}

fn scaled(pos: &Rational, coeff: i64) -> Rational {
    pos * Rational::from_integer(BigInt::from(coeff))
}

/// `sum a_j * pos_i(w_j) mod L_i` for a divisor supported on the closed loop `i`.
pub fn loop_mu(graph: &ChainGraph, d: &Divisor, i: usize) -> Result<Rational> {
    graph.check_loop(i)?;
    let mut total = Rational::zero();
    for (p, c) in d.iter() {
        let pos = graph
            .coordinate_on_loop(p, i)
            .ok_or(Error::PointOffLoop(i))?;
        total += scaled(&pos, c);
    }
    Ok(modulo(&total, &graph.loop_length(i)))
}

#[derive(Clone, Copy)]
enum Toward {
    Left,
    Right,
}

/// Replaces the cell of loop `i` that excludes the target endpoint by its
/// reduced form. `Left` targets `v_{i-1}` and sweeps `gamma_i`; `Right`
/// targets `v_i` and sweeps `gamma'_i`.
fn reduce_loop(graph: &ChainGraph, work: &mut Divisor, i: usize, toward: Toward) {
    let length = graph.loop_length(i);
    let m = graph.m(i);
    let (target, other) = match toward {
        Toward::Left => (Point::Vertex(i - 1), Point::Vertex(i)),
        Toward::Right => (Point::Vertex(i), Point::Vertex(i - 1)),
    };
    // coordinates measured counterclockwise from the target vertex
    let shift = match toward {
        Toward::Left => Rational::zero(),
        Toward::Right => m.clone(),
    };
    let interior: Vec<Point> = work
        .entries
        .range(
            Point::Interior {
                loop_index: i,
                pos: Rational::zero(),
            }..,
        )
        .take_while(|(p, _)| matches!(p, Point::Interior { loop_index, .. } if *loop_index == i))
        .map(|(p, _)| p.clone())
        .collect();

    let mut delta = 0i64;
    let mut mu = Rational::zero();
    for p in interior {
        let c = work.take(&p);
        if let Point::Interior { pos, .. } = &p {
            delta += c;
            mu += scaled(&(pos - &shift), c);
        }
    }
    let c = work.take(&other);
    if c != 0 {
        let pos = match toward {
            Toward::Left => m.clone(),
            Toward::Right => Rational::zero(),
        };
        delta += c;
        mu += scaled(&(pos - &shift), c);
    }
    let mu = modulo(&mu, &length);
    if mu.is_zero() {
        work.add_point(target, delta);
    } else {
        work.add_point(target, delta - 1);
        let p = graph
            .point_at(i, &(&mu + &shift))
            .expect("loop index already checked");
        work.add_point(p, 1);
    }
}

/// The unique `v_n`-reduced divisor equivalent to `d`.
pub fn reduce(graph: &ChainGraph, d: &Divisor, n: usize) -> Result<Divisor> {
    graph.check_vertex(n)?;
    d.validate(graph)?;
    let g = graph.genus();
    let mut work = d.clone();
    for i in (n + 1..=g).rev() {
        reduce_loop(graph, &mut work, i, Toward::Left);
    }
    for i in 1..=n {
        reduce_loop(graph, &mut work, i, Toward::Right);
    }
    debug_assert!(is_reduced(graph, &work, n));
    debug_assert_eq!(work.degree(), d.degree());
    Ok(work)
}

/// Cell containing `p` in the decomposition around `v_n`, or `None` for `v_n`.
/// Cells are numbered by their loop.
fn cell_of(p: &Point, n: usize) -> Option<usize> {
    match p {
        Point::Vertex(k) if *k == n => None,
        // v_k with k < n lies in gamma'_{k+1}; with k > n in gamma_k
        Point::Vertex(k) if *k < n => Some(k + 1),
        Point::Vertex(k) => Some(*k),
        Point::Interior { loop_index, .. } => Some(*loop_index),
    }
}

/// Effective away from `v_n`, with at most one point (of coefficient 1) per cell.
pub fn is_reduced(graph: &ChainGraph, d: &Divisor, n: usize) -> bool {
    if n > graph.genus() || d.validate(graph).is_err() {
        return false;
    }
    let mut seen = vec![false; graph.genus() + 1];
    for (p, c) in d.iter() {
        let Some(cell) = cell_of(p, n) else { continue };
        if c != 1 || seen[cell] {
            return false;
        }
        seen[cell] = true;
    }
    true
}

pub fn equivalent(graph: &ChainGraph, d: &Divisor, e: &Divisor) -> Result<bool> {
    Ok(reduce(graph, d, 0)? == reduce(graph, e, 0)?)
}

/// Coordinates `(d_0; x_1, ..., x_g)` of a `v_0`-reduced divisor. `x_i = 0`
/// means the cell `gamma_i` is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedData {
    pub d0: i64,
    pub x: Vec<Rational>,
}

impl ReducedData {
    pub fn degree(&self) -> i64 {
        self.d0 + self.x.iter().filter(|x| !x.is_zero()).count() as i64
    }
}

pub fn to_reduced_data(graph: &ChainGraph, d: &Divisor) -> Result<ReducedData> {
    if !is_reduced(graph, d, 0) {
        return Err(Error::NotReduced);
    }
    let mut x = vec![Rational::zero(); graph.genus()];
    for (p, _) in d.iter() {
        if *p == Point::Vertex(0) {
            continue;
        }
        let (i, pos) = graph.coordinates(p);
        x[i - 1] = pos;
    }
    Ok(ReducedData {
        d0: d.coefficient(&Point::Vertex(0)),
        x,
    })
}

pub fn from_reduced_data(graph: &ChainGraph, data: &ReducedData) -> Result<Divisor> {
    if data.x.len() != graph.genus() {
        return Err(Error::InvalidData(format!(
            "expected {} coordinates, got {}",
            graph.genus(),
            data.x.len()
        )));
    }
    let mut d = Divisor::vertex(0, data.d0);
    for (k, x) in data.x.iter().enumerate() {
        let i = k + 1;
        if x.is_negative() || *x >= graph.loop_length(i) {
            return Err(Error::InvalidData(format!(
                "x_{i} = {x} outside [0, {})",
                graph.loop_length(i)
            )));
        }
        if !x.is_zero() {
            d.add_point(graph.point_at(i, x)?, 1);
        }
    }
    Ok(d)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointFile {
    Vertex {
        vertex: usize,
    },
    Interior {
        #[serde(rename = "loop")]
        loop_index: usize,
        pos: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryFile {
    pub point: PointFile,
    pub coeff: i64,
}

/// On-disk divisor: `{"entries": [{"point": {"vertex": 0}, "coeff": 3}, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorFile {
    pub entries: Vec<EntryFile>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain_graph::{integer, rational};

    fn interior(i: usize, n: i64, dnm: i64) -> Point {
        Point::Interior {
            loop_index: i,
            pos: rational(n, dnm),
        }
    }

    #[test]
    fn degree_and_effectivity() {
        assert_eq!(Divisor::zero().degree(), 0);
        assert!(Divisor::zero().is_effective());
        let d = Divisor::vertex(0, 2) - Divisor::vertex(1, 1);
        assert!(!d.is_effective());
        assert_eq!(d.degree(), 1);
        let e = Divisor::vertex(0, 3) + Divisor::vertex(2, 1);
        assert!(e.is_effective());
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut d = Divisor::vertex(1, 2);
        d.add_point(Point::Vertex(1), -2);
        assert!(d.is_zero());
        let d = Divisor::vertex(0, 1) - Divisor::vertex(0, 1);
        assert_eq!(d, Divisor::zero());
    }

    #[test]
    fn canonical_divisor_shape() {
        for g in 2..=6 {
            let graph = ChainGraph::standard_generic(g).unwrap();
            let k = canonical_divisor(&graph);
            assert_eq!(k.degree(), 2 * g as i64 - 2);
            assert_eq!(k.coefficient(&Point::Vertex(0)), 0);
            assert_eq!(k.coefficient(&Point::Vertex(g)), 0);
        }
        let g2 = ChainGraph::standard_generic(2).unwrap();
        assert_eq!(canonical_divisor(&g2), Divisor::vertex(1, 2));
    }

    #[test]
    fn loop_mu_circle_moves() {
        // single loop (ell = 3, m = 1) at the start of the chain
        let graph = ChainGraph::from_integer_lengths(&[(3, 1), (5, 1)]).unwrap();
        assert_eq!(
            loop_mu(&graph, &Divisor::vertex(0, 5), 1).unwrap(),
            integer(0)
        );
        // case 2: x = 3 = (k+1)m for k = 2
        let d = Divisor::vertex(0, 2) + Divisor::point(interior(1, 3, 1), 1);
        assert_eq!(loop_mu(&graph, &d, 1).unwrap(), integer(3));
        assert_eq!(
            loop_mu(&graph, &Divisor::vertex(1, 3), 1).unwrap(),
            integer(3)
        );
        // case 3: x = 3/2 moves to x'' = 3/2 - 2 = 7/2 mod 4
        let d = Divisor::vertex(0, 2) + Divisor::point(interior(1, 3, 2), 1);
        assert_eq!(loop_mu(&graph, &d, 1).unwrap(), rational(3, 2));
        let moved = Divisor::vertex(1, 2) + Divisor::point(interior(1, 7, 2), 1);
        assert_eq!(loop_mu(&graph, &moved, 1).unwrap(), rational(3, 2));
        assert!(matches!(
            loop_mu(&graph, &Divisor::vertex(2, 1), 1),
            Err(Error::PointOffLoop(1))
        ));
    }

    #[test]
    fn circle_moves_toward_right_vertex() {
        let graph = ChainGraph::from_integer_lengths(&[(3, 1), (5, 1)]).unwrap();
        // k v with w zero -> (k-1) v' + w' at -(k-1) m
        let d = Divisor::vertex(0, 2);
        let expected = Divisor::vertex(1, 1) + Divisor::point(interior(1, 3, 1), 1);
        assert_eq!(reduce(&graph, &d, 1).unwrap(), expected);
        // x = (k+1) m -> (k+1) v'
        let d = Divisor::vertex(0, 2) + Divisor::point(interior(1, 3, 1), 1);
        assert_eq!(reduce(&graph, &d, 1).unwrap(), Divisor::vertex(1, 3));
        // otherwise k v' + w'' at x - k m
        let d = Divisor::vertex(0, 2) + Divisor::point(interior(1, 3, 2), 1);
        let expected = Divisor::vertex(1, 2) + Divisor::point(interior(1, 7, 2), 1);
        assert_eq!(reduce(&graph, &d, 1).unwrap(), expected);
        assert!(equivalent(&graph, &d, &expected).unwrap());
    }

    #[test]
    fn reduce_is_identity_on_reduced_input() {
        let graph = ChainGraph::standard_generic(4).unwrap();
        let d = Divisor::from_terms([
            (Point::Vertex(0), 1),
            (interior(1, 2, 1), 1),
            (interior(2, 3, 1), 1),
        ]);
        assert!(is_reduced(&graph, &d, 0));
        assert_eq!(reduce(&graph, &d, 0).unwrap(), d);
    }

    #[test]
    fn reduce_pushes_slack_to_base() {
        let graph = ChainGraph::standard_generic(2).unwrap();
        let d = Divisor::vertex(1, 1) + Divisor::point(interior(1, 1, 2), 1);
        let r = reduce(&graph, &d, 0).unwrap();
        assert!(is_reduced(&graph, &r, 0));
        assert_eq!(r.degree(), 2);
        assert_eq!(
            loop_mu(&graph, &r, 1).unwrap(),
            loop_mu(&graph, &d, 1).unwrap()
        );
        // mu = 1 + 1/2 = 3/2, so the reduced form is v0 + [1:3/2]
        assert_eq!(
            r,
            Divisor::vertex(0, 1) + Divisor::point(interior(1, 3, 2), 1)
        );
    }

    #[test]
    fn negative_and_multiple_interior_coefficients() {
        let graph = ChainGraph::standard_generic(3).unwrap();
        let d = Divisor::point(interior(2, 1, 3), 3) - Divisor::point(interior(3, 5, 2), 2);
        for n in 0..=3 {
            let r = reduce(&graph, &d, n).unwrap();
            assert!(is_reduced(&graph, &r, n), "n = {n}: {r}");
            assert_eq!(r.degree(), 1);
            assert_eq!(reduce(&graph, &r, n).unwrap(), r);
        }
    }

    #[test]
    fn reduced_data_bijection() {
        let graph = ChainGraph::standard_generic(3).unwrap();
        let data = to_reduced_data(&graph, &Divisor::zero()).unwrap();
        assert_eq!(data.d0, 0);
        assert!(data.x.iter().all(|x| x.is_zero()));

        let d = Divisor::from_terms([
            (Point::Vertex(0), -2),
            (Point::Vertex(1), 1),
            (interior(3, 7, 3), 1),
        ]);
        let data = to_reduced_data(&graph, &d).unwrap();
        assert_eq!(data.d0, -2);
        assert_eq!(data.x, vec![integer(1), integer(0), rational(7, 3)]);
        assert_eq!(data.degree(), d.degree());
        assert_eq!(from_reduced_data(&graph, &data).unwrap(), d);

        assert!(matches!(
            to_reduced_data(&graph, &Divisor::vertex(1, 2)),
            Err(Error::NotReduced)
        ));
        let bad = ReducedData {
            d0: 0,
            x: vec![integer(5), integer(0), integer(0)],
        };
        assert!(from_reduced_data(&graph, &bad).is_err());
    }

    #[test]
    fn vertices_are_inequivalent_on_generic_genus_two() {
        let graph = ChainGraph::standard_generic(2).unwrap();
        let v0 = Divisor::vertex(0, 1);
        assert!(equivalent(&graph, &v0, &v0).unwrap());
        assert!(!equivalent(&graph, &v0, &Divisor::vertex(1, 1)).unwrap());
    }

    #[test]
    fn json_rejects_vertex_positions() {
        let graph = ChainGraph::standard_generic(2).unwrap();
        let d = Divisor::from_json(r#"{"entries":[{"point":{"vertex":0},"coeff":3}]}"#, &graph)
            .unwrap();
        assert_eq!(d, Divisor::vertex(0, 3));
        let err = Divisor::from_json(
            r#"{"entries":[{"point":{"loop":1,"pos":"1"},"coeff":1}]}"#,
            &graph,
        )
        .unwrap_err();
        assert!(err.to_string().contains("\"vertex\": 1"), "{err}");
        let d = Divisor::point(interior(2, 1, 2), -1) + Divisor::vertex(2, 4);
        assert_eq!(Divisor::from_json(&d.to_json(), &graph).unwrap(), d);
    }
}
