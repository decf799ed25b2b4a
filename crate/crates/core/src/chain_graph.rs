//! The genus-g chain of loops.
//!
//! Loop `i` (1-based) joins `v_{i-1}` to `v_i` by a top edge of length `ell_i`
//! and a bottom edge of length `m_i`. A point on loop `i` is labeled by its
//! counterclockwise distance from `v_{i-1}`, so `v_{i-1}` sits at 0 and `v_i`
//! sits at `m_i`. Every length is an exact rational.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((_, den)) = t.split_once('/') {
        if den
            .trim()
            .trim_start_matches(['+', '-'])
            .chars()
            .all(|c| c == '0')
        {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
    }
    Rational::from_str(t).map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}

/// Representative of `x` modulo `modulus` in `[0, modulus)`.
pub fn modulo(x: &Rational, modulus: &Rational) -> Rational {
    debug_assert!(modulus.is_positive());
    let q = (x / modulus).floor();
    x - q * modulus
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Loop {
    pub ell: Rational,
    pub m: Rational,
}

impl Loop {
    pub fn new(ell: Rational, m: Rational) -> Self {
        Loop { ell, m }
    }

    pub fn length(&self) -> Rational {
        &self.ell + &self.m
    }
}

/// A chain of `g >= 2` loops with positive rational edge lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainGraph {
    loops: Vec<Loop>,
}

impl ChainGraph {
    pub fn new(loops: Vec<Loop>) -> Result<Self> {
        if loops.len() < 2 {
            return Err(Error::GenusTooSmall(loops.len()));
        }
        for (k, lp) in loops.iter().enumerate() {
            for (which, value) in [("ell", &lp.ell), ("m", &lp.m)] {
                if !value.is_positive() {
                    return Err(Error::NonPositiveLength {
                        loop_index: k + 1,
                        which,
                        value: value.to_string(),
                    });
                }
            }
        }
        Ok(ChainGraph { loops })
    }

    pub fn from_integer_lengths(lengths: &[(i64, i64)]) -> Result<Self> {
        Self::new(
            lengths
                .iter()
                .map(|&(ell, m)| Loop::new(integer(ell), integer(m)))
                .collect(),
        )
    }

    /// Every loop gets `ell = 2g - 2`, `m = 1`, which is always generic.
    pub fn standard_generic(g: usize) -> Result<Self> {
        if g < 2 {
            return Err(Error::GenusTooSmall(g));
        }
        let ell = integer(2 * g as i64 - 2);
        Self::new(vec![Loop::new(ell, Rational::one()); g])
    }

    pub fn genus(&self) -> usize {
        self.loops.len()
    }

    pub fn loops(&self) -> &[Loop] {
        &self.loops
    }

    /// Loop `i`, 1-based. Panics when `i` is out of range.
    pub fn loop_at(&self, i: usize) -> &Loop {
        assert!(
            (1..=self.genus()).contains(&i),
            "loop index {i} out of range"
        );
        &self.loops[i - 1]
    }

    pub fn ell(&self, i: usize) -> &Rational {
        &self.loop_at(i).ell
    }

    pub fn m(&self, i: usize) -> &Rational {
        &self.loop_at(i).m
    }

    pub fn loop_length(&self, i: usize) -> Rational {
        self.loop_at(i).length()
    }

    /// Loops whose ratio `ell/m = p/q` (lowest terms) has `p + q <= 2g - 2`.
    pub fn non_generic_loops(&self) -> Vec<usize> {
        let bound = BigInt::from(2 * self.genus() as i64 - 2);
        self.loops
            .iter()
            .enumerate()
            .filter(|(_, lp)| {
                let ratio = &lp.ell / &lp.m;
                ratio.numer() + ratio.denom() <= bound
            })
            .map(|(k, _)| k + 1)
            .collect()
    }

    pub fn is_generic(&self) -> bool {
        self.non_generic_loops().is_empty()
    }

    pub fn require_generic(&self) -> Result<()> {
        let loops = self.non_generic_loops();
        if loops.is_empty() {
            Ok(())
        } else {
            Err(Error::NotGeneric { loops })
        }
    }

    pub fn check_loop(&self, i: usize) -> Result<()> {
        if (1..=self.genus()).contains(&i) {
            Ok(())
        } else {
            Err(Error::LoopOutOfRange {
                loop_index: i,
                genus: self.genus(),
            })
        }
    }

    pub fn check_vertex(&self, n: usize) -> Result<()> {
        if n <= self.genus() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: n,
                genus: self.genus(),
            })
        }
    }

    /// Coordinate of `v_n` on loop `i`: 0 for the left endpoint, `m_i` for the right.
    pub fn vertex_position_on_loop(&self, n: usize, i: usize) -> Result<Rational> {
        self.check_loop(i)?;
        if n + 1 == i {
            Ok(Rational::zero())
        } else if n == i {
            Ok(self.m(i).clone())
        } else {
            Err(Error::VertexNotOnLoop {
                vertex: n,
                loop_index: i,
            })
        }
    }

    /// The point at coordinate `pos` (taken modulo the loop length) on loop `i`,
    /// in canonical form.
    pub fn point_at(&self, i: usize, pos: &Rational) -> Result<Point> {
        self.check_loop(i)?;
        let pos = modulo(pos, &self.loop_length(i));
        Ok(if pos.is_zero() {
            Point::Vertex(i - 1)
        } else if &pos == self.m(i) {
            Point::Vertex(i)
        } else {
            Point::Interior { loop_index: i, pos }
        })
    }

    /// Strict constructor used by file loading: rejects positions outside
    /// `(0, L_i)` and positions that name a vertex.
    pub fn interior_point(&self, i: usize, pos: Rational) -> Result<Point> {
        self.check_loop(i)?;
        let length = self.loop_length(i);
        if pos.is_negative() || pos >= length {
            return Err(Error::PositionOutOfRange {
                loop_index: i,
                pos: pos.to_string(),
                length: length.to_string(),
            });
        }
        let vertex = if pos.is_zero() {
            Some(i - 1)
        } else if &pos == self.m(i) {
            Some(i)
        } else {
            None
        };
        match vertex {
            Some(vertex) => Err(Error::NonCanonicalPoint {
                loop_index: i,
                pos: pos.to_string(),
                vertex,
            }),
            None => Ok(Point::Interior { loop_index: i, pos }),
        }
    }

    /// Checks that a point is canonical and lies on this graph.
    pub fn validate_point(&self, p: &Point) -> Result<()> {
        match p {
            Point::Vertex(n) => self.check_vertex(*n),
            Point::Interior { loop_index, pos } => {
                self.interior_point(*loop_index, pos.clone()).map(|_| ())
            }
        }
    }

    /// Coordinate of `p` on the closed loop `i`, or `None` if `p` is not on it.
    pub fn coordinate_on_loop(&self, p: &Point, i: usize) -> Option<Rational> {
        match p {
            Point::Vertex(n) => self.vertex_position_on_loop(*n, i).ok(),
            Point::Interior { loop_index, pos } if *loop_index == i => Some(pos.clone()),
            Point::Interior { .. } => None,
        }
    }

    /// Loop coordinates of a point as `(loop, pos)`. Vertex `v_n` is reported
    /// on loop `n` at `m_n`, except `v_0`, reported on loop 1 at 0.
    pub fn coordinates(&self, p: &Point) -> (usize, Rational) {
        match p {
            Point::Vertex(0) => (1, Rational::zero()),
            Point::Vertex(n) => (*n, self.m(*n).clone()),
            Point::Interior { loop_index, pos } => (*loop_index, pos.clone()),
        }
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            g: self.genus(),
            loops: self
                .loops
                .iter()
                .map(|lp| LoopFile {
                    ell: lp.ell.to_string(),
                    m: lp.m.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_file(file: &GraphFile) -> Result<Self> {
        if file.g < 2 {
            return Err(Error::GenusTooSmall(file.g));
        }
        if file.loops.len() != file.g {
            return Err(Error::LoopCount {
                genus: file.g,
                found: file.loops.len(),
            });
        }
        let loops = file
            .loops
            .iter()
            .enumerate()
            .map(|(k, lf)| {
                let ell = parse_rational(&lf.ell)
                    .map_err(|e| Error::Parse(format!("loops[{k}].ell: {e}")))?;
                let m = parse_rational(&lf.m)
                    .map_err(|e| Error::Parse(format!("loops[{k}].m: {e}")))?;
                Ok(Loop::new(ell, m))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(loops)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile = serde_json::from_str(text).map_err(|e| {
            Error::Parse(format!(
                "graph file line {} column {}: {e}",
                e.line(),
                e.column()
            ))
        })?;
        Self::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("graph serializes")
    }
}

/// A point of the chain in its unique stored form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Vertex(usize),
    Interior { loop_index: usize, pos: Rational },
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Vertex(n) => write!(f, "v{n}"),
            Point::Interior { loop_index, pos } => write!(f, "[{loop_index}:{pos}]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoopFile {
    pub ell: String,
    pub m: String,
}

/// On-disk graph: `{"g": 2, "loops": [{"ell": "2", "m": "1"}, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub g: usize,
    pub loops: Vec<LoopFile>,
}
