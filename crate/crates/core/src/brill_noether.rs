//! Divisor classes of degree `d` and rank `r` when `rho = 0`, their standard
//! tableaux, and the two sides of the chip-firing game.
//!
//! Tableau columns are labeled `0..=r`. The number `i` sits in column `j < r`
//! when step `i` of the lattice path goes up in coordinate `j`, and in column
//! `r` when step `i` goes down.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::chain_graph::{ChainGraph, Point, Rational};
use crate::divisor::{from_reduced_data, reduce, to_reduced_data, Divisor, ReducedData};
use crate::error::{Error, Result};
use crate::lattice_path::{build_path, start_point, up_position, BnParams, LatticePath, Step};

/// A standard Young tableau on a rectangle, stored row by row.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u32>>", into = "Vec<Vec<u32>>")]
pub struct Tableau {
    cells: Vec<Vec<u32>>,
}

impl Tableau {
    pub fn new(cells: Vec<Vec<u32>>) -> Result<Self> {
        let rows = cells.len();
        let cols = cells.first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidTableau("empty shape".into()));
        }
        if cells.iter().any(|row| row.len() != cols) {
            return Err(Error::InvalidTableau("rows have different lengths".into()));
        }
        let n = rows * cols;
        let mut seen = vec![false; n + 1];
        for &v in cells.iter().flatten() {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidTableau(format!(
                    "entries must be a permutation of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        for r in 0..rows {
            for c in 0..cols {
                if c + 1 < cols && cells[r][c] >= cells[r][c + 1] {
                    return Err(Error::InvalidTableau(format!("row {r} is not increasing")));
                }
                if r + 1 < rows && cells[r][c] >= cells[r + 1][c] {
                    return Err(Error::InvalidTableau(format!(
                        "column {c} is not increasing"
                    )));
                }
            }
        }
        Ok(Tableau { cells })
    }

    pub fn rows(&self) -> usize {
        self.cells.len()
    }

    pub fn cols(&self) -> usize {
        self.cells[0].len()
    }

    pub fn cells(&self) -> &[Vec<u32>] {
        &self.cells
    }

    /// Column index of each entry `1..=n`, as `column_of[entry - 1]`.
    pub fn column_word(&self) -> Vec<usize> {
        let mut word = vec![0; self.rows() * self.cols()];
        for row in &self.cells {
            for (c, &v) in row.iter().enumerate() {
                word[v as usize - 1] = c;
            }
        }
        word
    }
}

impl TryFrom<Vec<Vec<u32>>> for Tableau {
    type Error = Error;
    fn try_from(cells: Vec<Vec<u32>>) -> Result<Self> {
        Tableau::new(cells)
    }
}

impl From<Tableau> for Vec<Vec<u32>> {
    fn from(t: Tableau) -> Self {
        t.cells
    }
}

fn require_rho_zero(params: &BnParams) -> Result<()> {
    match params.rho() {
        0 => Ok(()),
        rho => Err(Error::RhoNotZero(rho)),
    }
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `lambda = g! * prod_{i=0..=r} i! / (g - d + r + i)!`, exact.
pub fn lambda(params: &BnParams) -> Result<BigUint> {
    require_rho_zero(params)?;
    let base = params.g as i64 - params.d + params.r as i64;
    if base < 0 {
        return Err(Error::InvalidParams(format!("g - d + r = {base} < 0")));
    }
    let mut numer = factorial(params.g as u64);
    let mut denom = BigUint::one();
    for i in 0..=params.r as u64 {
        numer *= factorial(i);
        denom *= factorial(base as u64 + i);
    }
    if !(&numer % &denom).is_zero() {
        return Err(Error::Invariant(format!(
            "lambda is not integral for {params}"
        )));
    }
    Ok(numer / denom)
}

/// All standard tableaux on a `rows x cols` rectangle, in lexicographic order
/// of their column words.
pub fn enumerate_tableaux(rows: usize, cols: usize) -> Vec<Tableau> {
    let mut out = Vec::new();
    if rows == 0 || cols == 0 {
        return out;
    }
    let mut heights = vec![0usize; cols];
    let mut word = Vec::with_capacity(rows * cols);
    fill(rows, &mut heights, &mut word, &mut out);
    out
}

fn fill(rows: usize, heights: &mut [usize], word: &mut Vec<usize>, out: &mut Vec<Tableau>) {
    let cols = heights.len();
    if word.len() == rows * cols {
        let mut cells = vec![vec![0u32; cols]; rows];
        let mut filled = vec![0usize; cols];
        for (k, &c) in word.iter().enumerate() {
            cells[filled[c]][c] = k as u32 + 1;
            filled[c] += 1;
        }
        out.push(Tableau { cells });
        return;
    }
    for c in 0..cols {
        if heights[c] < rows && (c == 0 || heights[c - 1] > heights[c]) {
            heights[c] += 1;
            word.push(c);
            fill(rows, heights, word, out);
            word.pop();
            heights[c] -= 1;
        }
    }
}

fn rectangle(params: &BnParams) -> (usize, usize) {
    let rows = params.g as i64 - params.d + params.r as i64;
    (rows.max(0) as usize, params.r + 1)
}

pub fn tableau_to_path(params: &BnParams, t: &Tableau) -> Result<LatticePath> {
    require_rho_zero(params)?;
    if params.r < 1 {
        return Err(Error::InvalidParams("r must be at least 1".into()));
    }
    let (rows, cols) = rectangle(params);
    if t.rows() != rows || t.cols() != cols {
        return Err(Error::InvalidTableau(format!(
            "shape {}x{} does not match the {rows}x{cols} rectangle for {params}",
            t.rows(),
            t.cols()
        )));
    }
    let r = params.r;
    let steps = t
        .column_word()
        .into_iter()
        .map(|c| if c < r { Step::Up(c) } else { Step::Down })
        .collect();
    let path = LatticePath::from_steps(start_point(r as i64, r), steps)?;
    if !path.lies_in_chamber() || path.end() != path.start() {
        return Err(Error::Invariant(format!(
            "tableau produced a path that is not a closed chamber loop: {path}"
        )));
    }
    Ok(path)
}

pub fn path_to_tableau(params: &BnParams, path: &LatticePath) -> Result<Tableau> {
    require_rho_zero(params)?;
    let r = params.r;
    if path.r() != r {
        return Err(Error::InvalidPath(format!(
            "path lives in Z^{} but r = {r}",
            path.r()
        )));
    }
    if path.steps().len() != params.g {
        return Err(Error::InvalidPath(format!(
            "path has {} steps, expected g = {}",
            path.steps().len(),
            params.g
        )));
    }
    let home = start_point(r as i64, r);
    if path.start() != home.as_slice() || path.end() != home.as_slice() {
        return Err(Error::InvalidPath(format!(
            "path must start and end at {home:?}"
        )));
    }
    if !path.lies_in_chamber() {
        return Err(Error::InvalidPath("path leaves the chamber".into()));
    }
    let (rows, cols) = rectangle(params);
    let mut columns: Vec<Vec<u32>> = vec![Vec::new(); cols];
    for (k, step) in path.steps().iter().enumerate() {
        let c = match step {
            Step::Up(j) => *j,
            Step::Down => r,
            Step::Linger => {
                return Err(Error::InvalidPath(format!("step {} lingers", k + 1)));
            }
        };
        columns[c].push(k as u32 + 1);
    }
    if columns.iter().any(|col| col.len() != rows) {
        return Err(Error::InvalidPath(
            "step counts do not fill the rectangle".into(),
        ));
    }
    let cells = (0..rows)
        .map(|row| columns.iter().map(|col| col[row]).collect())
        .collect();
    Tableau::new(cells)
}

/// The `v_0`-reduced divisor whose lattice path is `path`.
pub fn path_to_divisor(graph: &ChainGraph, path: &LatticePath) -> Result<Divisor> {
    graph.require_generic()?;
    if path.steps().len() != graph.genus() {
        return Err(Error::InvalidPath(format!(
            "path has {} steps on a chain of genus {}",
            path.steps().len(),
            graph.genus()
        )));
    }
    if !path.lies_in_chamber() {
        return Err(Error::InvalidPath("path leaves the chamber".into()));
    }
    let mut x = Vec::with_capacity(graph.genus());
    for (k, step) in path.steps().iter().enumerate() {
        let i = k + 1;
        x.push(match step {
            Step::Down => Rational::zero(),
            Step::Up(j) => {
                let pos = up_position(graph, i, path.points()[k][*j]);
                if pos.is_zero() {
                    return Err(Error::Invariant(format!(
                        "up-step {i} lands on v_{}",
                        i - 1
                    )));
                }
                pos
            }
            Step::Linger => {
                return Err(Error::InvalidPath(format!(
                    "step {i} lingers; its point is not determined by the path"
                )));
            }
        });
    }
    let data = ReducedData {
        d0: path.start()[0],
        x,
    };
    let d = from_reduced_data(graph, &data)?;
    debug_assert_eq!(&build_path(graph, &data, path.r())?, path);
    Ok(d)
}

/// One rank-`r` degree-`d` class with its tableau and lattice path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassRecord {
    pub tableau: Tableau,
    pub path: LatticePath,
    pub divisor: Divisor,
}

/// All classes of degree `d` and rank `r` when `rho = 0`, via tableaux.
pub fn enumerate_class_records(graph: &ChainGraph, params: &BnParams) -> Result<Vec<ClassRecord>> {
    graph.require_generic()?;
    require_rho_zero(params)?;
    if params.g != graph.genus() {
        return Err(Error::InvalidParams(format!(
            "params have g = {} but the graph has genus {}",
            params.g,
            graph.genus()
        )));
    }
    if params.r < 1 {
        return Err(Error::InvalidParams("r must be at least 1".into()));
    }
    let (rows, cols) = rectangle(params);
    enumerate_tableaux(rows, cols)
        .into_iter()
        .map(|tableau| {
            let path = tableau_to_path(params, &tableau)?;
            let divisor = path_to_divisor(graph, &path)?;
            Ok(ClassRecord {
                tableau,
                path,
                divisor,
            })
        })
        .collect()
}

pub fn enumerate_classes(graph: &ChainGraph, params: &BnParams) -> Result<Vec<Divisor>> {
    Ok(enumerate_class_records(graph, params)?
        .into_iter()
        .map(|rec| rec.divisor)
        .collect())
}

/// Maximal `k <= j` such that `p(j - k), ..., p(j)` are consecutive integers.
fn consecutive_run(p: &[i64], j: usize) -> usize {
    let mut k = 0;
    while k < j && p[j - k - 1] == p[j - k] + 1 {
        k += 1;
    }
    k
}

/// Vertex-supported `E_n` of degree `j` on `{v_0, ..., v_n}` for which the
/// `v_n`-reduced form of `D - E_n` has exactly `p_n(j)` chips at `v_n`.
/// Requires `p_0, ..., p_{n-1}` in the chamber.
pub fn extremal_challenge(path: &LatticePath, n: usize, j: usize) -> Divisor {
    let mut e = Divisor::zero();
    let (mut n, mut j) = (n, j);
    while n > 0 {
        let take = consecutive_run(&path.points()[n], j);
        e.add_point(Point::Vertex(n), take as i64);
        j -= take;
        n -= 1;
    }
    e.add_point(Point::Vertex(0), j as i64);
    e
}

/// An effective vertex-supported divisor `E` of degree `r` such that `D - E`
/// is not equivalent to an effective divisor.
pub fn noether_witness(graph: &ChainGraph, d: &Divisor, r: usize) -> Result<Divisor> {
    graph.require_generic()?;
    d.validate(graph)?;
    if r < 1 {
        return Err(Error::InvalidParams("r must be at least 1".into()));
    }
    let max = 2 * graph.genus() as i64 - 2;
    if d.degree() < 0 || d.degree() > max {
        return Err(Error::DegreeOutOfRange {
            degree: d.degree(),
            max,
        });
    }
    let reduced = reduce(graph, d, 0)?;
    let path = build_path(graph, &to_reduced_data(graph, &reduced)?, r)?;
    let n = path.first_exit().ok_or(Error::RankAtLeast(r))?;
    let mut e = extremal_challenge(&path, n, r - 1);
    e.add_point(Point::Vertex(n), 1);

    let certificate = reduce(graph, &(d - &e), n)?;
    if certificate.is_effective() || e.degree() != r as i64 {
        return Err(Error::Invariant(format!(
            "witness {e} does not defeat {d}: v{n}-reduced form is {certificate}"
        )));
    }
    Ok(e)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GameOutcome {
    /// `D - E` is equivalent to this effective `v_0`-reduced divisor.
    BrillWins(Divisor),
    /// The `v_0`-reduced form of `D - E` is not effective.
    NoetherWins(Divisor),
}

impl GameOutcome {
    pub fn brill_wins(&self) -> bool {
        matches!(self, GameOutcome::BrillWins(_))
    }

    pub fn reduced(&self) -> &Divisor {
        match self {
            GameOutcome::BrillWins(d) | GameOutcome::NoetherWins(d) => d,
        }
    }
}

/// Brill's answer to the challenge `E`: chip-fire `D - E` to its `v_0`-reduced form.
pub fn brill_response(graph: &ChainGraph, d: &Divisor, e: &Divisor) -> Result<GameOutcome> {
    if !e.is_effective() {
        return Err(Error::NotEffective);
    }
    let reduced = reduce(graph, &(d - e), 0)?;
    Ok(if reduced.is_effective() {
        GameOutcome::BrillWins(reduced)
    } else {
        GameOutcome::NoetherWins(reduced)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain_graph::integer;
    use crate::divisor::canonical_divisor;
    use crate::lattice_path::{has_rank_at_least, path_of};

    fn params(g: usize, r: usize, d: i64) -> BnParams {
        BnParams::new(g, r, d).unwrap()
    }

    #[test]
    fn lambda_values() {
        assert_eq!(lambda(&params(4, 1, 3)).unwrap(), BigUint::from(2u32));
        assert_eq!(lambda(&params(12, 3, 12)).unwrap(), BigUint::from(462u32));
        assert_eq!(lambda(&params(2, 1, 2)).unwrap(), BigUint::from(1u32));
        assert!(matches!(
            lambda(&params(4, 1, 4)),
            Err(Error::RhoNotZero(2))
        ));
    }

    #[test]
    fn tableau_counts() {
        assert_eq!(enumerate_tableaux(2, 2).len(), 2);
        assert_eq!(enumerate_tableaux(3, 4).len(), 462);
        for n in 1..6 {
            assert_eq!(enumerate_tableaux(1, n).len(), 1);
        }
        let first = &enumerate_tableaux(2, 2)[0];
        assert_eq!(first.cells(), &[vec![1, 3], vec![2, 4]]);
    }

    #[test]
    fn tableau_validation() {
        assert!(Tableau::new(vec![vec![1, 2], vec![3, 4]]).is_ok());
        assert!(Tableau::new(vec![vec![1, 3], vec![4, 2]]).is_err());
        assert!(Tableau::new(vec![vec![1, 2], vec![2, 4]]).is_err());
        assert!(Tableau::new(vec![vec![1, 2], vec![3]]).is_err());
        let parsed: Tableau = serde_json::from_str("[[1,3],[2,4]]").unwrap();
        assert_eq!(serde_json::to_string(&parsed).unwrap(), "[[1,3],[2,4]]");
        assert!(serde_json::from_str::<Tableau>("[[2,1],[3,4]]").is_err());
    }

    #[test]
    fn genus_four_tableaux_to_paths() {
        let p = params(4, 1, 3);
        let t1 = Tableau::new(vec![vec![1, 3], vec![2, 4]]).unwrap();
        let t2 = Tableau::new(vec![vec![1, 2], vec![3, 4]]).unwrap();
        let path1 = tableau_to_path(&p, &t1).unwrap();
        let path2 = tableau_to_path(&p, &t2).unwrap();
        assert_eq!(path1.scalar_sequence().unwrap(), vec![1, 2, 3, 2, 1]);
        assert_eq!(path2.scalar_sequence().unwrap(), vec![1, 2, 1, 2, 1]);
        assert_eq!(path_to_tableau(&p, &path1).unwrap(), t1);
        assert_eq!(path_to_tableau(&p, &path2).unwrap(), t2);
        assert!(tableau_to_path(&params(12, 3, 12), &t1).is_err());
    }

    #[test]
    fn path_to_divisor_for_first_example() {
        let graph = ChainGraph::standard_generic(4).unwrap();
        let p = params(4, 1, 3);
        let t1 = Tableau::new(vec![vec![1, 3], vec![2, 4]]).unwrap();
        let path = tableau_to_path(&p, &t1).unwrap();
        let d = path_to_divisor(&graph, &path).unwrap();
        // m = 1, L = 7: x_1 = 2m, x_2 = 3m
        let data = to_reduced_data(&graph, &d).unwrap();
        assert_eq!(data.d0, 1);
        assert_eq!(data.x, vec![integer(2), integer(3), integer(0), integer(0)]);
        assert_eq!(path_of(&graph, &d, 1).unwrap(), path);
    }

    #[test]
    fn rejects_lingering_paths() {
        let graph = ChainGraph::standard_generic(2).unwrap();
        let path = LatticePath::from_steps(vec![2], vec![Step::Linger, Step::Down]).unwrap();
        assert!(matches!(
            path_to_divisor(&graph, &path),
            Err(Error::InvalidPath(_))
        ));
        assert!(path_to_tableau(&params(2, 1, 2), &path).is_err());
    }

    #[test]
    fn enumerate_small_cases() {
        let g2 = ChainGraph::standard_generic(2).unwrap();
        let classes = enumerate_classes(&g2, &params(2, 1, 2)).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0], reduce(&g2, &canonical_divisor(&g2), 0).unwrap());
        let g4 = ChainGraph::standard_generic(4).unwrap();
        assert_eq!(enumerate_classes(&g4, &params(4, 1, 3)).unwrap().len(), 2);
        assert!(matches!(
            enumerate_classes(&g4, &params(4, 1, 4)),
            Err(Error::RhoNotZero(2))
        ));
    }

    #[test]
    fn witness_examples() {
        let g2 = ChainGraph::standard_generic(2).unwrap();
        let e = noether_witness(&g2, &Divisor::zero(), 1).unwrap();
        assert_eq!(e, Divisor::vertex(0, 1));
        let e = noether_witness(&g2, &Divisor::vertex(0, 2), 1).unwrap();
        assert_eq!(e, Divisor::vertex(2, 1));
        let outcome = brill_response(&g2, &Divisor::vertex(0, 2), &e).unwrap();
        assert!(!outcome.brill_wins());
        assert!(matches!(
            noether_witness(&g2, &canonical_divisor(&g2), 1),
            Err(Error::RankAtLeast(1))
        ));
    }

    #[test]
    fn brill_answers() {
        let g4 = ChainGraph::standard_generic(4).unwrap();
        let d = enumerate_classes(&g4, &params(4, 1, 3)).unwrap().remove(0);
        assert!(has_rank_at_least(&g4, &d, 1).unwrap());
        let outcome = brill_response(&g4, &d, &Divisor::vertex(4, 1)).unwrap();
        assert!(outcome.brill_wins());
        let outcome = brill_response(&g4, &d, &Divisor::zero()).unwrap();
        assert_eq!(outcome, GameOutcome::BrillWins(d.clone()));
        assert!(matches!(
            brill_response(&g4, &d, &Divisor::vertex(1, -1)),
            Err(Error::NotEffective)
        ));
    }
}
