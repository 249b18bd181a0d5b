//! Nonnegative 0-1 programs `min sum(x) s.t. Ax >= b, x in {0,1}^n`, their
//! slack reformulation, and the maximum-independent-set front end.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

/// Absolute tolerance below which an LP coordinate counts as zero.
pub const ZERO_TOL: f64 = 1e-9;
/// Slack allowed when checking that a point lies in `[0, 1]`.
pub const UNIT_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InstanceError {
    #[error("instance needs at least one row and one column (got {rows}x{cols})")]
    Empty { rows: usize, cols: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("right-hand side has {found} entries, expected {expected}")]
    RhsLength { found: usize, expected: usize },
    #[error("negative entry {value} at A[{row}][{col}]")]
    NegativeEntry { row: usize, col: usize, value: f64 },
    #[error("non-finite value in instance data")]
    NotFinite,
    #[error("weight {value} at index {index} is outside (0, 1]")]
    WeightOutOfRange { index: usize, value: f64 },
    #[error("vector has {found} entries, expected {expected}")]
    Length { found: usize, expected: usize },
    #[error("entry {value} at index {index} is outside [0, 1]")]
    OutOfUnitInterval { index: usize, value: f64 },
    #[error("entry {value} at index {index} is not binary")]
    NotBinary { index: usize, value: u8 },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range 1..={count}")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("graph has no edges")]
    NoEdges,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("line {line}: expected {expected} numbers, found {found}")]
    DimensionMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: negative entry {value}")]
    NegativeEntry { line: usize, value: f64 },
    #[error("line {line}: non-numeric token `{token}`")]
    NotANumber { line: usize, token: String },
    #[error("line {line}: weight {value} outside (0, 1]")]
    WeightOutOfRange { line: usize, value: f64 },
    #[error("line {line}: expected `{expected}`")]
    Malformed { line: usize, expected: &'static str },
    #[error("line {line}: unexpected content after instance")]
    TrailingContent { line: usize },
    #[error("unexpected end of input, expected {expected}")]
    UnexpectedEnd { expected: &'static str },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: InstanceError,
    },
}

/// The data `(A, b)` of a covering-type 0-1 program with `A >= 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroOneInstance {
    a: Vec<Vec<f64>>,
    b: Vec<f64>,
}

impl ZeroOneInstance {
    pub fn new(a: Vec<Vec<f64>>, b: Vec<f64>) -> Result<Self, InstanceError> {
        let rows = a.len();
        let cols = a.first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 {
            return Err(InstanceError::Empty { rows, cols });
        }
        for (row, coeffs) in a.iter().enumerate() {
            if coeffs.len() != cols {
                return Err(InstanceError::RaggedRow {
                    row,
                    found: coeffs.len(),
                    expected: cols,
                });
            }
            for (col, &value) in coeffs.iter().enumerate() {
                if !value.is_finite() {
                    return Err(InstanceError::NotFinite);
                }
                if value < 0.0 {
                    return Err(InstanceError::NegativeEntry { row, col, value });
                }
            }
        }
        if b.len() != rows {
            return Err(InstanceError::RhsLength {
                found: b.len(),
                expected: rows,
            });
        }
        if b.iter().any(|v| !v.is_finite()) {
            return Err(InstanceError::NotFinite);
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &[Vec<f64>] {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    /// `m`, the number of constraints.
    pub fn rows(&self) -> usize {
        self.a.len()
    }

    /// `n`, the number of binary variables.
    pub fn cols(&self) -> usize {
        self.a[0].len()
    }

    pub fn is_feasible(&self, x: &[u8]) -> bool {
        self.a.iter().zip(&self.b).all(|(row, &rhs)| {
            let lhs: f64 = row.iter().zip(x).map(|(a, &v)| a * f64::from(v)).sum();
            lhs >= rhs - ZERO_TOL
        })
    }

    /// Hex SHA-256 of the canonical text encoding.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(write_instance(self, None).as_bytes()))
    }
}

/// Objective weights `c` with every entry in `(0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Weights(Vec<f64>);

impl Weights {
    pub fn new(c: Vec<f64>) -> Result<Self, InstanceError> {
        for (index, &value) in c.iter().enumerate() {
            if !(value > 0.0 && value <= 1.0) {
                return Err(InstanceError::WeightOutOfRange { index, value });
            }
        }
        Ok(Self(c))
    }

    pub fn ones(n: usize) -> Self {
        Self(vec![1.0; n])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.0.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.0.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

impl TryFrom<Vec<f64>> for Weights {
    type Error = InstanceError;

    fn try_from(c: Vec<f64>) -> Result<Self, Self::Error> {
        Self::new(c)
    }
}

impl From<Weights> for Vec<f64> {
    fn from(w: Weights) -> Self {
        w.0
    }
}

/// `A1 x + A2 y = b'` with `A1 = [A; I]`, `A2 = diag(-I_m, I_n)`, `b' = [b; 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardForm {
    pub m: usize,
    pub n: usize,
    pub a1: Vec<Vec<f64>>,
    pub a2: Vec<Vec<f64>>,
    pub bprime: Vec<f64>,
}

impl StandardForm {
    /// `||A1 e_j||_1` for each column.
    pub fn column_l1_norms(&self) -> Vec<f64> {
        (0..self.n)
            .map(|j| self.a1.iter().map(|row| row[j].abs()).sum())
            .collect()
    }
}

pub fn to_standard_form(inst: &ZeroOneInstance) -> StandardForm {
    let (m, n) = (inst.rows(), inst.cols());
    let mut a1 = inst.a.clone();
    for i in 0..n {
        let mut row = vec![0.0; n];
        row[i] = 1.0;
        a1.push(row);
    }
    let a2 = (0..m + n)
        .map(|i| {
            let mut row = vec![0.0; m + n];
            row[i] = if i < m { -1.0 } else { 1.0 };
            row
        })
        .collect();
    let mut bprime = inst.b.clone();
    bprime.extend(std::iter::repeat_n(1.0, n));
    StandardForm {
        m,
        n,
        a1,
        a2,
        bprime,
    }
}

/// An instance file with its optional weight line.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedInstance {
    pub instance: ZeroOneInstance,
    pub weights: Option<Weights>,
}

fn parse_number(token: &str, line: usize) -> Result<f64, ParseError> {
    let bad = || ParseError::NotANumber {
        line,
        token: token.to_string(),
    };
    let value = match token.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.parse().map_err(|_| bad())?;
            let q: f64 = q.parse().map_err(|_| bad())?;
            if q == 0.0 {
                return Err(bad());
            }
            p / q
        }
        None => token.parse().map_err(|_| bad())?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(bad())
    }
}

/// Parses the line-oriented instance format: `m n`, then `m` rows of `A`,
/// one line of `b`, and optionally `c w1 .. wn`. `#` starts a comment.
pub fn parse_instance(text: &str) -> Result<ParsedInstance, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let numbers = |line: usize, body: &str| -> Result<Vec<f64>, ParseError> {
        body.split_whitespace()
            .map(|t| parse_number(t, line))
            .collect()
    };
    let expect_len = |line: usize, v: &[f64], expected: usize| {
        if v.len() == expected {
            Ok(())
        } else {
            Err(ParseError::DimensionMismatch {
                line,
                expected,
                found: v.len(),
            })
        }
    };

    let (line, header) = lines.next().ok_or(ParseError::UnexpectedEnd {
        expected: "header `m n`",
    })?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| ParseError::Malformed {
            line,
            expected: "m n",
        })?;
    let [m, n] = dims[..] else {
        return Err(ParseError::Malformed {
            line,
            expected: "m n",
        });
    };
    if m == 0 || n == 0 {
        return Err(ParseError::Invalid {
            line,
            source: InstanceError::Empty { rows: m, cols: n },
        });
    }

    let mut a = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, body) = lines.next().ok_or(ParseError::UnexpectedEnd {
            expected: "a row of A",
        })?;
        let row = numbers(line, body)?;
        expect_len(line, &row, n)?;
        if let Some(&value) = row.iter().find(|v| **v < 0.0) {
            return Err(ParseError::NegativeEntry { line, value });
        }
        a.push(row);
    }
    let (b_line, body) = lines.next().ok_or(ParseError::UnexpectedEnd {
        expected: "the right-hand side b",
    })?;
    let b = numbers(b_line, body)?;
    expect_len(b_line, &b, m)?;

    let mut weights = None;
    if let Some((line, body)) = lines.next() {
        let Some(rest) = body.strip_prefix('c').filter(|r| r.is_empty() || r.starts_with(char::is_whitespace)) else {
            return Err(ParseError::TrailingContent { line });
        };
        let c = numbers(line, rest)?;
        expect_len(line, &c, n)?;
        if let Some(&value) = c.iter().find(|v| !(**v > 0.0 && **v <= 1.0)) {
            return Err(ParseError::WeightOutOfRange { line, value });
        }
        weights = Some(Weights(c));
        if let Some((line, _)) = lines.next() {
            return Err(ParseError::TrailingContent { line });
        }
    }

    let instance =
        ZeroOneInstance::new(a, b).map_err(|source| ParseError::Invalid { line: b_line, source })?;
    Ok(ParsedInstance { instance, weights })
}

/// Serializes in the format [`parse_instance`] reads. Uses shortest
/// round-trip float formatting.
pub fn write_instance(inst: &ZeroOneInstance, weights: Option<&Weights>) -> String {
    let join = |v: &[f64]| {
        v.iter()
            .map(|x| format!("{x}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", inst.rows(), inst.cols());
    for row in &inst.a {
        let _ = writeln!(out, "{}", join(row));
    }
    let _ = writeln!(out, "{}", join(&inst.b));
    if let Some(c) = weights {
        let _ = writeln!(out, "c {}", join(c.as_slice()));
    }
    out
}

/// Graph data kept alongside the complemented MIS instance.
#[derive(Debug, Clone, PartialEq)]
pub struct MisContext {
    pub vertex_count: usize,
    /// Edges as 1-indexed `(u, v)` with `u < v`.
    pub edges: Vec<(usize, usize)>,
    /// `|E| x n` edge-vertex incidence matrix.
    pub incidence: Vec<Vec<f64>>,
}

impl MisContext {
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self, InstanceError> {
        let mut seen = BTreeSet::new();
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > vertex_count {
                    return Err(InstanceError::VertexOutOfRange {
                        vertex: w,
                        count: vertex_count,
                    });
                }
            }
            if u == v {
                return Err(InstanceError::SelfLoop(u));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(InstanceError::DuplicateEdge(e.0, e.1));
            }
            normalized.push(e);
        }
        let incidence = normalized
            .iter()
            .map(|&(u, v)| {
                let mut row = vec![0.0; vertex_count];
                row[u - 1] = 1.0;
                row[v - 1] = 1.0;
                row
            })
            .collect();
        Ok(Self {
            vertex_count,
            edges: normalized,
            incidence,
        })
    }

    pub fn is_independent(&self, x: &[u8]) -> bool {
        self.edges
            .iter()
            .all(|&(u, v)| !(x[u - 1] == 1 && x[v - 1] == 1))
    }
}

/// Builds the complemented vertex-cover program `min sum(x~) s.t. M x~ >= 1`
/// from a graph, where `M` is the edge-vertex incidence matrix.
pub fn from_independent_set(
    vertex_count: usize,
    edges: &[(usize, usize)],
) -> Result<(ZeroOneInstance, MisContext), InstanceError> {
    let ctx = MisContext::new(vertex_count, edges)?;
    if ctx.edges.is_empty() {
        return Err(InstanceError::NoEdges);
    }
    let inst = ZeroOneInstance::new(ctx.incidence.clone(), vec![1.0; ctx.edges.len()])?;
    Ok((inst, ctx))
}

/// Maps a complemented solution back to an independent-set indicator.
pub fn mis_recover(x_tilde: &[u8], ctx: &MisContext) -> Result<Vec<u8>, InstanceError> {
    if x_tilde.len() != ctx.vertex_count {
        return Err(InstanceError::Length {
            found: x_tilde.len(),
            expected: ctx.vertex_count,
        });
    }
    x_tilde
        .iter()
        .enumerate()
        .map(|(index, &v)| match v {
            0 | 1 => Ok(1 - v),
            value => Err(InstanceError::NotBinary { index, value }),
        })
        .collect()
}

/// Parses `p <vertex_count>` followed by `e u v` lines.
pub fn parse_graph(text: &str) -> Result<(usize, Vec<(usize, usize)>), ParseError> {
    let mut count = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let int = |t: &str| {
            t.parse::<usize>().map_err(|_| ParseError::NotANumber {
                line,
                token: t.to_string(),
            })
        };
        match tokens[..] {
            ["p", n] if count.is_none() => count = Some(int(n)?),
            ["e", u, v] if count.is_some() => edges.push((int(u)?, int(v)?)),
            _ => {
                return Err(ParseError::Malformed {
                    line,
                    expected: if count.is_none() {
                        "p <vertex_count>"
                    } else {
                        "e <u> <v>"
                    },
                })
            }
        }
    }
    let count = count.ok_or(ParseError::UnexpectedEnd {
        expected: "p <vertex_count>",
    })?;
    Ok((count, edges))
}

/// Seeded random instance with entries in `{0..=max_entry}`, at least one
/// nonzero per column, and `b` on a half-integer grid in `(0, row sum]` so
/// that `x = 1` is always feasible. Zero rows get `b_i = 0`.
pub fn random_instance(m: usize, n: usize, seed: u64, max_entry: u32) -> ZeroOneInstance {
    assert!(m >= 1 && n >= 1 && max_entry >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a: Vec<Vec<f64>> = (0..m)
        .map(|_| {
            (0..n)
                .map(|_| f64::from(rng.random_range(0..=max_entry)))
                .collect()
        })
        .collect();
    for j in 0..n {
        if a.iter().all(|row| row[j] == 0.0) {
            let i = rng.random_range(0..m);
            a[i][j] = f64::from(rng.random_range(1..=max_entry));
        }
    }
    let b = a
        .iter()
        .map(|row| {
            let sum: f64 = row.iter().sum();
            if sum == 0.0 {
                0.0
            } else {
                // sum is a nonnegative integer here
                let halves = rng.random_range(1..=(2.0 * sum) as u64);
                halves as f64 / 2.0
            }
        })
        .collect();
    ZeroOneInstance::new(a, b).expect("generator produces valid instances")
}

pub fn l0_norm(x: &[f64]) -> usize {
    x.iter().filter(|v| v.abs() > ZERO_TOL).count()
}

/// Rounds a point of `[0, 1]^n` up: 1 where `x_i > ZERO_TOL`, else 0.
pub fn ceil_recover(x: &[f64]) -> Result<Vec<u8>, InstanceError> {
    x.iter()
        .enumerate()
        .map(|(index, &value)| {
            if !(-UNIT_TOL..=1.0 + UNIT_TOL).contains(&value) {
                Err(InstanceError::OutOfUnitInterval { index, value })
            } else {
                Ok(u8::from(value > ZERO_TOL))
            }
        })
        .collect()
}

/// Instances from the worked examples.
pub mod examples {
    use super::ZeroOneInstance;

    pub fn example1() -> ZeroOneInstance {
        ZeroOneInstance::new(
            vec![
                vec![1.0, 2.0, 0.0],
                vec![0.0, 1.0, 1.0],
                vec![1.0, 0.0, 2.0],
            ],
            vec![1.0, 1.0, 1.0],
        )
        .unwrap()
    }

    pub fn example2() -> ZeroOneInstance {
        ZeroOneInstance::new(
            vec![
                vec![1.0, 0.0, 0.0],
                vec![1.0, 1.0, 0.0],
                vec![0.0, 1.0, 1.0],
            ],
            vec![0.0, 1.5, 0.5],
        )
        .unwrap()
    }

    pub fn example3() -> ZeroOneInstance {
        ZeroOneInstance::new(
            vec![
                vec![1.0, 2.0, 0.0],
                vec![0.0, 1.0, 1.0],
                vec![2.0, 0.0, 1.0],
            ],
            vec![0.0, 0.5, 1.0 / 3.0],
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;

    const EX1: &str = "# example 1\n3 3\n1 2 0\n0 1 1\n1 0 2\n1 1 1\n";

    #[test]
    fn parses_example_one() {
        let p = parse_instance(EX1).unwrap();
        assert_eq!(p.instance, examples::example1());
        assert!(p.weights.is_none());
    }

    #[test]
    fn parses_weights_fractions_and_inline_comments() {
        let text = "3 3\n1 0 0\n1 1 0  # row 2\n0 1 1\n0 3/2 0.5\nc 0.5 0.7 0.8\n";
        let p = parse_instance(text).unwrap();
        assert_eq!(p.instance, examples::example2());
        assert_eq!(p.weights.unwrap().as_slice(), &[0.5, 0.7, 0.8]);
    }

    #[test]
    fn degenerate_one_by_one() {
        let p = parse_instance("1 1\n0\n0\n").unwrap();
        assert_eq!(p.instance.a(), &[vec![0.0]]);
        assert_eq!(p.instance.b(), &[0.0]);
    }

    #[test]
    fn parse_errors_name_lines() {
        assert_eq!(
            parse_instance("1 2\n1 -2\n1\n"),
            Err(ParseError::NegativeEntry {
                line: 2,
                value: -2.0
            })
        );
        assert_eq!(
            parse_instance("2 2\n1 2\n1\n1 1\n"),
            Err(ParseError::DimensionMismatch {
                line: 3,
                expected: 2,
                found: 1
            })
        );
        assert!(matches!(
            parse_instance("1 1\nx\n1\n"),
            Err(ParseError::NotANumber { line: 2, .. })
        ));
        assert_eq!(
            parse_instance("1 1\n1\n1\nc 1.5\n"),
            Err(ParseError::WeightOutOfRange {
                line: 4,
                value: 1.5
            })
        );
        assert_eq!(
            parse_instance("1 1\n1\n1\nc 0\n"),
            Err(ParseError::WeightOutOfRange { line: 4, value: 0.0 })
        );
        assert_eq!(
            parse_instance("1 1\n1\n"),
            Err(ParseError::UnexpectedEnd {
                expected: "the right-hand side b"
            })
        );
        assert_eq!(
            parse_instance("1 1\n1\n1\nc 1\n7\n"),
            Err(ParseError::TrailingContent { line: 5 })
        );
        assert!(matches!(
            parse_instance("0 3\n"),
            Err(ParseError::Invalid { line: 1, .. })
        ));
    }

    #[test]
    fn negative_entry_is_rejected_by_constructor() {
        assert!(matches!(
            ZeroOneInstance::new(vec![vec![1.0, -0.5]], vec![1.0]),
            Err(InstanceError::NegativeEntry { row: 0, col: 1, .. })
        ));
    }

    #[test]
    fn standard_form_of_example_one() {
        let sf = to_standard_form(&examples::example1());
        assert_eq!(
            sf.a1,
            vec![
                vec![1.0, 2.0, 0.0],
                vec![0.0, 1.0, 1.0],
                vec![1.0, 0.0, 2.0],
                vec![1.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0],
                vec![0.0, 0.0, 1.0],
            ]
        );
        assert_eq!(sf.bprime, vec![1.0; 6]);
        assert_eq!(sf.a2.len(), 6);
        for (i, row) in sf.a2.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                let expected = match (i == j, i < 3) {
                    (false, _) => 0.0,
                    (true, true) => -1.0,
                    (true, false) => 1.0,
                };
                assert_eq!(v, expected);
            }
        }
    }

    #[test]
    fn standard_form_one_by_one() {
        let inst = ZeroOneInstance::new(vec![vec![2.0]], vec![1.0]).unwrap();
        let sf = to_standard_form(&inst);
        assert_eq!(sf.a1, vec![vec![2.0], vec![1.0]]);
        assert_eq!(sf.a2, vec![vec![-1.0, 0.0], vec![0.0, 1.0]]);
        assert_eq!(sf.bprime, vec![1.0, 1.0]);
    }

    #[test]
    fn triangle_incidence() {
        let (inst, ctx) = from_independent_set(3, &[(1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(
            inst.a(),
            &[
                vec![1.0, 1.0, 0.0],
                vec![1.0, 0.0, 1.0],
                vec![0.0, 1.0, 1.0]
            ]
        );
        assert_eq!(inst.b(), &[1.0, 1.0, 1.0]);
        assert_eq!(ctx.edges.len(), 3);
    }

    #[test]
    fn single_edge() {
        let (inst, _) = from_independent_set(2, &[(2, 1)]).unwrap();
        assert_eq!(inst.a(), &[vec![1.0, 1.0]]);
        assert_eq!(inst.b(), &[1.0]);
    }

    #[test]
    fn graph_errors() {
        assert_eq!(
            from_independent_set(3, &[(2, 2)]).unwrap_err(),
            InstanceError::SelfLoop(2)
        );
        assert_eq!(
            from_independent_set(3, &[(1, 4)]).unwrap_err(),
            InstanceError::VertexOutOfRange { vertex: 4, count: 3 }
        );
        assert_eq!(
            from_independent_set(3, &[(1, 2), (2, 1)]).unwrap_err(),
            InstanceError::DuplicateEdge(1, 2)
        );
        assert_eq!(
            from_independent_set(3, &[]).unwrap_err(),
            InstanceError::NoEdges
        );
    }

    #[test]
    fn path_on_three_vertices_by_enumeration() {
        let (inst, ctx) = from_independent_set(3, &[(1, 2), (2, 3)]).unwrap();
        let mut best = usize::MAX;
        let mut best_x = vec![];
        for mask in 0u32..8 {
            let x: Vec<u8> = (0..3).map(|i| ((mask >> i) & 1) as u8).collect();
            let weight = x.iter().filter(|&&v| v == 1).count();
            if inst.is_feasible(&x) && weight < best {
                best = weight;
                best_x = x;
            }
        }
        assert_eq!(best, 1);
        assert_eq!(best_x, vec![0, 1, 0]);
        let set = mis_recover(&best_x, &ctx).unwrap();
        assert!(ctx.is_independent(&set));
        assert_eq!(set.iter().filter(|&&v| v == 1).count(), 2);
    }

    #[test]
    fn mis_recover_cases() {
        let (_, k3) = from_independent_set(3, &[(1, 2), (1, 3), (2, 3)]).unwrap();
        let set = mis_recover(&[1, 1, 0], &k3).unwrap();
        assert_eq!(set, vec![0, 0, 1]);
        assert!(k3.is_independent(&set));
        assert_eq!(mis_recover(&[1, 1, 1], &k3).unwrap(), vec![0, 0, 0]);
        let empty = MisContext::new(4, &[]).unwrap();
        assert_eq!(mis_recover(&[0; 4], &empty).unwrap(), vec![1; 4]);
        assert_eq!(
            mis_recover(&[0, 2, 0], &k3),
            Err(InstanceError::NotBinary { index: 1, value: 2 })
        );
    }

    #[test]
    fn graph_file_format() {
        let (n, edges) = parse_graph("# triangle\np 3\ne 1 2\ne 1 3\ne 2 3\n").unwrap();
        assert_eq!(n, 3);
        assert_eq!(edges, vec![(1, 2), (1, 3), (2, 3)]);
        assert!(matches!(
            parse_graph("e 1 2\n"),
            Err(ParseError::Malformed { line: 1, .. })
        ));
        assert!(matches!(
            parse_graph("p 3\ne 1 z\n"),
            Err(ParseError::NotANumber { line: 2, .. })
        ));
    }

    #[test]
    fn random_instance_is_deterministic() {
        assert_eq!(random_instance(3, 3, 7, 2), random_instance(3, 3, 7, 2));
        assert_ne!(random_instance(3, 3, 7, 2), random_instance(3, 3, 8, 2));
    }

    #[test]
    fn ceil_recover_cases() {
        assert_eq!(ceil_recover(&[0.0, 0.5, 0.5]).unwrap(), vec![0, 1, 1]);
        assert_eq!(ceil_recover(&[0.0, 0.0, 0.0]).unwrap(), vec![0, 0, 0]);
        assert_eq!(ceil_recover(&[0.2, 0.0, 1.0]).unwrap(), vec![1, 0, 1]);
        assert_eq!(ceil_recover(&[1e-12, 1.0 + 1e-10]).unwrap(), vec![0, 1]);
        assert!(matches!(
            ceil_recover(&[1.5]),
            Err(InstanceError::OutOfUnitInterval { index: 0, .. })
        ));
    }

    #[test]
    fn write_then_parse() {
        let inst = examples::example3();
        let c = Weights::new(vec![0.5, 0.35, 0.3]).unwrap();
        let p = parse_instance(&write_instance(&inst, Some(&c))).unwrap();
        assert_eq!(p.instance, inst);
        assert_eq!(p.weights, Some(c));
    }

    proptest! {
        #[test]
        fn random_instances_are_valid_and_all_ones_feasible(
            m in 1usize..7, n in 1usize..7, seed in any::<u64>(), max_entry in 1u32..4
        ) {
            let inst = random_instance(m, n, seed, max_entry);
            prop_assert!(inst.a().iter().flatten().all(|&v| v >= 0.0));
            prop_assert!(inst.is_feasible(&vec![1; n]));
            for j in 0..n {
                prop_assert!(inst.a().iter().any(|row| row[j] > 0.0));
            }
        }

        #[test]
        fn standard_form_reslices_to_instance(m in 1usize..6, n in 1usize..6, seed in any::<u64>()) {
            let inst = random_instance(m, n, seed, 3);
            let sf = to_standard_form(&inst);
            prop_assert_eq!(&sf.a1[..m], inst.a());
            for i in 0..n {
                for j in 0..n {
                    prop_assert_eq!(sf.a1[m + i][j], if i == j { 1.0 } else { 0.0 });
                }
            }
            prop_assert_eq!(&sf.bprime[..m], inst.b());
            prop_assert!(sf.bprime[m..].iter().all(|&v| v == 1.0));
        }

        #[test]
        fn ceiling_dominates_and_counts_support(
            seed in any::<u64>(),
            x in proptest::collection::vec(prop_oneof![Just(0.0), 0.0f64..=1.0], 1..7),
        ) {
            let inst = random_instance(4, x.len(), seed, 2);
            let up = ceil_recover(&x).unwrap();
            for row in inst.a() {
                let lhs_up: f64 = row.iter().zip(&up).map(|(a, &v)| a * f64::from(v)).sum();
                let lhs: f64 = row.iter().zip(&x).map(|(a, v)| a * v).sum();
                prop_assert!(lhs_up >= lhs - 1e-12);
            }
            prop_assert_eq!(up.iter().map(|&v| v as usize).sum::<usize>(), l0_norm(&x));
        }

        #[test]
        fn incidence_rows_sum_to_two(n in 2usize..8, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges = vec![];
            for u in 1..=n {
                for v in u + 1..=n {
                    if rng.random_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            prop_assume!(!edges.is_empty());
            let (inst, _) = from_independent_set(n, &edges).unwrap();
            for row in inst.a() {
                prop_assert_eq!(row.iter().sum::<f64>(), 2.0);
            }
        }
    }
}
