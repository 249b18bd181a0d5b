//! Dense linear-programming core.
//!
//! Problems are stated as
//!
//! ```text
//! minimize    objective . x
//! subject to  eq_matrix   x  = eq_rhs
//!             ineq_matrix x <= ineq_rhs
//!             lower <= x <= upper
//! ```
//!
//! where `lower` may be `f64::NEG_INFINITY` and `upper` may be `f64::INFINITY`.
//! [`solve`] runs a two-phase primal simplex on a dense tableau with Bland's
//! rule, so results are deterministic and degenerate problems cannot cycle.

mod face;
mod linf;
mod simplex;

pub use face::{is_unique, optimal_face_range, FaceProbe, Uniqueness};
pub use linf::{minimize_linf_residual, LinfResidual, SignConstraint};
pub use simplex::{solve, solve_with};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Primal feasibility tolerance.
pub const FEASIBILITY_TOL: f64 = 1e-8;
/// Reduced-cost tolerance used for the optimality test.
pub const REDUCED_COST_TOL: f64 = 1e-8;
/// Width above which an optimal-face range counts as non-degenerate.
pub const UNIQUENESS_TOL: f64 = 1e-7;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LpError {
    #[error("objective has {objective} entries but bounds describe {bounds} variables")]
    BoundsLength { objective: usize, bounds: usize },
    #[error("{kind} row {row} has {found} coefficients, expected {expected}")]
    RowLength {
        kind: &'static str,
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("{kind} matrix has {rows} rows but {rhs} right-hand-side entries")]
    RhsLength {
        kind: &'static str,
        rows: usize,
        rhs: usize,
    },
    #[error("variable {var} has lower bound {lower} above upper bound {upper}")]
    InvertedBounds { var: usize, lower: f64, upper: f64 },
    #[error("NaN in linear program data")]
    NotANumber,
    #[error("variable index {var} out of range for {vars} variables")]
    VariableIndex { var: usize, vars: usize },
    #[error("simplex iteration limit {limit} exceeded")]
    IterationLimit { limit: usize },
    #[error("expected an optimal solution, solver reported {0:?}")]
    NotOptimal(LpStatus),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub eq_matrix: Vec<Vec<f64>>,
    pub eq_rhs: Vec<f64>,
    pub ineq_matrix: Vec<Vec<f64>>,
    pub ineq_rhs: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl LinearProgram {
    /// A program over `objective.len()` nonnegative variables with no rows.
    pub fn new(objective: Vec<f64>) -> Self {
        let n = objective.len();
        Self {
            objective,
            eq_matrix: Vec::new(),
            eq_rhs: Vec::new(),
            ineq_matrix: Vec::new(),
            ineq_rhs: Vec::new(),
            lower: vec![0.0; n],
            upper: vec![f64::INFINITY; n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn with_eq(mut self, row: Vec<f64>, rhs: f64) -> Self {
        self.eq_matrix.push(row);
        self.eq_rhs.push(rhs);
        self
    }

    pub fn with_le(mut self, row: Vec<f64>, rhs: f64) -> Self {
        self.ineq_matrix.push(row);
        self.ineq_rhs.push(rhs);
        self
    }

    /// Adds `row . x >= rhs` as the negated `<=` row.
    pub fn with_ge(self, row: Vec<f64>, rhs: f64) -> Self {
        let neg = row.into_iter().map(|a| -a).collect();
        self.with_le(neg, -rhs)
    }

    pub fn with_bounds(mut self, var: usize, lower: f64, upper: f64) -> Self {
        self.lower[var] = lower;
        self.upper[var] = upper;
        self
    }

    pub fn validate(&self) -> Result<(), LpError> {
        let n = self.num_vars();
        if self.lower.len() != n || self.upper.len() != n {
            return Err(LpError::BoundsLength {
                objective: n,
                bounds: self.lower.len().min(self.upper.len()),
            });
        }
        for (kind, matrix, rhs) in [
            ("equality", &self.eq_matrix, &self.eq_rhs),
            ("inequality", &self.ineq_matrix, &self.ineq_rhs),
        ] {
            if matrix.len() != rhs.len() {
                return Err(LpError::RhsLength {
                    kind,
                    rows: matrix.len(),
                    rhs: rhs.len(),
                });
            }
            for (row, coeffs) in matrix.iter().enumerate() {
                if coeffs.len() != n {
                    return Err(LpError::RowLength {
                        kind,
                        row,
                        found: coeffs.len(),
                        expected: n,
                    });
                }
                if coeffs.iter().any(|a| !a.is_finite()) {
                    return Err(LpError::NotANumber);
                }
            }
            if rhs.iter().any(|r| !r.is_finite()) {
                return Err(LpError::NotANumber);
            }
        }
        if self.objective.iter().any(|c| !c.is_finite()) {
            return Err(LpError::NotANumber);
        }
        for var in 0..n {
            let (lo, hi) = (self.lower[var], self.upper[var]);
            if lo.is_nan() || hi.is_nan() {
                return Err(LpError::NotANumber);
            }
            if lo > hi || lo == f64::INFINITY || hi == f64::NEG_INFINITY {
                return Err(LpError::InvertedBounds {
                    var,
                    lower: lo,
                    upper: hi,
                });
            }
        }
        Ok(())
    }

    pub fn objective_value(&self, x: &[f64]) -> f64 {
        dot(&self.objective, x)
    }

    /// Largest violation of any row or bound at `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let mut worst = 0.0f64;
        for (row, rhs) in self.eq_matrix.iter().zip(&self.eq_rhs) {
            worst = worst.max((dot(row, x) - rhs).abs());
        }
        for (row, rhs) in self.ineq_matrix.iter().zip(&self.ineq_rhs) {
            worst = worst.max(dot(row, x) - rhs);
        }
        for (j, &v) in x.iter().enumerate() {
            worst = worst.max(self.lower[j] - v).max(v - self.upper[j]);
        }
        worst
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Primal point in the caller's variables. Empty unless `Optimal`.
    pub x: Vec<f64>,
    pub value: f64,
    /// Basic columns of the final tableau, one per surviving row.
    /// Indices refer to the solver's internal standard-form columns.
    pub basis: Vec<usize>,
    /// Reduced costs of the internal standard-form columns at termination.
    pub reduced_costs: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    pub fn require_optimal(self) -> Result<Self, LpError> {
        match self.status {
            LpStatus::Optimal => Ok(self),
            other => Err(LpError::NotOptimal(other)),
        }
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
