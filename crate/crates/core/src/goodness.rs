//! Verifiable goodness quantities of `(A', c)`.
//!
//! The certificate chain is `gamma_hat(s) <= eta_s <= s * eta_1`, where
//! `eta_1 = max_j eta^j` and each `eta^j` is one small infinity-norm LP over
//! a dual vector `q` with `q[..m] >= 0`, `q[m..] <= 0` and `||q||_inf <= beta`.
//! A sparsity level `s` is certified when `s * eta_1 < min(c) / 2`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::instance::{StandardForm, Weights, ZERO_TOL};
use crate::lp::{self, minimize_linf_residual, LinearProgram, LpError, SignConstraint};

/// Strict comparisons against the threshold must clear it by this much.
pub const THRESHOLD_GUARD: f64 = 1e-10;
/// Largest number of support patterns `gamma_hat_exact` will enumerate.
pub const SUBSET_LIMIT: u128 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GoodnessError {
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("column index {j} out of range for {n} columns")]
    ColumnIndex { j: usize, n: usize },
    #[error("weights have {found} entries, instance has {expected} columns")]
    WeightLength { found: usize, expected: usize },
    #[error("beta must be positive (got {0})")]
    Beta(f64),
    #[error("sparsity {s} outside 0..={n}")]
    Sparsity { s: usize, n: usize },
    #[error("{subsets} support patterns exceed the enumeration limit")]
    EnumerationLimit { subsets: u128 },
    #[error("negative entry {value} at index {index}")]
    NegativeEntry { index: usize, value: f64 },
}

/// Optimal `q_j` of one column subproblem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualWitness {
    pub q: Vec<f64>,
    pub achieved_residual: f64,
}

impl DualWitness {
    /// Sign pattern and box membership at tolerance `tol`.
    pub fn satisfies(&self, m: usize, beta: f64, tol: f64) -> bool {
        self.q.iter().enumerate().all(|(l, &v)| {
            let signed = if l < m { v >= -tol } else { v <= tol };
            signed && v.abs() <= beta + tol
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GoodnessReport {
    /// Default-rule radius for these weights.
    pub beta_bar: f64,
    /// Radius the subproblems were solved with.
    pub beta_used: f64,
    pub eta_per_column: Vec<f64>,
    pub eta1: f64,
    pub s_star: usize,
    /// Sparsity level the verdict was evaluated at.
    pub s: usize,
    /// `s * eta1`.
    pub eta_s_bound: f64,
    pub gamma_hat: f64,
    /// `min(c) / 2`.
    pub threshold: f64,
    pub certified: bool,
    pub witnesses: Vec<DualWitness>,
}

fn check_weights(sf: &StandardForm, c: &Weights) -> Result<(), GoodnessError> {
    if c.len() != sf.n {
        return Err(GoodnessError::WeightLength {
            found: c.len(),
            expected: sf.n,
        });
    }
    Ok(())
}

fn check_beta(beta: f64) -> Result<(), GoodnessError> {
    if beta > 0.0 {
        Ok(())
    } else {
        Err(GoodnessError::Beta(beta))
    }
}

/// Largest column 1-norm of `A1`.
pub fn rho(sf: &StandardForm) -> f64 {
    sf.column_l1_norms().into_iter().fold(0.0, f64::max)
}

/// `(max c + min c / 2) / rho`.
pub fn beta_bar(sf: &StandardForm, c: &Weights) -> f64 {
    (c.max() + 0.5 * c.min()) / rho(sf)
}

pub fn threshold(c: &Weights) -> f64 {
    0.5 * c.min()
}

pub fn below_threshold(value: f64, threshold: f64) -> bool {
    value < threshold - THRESHOLD_GUARD
}

fn dual_signs(sf: &StandardForm) -> Vec<SignConstraint> {
    (0..sf.m + sf.n)
        .map(|l| {
            if l < sf.m {
                SignConstraint::NonNegative
            } else {
                SignConstraint::NonPositive
            }
        })
        .collect()
}

/// `eta^j = min ||c_j e_j - A1^T q||_inf` over the dual box. `j` is 0-based.
pub fn eta_j(
    sf: &StandardForm,
    c: &Weights,
    beta: f64,
    j: usize,
) -> Result<(f64, DualWitness), GoodnessError> {
    check_weights(sf, c)?;
    check_beta(beta)?;
    if j >= sf.n {
        return Err(GoodnessError::ColumnIndex { j, n: sf.n });
    }
    let mut target = vec![0.0; sf.n];
    target[j] = c.as_slice()[j];
    let r = minimize_linf_residual(&sf.a1, &target, &dual_signs(sf), beta)?;
    let t = r.t.max(0.0);
    Ok((
        t,
        DualWitness {
            q: r.q,
            achieved_residual: t,
        },
    ))
}

/// All column subproblems, in column order.
pub fn eta_columns(
    sf: &StandardForm,
    c: &Weights,
    beta: f64,
) -> Result<Vec<(f64, DualWitness)>, GoodnessError> {
    (0..sf.n).map(|j| eta_j(sf, c, beta, j)).collect()
}

pub fn eta_1k(sf: &StandardForm, c: &Weights, beta: f64) -> Result<f64, GoodnessError> {
    Ok(eta_columns(sf, c, beta)?
        .into_iter()
        .map(|(v, _)| v)
        .fold(0.0, f64::max))
}

/// Upper bound `s * eta_1` on `eta_s`.
pub fn eta_sk_bound(
    sf: &StandardForm,
    c: &Weights,
    beta: f64,
    s: usize,
) -> Result<f64, GoodnessError> {
    Ok(s as f64 * eta_1k(sf, c, beta)?)
}

/// `floor(threshold / eta1)` clamped to `0..=n`; `n` when `eta1` vanishes.
pub fn s_star_from(eta1: f64, threshold: f64, n: usize) -> usize {
    if eta1 <= ZERO_TOL {
        return n;
    }
    let ratio = (threshold / eta1).floor();
    if ratio >= n as f64 {
        n
    } else {
        ratio.max(0.0) as usize
    }
}

pub fn s_star(sf: &StandardForm, c: &Weights, beta: f64) -> Result<usize, GoodnessError> {
    Ok(s_star_from(eta_1k(sf, c, beta)?, threshold(c), sf.n))
}

/// Sum of the `s` largest entries of a nonnegative vector.
pub fn partial_sum_norm(v: &[f64], s: usize) -> Result<f64, GoodnessError> {
    if let Some((index, &value)) = v.iter().enumerate().find(|(_, x)| **x < 0.0) {
        return Err(GoodnessError::NegativeEntry { index, value });
    }
    if s > v.len() {
        return Err(GoodnessError::Sparsity { s, n: v.len() });
    }
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    Ok(sorted[..s].iter().sum())
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Advances `idx` to the next k-subset of `0..n` in lexicographic order.
fn next_subset(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for t in i + 1..k {
                idx[t] = idx[t - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Inner maximization of `sum_{i in S} c_i x_i - beta ||A1 x||_1` over the
/// simplex `x >= 0, sum x <= 1`. With `beta = inf` the penalty becomes
/// `A1 x = 0`.
fn gamma_hat_support(
    sf: &StandardForm,
    c: &Weights,
    beta: f64,
    support: &[usize],
) -> Result<f64, GoodnessError> {
    let (n, rows) = (sf.n, sf.a1.len());
    let lp = if beta.is_infinite() {
        let mut objective = vec![0.0; n];
        for &i in support {
            objective[i] = -c.as_slice()[i];
        }
        let mut lp = LinearProgram::new(objective).with_le(vec![1.0; n], 1.0);
        for row in &sf.a1 {
            lp = lp.with_eq(row.clone(), 0.0);
        }
        lp
    } else {
        // variables (x, r) with -r <= A1 x <= r
        let mut objective = vec![0.0; n + rows];
        for &i in support {
            objective[i] = -c.as_slice()[i];
        }
        for v in &mut objective[n..] {
            *v = beta;
        }
        let mut simplex_row = vec![0.0; n + rows];
        simplex_row[..n].fill(1.0);
        let mut lp = LinearProgram::new(objective).with_le(simplex_row, 1.0);
        for (l, row) in sf.a1.iter().enumerate() {
            let mut up = vec![0.0; n + rows];
            up[..n].copy_from_slice(row);
            up[n + l] = -1.0;
            let mut down: Vec<f64> = up[..n].iter().map(|a| -a).collect();
            down.resize(n + rows, 0.0);
            down[n + l] = -1.0;
            lp = lp.with_le(up, 0.0).with_le(down, 0.0);
        }
        lp
    };
    let sol = lp::solve(&lp)?.require_optimal()?;
    Ok((-sol.value).max(0.0))
}

/// `gamma_hat` by enumerating the binary vertices of the capped simplex of
/// support weights, each with exactly `min(s, n)` ones.
pub fn gamma_hat_exact(
    sf: &StandardForm,
    c: &Weights,
    beta: f64,
    s: usize,
) -> Result<f64, GoodnessError> {
    check_weights(sf, c)?;
    if beta.is_nan() || beta < 0.0 {
        return Err(GoodnessError::Beta(beta));
    }
    if s > sf.n {
        return Err(GoodnessError::Sparsity { s, n: sf.n });
    }
    let k = s.min(sf.n);
    if k == 0 {
        return Ok(0.0);
    }
    let subsets = binomial(sf.n, k);
    if subsets > SUBSET_LIMIT {
        return Err(GoodnessError::EnumerationLimit { subsets });
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut best = 0.0f64;
    loop {
        best = best.max(gamma_hat_support(sf, c, beta, &idx)?);
        if !next_subset(&mut idx, sf.n) {
            break;
        }
    }
    Ok(best)
}

/// `max(0, max_j (c_j - beta ||A1 e_j||_1))`, valid for `s >= 1` because
/// `A1 >= 0` makes `||A1 x||_1` linear on `x >= 0`.
pub fn gamma_hat_closed_form(sf: &StandardForm, c: &Weights, beta: f64) -> f64 {
    if beta.is_infinite() {
        // A1 = [A; I] has full column rank, so A1 x = 0 forces x = 0.
        return 0.0;
    }
    sf.column_l1_norms()
        .iter()
        .zip(c.as_slice())
        .map(|(norm, cj)| cj - beta * norm)
        .fold(0.0, f64::max)
}

/// Evaluates the sufficient condition `s * eta1 < min(c) / 2` at radius `beta`.
pub fn sufficient_verdict(
    sf: &StandardForm,
    c: &Weights,
    beta: f64,
    s: usize,
) -> Result<GoodnessReport, GoodnessError> {
    if s > sf.n {
        return Err(GoodnessError::Sparsity { s, n: sf.n });
    }
    build_report(sf, c, beta, Some(s))
}

/// Like [`sufficient_verdict`] with `s` set to the computed `s*`.
pub fn verdict_at_s_star(
    sf: &StandardForm,
    c: &Weights,
    beta: f64,
) -> Result<GoodnessReport, GoodnessError> {
    build_report(sf, c, beta, None)
}

fn build_report(
    sf: &StandardForm,
    c: &Weights,
    beta: f64,
    s: Option<usize>,
) -> Result<GoodnessReport, GoodnessError> {
    check_weights(sf, c)?;
    check_beta(beta)?;
    let columns = eta_columns(sf, c, beta)?;
    let eta_per_column: Vec<f64> = columns.iter().map(|(v, _)| *v).collect();
    let eta1 = eta_per_column.iter().copied().fold(0.0, f64::max);
    let thr = threshold(c);
    let s_star = s_star_from(eta1, thr, sf.n);
    let s = s.unwrap_or(s_star);
    let eta_s_bound = s as f64 * eta1;
    let gamma_hat = match gamma_hat_exact(sf, c, beta, s) {
        Ok(v) => v,
        Err(GoodnessError::EnumerationLimit { .. }) => gamma_hat_closed_form(sf, c, beta),
        Err(e) => return Err(e),
    };
    Ok(GoodnessReport {
        beta_bar: beta_bar(sf, c),
        beta_used: beta,
        eta_per_column,
        eta1,
        s_star,
        s,
        eta_s_bound,
        gamma_hat,
        threshold: thr,
        certified: below_threshold(eta_s_bound, thr),
        witnesses: columns.into_iter().map(|(_, w)| w).collect(),
    })
}
