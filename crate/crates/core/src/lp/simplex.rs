use super::{
    dot, LinearProgram, LpError, LpSolution, LpStatus, FEASIBILITY_TOL, REDUCED_COST_TOL,
};

const PIVOT_TOL: f64 = 1e-9;
const RATIO_TIE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// `None` means 50 * (rows + columns) of the internal tableau.
    pub max_iterations: Option<usize>,
    pub feasibility_tol: f64,
    pub reduced_cost_tol: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            max_iterations: None,
            feasibility_tol: FEASIBILITY_TOL,
            reduced_cost_tol: REDUCED_COST_TOL,
        }
    }
}

pub fn solve(lp: &LinearProgram) -> Result<LpSolution, LpError> {
    solve_with(lp, &SolverOptions::default())
}

/// How an original variable is expressed through nonnegative tableau columns.
#[derive(Debug, Clone, Copy)]
enum VarMap {
    /// x = offset + col
    Shift { col: usize, offset: f64 },
    /// x = offset - col
    Mirror { col: usize, offset: f64 },
    /// x = pos - neg
    Split { pos: usize, neg: usize },
}

impl VarMap {
    fn value(&self, z: &[f64]) -> f64 {
        match *self {
            VarMap::Shift { col, offset } => offset + z[col],
            VarMap::Mirror { col, offset } => offset - z[col],
            VarMap::Split { pos, neg } => z[pos] - z[neg],
        }
    }
}

struct Tableau {
    rows: usize,
    /// Columns excluding the right-hand side.
    cols: usize,
    data: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn width(&self) -> usize {
        self.cols + 1
    }

    fn at(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.width() + c]
    }

    fn rhs(&self, r: usize) -> f64 {
        self.at(r, self.cols)
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let w = self.width();
        let p = self.data[pr * w + pc];
        for c in 0..w {
            self.data[pr * w + c] /= p;
        }
        self.data[pr * w + pc] = 1.0;
        for r in 0..self.rows {
            if r == pr {
                continue;
            }
            let f = self.data[r * w + pc];
            if f == 0.0 {
                continue;
            }
            for c in 0..w {
                self.data[r * w + c] -= f * self.data[pr * w + c];
            }
            self.data[r * w + pc] = 0.0;
        }
        self.basis[pr] = pc;
    }

    fn remove_row(&mut self, r: usize) {
        let w = self.width();
        self.data.drain(r * w..(r + 1) * w);
        self.basis.remove(r);
        self.rows -= 1;
    }

    fn reduced_costs(&self, cost: &[f64]) -> Vec<f64> {
        let mut d = cost.to_vec();
        for r in 0..self.rows {
            let cb = cost[self.basis[r]];
            if cb == 0.0 {
                continue;
            }
            for (c, dc) in d.iter_mut().enumerate() {
                *dc -= cb * self.at(r, c);
            }
        }
        d
    }

    fn objective(&self, cost: &[f64]) -> f64 {
        (0..self.rows)
            .map(|r| cost[self.basis[r]] * self.rhs(r))
            .sum()
    }

    /// Primal simplex with Bland's rule over the columns `allowed` accepts.
    fn optimize(
        &mut self,
        cost: &[f64],
        allowed: impl Fn(usize) -> bool,
        tol: f64,
        iterations: &mut usize,
        limit: usize,
    ) -> Result<Option<Vec<f64>>, LpError> {
        loop {
            let d = self.reduced_costs(cost);
            let entering = (0..self.cols).find(|&c| allowed(c) && d[c] < -tol);
            let Some(pc) = entering else {
                return Ok(Some(d));
            };
            let mut leave: Option<(usize, f64)> = None;
            for r in 0..self.rows {
                let a = self.at(r, pc);
                if a <= PIVOT_TOL {
                    continue;
                }
                let ratio = self.rhs(r).max(0.0) / a;
                leave = match leave {
                    None => Some((r, ratio)),
                    Some((br, best)) => {
                        if ratio < best - RATIO_TIE
                            || (ratio <= best + RATIO_TIE && self.basis[r] < self.basis[br])
                        {
                            Some((r, ratio))
                        } else {
                            Some((br, best))
                        }
                    }
                };
            }
            let Some((pr, _)) = leave else {
                return Ok(None);
            };
            if *iterations >= limit {
                return Err(LpError::IterationLimit { limit });
            }
            *iterations += 1;
            self.pivot(pr, pc);
        }
    }
}

pub fn solve_with(lp: &LinearProgram, opts: &SolverOptions) -> Result<LpSolution, LpError> {
    lp.validate()?;
    let n = lp.num_vars();

    // Column layout: structural columns, then one slack per <= row
    // (including finite upper bounds), then one artificial per row.
    let mut maps = Vec::with_capacity(n);
    let mut ncols = 0;
    let mut bound_rows: Vec<(usize, f64)> = Vec::new();
    for j in 0..n {
        let (lo, hi) = (lp.lower[j], lp.upper[j]);
        let map = if lo.is_finite() {
            if hi.is_finite() {
                bound_rows.push((ncols, hi - lo));
            }
            VarMap::Shift {
                col: ncols,
                offset: lo,
            }
        } else if hi.is_finite() {
            VarMap::Mirror {
                col: ncols,
                offset: hi,
            }
        } else {
            ncols += 1;
            VarMap::Split {
                pos: ncols - 1,
                neg: ncols,
            }
        };
        ncols += 1;
        maps.push(map);
    }
    let structural = ncols;

    // Translate a row over original variables into structural coefficients
    // and the constant it contributes.
    let translate = |coeffs: &[f64]| -> (Vec<f64>, f64) {
        let mut row = vec![0.0; structural];
        let mut constant = 0.0;
        for (j, &a) in coeffs.iter().enumerate() {
            match maps[j] {
                VarMap::Shift { col, offset } => {
                    row[col] += a;
                    constant += a * offset;
                }
                VarMap::Mirror { col, offset } => {
                    row[col] -= a;
                    constant += a * offset;
                }
                VarMap::Split { pos, neg } => {
                    row[pos] += a;
                    row[neg] -= a;
                }
            }
        }
        (row, constant)
    };

    // (structural coefficients, has slack, rhs)
    let mut rows: Vec<(Vec<f64>, bool, f64)> = Vec::new();
    for (coeffs, &rhs) in lp.eq_matrix.iter().zip(&lp.eq_rhs) {
        let (row, k) = translate(coeffs);
        rows.push((row, false, rhs - k));
    }
    for (coeffs, &rhs) in lp.ineq_matrix.iter().zip(&lp.ineq_rhs) {
        let (row, k) = translate(coeffs);
        rows.push((row, true, rhs - k));
    }
    for &(col, width) in &bound_rows {
        let mut row = vec![0.0; structural];
        row[col] = 1.0;
        rows.push((row, true, width));
    }

    let m = rows.len();
    let slack_count = rows.iter().filter(|r| r.1).count();
    let art_start = structural + slack_count;
    let cols = art_start + m;
    let width = cols + 1;
    let mut data = vec![0.0; m * width];
    let mut slack = structural;
    let mut basis = Vec::with_capacity(m);
    for (r, (coeffs, has_slack, rhs)) in rows.iter().enumerate() {
        let sign = if *rhs < 0.0 { -1.0 } else { 1.0 };
        for (c, &a) in coeffs.iter().enumerate() {
            data[r * width + c] = sign * a;
        }
        if *has_slack {
            data[r * width + slack] = sign;
            slack += 1;
        }
        data[r * width + art_start + r] = 1.0;
        data[r * width + cols] = sign * rhs;
        basis.push(art_start + r);
    }
    let mut tab = Tableau {
        rows: m,
        cols,
        data,
        basis,
    };

    let limit = opts.max_iterations.unwrap_or(50 * (m + cols));
    let mut iterations = 0;
    let rhs_scale = 1.0 + (0..m).map(|r| tab.rhs(r).abs()).fold(0.0, f64::max);

    // Phase 1: drive the artificials to zero.
    let mut phase1 = vec![0.0; cols];
    for c in phase1.iter_mut().skip(art_start) {
        *c = 1.0;
    }
    tab.optimize(
        &phase1,
        |_| true,
        opts.reduced_cost_tol,
        &mut iterations,
        limit,
    )?;
    if tab.objective(&phase1) > opts.feasibility_tol * rhs_scale {
        return Ok(LpSolution {
            status: LpStatus::Infeasible,
            x: Vec::new(),
            value: f64::NAN,
            basis: tab.basis.clone(),
            reduced_costs: Vec::new(),
            residual: f64::NAN,
            iterations,
        });
    }
    // Pivot remaining artificials out; rows where that is impossible are redundant.
    let mut r = 0;
    while r < tab.rows {
        if tab.basis[r] >= art_start {
            match (0..art_start).find(|&c| tab.at(r, c).abs() > PIVOT_TOL) {
                Some(c) => {
                    tab.pivot(r, c);
                    r += 1;
                }
                None => tab.remove_row(r),
            }
        } else {
            r += 1;
        }
    }

    // Phase 2 over structural and slack columns.
    let mut cost = vec![0.0; cols];
    for (j, map) in maps.iter().enumerate() {
        let c = lp.objective[j];
        match *map {
            VarMap::Shift { col, .. } => cost[col] += c,
            VarMap::Mirror { col, .. } => cost[col] -= c,
            VarMap::Split { pos, neg } => {
                cost[pos] += c;
                cost[neg] -= c;
            }
        }
    }
    let outcome = tab.optimize(
        &cost,
        |c| c < art_start,
        opts.reduced_cost_tol,
        &mut iterations,
        limit,
    )?;
    let Some(mut d) = outcome else {
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            x: Vec::new(),
            value: f64::NEG_INFINITY,
            basis: tab.basis.clone(),
            reduced_costs: Vec::new(),
            residual: f64::NAN,
            iterations,
        });
    };
    d.truncate(art_start);

    let mut z = vec![0.0; art_start];
    for r in 0..tab.rows {
        z[tab.basis[r]] = tab.rhs(r).max(0.0);
    }
    let x: Vec<f64> = maps.iter().map(|m| m.value(&z)).collect();
    let value = dot(&lp.objective, &x);
    let residual = lp.max_violation(&x);
    Ok(LpSolution {
        status: LpStatus::Optimal,
        x,
        value,
        basis: tab.basis,
        reduced_costs: d,
        residual,
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimize_identity_at_origin() {
        let lp = LinearProgram::new(vec![1.0]);
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.x, vec![0.0]);
        assert_eq!(sol.value, 0.0);
    }

    #[test]
    fn detects_infeasible() {
        // x <= 1 and x >= 2
        let lp = LinearProgram::new(vec![1.0])
            .with_le(vec![1.0], 1.0)
            .with_ge(vec![1.0], 2.0);
        assert_eq!(solve(&lp).unwrap().status, LpStatus::Infeasible);
    }

    #[test]
    fn detects_unbounded() {
        let lp = LinearProgram::new(vec![-1.0, 0.0]).with_le(vec![-1.0, 1.0], 1.0);
        assert_eq!(solve(&lp).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn free_and_mirrored_variables() {
        // min x0 - x1, x0 free with x0 >= -3 via row, x1 <= 2 with no lower bound.
        let lp = LinearProgram::new(vec![1.0, -1.0])
            .with_bounds(0, f64::NEG_INFINITY, f64::INFINITY)
            .with_bounds(1, f64::NEG_INFINITY, 2.0)
            .with_ge(vec![1.0, 0.0], -3.0);
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert!((sol.x[0] + 3.0).abs() < 1e-12);
        assert!((sol.x[1] - 2.0).abs() < 1e-12);
        assert!((sol.value + 5.0).abs() < 1e-12);
    }

    #[test]
    fn redundant_equalities_are_dropped() {
        let lp = LinearProgram::new(vec![1.0, 2.0])
            .with_eq(vec![1.0, 1.0], 1.0)
            .with_eq(vec![2.0, 2.0], 2.0);
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert!((sol.value - 1.0).abs() < 1e-12);
        assert_eq!(sol.basis.len(), 1);
    }

    #[test]
    fn iteration_limit_is_an_error() {
        let lp = LinearProgram::new(vec![-1.0, -1.0])
            .with_le(vec![1.0, 2.0], 4.0)
            .with_le(vec![3.0, 1.0], 6.0);
        let opts = SolverOptions {
            max_iterations: Some(1),
            ..SolverOptions::default()
        };
        assert_eq!(
            solve_with(&lp, &opts),
            Err(LpError::IterationLimit { limit: 1 })
        );
    }

    #[test]
    fn rejects_malformed_programs() {
        let lp = LinearProgram::new(vec![1.0, 1.0]).with_le(vec![1.0], 1.0);
        assert!(matches!(solve(&lp), Err(LpError::RowLength { .. })));
        let lp = LinearProgram::new(vec![f64::NAN]);
        assert_eq!(solve(&lp), Err(LpError::NotANumber));
        let lp = LinearProgram::new(vec![1.0]).with_bounds(0, 2.0, 1.0);
        assert!(matches!(solve(&lp), Err(LpError::InvertedBounds { .. })));
    }

    #[test]
    fn beale_degenerate_example_terminates() {
        // Beale's cycling example for the textbook largest-coefficient rule.
        let lp = LinearProgram::new(vec![-0.75, 150.0, -0.02, 6.0])
            .with_le(vec![0.25, -60.0, -0.04, 9.0], 0.0)
            .with_le(vec![0.5, -90.0, -0.02, 3.0], 0.0)
            .with_le(vec![0.0, 0.0, 1.0, 0.0], 1.0);
        let sol = solve(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert!((sol.value + 0.05).abs() < 1e-9);
    }

    #[test]
    fn optimal_reduced_costs_are_sign_correct() {
        let lp = LinearProgram::new(vec![-3.0, -5.0])
            .with_le(vec![1.0, 0.0], 4.0)
            .with_le(vec![0.0, 2.0], 12.0)
            .with_le(vec![3.0, 2.0], 18.0);
        let sol = solve(&lp).unwrap();
        assert!((sol.value + 36.0).abs() < 1e-9);
        assert!(sol.reduced_costs.iter().all(|&d| d >= -1e-8));
        for &b in &sol.basis {
            assert!(sol.reduced_costs[b].abs() < 1e-8);
        }
    }
}
