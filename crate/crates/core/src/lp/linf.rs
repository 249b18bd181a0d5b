use super::{solve, LinearProgram, LpError, LpSolution};

/// Sign restriction on one coordinate of `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignConstraint {
    NonNegative,
    NonPositive,
    Free,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinfResidual {
    pub q: Vec<f64>,
    /// Optimal value of `||d - M^T q||_inf`.
    pub t: f64,
    pub solution: LpSolution,
}

/// Minimizes `||d - M^T q||_inf` over `q` with `||q||_inf <= box_bound` and
/// per-coordinate sign restrictions.
///
/// `m` has one row per coordinate of `q` and one column per coordinate of `d`.
/// The epigraph LP has variables `(q, t)` and rows `+-(d - M^T q)_i <= t`.
/// `box_bound` may be `f64::INFINITY`.
pub fn minimize_linf_residual(
    m: &[Vec<f64>],
    d: &[f64],
    signs: &[SignConstraint],
    box_bound: f64,
) -> Result<LinfResidual, LpError> {
    let k = m.len();
    let n = d.len();
    if signs.len() != k {
        return Err(LpError::BoundsLength {
            objective: k,
            bounds: signs.len(),
        });
    }
    for (row, coeffs) in m.iter().enumerate() {
        if coeffs.len() != n {
            return Err(LpError::RowLength {
                kind: "residual",
                row,
                found: coeffs.len(),
                expected: n,
            });
        }
    }

    let mut objective = vec![0.0; k + 1];
    objective[k] = 1.0;
    let mut lp = LinearProgram::new(objective);
    for (var, sign) in signs.iter().enumerate() {
        let (lo, hi) = match sign {
            SignConstraint::NonNegative => (0.0, box_bound),
            SignConstraint::NonPositive => (-box_bound, 0.0),
            SignConstraint::Free => (-box_bound, box_bound),
        };
        lp = lp.with_bounds(var, lo, hi);
    }
    for i in 0..n {
        // (M^T q)_i = sum_l m[l][i] q_l
        let col: Vec<f64> = m.iter().map(|row| row[i]).collect();
        //  d_i - (M^T q)_i <= t
        let mut lower = col.iter().map(|a| -a).collect::<Vec<_>>();
        lower.push(-1.0);
        lp = lp.with_le(lower, -d[i]);
        // (M^T q)_i - d_i <= t
        let mut upper = col;
        upper.push(-1.0);
        lp = lp.with_le(upper, d[i]);
    }

    let solution = solve(&lp)?.require_optimal()?;
    let q = solution.x[..k].to_vec();
    let t = solution.x[k];
    Ok(LinfResidual { q, t, solution })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{examples, to_standard_form};

    fn a1_example(a: &[Vec<f64>]) -> (Vec<Vec<f64>>, Vec<SignConstraint>) {
        let inst = crate::instance::ZeroOneInstance::new(a.to_vec(), vec![0.0; a.len()]).unwrap();
        let sf = to_standard_form(&inst);
        let m = inst.rows();
        let signs = (0..sf.a1.len())
            .map(|l| {
                if l < m {
                    SignConstraint::NonNegative
                } else {
                    SignConstraint::NonPositive
                }
            })
            .collect();
        (sf.a1, signs)
    }

    #[test]
    fn example_one_first_column() {
        let (m, signs) = a1_example(examples::example1().a());
        let r = minimize_linf_residual(&m, &[1.0, 0.0, 0.0], &signs, 0.5625).unwrap();
        assert!((r.t - 0.21875).abs() < 1e-9, "t = {}", r.t);
    }

    #[test]
    fn example_three_third_column() {
        let (m, signs) = a1_example(examples::example3().a());
        let r = minimize_linf_residual(&m, &[0.0, 0.0, 1.0], &signs, 0.375).unwrap();
        assert!((r.t - 0.875 / 3.0).abs() < 1e-9, "t = {}", r.t);
    }

    #[test]
    fn zero_target_gives_zero() {
        let (m, signs) = a1_example(examples::example1().a());
        let r = minimize_linf_residual(&m, &[0.0; 3], &signs, 1.0).unwrap();
        assert_eq!(r.t, 0.0);
        assert!(r.q.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn unbounded_box_is_supported() {
        // M = [1], d = [3]: q = 3 fits exactly once the box is removed.
        let r = minimize_linf_residual(
            &[vec![1.0]],
            &[3.0],
            &[SignConstraint::Free],
            f64::INFINITY,
        )
        .unwrap();
        assert!(r.t.abs() < 1e-12);
        assert!((r.q[0] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn sign_pattern_length_is_checked() {
        assert!(minimize_linf_residual(&[vec![1.0]], &[1.0], &[], 1.0).is_err());
    }
}
