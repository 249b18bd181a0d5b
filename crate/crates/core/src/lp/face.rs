use super::{solve, LinearProgram, LpError, LpSolution};

/// Extent of one variable over the optimal face.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceProbe {
    pub var: usize,
    pub lo: f64,
    pub hi: f64,
    /// Optimal vertex attaining `lo`.
    pub lo_point: Vec<f64>,
    /// Optimal vertex attaining `hi`.
    pub hi_point: Vec<f64>,
}

impl FaceProbe {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Uniqueness {
    pub unique: bool,
    /// A second optimal point, present when `unique` is false.
    pub witness: Option<Vec<f64>>,
    pub probes: Vec<FaceProbe>,
}

/// Minimizes and maximizes `var` over `{x feasible : objective . x = opt_value}`.
pub fn optimal_face_range(
    lp: &LinearProgram,
    opt_value: f64,
    var: usize,
) -> Result<FaceProbe, LpError> {
    let n = lp.num_vars();
    if var >= n {
        return Err(LpError::VariableIndex { var, vars: n });
    }
    let pinned = lp.clone().with_eq(lp.objective.clone(), opt_value);
    let mut probe = pinned.clone();
    probe.objective = vec![0.0; n];
    probe.objective[var] = 1.0;
    let low = solve(&probe)?.require_optimal()?;
    probe.objective[var] = -1.0;
    let high = solve(&probe)?.require_optimal()?;
    Ok(FaceProbe {
        var,
        lo: low.x[var],
        hi: high.x[var],
        lo_point: low.x,
        hi_point: high.x,
    })
}

/// Probes every variable of the optimal face of `lp` around `solution`.
///
/// When the face is not a single point the witness is the midpoint between
/// `solution.x` and the probe vertex farthest from it.
pub fn is_unique(lp: &LinearProgram, solution: &LpSolution, tol: f64) -> Result<Uniqueness, LpError> {
    if !solution.is_optimal() {
        return Err(LpError::NotOptimal(solution.status));
    }
    let probes = (0..lp.num_vars())
        .map(|var| optimal_face_range(lp, solution.value, var))
        .collect::<Result<Vec<_>, _>>()?;
    let unique = probes.iter().all(|p| p.width() <= tol);
    let witness = if unique {
        None
    } else {
        let far = probes
            .iter()
            .filter(|p| p.width() > tol)
            .flat_map(|p| [&p.lo_point, &p.hi_point])
            .map(|pt| (pt, linf_distance(pt, &solution.x)))
            .fold(None::<(&Vec<f64>, f64)>, |best, (pt, d)| match best {
                Some((_, bd)) if bd >= d => best,
                _ => Some((pt, d)),
            });
        far.map(|(pt, _)| {
            pt.iter()
                .zip(&solution.x)
                .map(|(a, b)| 0.5 * (a + b))
                .collect()
        })
    };
    Ok(Uniqueness {
        unique,
        witness,
        probes,
    })
}

fn linf_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::UNIQUENESS_TOL;

    fn square() -> LinearProgram {
        // unit box
        LinearProgram::new(vec![0.0, 0.0])
            .with_le(vec![1.0, 0.0], 1.0)
            .with_le(vec![0.0, 1.0], 1.0)
    }

    #[test]
    fn strict_vertex_has_zero_width() {
        let mut lp = square();
        lp.objective = vec![1.0, 2.0];
        let sol = solve(&lp).unwrap();
        let u = is_unique(&lp, &sol, UNIQUENESS_TOL).unwrap();
        assert!(u.unique);
        assert!(u.witness.is_none());
        assert!(u.probes.iter().all(|p| p.width() == 0.0));
    }

    #[test]
    fn zero_objective_is_never_unique() {
        let lp = square();
        let sol = solve(&lp).unwrap();
        let u = is_unique(&lp, &sol, UNIQUENESS_TOL).unwrap();
        assert!(!u.unique);
        let w = u.witness.unwrap();
        assert_ne!(w, sol.x);
        assert!(lp.max_violation(&w) <= 1e-12);
    }

    #[test]
    fn edge_of_optima() {
        // min -x - y over the unit box cut by x + y <= 1.5: optimal edge
        // from (0.5, 1) to (1, 0.5).
        let lp = square().with_le(vec![1.0, 1.0], 1.5);
        let mut lp = lp;
        lp.objective = vec![-1.0, -1.0];
        let sol = solve(&lp).unwrap();
        let p = optimal_face_range(&lp, sol.value, 0).unwrap();
        assert!((p.lo - 0.5).abs() < 1e-12 && (p.hi - 1.0).abs() < 1e-12);
        let u = is_unique(&lp, &sol, UNIQUENESS_TOL).unwrap();
        let w = u.witness.unwrap();
        assert!((w[0] - 0.75).abs() < 1e-12 && (w[1] - 0.75).abs() < 1e-12);
    }

    #[test]
    fn bad_variable_index() {
        let lp = square();
        assert!(matches!(
            optimal_face_range(&lp, 0.0, 5),
            Err(LpError::VariableIndex { .. })
        ));
    }
}
