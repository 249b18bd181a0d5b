//! Adjust-and-retry driver: solve the weighted relaxation, classify its
//! optimal face, retune the weights, and emit a certificate with the rounded
//! 0-1 solution once the goodness bound and uniqueness both hold.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::goodness::{self, below_threshold, GoodnessError, GoodnessReport};
use crate::instance::{
    ceil_recover, from_independent_set, l0_norm, mis_recover, to_standard_form, InstanceError,
    MisContext, StandardForm, Weights, ZeroOneInstance, ZERO_TOL,
};
use crate::lp::{self, optimal_face_range, LinearProgram, LpError, LpSolution, UNIQUENESS_TOL};

/// Largest `n` the exhaustive 0-1 oracle accepts.
pub const BRUTE_FORCE_MAX_N: usize = 20;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CertifyError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Goodness(#[from] GoodnessError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("weighted relaxation is infeasible (x = 1 violates Ax >= b)")]
    Infeasible,
    #[error("exhaustive search over n = {n} variables exceeds the limit of {BRUTE_FORCE_MAX_N}")]
    TooLarge { n: usize },
    #[error("weights have {found} entries, instance has {expected} columns")]
    WeightLength { found: usize, expected: usize },
    #[error("max_weight_iterations must be at least 1")]
    NoIterations,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightStrategy {
    /// Weights evenly spaced by rank of the LP coordinate.
    #[default]
    Even,
    /// Interior weights uniform in `[c_lo, c_hi]`.
    Random,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertifyConfig {
    pub beta_override: Option<f64>,
    /// Starting weights; all ones when absent.
    pub initial_weights: Option<Weights>,
    pub max_weight_iterations: usize,
    pub seed: u64,
    pub weight_strategy: WeightStrategy,
    /// `None` verifies whenever `n <= BRUTE_FORCE_MAX_N`.
    pub brute_force_verify: Option<bool>,
    pub uniqueness_tol: f64,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        Self {
            beta_override: None,
            initial_weights: None,
            max_weight_iterations: 10,
            seed: 0,
            weight_strategy: WeightStrategy::Even,
            brute_force_verify: None,
            uniqueness_tol: UNIQUENESS_TOL,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseKind {
    UniqueOptimum,
    MultipleSameSparsity,
    MultipleDifferentSparsity,
}

/// The weighted relaxation over `(x, y)` and its solution.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedOptimum {
    pub program: LinearProgram,
    pub solution: LpSolution,
    pub n: usize,
}

impl WeightedOptimum {
    pub fn x(&self) -> &[f64] {
        &self.solution.x[..self.n]
    }

    pub fn y(&self) -> &[f64] {
        &self.solution.x[self.n..]
    }
}

/// Ranges of every `x` coordinate over the optimal face.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceSummary {
    pub case: CaseKind,
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    /// Sparsest optimal `x` among the solution and the probe vertices.
    pub sparsest: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Iteration {
    pub weights: Weights,
    pub report: GoodnessReport,
    pub case: CaseKind,
    pub x: Vec<f64>,
    pub s_observed: usize,
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BruteForce {
    /// Minimum of `sum(x)`; `None` when no 0-1 point is feasible.
    pub value: Option<usize>,
    pub optima: Vec<Vec<u8>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub final_weights: Weights,
    pub iterations: Vec<Iteration>,
    /// Joint `(x, y)` optimum of the final weighted relaxation.
    pub lp_solution: LpSolution,
    pub n: usize,
    pub s_observed: usize,
    pub certified: bool,
    pub recovered: Vec<u8>,
    pub brute_force: Option<BruteForce>,
    pub brute_force_verified: Option<bool>,
    pub discrepancies: Vec<String>,
}

impl Certificate {
    pub fn x(&self) -> &[f64] {
        &self.lp_solution.x[..self.n]
    }

    pub fn y(&self) -> &[f64] {
        &self.lp_solution.x[self.n..]
    }

    pub fn final_case(&self) -> CaseKind {
        self.iterations.last().expect("at least one iteration").case
    }

    pub fn final_report(&self) -> &GoodnessReport {
        &self.iterations.last().expect("at least one iteration").report
    }
}

/// `min c.x  s.t.  A1 x + A2 y = b', x >= 0, y >= 0` over `(x, y)`.
pub fn weighted_program(sf: &StandardForm, c: &Weights) -> LinearProgram {
    let (n, k) = (sf.n, sf.m + sf.n);
    let mut objective = c.as_slice().to_vec();
    objective.resize(n + k, 0.0);
    let mut lp = LinearProgram::new(objective);
    for l in 0..k {
        let mut row = sf.a1[l].clone();
        row.extend_from_slice(&sf.a2[l]);
        lp = lp.with_eq(row, sf.bprime[l]);
    }
    lp
}

pub fn solve_weighted_lp(sf: &StandardForm, c: &Weights) -> Result<WeightedOptimum, CertifyError> {
    if c.len() != sf.n {
        return Err(CertifyError::WeightLength {
            found: c.len(),
            expected: sf.n,
        });
    }
    let program = weighted_program(sf, c);
    let solution = lp::solve(&program)?;
    match solution.status {
        lp::LpStatus::Optimal => Ok(WeightedOptimum {
            program,
            solution,
            n: sf.n,
        }),
        lp::LpStatus::Infeasible => Err(CertifyError::Infeasible),
        other => Err(LpError::NotOptimal(other).into()),
    }
}

/// Probes the optimal face along each `x` coordinate. `y` is determined by
/// `x`, so these ranges decide uniqueness of the joint optimum.
pub fn analyze_face(opt: &WeightedOptimum, tol: f64) -> Result<FaceSummary, CertifyError> {
    let n = opt.n;
    let mut lo = Vec::with_capacity(n);
    let mut hi = Vec::with_capacity(n);
    let mut sparsest = opt.x().to_vec();
    let mut best = l0_norm(&sparsest);
    for var in 0..n {
        let probe = optimal_face_range(&opt.program, opt.solution.value, var)?;
        for point in [&probe.lo_point, &probe.hi_point] {
            let x = &point[..n];
            let s = l0_norm(x);
            if s < best {
                best = s;
                sparsest = x.to_vec();
            }
        }
        lo.push(probe.lo);
        hi.push(probe.hi);
    }
    let unique = lo.iter().zip(&hi).all(|(l, h)| h - l <= tol);
    let case = if unique {
        CaseKind::UniqueOptimum
    } else {
        let always: Vec<bool> = lo.iter().map(|&v| v > ZERO_TOL).collect();
        let sometimes: Vec<bool> = hi.iter().map(|&v| v > ZERO_TOL).collect();
        if always == sometimes {
            CaseKind::MultipleSameSparsity
        } else {
            CaseKind::MultipleDifferentSparsity
        }
    };
    Ok(FaceSummary {
        case,
        lo,
        hi,
        sparsest,
    })
}

pub fn classify_case(
    sf: &StandardForm,
    c: &Weights,
    opt: &WeightedOptimum,
) -> Result<CaseKind, CertifyError> {
    debug_assert_eq!(c.len(), sf.n);
    Ok(analyze_face(opt, UNIQUENESS_TOL)?.case)
}

/// Retunes weights so the largest coordinate of `x_star` becomes cheapest.
///
/// The largest coordinate gets `c_lo = min(beta_bar, 1)`, the smallest gets
/// `c_hi = min(1.25 beta_bar, 1)`, and the rest fall in between by rank
/// (`Even`) or uniformly at random (`Random`). Ties rank by lower index.
pub fn adjust_weights(
    x_star: &[f64],
    beta_bar: f64,
    strategy: WeightStrategy,
    seed: u64,
) -> Weights {
    let n = x_star.len();
    let mut c_lo = beta_bar.min(1.0);
    let c_hi = (1.25 * beta_bar).min(1.0);
    if c_hi <= c_lo {
        c_lo *= 0.9;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| x_star[j].total_cmp(&x_star[i]).then(i.cmp(&j)));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = vec![0.0; n];
    for (rank, &i) in order.iter().enumerate() {
        c[i] = if rank == 0 {
            c_lo
        } else if rank == n - 1 {
            c_hi
        } else {
            match strategy {
                WeightStrategy::Even => c_lo + (c_hi - c_lo) * rank as f64 / (n - 1) as f64,
                WeightStrategy::Random => rng.random_range(c_lo..=c_hi),
            }
        };
    }
    Weights::new(c.into_iter().map(|v| v.clamp(f64::MIN_POSITIVE, 1.0)).collect())
        .expect("weights clamped into (0, 1]")
}

/// Exhaustive minimum of `sum(x)` over feasible 0-1 points.
pub fn brute_force_ip(inst: &ZeroOneInstance) -> Result<BruteForce, CertifyError> {
    let n = inst.cols();
    if n > BRUTE_FORCE_MAX_N {
        return Err(CertifyError::TooLarge { n });
    }
    let mut value: Option<usize> = None;
    let mut optima = Vec::new();
    let mut x = vec![0u8; n];
    for mask in 0u32..(1u32 << n) {
        let weight = mask.count_ones() as usize;
        if value.is_some_and(|v| weight > v) {
            continue;
        }
        for (i, xi) in x.iter_mut().enumerate() {
            *xi = ((mask >> i) & 1) as u8;
        }
        if !inst.is_feasible(&x) {
            continue;
        }
        match value {
            Some(v) if v == weight => optima.push(x.clone()),
            _ => {
                value = Some(weight);
                optima = vec![x.clone()];
            }
        }
    }
    optima.sort();
    Ok(BruteForce { value, optima })
}

/// Checks the recovered vector against the exhaustive oracle: feasible,
/// optimal, and with weight equal to the support size of the LP optimum.
pub fn verify_certificate(inst: &ZeroOneInstance, cert: &Certificate) -> Result<bool, CertifyError> {
    if !cert.certified {
        return Ok(false);
    }
    let oracle = brute_force_ip(inst)?;
    Ok(recovered_matches(inst, cert, &oracle))
}

fn recovered_matches(inst: &ZeroOneInstance, cert: &Certificate, oracle: &BruteForce) -> bool {
    let weight = cert.recovered.iter().map(|&v| v as usize).sum::<usize>();
    inst.is_feasible(&cert.recovered)
        && oracle.value == Some(weight)
        && weight == l0_norm(cert.x())
}

/// Runs the adjust-and-retry loop until the sufficient condition certifies a
/// unique sparse optimum or the iteration budget runs out.
pub fn certify(inst: &ZeroOneInstance, config: &CertifyConfig) -> Result<Certificate, CertifyError> {
    if config.max_weight_iterations == 0 {
        return Err(CertifyError::NoIterations);
    }
    let sf = to_standard_form(inst);
    let n = sf.n;
    let mut c = match &config.initial_weights {
        Some(w) if w.len() != n => {
            return Err(CertifyError::WeightLength {
                found: w.len(),
                expected: n,
            })
        }
        Some(w) => w.clone(),
        None => Weights::ones(n),
    };

    let mut iterations = Vec::new();
    let mut discrepancies = Vec::new();
    let mut last_solution = None;
    let mut certified = false;

    for k in 0..config.max_weight_iterations {
        let default_beta = goodness::beta_bar(&sf, &c);
        let beta = config.beta_override.unwrap_or(default_beta);
        if let Some(o) = config.beta_override {
            if (o - default_beta).abs() > 1e-12 {
                discrepancies.push(format!(
                    "iteration {k}: beta override {o} differs from default-rule beta_bar {default_beta}"
                ));
            }
        }
        let report = goodness::verdict_at_s_star(&sf, &c, beta)?;
        let opt = solve_weighted_lp(&sf, &c)?;
        let face = analyze_face(&opt, config.uniqueness_tol)?;
        let x = opt.x().to_vec();
        let s_observed = l0_norm(&x);
        let ok = below_threshold(report.eta1, report.threshold)
            && report.certified
            && face.case == CaseKind::UniqueOptimum
            && s_observed <= report.s_star;

        // Point whose support the next weights should favour.
        let target = match face.case {
            CaseKind::MultipleDifferentSparsity => {
                if l0_norm(&face.sparsest) > report.s_star {
                    discrepancies.push(format!(
                        "iteration {k}: no optimal point with support <= s* = {} found",
                        report.s_star
                    ));
                }
                face.sparsest.clone()
            }
            _ => x.clone(),
        };

        iterations.push(Iteration {
            weights: c.clone(),
            report,
            case: face.case,
            x,
            s_observed,
            certified: ok,
        });
        last_solution = Some(opt.solution);
        if ok {
            certified = true;
            break;
        }
        c = adjust_weights(
            &target,
            beta,
            config.weight_strategy,
            config.seed.wrapping_add(k as u64),
        );
    }
    if !certified {
        discrepancies.push(format!(
            "not certified within {} weight iterations",
            config.max_weight_iterations
        ));
    }

    let lp_solution = last_solution.expect("at least one iteration ran");
    let last = iterations.last().expect("at least one iteration ran");
    let recovered = ceil_recover(&last.x)?;
    let s_observed = last.s_observed;
    let final_weights = last.weights.clone();

    let mut cert = Certificate {
        final_weights,
        iterations,
        lp_solution,
        n,
        s_observed,
        certified,
        recovered,
        brute_force: None,
        brute_force_verified: None,
        discrepancies,
    };
    if config.brute_force_verify.unwrap_or(n <= BRUTE_FORCE_MAX_N) {
        let oracle = brute_force_ip(inst)?;
        if certified {
            cert.brute_force_verified = Some(recovered_matches(inst, &cert, &oracle));
        }
        cert.brute_force = Some(oracle);
    }
    Ok(cert)
}

/// Where an independent set came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MisSource {
    /// Rounded from a certified, unique weighted-LP optimum.
    Certificate,
    /// The unit-weight relaxation already had an integral optimum, which is
    /// optimal for the 0-1 program by the LP lower bound.
    IntegralRelaxation,
    /// Neither of the above; the lexicographically smallest
    /// exhaustive optimum is used instead.
    Exhaustive,
    /// No edges: every vertex is independent and no program is built.
    Edgeless,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MisOutcome {
    pub context: MisContext,
    /// `None` for edgeless graphs.
    pub instance: Option<ZeroOneInstance>,
    pub certificate: Option<Certificate>,
    /// Independent-set indicator over the vertices.
    pub independent_set: Vec<u8>,
    pub source: MisSource,
}

impl MisOutcome {
    pub fn size(&self) -> usize {
        self.independent_set.iter().map(|&v| v as usize).sum()
    }

    /// 1-indexed members of the set.
    pub fn members(&self) -> Vec<usize> {
        self.independent_set
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == 1)
            .map(|(i, _)| i + 1)
            .collect()
    }
}

/// Maximum independent set through the complemented covering program.
///
/// Falls back to the exhaustive oracle when the certificate does not fire or
/// fails verification; errors if that is needed but the graph is too large.
pub fn solve_mis(
    vertex_count: usize,
    edges: &[(usize, usize)],
    config: &CertifyConfig,
) -> Result<MisOutcome, CertifyError> {
    let context = MisContext::new(vertex_count, edges)?;
    if context.edges.is_empty() {
        return Ok(MisOutcome {
            independent_set: vec![1; vertex_count],
            context,
            instance: None,
            certificate: None,
            source: MisSource::Edgeless,
        });
    }
    let (inst, context) = from_independent_set(vertex_count, edges)?;
    let cert = certify(&inst, config)?;
    let trusted = cert.certified && cert.brute_force_verified != Some(false);
    let integral_unit_optimum = cert.iterations.iter().find_map(|it| {
        let unit = it.weights.as_slice().iter().all(|&w| w == 1.0);
        let integral = it
            .x
            .iter()
            .all(|&v| v.abs() <= ZERO_TOL || (v - 1.0).abs() <= ZERO_TOL);
        (unit && integral).then(|| ceil_recover(&it.x))
    });
    let (x_tilde, source) = if trusted {
        (cert.recovered.clone(), MisSource::Certificate)
    } else if let Some(x) = integral_unit_optimum {
        (x?, MisSource::IntegralRelaxation)
    } else {
        let oracle = match &cert.brute_force {
            Some(bf) => bf.clone(),
            None => brute_force_ip(&inst)?,
        };
        let best = oracle
            .optima
            .first()
            .cloned()
            .ok_or(CertifyError::Infeasible)?;
        (best, MisSource::Exhaustive)
    };
    let independent_set = mis_recover(&x_tilde, &context)?;
    Ok(MisOutcome {
        context,
        instance: Some(inst),
        certificate: Some(cert),
        independent_set,
        source,
    })
}
