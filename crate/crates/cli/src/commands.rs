use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Instant;

use relaxcert::certify::{self, CertifyConfig, MisSource, WeightStrategy};
use relaxcert::goodness::{self, GoodnessReport};
use relaxcert::instance::{
    parse_graph, parse_instance, random_instance, to_standard_form, write_instance, StandardForm,
    Weights, ZeroOneInstance,
};
use relaxcert::report::{sig12, BruteForceSummary, MisSummary, ReportDocument};

use crate::{
    BruteArgs, CertifyArgs, EtaArgs, GammaArgs, GenArgs, InputArgs, LoopArgs, MisArgs, Strategy,
};

/// Agreement tolerance between exact and closed-form gamma-hat.
const GAMMA_AGREEMENT_TOL: f64 = 1e-8;

pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn new(text: String, code: u8) -> Self {
        Self { text, code }
    }
}

type CmdResult = Result<Output, String>;

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load(args: &InputArgs) -> Result<(ZeroOneInstance, Weights), String> {
    let parsed = parse_instance(&read(&args.input)?)
        .map_err(|e| format!("{}: {e}", args.input.display()))?;
    let n = parsed.instance.cols();
    let weights = match &args.weights {
        Some(c) => Weights::new(c.clone()).map_err(|e| format!("--weights: {e}"))?,
        None => parsed.weights.unwrap_or_else(|| Weights::ones(n)),
    };
    if weights.len() != n {
        return Err(format!("--weights: expected {n} values, found {}", weights.len()));
    }
    Ok((parsed.instance, weights))
}

fn config(run: &LoopArgs, weights: Option<Weights>) -> CertifyConfig {
    CertifyConfig {
        beta_override: run.beta,
        initial_weights: weights,
        max_weight_iterations: run.max_iters,
        seed: run.seed,
        weight_strategy: match run.strategy {
            Strategy::Even => WeightStrategy::Even,
            Strategy::Random => WeightStrategy::Random,
        },
        brute_force_verify: run.no_verify.then_some(false),
        uniqueness_tol: run.tol,
    }
}

fn resolve_beta(sf: &StandardForm, c: &Weights, beta: Option<f64>) -> f64 {
    beta.unwrap_or_else(|| goodness::beta_bar(sf, c))
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Joins numbers with the same 12-digit rounding the JSON report uses.
fn list(v: &[f64]) -> String {
    v.iter()
        .map(|x| sig12(*x).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn bits(v: &[u8]) -> String {
    v.iter().map(u8::to_string).collect::<Vec<_>>().join(" ")
}

fn goodness_text(out: &mut String, r: &GoodnessReport) {
    let _ = writeln!(out, "beta_bar: {}", sig12(r.beta_bar));
    let _ = writeln!(out, "beta_used: {}", sig12(r.beta_used));
    let _ = writeln!(out, "eta_per_column: {}", list(&r.eta_per_column));
    let _ = writeln!(out, "eta1: {}", sig12(r.eta1));
    let _ = writeln!(out, "s_star: {}", r.s_star);
    let _ = writeln!(out, "threshold: {}", sig12(r.threshold));
    let _ = writeln!(out, "eta_s_bound: {} (s = {})", sig12(r.eta_s_bound), r.s);
}

fn emit(json: bool, doc: &ReportDocument, text: String, code: u8) -> Output {
    if json {
        Output::new(doc.to_json() + "\n", code)
    } else {
        Output::new(text, code)
    }
}

fn header(out: &mut String, inst: &ZeroOneInstance) {
    let _ = writeln!(out, "instance: m={} n={} digest={}", inst.rows(), inst.cols(), inst.digest());
}

pub fn certify(args: &CertifyArgs) -> CmdResult {
    let (inst, c) = load(&args.input)?;
    let start = Instant::now();
    let cert = certify::certify(&inst, &config(&args.run, Some(c))).map_err(|e| e.to_string())?;
    let mut doc = ReportDocument::new(&inst);
    doc.set_certificate(&cert);
    doc.record_timing("certify", ms(start));

    let mut out = String::new();
    header(&mut out, &inst);
    goodness_text(&mut out, cert.final_report());
    let _ = writeln!(out, "iterations: {}", cert.iterations.len());
    let _ = writeln!(out, "case: {:?}", cert.final_case());
    let _ = writeln!(out, "weights: {}", list(cert.final_weights.as_slice()));
    let _ = writeln!(out, "lp_x: {}", list(cert.x()));
    let _ = writeln!(out, "lp_value: {}", sig12(cert.lp_solution.value));
    let _ = writeln!(out, "certified: {}", cert.certified);
    let _ = writeln!(out, "recovered: {}", bits(&cert.recovered));
    if let Some(bf) = &cert.brute_force {
        let value = bf.value.map_or("infeasible".to_string(), |v| v.to_string());
        let verified = cert
            .brute_force_verified
            .map_or("n/a".to_string(), |v| v.to_string());
        let _ = writeln!(
            out,
            "brute_force: value {value}, {} optima, verified {verified}",
            bf.optima.len()
        );
    }
    for d in &cert.discrepancies {
        let _ = writeln!(out, "note: {d}");
    }
    let ok = cert.certified && cert.brute_force_verified != Some(false);
    Ok(emit(args.json, &doc, out, if ok { 0 } else { 1 }))
}

pub fn eta(args: &EtaArgs) -> CmdResult {
    let (inst, c) = load(&args.input)?;
    let sf = to_standard_form(&inst);
    let beta = resolve_beta(&sf, &c, args.beta);
    let start = Instant::now();
    let report = match args.s {
        Some(s) => goodness::sufficient_verdict(&sf, &c, beta, s),
        None => goodness::verdict_at_s_star(&sf, &c, beta),
    }
    .map_err(|e| e.to_string())?;
    let mut doc = ReportDocument::new(&inst);
    doc.set_goodness(&report);
    doc.record_timing("eta", ms(start));

    let mut out = String::new();
    header(&mut out, &inst);
    goodness_text(&mut out, &report);
    let _ = writeln!(out, "gamma_hat: {}", sig12(report.gamma_hat));
    let _ = writeln!(out, "below_threshold: {}", report.certified);
    Ok(emit(args.json, &doc, out, 0))
}

pub fn gamma_hat(args: &GammaArgs) -> CmdResult {
    let (inst, c) = load(&args.input)?;
    let sf = to_standard_form(&inst);
    let beta = resolve_beta(&sf, &c, args.beta);
    let start = Instant::now();
    let report = goodness::sufficient_verdict(&sf, &c, beta, args.s).map_err(|e| e.to_string())?;
    let exact = goodness::gamma_hat_exact(&sf, &c, beta, args.s).map_err(|e| e.to_string())?;
    let closed = goodness::gamma_hat_closed_form(&sf, &c, beta);
    let mut doc = ReportDocument::new(&inst);
    doc.set_goodness(&report);
    doc.gamma_hat = Some(sig12(exact));
    doc.gamma_hat_closed_form = Some(sig12(closed));
    doc.record_timing("gamma_hat", ms(start));
    let agree = (exact - closed).abs() <= GAMMA_AGREEMENT_TOL;
    if !agree {
        doc.discrepancies
            .push(format!("exact gamma_hat {exact} differs from closed form {closed}"));
    }

    let mut out = String::new();
    header(&mut out, &inst);
    let _ = writeln!(out, "beta_used: {}", sig12(beta));
    let _ = writeln!(out, "s: {}", args.s);
    let _ = writeln!(out, "gamma_hat: {}", sig12(exact));
    let _ = writeln!(out, "gamma_hat_closed_form: {}", sig12(closed));
    let _ = writeln!(out, "s_eta1_bound: {}", sig12(report.eta_s_bound));
    let _ = writeln!(out, "agree: {agree}");
    Ok(emit(args.json, &doc, out, if agree { 0 } else { 1 }))
}

pub fn brute_force(args: &BruteArgs) -> CmdResult {
    let parsed =
        parse_instance(&read(&args.input)?).map_err(|e| format!("{}: {e}", args.input.display()))?;
    let inst = parsed.instance;
    let start = Instant::now();
    let bf = certify::brute_force_ip(&inst).map_err(|e| e.to_string())?;
    let mut doc = ReportDocument::new(&inst);
    doc.brute_force = Some(BruteForceSummary {
        value: bf.value,
        optima_count: bf.optima.len(),
        verified: None,
    });
    doc.record_timing("brute_force", ms(start));

    let mut out = String::new();
    header(&mut out, &inst);
    match bf.value {
        Some(v) => {
            let _ = writeln!(out, "value: {v}");
        }
        None => {
            let _ = writeln!(out, "value: infeasible");
        }
    }
    let _ = writeln!(out, "optima: {}", bf.optima.len());
    for x in &bf.optima {
        let _ = writeln!(out, "  {}", bits(x));
    }
    Ok(emit(args.json, &doc, out, 0))
}

pub fn gen(args: &GenArgs) -> CmdResult {
    if args.m == 0 || args.n == 0 || args.max_entry == 0 {
        return Err("--m, --n and --max-entry must be positive".into());
    }
    let inst = random_instance(args.m, args.n, args.seed, args.max_entry);
    let weights = match &args.weights {
        Some(c) => {
            let w = Weights::new(c.clone()).map_err(|e| format!("--weights: {e}"))?;
            if w.len() != args.n {
                return Err(format!("--weights: expected {} values, found {}", args.n, w.len()));
            }
            Some(w)
        }
        None => None,
    };
    let text = write_instance(&inst, weights.as_ref());
    let doc = ReportDocument::new(&inst);
    match &args.output {
        Some(path) => {
            fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display()))?;
            let summary = format!("wrote {} ({}x{})\n", path.display(), args.m, args.n);
            Ok(emit(args.json, &doc, summary, 0))
        }
        None if args.json => Ok(emit(true, &doc, String::new(), 0)),
        None => Ok(Output::new(text, 0)),
    }
}

pub fn mis(args: &MisArgs) -> CmdResult {
    let (count, edges) =
        parse_graph(&read(&args.graph)?).map_err(|e| format!("{}: {e}", args.graph.display()))?;
    let start = Instant::now();
    let outcome = certify::solve_mis(count, &edges, &config(&args.run, None))
        .map_err(|e| format!("{}: {e}", args.graph.display()))?;
    // An edgeless graph builds no program; summarize a 1 x n zero instance.
    let placeholder;
    let inst = match &outcome.instance {
        Some(inst) => inst,
        None => {
            placeholder = ZeroOneInstance::new(vec![vec![0.0; count.max(1)]], vec![0.0])
                .map_err(|e| e.to_string())?;
            &placeholder
        }
    };
    let mut doc = ReportDocument::new(inst);
    if let Some(cert) = &outcome.certificate {
        doc.set_certificate(cert);
    }
    doc.mis = Some(MisSummary {
        vertex_count: count,
        edges: outcome.context.edges.len(),
        independent_set: outcome.members(),
        size: outcome.size(),
    });
    let source = match outcome.source {
        MisSource::Certificate => "certificate",
        MisSource::IntegralRelaxation => "integral unit-weight relaxation",
        MisSource::Exhaustive => "exhaustive search",
        MisSource::Edgeless => "edgeless graph",
    };
    if outcome.source == MisSource::Exhaustive {
        doc.discrepancies
            .push("certificate unavailable or refuted; independent set from exhaustive search".into());
    }
    doc.record_timing("mis", ms(start));

    let mut out = String::new();
    let _ = writeln!(out, "graph: {} vertices, {} edges", count, outcome.context.edges.len());
    if let Some(cert) = &outcome.certificate {
        let _ = writeln!(out, "certified: {}", cert.certified);
        if let Some(v) = cert.brute_force_verified {
            let _ = writeln!(out, "verified: {v}");
        }
    }
    let members = outcome
        .members()
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ");
    let _ = writeln!(out, "independent_set: {members}");
    let _ = writeln!(out, "size: {}", outcome.size());
    let _ = writeln!(out, "source: {source}");
    Ok(emit(args.json, &doc, out, 0))
}
