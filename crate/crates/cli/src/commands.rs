//! The four subcommands. Each returns a finished report; exit codes are
//! decided in `main`.

use crate::args::{
    parse_domain, parse_elements, parse_list, parse_range, CountArgs, DomainSpec, FieldArgs, IdentitiesArgs, Kind,
    Method, SspArgs, UsageError, VerifyArgs,
};
use crate::output::{
    elements_csv, elements_json, list_csv, qsqrt_csv, qsqrt_json, rational_csv, rational_json, Report,
};
use fqcount::bounds::{verify_diagonal, verify_moment, CountReport};
use fqcount::combinatorics::identities::all_rows;
use fqcount::diagonal::{count_points_bruteforce, count_points_dp, Domain, WeightedDiagonalSystem};
use fqcount::moment::{count_subsets, MomentInstance, SspMethod};
use fqcount::{FieldElement, FieldSpec, Limits, PolySpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use std::sync::Arc;

/// Why a command stopped early.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Limit(String),
    /// A result that must hold mathematically did not.
    Math(String),
}

impl From<UsageError> for Failure {
    fn from(e: UsageError) -> Self {
        Failure::Usage(e.0)
    }
}

impl From<fqcount::Error> for Failure {
    fn from(e: fqcount::Error) -> Self {
        match e {
            fqcount::Error::LimitExceeded { .. } => Failure::Limit(e.to_string()),
            fqcount::Error::InexactDivision(_) => Failure::Math(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

/// A finished report, plus whether every assertion it carries held.
pub struct Outcome {
    pub report: Report,
    pub ok: bool,
}

fn build_field(args: &FieldArgs, limits: &Limits) -> Result<Arc<FieldSpec>, Failure> {
    Ok(Arc::new(FieldSpec::with_limits(args.p, args.s, limits)?))
}

fn build_domain(field: &FieldSpec, text: &str) -> Result<Domain, Failure> {
    Ok(match parse_domain(field, text)? {
        DomainSpec::Full => Domain::FullField,
        DomainSpec::Image(coeffs) => Domain::Subset(fqcount::field::image_set(&PolySpec::new(coeffs), field)),
        DomainSpec::List(xs) => Domain::subset(xs),
    })
}

fn field_echo(f: &FieldArgs) -> Value {
    json!({ "p": f.p, "s": f.s })
}

fn common_echo(c: &crate::args::Common) -> Value {
    // jobs is left out: reports are identical at every parallelism degree
    json!({
        "format": format!("{:?}", c.format).to_lowercase(),
        "out": c.out.as_ref().map(|p| p.display().to_string()),
        "seed": c.seed,
        "limit_dp": c.limit_dp,
        "limit_enum": c.limit_enum,
    })
}

pub fn count(args: &CountArgs) -> Result<Outcome, Failure> {
    let limits = args.common.limits();
    let field = build_field(&args.field, &limits)?;
    let exps: Vec<u64> = parse_list("exps", &args.exps)?;
    let weights: Vec<u64> = match (&args.weights, args.k) {
        (Some(w), k) => {
            let w = parse_list("weights", w)?;
            if k.is_some_and(|k| k != w.len()) {
                return Err(Failure::Usage(format!("--k {} disagrees with {} weights", k.unwrap(), w.len())));
            }
            w
        }
        (None, Some(k)) => vec![1; k],
        (None, None) => return Err(Failure::Usage("count needs --weights or --k".into())),
    };
    let targets = parse_elements(&field, "b", &args.b)?;
    let domain = build_domain(&field, &args.domain)?;
    let methods: &[Method] = match args.method {
        Method::Dp => &[Method::Dp],
        Method::Brute => &[Method::Brute],
        Method::All => &[Method::Dp, Method::Brute],
        other => return Err(Failure::Usage(format!("count supports dp, brute or all, not {}", other.name()))),
    };
    let sys = WeightedDiagonalSystem::new(field.clone(), exps, weights, targets, domain)?;

    let config = json!({
        "command": "count",
        "field": field_echo(&args.field),
        "exps": sys.exponents(),
        "weights": sys.weights(),
        "b": elements_json(&field, sys.targets()),
        "domain": args.domain,
        "method": args.method.name(),
        "common": common_echo(&args.common),
    });
    let header = vec!["instance_id", "q", "p", "s", "l", "m", "exponents", "weights", "b", "domain_size", "method", "count"];
    let mut report = Report::new("count", config, header);
    let mut counts = Vec::new();
    for &method in methods {
        let c = match method {
            Method::Dp => count_points_dp(&sys, &limits)?,
            _ => count_points_bruteforce(&sys, &limits)?,
        };
        let domain_size = sys.domain().size(&field);
        report.push(
            json!({
                "instance_id": 0,
                "method": method.name(),
                "q": c.q, "p": field.characteristic(), "s": field.degree(),
                "l": c.l, "m": c.m,
                "exponents": c.exponents,
                "weights": sys.weights(),
                "b": elements_json(&field, &c.targets),
                "domain_size": domain_size,
                "count": c.count.to_string(),
            }),
            vec![
                "0".into(),
                c.q.to_string(),
                field.characteristic().to_string(),
                field.degree().to_string(),
                c.l.to_string(),
                c.m.to_string(),
                list_csv(&c.exponents),
                list_csv(sys.weights()),
                elements_csv(&field, &c.targets),
                domain_size.to_string(),
                method.name().into(),
                c.count.to_string(),
            ],
        );
        counts.push(c.count);
    }
    Ok(finish_agreement(report, &counts))
}

/// Rows agree with each other; with one method every row passes.
fn finish_agreement(mut report: Report, counts: &[num_bigint::BigUint]) -> Outcome {
    let agree = counts.windows(2).all(|w| w[0] == w[1]);
    report.summary.total = counts.len();
    if agree {
        report.summary.pass = counts.len();
    } else {
        report.summary.fail = counts.len();
    }
    if counts.len() > 1 {
        report.summary_extra.insert("agreement".into(), json!(agree));
    }
    Outcome { report, ok: agree }
}

pub fn ssp(args: &SspArgs) -> Result<Outcome, Failure> {
    let limits = args.common.limits();
    let field = build_field(&args.field, &limits)?;
    let exps: Vec<u64> = parse_list("exps", &args.exps)?;
    let targets = parse_elements(&field, "b", &args.b)?;
    let domain = build_domain(&field, &args.domain)?;
    let methods: Vec<SspMethod> = match args.method {
        Method::Ie => vec![SspMethod::InclusionExclusion],
        Method::Dist | Method::Dp => vec![SspMethod::SubsetDp],
        Method::Brute => vec![SspMethod::Enumeration],
        Method::All => SspMethod::ALL.to_vec(),
    };
    let inst = MomentInstance::new(field.clone(), domain, args.k, exps, targets)?;
    let domain_size = inst.domain().size(&field);

    let config = json!({
        "command": "ssp",
        "field": field_echo(&args.field),
        "k": args.k,
        "exps": inst.exponents(),
        "b": elements_json(&field, inst.targets()),
        "domain": args.domain,
        "method": args.method.name(),
        "common": common_echo(&args.common),
    });
    let header = vec!["instance_id", "q", "p", "s", "k", "m", "exponents", "b", "domain_size", "method", "count"];
    let mut report = Report::new("ssp", config, header);
    if args.k as u64 > domain_size {
        report.notes.push(format!("k = {} exceeds |D| = {domain_size}; there are no k-subsets", args.k));
    }
    let mut counts = Vec::new();
    for method in methods {
        let n = count_subsets(&inst, method, &limits)?;
        report.push(
            json!({
                "instance_id": 0,
                "method": method.name(),
                "q": field.order(), "p": field.characteristic(), "s": field.degree(),
                "k": inst.k(), "m": inst.m(),
                "exponents": inst.exponents(),
                "b": elements_json(&field, inst.targets()),
                "domain_size": domain_size,
                "count": n.to_string(),
            }),
            vec![
                "0".into(),
                field.order().to_string(),
                field.characteristic().to_string(),
                field.degree().to_string(),
                inst.k().to_string(),
                inst.m().to_string(),
                list_csv(inst.exponents()),
                elements_csv(&field, inst.targets()),
                domain_size.to_string(),
                method.name().into(),
                n.to_string(),
            ],
        );
        counts.push(n);
    }
    Ok(finish_agreement(report, &counts))
}

pub fn identities(args: &IdentitiesArgs) -> Result<Outcome, Failure> {
    let range = parse_range(&args.k_range)?;
    let limits = args.common.limits();
    if *range.end() > limits.cycle_k {
        return Err(Failure::Limit(format!("k up to {} exceeds the cycle-type limit {}", range.end(), limits.cycle_k)));
    }
    let rows = all_rows(range.clone())?;
    let config = json!({
        "command": "identities",
        "k_range": [range.start(), range.end()],
        "common": common_echo(&args.common),
    });
    let mut report = Report::new("identities", config, vec!["instance_id", "identity", "params", "lhs", "rhs", "pass"]);
    for (i, r) in rows.iter().enumerate() {
        let params: serde_json::Map<String, Value> = r.params.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
        let params_csv = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";");
        report.push(
            json!({
                "instance_id": i,
                "identity": r.kind.name(),
                "params": params,
                "lhs": r.lhs,
                "rhs": r.rhs,
                "pass": r.pass,
            }),
            vec![i.to_string(), r.kind.name().into(), params_csv, r.lhs.clone(), r.rhs.clone(), r.pass.to_string()],
        );
    }
    let pass = rows.iter().filter(|r| r.pass).count();
    report.summary.total = rows.len();
    report.summary.pass = pass;
    report.summary.fail = rows.len() - pass;
    let ok = report.summary.fail == 0;
    Ok(Outcome { report, ok })
}

/// One grid point of the verification sweep.
#[derive(Debug, Clone)]
enum Instance {
    Diagonal { p: u64, s: u32, k: usize, exps: Vec<u64>, b: Vec<u32> },
    Subset { p: u64, s: u32, k: usize, exps: Vec<u64>, b: Vec<u32> },
}

fn prime_powers_upto(n: u64) -> Vec<(u64, u32)> {
    (2..=n)
        .filter_map(|q| {
            let p = (2..=q).find(|d| q % d == 0)?;
            let (mut r, mut s) = (q, 0);
            while r % p == 0 {
                r /= p;
                s += 1;
            }
            (r == 1).then_some((p, s))
        })
        .collect()
}

fn increasing_lists(pool: &[u64], m: usize) -> Vec<Vec<u64>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &d) in pool.iter().enumerate() {
        for mut rest in increasing_lists(&pool[i + 1..], m - 1) {
            rest.insert(0, d);
            out.push(rest);
        }
    }
    out
}

/// `b = 0` plus `extra` random nonzero target vectors, drawn in grid order.
fn targets(rng: &mut ChaCha8Rng, q: u64, m: usize, extra: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0; m]];
    let total = q.pow(m as u32);
    for _ in 0..extra.min(total as usize - 1) {
        loop {
            let code = rng.gen_range(1..total);
            let b: Vec<u32> = (0..m).map(|i| (code / q.pow(i as u32) % q) as u32).collect();
            if !out.contains(&b) {
                out.push(b);
                break;
            }
        }
    }
    out
}

fn verify_grid(args: &VerifyArgs) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.common.seed);
    let mut out = Vec::new();
    let fields = prime_powers_upto(args.q_max);
    if matches!(args.kind, Kind::Diagonal | Kind::All) {
        for &(p, s) in &fields {
            let pool: Vec<u64> = (2..=5).filter(|d| d % p != 0).collect();
            for k in 1..=args.k_max {
                for m in (1..=args.m_max).filter(|m| 2 * m < k) {
                    for exps in increasing_lists(&pool, m) {
                        for b in targets(&mut rng, p.pow(s), m, args.targets) {
                            out.push(Instance::Diagonal { p, s, k, exps: exps.clone(), b });
                        }
                    }
                }
            }
        }
    }
    if matches!(args.kind, Kind::Subset | Kind::All) {
        let lists: [&[u64]; 4] = [&[1], &[2], &[1, 2], &[2, 3]];
        for &(p, s) in &fields {
            let q = p.pow(s);
            for k in 1..=args.k_max.min(q as usize) {
                for exps in lists.iter().filter(|e| e.len() <= args.m_max) {
                    for b in targets(&mut rng, q, exps.len(), args.targets) {
                        out.push(Instance::Subset { p, s, k, exps: exps.to_vec(), b });
                    }
                }
            }
        }
    }
    out
}

fn run_instance(inst: &Instance, limits: &Limits) -> Result<CountReport, Failure> {
    match inst {
        Instance::Diagonal { p, s, k, exps, b } => {
            let f = Arc::new(FieldSpec::with_limits(*p, *s, limits)?);
            let b = b.iter().map(|&i| f.element(i)).collect::<Result<Vec<FieldElement>, _>>()?;
            let sys = WeightedDiagonalSystem::unweighted(f, exps.clone(), *k, b, Domain::FullField)?;
            Ok(verify_diagonal(&sys, limits)?)
        }
        Instance::Subset { p, s, k, exps, b } => {
            let f = Arc::new(FieldSpec::with_limits(*p, *s, limits)?);
            let b = b.iter().map(|&i| f.element(i)).collect::<Result<Vec<FieldElement>, _>>()?;
            let inst = MomentInstance::new(f, Domain::FullField, *k, exps.clone(), b)?;
            Ok(verify_moment(&inst, limits)?)
        }
    }
}

pub const VERIFY_HEADER: [&str; 14] = [
    "instance_id", "q", "p", "s", "k", "m", "exponents", "b", "exact", "main_term", "bound", "residual", "in_hypothesis",
    "pass",
];

fn report_row(id: usize, r: &CountReport) -> (Value, Vec<String>) {
    let f = FieldSpec::new(r.p, r.s).expect("field already built");
    let json = json!({
        "instance_id": id,
        "kind": r.kind.name(),
        "q": r.q, "p": r.p, "s": r.s, "k": r.k, "m": r.m,
        "exponents": r.exponents,
        "b": elements_json(&f, &r.targets),
        "exact": r.exact.to_string(),
        "main_term": rational_json(&r.main_term),
        "bound": {
            "formula": r.bound.formula.name(),
            "value": qsqrt_json(&r.bound.value),
            "hypothesis_met": r.bound.hypothesis_met,
        },
        "residual": rational_json(&r.residual),
        "in_hypothesis": r.in_hypothesis,
        "pass": r.pass,
        "method": r.method,
    });
    let csv = vec![
        id.to_string(),
        r.q.to_string(),
        r.p.to_string(),
        r.s.to_string(),
        r.k.to_string(),
        r.m.to_string(),
        list_csv(&r.exponents),
        elements_csv(&f, &r.targets),
        r.exact.to_string(),
        rational_csv(&r.main_term),
        qsqrt_csv(&r.bound.value),
        rational_csv(&r.residual),
        r.in_hypothesis.to_string(),
        r.pass.to_string(),
    ];
    (json, csv)
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome, Failure> {
    let limits = args.common.limits();
    let grid = verify_grid(args);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.common.jobs as usize)
        .build()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    // indexed collect keeps grid order whatever the thread count
    let reports: Vec<CountReport> = pool.install(|| {
        grid.par_iter().map(|inst| run_instance(inst, &limits)).collect::<Result<_, _>>()
    })?;

    let config = json!({
        "command": "verify",
        "kind": format!("{:?}", args.kind).to_lowercase(),
        "q_max": args.q_max,
        "k_max": args.k_max,
        "m_max": args.m_max,
        "targets": args.targets,
        "common": common_echo(&args.common),
    });
    let mut report = Report::new("verify", config, VERIFY_HEADER.to_vec());
    let mut ok = true;
    for (id, r) in reports.iter().enumerate() {
        let (json, csv) = report_row(id, r);
        report.push(json, csv);
        report.summary.total += 1;
        if r.pass {
            report.summary.pass += 1;
        } else {
            report.summary.fail += 1;
        }
        if !r.in_hypothesis {
            report.summary.out_of_hypothesis += 1;
        }
        ok &= r.pass || !r.in_hypothesis;
    }
    Ok(Outcome { report, ok })
}
