//! Command-line front end: argument parsing, per-command reports and exit codes.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::bipolar::{certify, certify_example_knots, check_certificate, example_facts, FactBase, KnotExpr, Polarity};
use crate::cobordism::{self, AssignmentScope, CurveClassAssignment};
use crate::cover::{self, SurgeryLinkingData};
use crate::dinv;
use crate::error::{Error, Result};
use crate::family::{self, check_certificate as check_family_certificate};
use crate::report::{rational_json, Report, Verdict};
use crate::seifert::{self, SeifertDocument, SignatureFunction};

pub const THREADS_ENV: &str = "OBSTRUCTION_LAB_THREADS";

#[derive(Parser, Debug)]
#[command(name = "obstruction-lab", version, about = "Exact checks for a bipolar filtration obstruction")]
pub struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ScopeArg {
    All,
    Families,
}

impl From<ScopeArg> for AssignmentScope {
    fn from(s: ScopeArg) -> Self {
        match s {
            ScopeArg::All => AssignmentScope::All,
            ScopeArg::Families => AssignmentScope::Families,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run every cover, cobordism and bound check over a range of m.
    VerifyAll {
        /// `a..b` (inclusive) or a single value.
        #[arg(long, default_value = "3..13")]
        m: String,
        /// Keep only odd m.
        #[arg(long)]
        odd: bool,
        /// Perturb one entry of the closed-form inverse (soundness probe).
        #[arg(long)]
        inject_corrupt_pinv: bool,
        #[arg(long, value_enum, default_value = "all")]
        scope: ScopeArg,
    },
    /// Linking matrix, homology, linking form and metabolizers for one m.
    BranchedCover {
        #[arg(long)]
        m: u32,
    },
    /// Linking conditions, characteristic class and ledger for one odd m.
    Cobordism {
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value = "all")]
        scope: ScopeArg,
    },
    /// Assembly of the final d-invariant bound.
    Theorem {
        #[arg(long)]
        m: u32,
    },
    /// Parameter selection for the Alexander polynomial family.
    Family {
        /// Comma separated, strictly increasing odd moduli.
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long, default_value_t = family::DEFAULT_SEARCH_CAP)]
        cap: u64,
    },
    /// Bipolarity certificates for a knot expression or the example knots.
    Certify {
        /// Knot expression JSON.
        #[arg(long, conflicts_with = "example")]
        input: Option<PathBuf>,
        /// Fact base JSON; the bundled one by default.
        #[arg(long)]
        facts: Option<PathBuf>,
        /// Certify the example knot at this level instead.
        #[arg(long)]
        example: Option<u32>,
        #[arg(long, default_value_t = 1)]
        index: usize,
    },
    /// Correction terms of a lens space.
    DLens { p: u64, q: u64, i: Option<u64> },
    /// Classical invariants of a Seifert matrix.
    Invariants {
        /// `{"name": ..., "matrix": [[...]]}`
        #[arg(long)]
        seifert: PathBuf,
        /// Orders d for the signature averages.
        #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
        rho: Vec<u64>,
    },
}

/// Parse `a..b`, `a..=b` or `a`.
pub fn parse_range(s: &str, odd: bool) -> Result<Vec<u32>> {
    let bad = || Error::InvalidArgument(format!("bad range {s:?}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            (a.trim().parse::<u32>().map_err(|_| bad())?, b.trim().parse::<u32>().map_err(|_| bad())?)
        }
        None => {
            let v = s.trim().parse::<u32>().map_err(|_| bad())?;
            (v, v)
        }
    };
    let out: Vec<u32> = (lo..=hi).filter(|m| !odd || m % 2 == 1).collect();
    if out.is_empty() {
        return Err(Error::InvalidArgument(format!("range {s:?} is empty")));
    }
    if lo < 2 {
        return Err(Error::InvalidArgument("m must be at least 2".into()));
    }
    Ok(out)
}

fn thread_pool() -> rayon::ThreadPool {
    let n = std::env::var(THREADS_ENV).ok().and_then(|s| s.parse::<usize>().ok()).unwrap_or(0);
    rayon::ThreadPoolBuilder::new().num_threads(n).build().expect("thread pool")
}

fn int_str(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

fn rat_matrix_json(m: &crate::exact::RatMatrix) -> Value {
    Value::Array((0..m.rows()).map(|r| Value::Array(m.row(r).iter().map(rational_json).collect())).collect())
}

/// Verdicts and data for the cover side of one `m`.
pub fn cover_checks(m: u32, corrupt: bool) -> Result<(Vec<Verdict>, Value)> {
    let mut verdicts = Vec::new();
    let data = SurgeryLinkingData::new(m)?;
    let q = cover::mersenne(m);
    let mut pinv = data.pinv.clone();
    if corrupt {
        let v = pinv.get(0, 1) + BigRational::new(1.into(), q.clone());
        pinv.set(0, 1, v);
    }
    let inverse_ok = cover::verify_inverse_with(m, &pinv)?;
    let integral = pinv.scale(&BigRational::from_integer(q.clone())).to_int().is_some();
    verdicts.push(Verdict::new(format!("m={m}/inverse"), inverse_ok && integral, json!({ "integral": integral })));

    let divisors = cover::p_divisors(m)?;
    let mut expected = vec![BigInt::from(1); divisors.len() - 2];
    expected.extend([q.clone(), q.clone()]);
    verdicts.push(Verdict::new(
        format!("m={m}/divisors"),
        divisors == expected,
        json!({ "divisors": divisors.iter().map(int_str).collect::<Vec<_>>() }),
    ));
    let via_seifert = cover::homology_via_seifert(&cobordism::base_knot(), m)?;
    verdicts.push(Verdict::new(
        format!("m={m}/homology_via_seifert"),
        via_seifert == divisors,
        json!({ "divisors": via_seifert.iter().map(int_str).collect::<Vec<_>>() }),
    ));

    let g = cover::homology(m)?;
    let (x1, x2) = (g.x1.clone().unwrap_or_default(), g.x2.clone().unwrap_or_default());
    let cross = g.pair_value(&x1, &x2);
    let cross_order = cross.denom().clone();
    let form_ok = g.pair(&x1, &x1) == 0 && g.pair(&x2, &x2) == 0 && cross_order == q;
    verdicts.push(Verdict::new(
        format!("m={m}/linking_form"),
        form_ok,
        json!({
            "x1_x1": rational_json(&g.pair_value(&x1, &x1)),
            "x2_x2": rational_json(&g.pair_value(&x2, &x2)),
            "x1_x2": rational_json(&cross),
            "x1_x2_order": int_str(&cross_order),
        }),
    ));
    let report = cover::metabolizers(&g)?;
    let labels: Vec<&str> = report.metabolizers.iter().map(|x| x.label.as_str()).collect();
    verdicts.push(Verdict::new(
        format!("m={m}/metabolizer_dichotomy"),
        labels == ["<x1>", "<x2>"],
        json!({ "labels": labels, "subgroups_examined": report.subgroups_examined }),
    ));
    let spinc = cover::spinc_offset_check(m)?;
    verdicts.push(Verdict::new(format!("m={m}/spinc_offset"), spinc, Value::Null));
    if family::is_prime(m as u64) {
        let certs: Vec<cover::CoprimeCertificate> = (2..=m as u64)
            .filter(|&p| family::is_prime(p))
            .map(|p| cover::mersenne_coprime(p, m))
            .collect::<Result<_>>()?;
        let ok = certs.iter().all(|c| c.coprime);
        verdicts.push(Verdict::new(format!("m={m}/mersenne_coprime"), ok, serde_json::to_value(&certs).expect("json")));
    }
    let data_json = json!({
        "m": m,
        "p_size": data.p.rows(),
        "pinv": rat_matrix_json(&data.pinv),
        "group": g,
        "form": g.form_values().iter().map(|r| r.iter().map(rational_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "metabolizers": report,
    });
    Ok((verdicts, data_json))
}

/// Verdicts and data for the cobordism side of one odd `m`.
pub fn cobordism_checks(m: u32, scope: AssignmentScope) -> Result<(Vec<Verdict>, Value)> {
    let data = SurgeryLinkingData::new(m)?;
    let asg = CurveClassAssignment::standard(m)?;
    let mut verdicts = Vec::new();
    let c1 = cobordism::condition_one(&data, &asg);
    verdicts.push(Verdict::new(format!("m={m}/condition_one"), c1.pass, serde_json::to_value(&c1).expect("json")));
    let mut scopes = Vec::new();
    for s in [scope, AssignmentScope::Families] {
        if scopes.contains(&s) {
            continue;
        }
        scopes.push(s);
        let c2 = cobordism::condition_two(&data, s)?;
        let name = match s {
            AssignmentScope::All => "condition_two_all_pairs",
            AssignmentScope::Families => "condition_two_families",
        };
        verdicts.push(Verdict::new(
            format!("m={m}/{name}"),
            c2.pass,
            json!({ "cases": c2.cases.len(), "first_column_alternates": c2.first_column_alternates, "zero_diagonal": c2.zero_diagonal }),
        ));
    }
    let ch = cobordism::characteristic_check(&data, scope)?;
    verdicts.push(Verdict::new(
        format!("m={m}/characteristic"),
        ch.pass && ch.cross_checked,
        serde_json::to_value(&ch).expect("json"),
    ));
    let led = cobordism::ledger(m, &cobordism::base_knot())?;
    verdicts.push(Verdict::new(
        format!("m={m}/ledger"),
        led.matches_expected(),
        serde_json::to_value(&led).expect("json"),
    ));
    Ok((verdicts, json!({ "m": m, "assignment": asg })))
}

/// Verdicts for the bound assembly and the obstruction pipeline.
pub fn theorem_checks(m: u32) -> Result<(Vec<Verdict>, Value)> {
    let t = dinv::theorem_assembly(m)?;
    let target = BigRational::new((-3).into(), 2.into());
    let mut verdicts = vec![Verdict::new(
        format!("m={m}/final_bound"),
        t.final_bound == target && t.d_l31 == BigRational::new(1.into(), 2.into()),
        serde_json::to_value(&t).expect("json"),
    )];
    let g = cover::homology(m)?;
    let mets = cover::metabolizers(&g)?;
    let verdicts_obs: Vec<dinv::ObstructionVerdict> =
        mets.metabolizers.iter().map(|g| dinv::obstruction_check(m, g, &t.final_bound)).collect();
    let consistent = mets.metabolizers.iter().zip(&verdicts_obs).all(|(g, v)| v.contradiction == g.contains_x1);
    verdicts.push(Verdict::new(
        format!("m={m}/obstruction_pipeline"),
        consistent,
        serde_json::to_value(&verdicts_obs).expect("json"),
    ));
    Ok((verdicts, json!({ "m": m })))
}

fn cmd_verify_all(m: &str, odd: bool, corrupt: bool, scope: AssignmentScope) -> Result<Report> {
    let ms = parse_range(m, odd)?;
    let results: Vec<Result<(Vec<Verdict>, Value)>> = thread_pool().install(|| {
        ms.par_iter()
            .map(|&m| {
                let (mut v, cover_data) = cover_checks(m, corrupt)?;
                let mut entry = json!({ "m": m, "cover": { "divisors": cover_data["group"]["divisors"].clone() } });
                if m % 2 == 1 && m >= 3 {
                    let (cv, _) = cobordism_checks(m, scope)?;
                    v.extend(cv);
                    let (tv, _) = theorem_checks(m)?;
                    v.extend(tv);
                } else {
                    entry["skipped"] = json!("cobordism and bound checks need odd m");
                }
                Ok((v, entry))
            })
            .collect()
    });
    let mut report = Report::new("verify-all");
    let mut entries = Vec::new();
    for r in results {
        let (v, e) = r?;
        report.verdicts.extend(v);
        entries.push(e);
    }
    report.data = json!({ "m_values": ms, "scope": scope, "corrupt_pinv": corrupt, "per_m": entries });
    Ok(report)
}

fn cmd_family(primes: &[u64], n: u32, cap: u64) -> Result<Report> {
    let sel = family::choose_family_parameters(primes, n, cap)?;
    let mut report = Report::new("family");
    let mut rows = Vec::new();
    for row in &sel.rows {
        let p = row.prime;
        let bound = family::rho_lower_bound(&row.profile, p)?;
        let floor = BigRational::new(4.into(), p.into());
        let tag = format!("p={p}");
        report.push(Verdict::new(format!("{tag}/window_certificate"), check_family_certificate(row), Value::Null));
        report.push(Verdict::new(
            format!("{tag}/rho_bound"),
            bound >= floor,
            json!({ "bound": rational_json(&bound) }),
        ));
        report.push(Verdict::new(
            format!("{tag}/multiplicity_exceeds_budget"),
            family::multiplicity_exceeds_budget(n, p, &row.profile.multiplicity),
            Value::Null,
        ));
        report.push(Verdict::new(
            format!("{tag}/realization"),
            row.profile.realization_matches() == Some(true),
            Value::Null,
        ));
        rows.push(json!({
            "index": row.index + 1,
            "prime": p,
            "previous": row.previous,
            "is_prime": row.is_prime,
            "a": row.profile.a,
            "b": row.profile.b,
            "window_pi_fractions": [format!("1 - 1/{}", row.previous), format!("1 - 1/{p}")],
            "x_certificate": [rational_json(&row.x_certificate.0), rational_json(&row.x_certificate.1)],
            "multiplicity": int_str(&row.profile.multiplicity),
            "rho_lower_bound": rational_json(&bound),
            "candidates_tried": row.candidates_tried,
        }));
    }
    let matrix: Vec<Value> = sel
        .independence_matrix()
        .into_iter()
        .map(|(i, j, ok)| json!({ "i": i + 1, "j": j + 1, "rho_vanishes": ok }))
        .collect();
    report.push(Verdict::new("independence", matrix.iter().all(|e| e["rho_vanishes"] == true), Value::Null));
    let budget = family::case1_budget(n, &BigRational::from_integer(0.into()), 1)?;
    report.data = json!({
        "level": n,
        "rows": rows,
        "independence": matrix,
        "budget_total": int_str(&budget.total),
        "budget_terms": budget.per_term_bounds.iter().map(int_str).collect::<Vec<_>>(),
    });
    Ok(report)
}

fn read_file(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })
}

fn cmd_certify(input: Option<&PathBuf>, facts: Option<&PathBuf>, example: Option<u32>, index: usize) -> Result<Report> {
    let mut report = Report::new("certify");
    let (facts, expr) = match (input, example) {
        (_, Some(n)) => {
            let certs = certify_example_knots(n, index)?;
            let fb = example_facts(index);
            for c in [&certs.negative, &certs.positive] {
                let ok = check_certificate(&fb, c).is_ok();
                report.push(Verdict::new(
                    format!("{:?}/replay", c.claim.polarity).to_lowercase(),
                    ok,
                    json!({ "level": c.claim.level, "nodes": c.node_count() }),
                ));
            }
            report.data = serde_json::to_value(&certs).expect("json");
            return Ok(report);
        }
        (Some(path), None) => {
            let fb = match facts {
                Some(f) => FactBase::from_json(&read_file(f)?)?,
                None => FactBase::default(),
            };
            let expr: KnotExpr = serde_json::from_str(&read_file(path)?)
                .map_err(|e| Error::InvalidArgument(format!("knot expression: {e}")))?;
            (fb, expr)
        }
        (None, None) => return Err(Error::InvalidArgument("give --input or --example".into())),
    };
    let mut certs = serde_json::Map::new();
    let mut any = false;
    for pol in [Polarity::Negative, Polarity::Positive] {
        let key = format!("{pol:?}").to_lowercase();
        match certify(&facts, &expr, pol) {
            Ok(c) => {
                any = true;
                let ok = check_certificate(&facts, &c).is_ok();
                report.push(Verdict::new(format!("{key}/replay"), ok, json!({ "level": c.claim.level })));
                certs.insert(key, serde_json::to_value(&c).expect("json"));
            }
            Err(e @ Error::UnknownFact(_)) => return Err(e),
            Err(e) => {
                certs.insert(key, json!({ "uncertified": e.to_string() }));
            }
        }
    }
    report.push(Verdict::new("certified", any, Value::Null));
    report.data = Value::Object(certs);
    Ok(report)
}

fn cmd_d_lens(p: u64, q: u64, i: Option<u64>) -> Result<Report> {
    let mut report = Report::new("d-lens");
    let indices: Vec<u64> = match i {
        Some(i) => vec![i],
        None => (0..p).collect(),
    };
    let values: Vec<(u64, BigRational)> =
        indices.iter().map(|&i| Ok((i, dinv::lens_d(p, q, i)?))).collect::<Result<_>>()?;
    let scale = BigRational::from_integer((4 * p * q.max(1)).into());
    let integral = values.iter().all(|(_, d)| (d * &scale).is_integer());
    report.push(Verdict::new("integrality", integral, Value::Null));
    report.push(Verdict::new("conjugation_symmetry", dinv::conjugation_symmetric(p, q)?, Value::Null));
    let spin = dinv::spin_index(p, q)?;
    report.data = json!({
        "p": p,
        "q": q,
        "values": values.iter().map(|(i, d)| json!({ "i": i, "d": rational_json(d) })).collect::<Vec<_>>(),
        "spin": spin,
    });
    Ok(report)
}

fn cmd_invariants(path: &PathBuf, rho: &[u64]) -> Result<Report> {
    let (name, v) = SeifertDocument::parse(&read_file(path)?)?;
    let mut report = Report::new("invariants");
    let delta = v.alexander_polynomial();
    let sig = SignatureFunction::new(&v);
    let jumps: Vec<Value> =
        sig.jumps().iter().map(|r| json!({ "x_lo": rational_json(r.lo()), "x_hi": rational_json(r.hi()) })).collect();
    let mut rhos = Vec::new();
    for &d in rho {
        if d == 0 {
            return Err(Error::InvalidArgument("rho order must be positive".into()));
        }
        rhos.push(json!({ "d": d, "rho": rational_json(&seifert::rho_average(&v, d)) }));
    }
    let module = seifert::alexander_module(&v);
    let n = v.size();
    let mut pairing = Vec::new();
    for a in 0..n {
        let mut row = Vec::new();
        for b in 0..n {
            let val = seifert::blanchfield_pairing(&v, &seifert::basis_element(n, a), &seifert::basis_element(n, b))?;
            row.push(Value::String(val.to_string()));
        }
        pairing.push(Value::Array(row));
    }
    let metabolizers = match seifert::blanchfield_metabolizers(&v) {
        Ok(ms) => json!(ms.iter().map(|m| m.label.clone()).collect::<Vec<_>>()),
        Err(e) => json!({ "unsupported": e.to_string() }),
    };
    report.push(Verdict::new(
        "alexander_normalized",
        delta.is_symmetric() && delta.at_one().magnitude() == &1u32.into(),
        Value::Null,
    ));
    report.data = json!({
        "name": name,
        "alexander": { "low": delta.low(), "coeffs": delta.coeffs().iter().map(int_str).collect::<Vec<_>>() },
        "signature": { "jumps": jumps, "values": sig.component_values(), "at_minus_one": sig.at_root_of_unity(1, 2) },
        "rho": rhos,
        "module": module.components.iter().map(|c| c.label()).collect::<Vec<_>>(),
        "blanchfield_basis": pairing,
        "blanchfield_metabolizers": metabolizers,
    });
    Ok(report)
}

fn dispatch(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::VerifyAll { m, odd, inject_corrupt_pinv, scope } => {
            cmd_verify_all(m, *odd, *inject_corrupt_pinv, (*scope).into())
        }
        Command::BranchedCover { m } => {
            let (verdicts, data) = cover_checks(*m, false)?;
            Ok(Report { verdicts, data, ..Report::new("branched-cover") })
        }
        Command::Cobordism { m, scope } => {
            let (verdicts, data) = cobordism_checks(*m, (*scope).into())?;
            Ok(Report { verdicts, data, ..Report::new("cobordism") })
        }
        Command::Theorem { m } => {
            let (verdicts, data) = theorem_checks(*m)?;
            Ok(Report { verdicts, data, ..Report::new("theorem") })
        }
        Command::Family { primes, n, cap } => cmd_family(primes, *n, *cap),
        Command::Certify { input, facts, example, index } => {
            cmd_certify(input.as_ref(), facts.as_ref(), *example, *index)
        }
        Command::DLens { p, q, i } => cmd_d_lens(*p, *q, *i),
        Command::Invariants { seifert, rho } => cmd_invariants(seifert, rho),
    }
}

/// Run with the given arguments; returns the exit code (0 pass, 1 a failed verdict, 2 usage or I/O error).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let report = match dispatch(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let text = report.to_json();
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, format!("{text}\n")) {
                let _ = writeln!(err, "error: {}: {e}", path.display());
                return 2;
            }
        }
        None => {
            let _ = writeln!(out, "{text}");
        }
    }
    if report.all_pass() {
        0
    } else {
        1
    }
}
