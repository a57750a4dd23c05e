//! Command-line front end: argument parsing, dispatch and rendering.
//!
//! [`run`] is the whole program minus process I/O, so it can be driven from
//! tests. Exit codes: 0 success, 1 verification mismatch, 2 usage or parse
//! error, 3 size guard exceeded.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::bigpoly::{coeff_strings, IntPoly};
use crate::counting::{
    alpha_order, alpha_rs, alpha_rs_shifted, butler_alpha, chain_count_indices, chain_count_types,
    group_orders, identity_rhs, lemma_sides, partition_chains, total_count, CountKind, CountRecord,
};
use crate::error::{Error, Result};
use crate::oracle::{
    census_alpha_rs, chain_census, finite_subgroup_census, write_census_csv, OracleConfig,
};
use crate::partitions::{enum_padded, partitions_of, PaddedPartition, Partition};
use crate::qbinomial::pbinom;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SIZE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "sublat",
    version,
    about = "Exact subgroup and sublattice counting polynomials"
)]
pub struct CliConfig {
    /// Emit JSON instead of a table.
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Emit CSV instead of a table.
    #[arg(long, global = true)]
    pub csv: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Primes to evaluate the answer at.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub eval: Vec<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The p-binomial coefficient binom(n, k)_p.
    Pbinom {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        eval: EvalArgs,
    },
    /// Sublattices of Z^s whose quotient has the given type.
    Count {
        /// Quotient type, e.g. "2,0"; trailing zeros set s unless --s is given.
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        s: Option<usize>,
        /// Checked against the weight of the type.
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[command(flatten)]
        eval: EvalArgs,
    },
    /// Every quotient type of index p^r in Z^s, summed and compared to the total.
    CountAll {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[command(flatten)]
        eval: EvalArgs,
    },
    /// All sublattices of Z^s of index p^r.
    Total {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[command(flatten)]
        eval: EvalArgs,
    },
    /// Subgroups of type mu in the abelian p-group of type lambda.
    Butler {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[command(flatten)]
        eval: EvalArgs,
    },
    /// Subgroups of order p^k, with a unimodality report. All k when omitted.
    OrderCount {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        eval: EvalArgs,
    },
    /// Right-hand side of the partition identity for binom(n, k)_p.
    Identity {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Compare against binom(n, k)_p.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        eval: EvalArgs,
    },
    /// Chains of sublattices by quotient types ("1;2") or by indices ("1,2").
    Chain {
        #[arg(long, conflicts_with = "indices", required_unless_present = "indices")]
        types: Option<String>,
        #[arg(long)]
        indices: Option<String>,
        #[arg(long)]
        s: usize,
        #[command(flatten)]
        eval: EvalArgs,
    },
    /// Brute-force census of sublattices of index p^r in Z^s.
    Oracle {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        p: u64,
        /// Compare each tally with the closed form.
        #[arg(long)]
        compare: bool,
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Run the full verification sweep.
    Verify {
        #[arg(long, default_value_t = 12)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        max_s: usize,
        /// Largest r for the symbolic sweeps.
        #[arg(long, default_value_t = 8)]
        max_r: usize,
        /// Largest r (and |lambda|) for the brute-force sweeps.
        #[arg(long, default_value_t = 4)]
        oracle_max_r: usize,
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        primes: Vec<u64>,
        #[arg(long)]
        bound: Option<u64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// Exit code and rendered streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn with_code(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(err: &Error) -> Self {
        let code = match err {
            Error::SizeGuard { .. } => EXIT_SIZE,
            _ => EXIT_USAGE,
        };
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        }
    }
}

/// Parse `argv` (including the program name) and execute it.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let format = if config.json {
        Format::Json
    } else if config.csv {
        Format::Csv
    } else {
        Format::Table
    };
    dispatch(&config.command, format).unwrap_or_else(|e| Outcome::error(&e))
}

fn check_primes(primes: &[u64]) -> Result<()> {
    match primes.iter().find(|&&p| !crate::is_prime(p)) {
        Some(&p) => Err(Error::NotPrime(p)),
        None => Ok(()),
    }
}

fn oracle_config(bound: Option<u64>) -> Result<OracleConfig> {
    match bound {
        Some(b) => Ok(OracleConfig::new(b)),
        None => OracleConfig::from_env(),
    }
}

fn dispatch(cmd: &Command, format: Format) -> Result<Outcome> {
    match cmd {
        Command::Pbinom { n, k, eval } => {
            check_primes(&eval.eval)?;
            let rec = CountRecord::new(CountKind::Pbinom, [("n", n), ("k", k)], pbinom(*n, *k))
                .with_evals(&eval.eval);
            Ok(Outcome::ok(render_records(&[rec], format)))
        }
        Command::Count { ty, s, r, t, eval } => {
            check_primes(&eval.eval)?;
            let mut lambda: PaddedPartition = ty.parse()?;
            if let Some(s) = s {
                lambda = lambda.strip().pad(*s)?;
            }
            if let Some(r) = r {
                if *r != lambda.weight() {
                    return Err(Error::Parse(format!(
                        "--r {r} disagrees with |{lambda}| = {}",
                        lambda.weight()
                    )));
                }
            }
            let answer = alpha_rs_shifted(&lambda, *t)?;
            let params = [
                ("lambda", lambda.to_string()),
                ("r", lambda.weight().to_string()),
                ("s", lambda.len().to_string()),
                ("t", t.to_string()),
            ];
            let rec = CountRecord::new(CountKind::AlphaRs, params, answer).with_evals(&eval.eval);
            Ok(Outcome::ok(render_records(&[rec], format)))
        }
        Command::CountAll { r, s, eval } => {
            check_primes(&eval.eval)?;
            count_all(*r, *s, &eval.eval, format)
        }
        Command::Total { r, s, eval } => {
            check_primes(&eval.eval)?;
            if *s == 0 {
                return Err(Error::Parse("--s must be positive".into()));
            }
            let rec = CountRecord::new(CountKind::Total, [("r", r), ("s", s)], total_count(*r, *s))
                .with_evals(&eval.eval);
            Ok(Outcome::ok(render_records(&[rec], format)))
        }
        Command::Butler { lambda, mu, eval } => {
            check_primes(&eval.eval)?;
            let (lambda, mu): (Partition, Partition) = (lambda.parse()?, mu.parse()?);
            let params = [("lambda", lambda.to_string()), ("mu", mu.to_string())];
            let rec = CountRecord::new(CountKind::Butler, params, butler_alpha(&lambda, &mu))
                .with_evals(&eval.eval);
            Ok(Outcome::ok(render_records(&[rec], format)))
        }
        Command::OrderCount { lambda, k, eval } => {
            check_primes(&eval.eval)?;
            order_count(&lambda.parse()?, *k, &eval.eval, format)
        }
        Command::Identity { n, k, verify, eval } => {
            check_primes(&eval.eval)?;
            identity(*n, *k, *verify, &eval.eval, format)
        }
        Command::Chain {
            types,
            indices,
            s,
            eval,
        } => {
            check_primes(&eval.eval)?;
            let rec = match (types, indices) {
                (Some(types), _) => {
                    let chain = types
                        .split(';')
                        .map(str::parse)
                        .collect::<Result<Vec<Partition>>>()?;
                    let label = chain.iter().map(ToString::to_string).collect::<Vec<_>>();
                    let params = [("types", label.join(";")), ("s", s.to_string())];
                    CountRecord::new(
                        CountKind::ChainTypes,
                        params,
                        chain_count_types(&chain, *s)?,
                    )
                }
                (None, Some(indices)) => {
                    let list = parse_indices(indices)?;
                    let params = [
                        ("indices", indices.trim().to_string()),
                        ("s", s.to_string()),
                    ];
                    CountRecord::new(
                        CountKind::ChainIndices,
                        params,
                        chain_count_indices(&list, *s)?,
                    )
                }
                (None, None) => unreachable!("clap requires one of --types/--indices"),
            };
            Ok(Outcome::ok(render_records(
                &[rec.with_evals(&eval.eval)],
                format,
            )))
        }
        Command::Oracle {
            r,
            s,
            p,
            compare,
            bound,
        } => oracle(*r, *s, *p, *compare, oracle_config(*bound)?, format),
        Command::Verify {
            max_n,
            max_s,
            max_r,
            oracle_max_r,
            primes,
            bound,
        } => {
            check_primes(primes)?;
            let plan = VerifyPlan {
                max_n: *max_n,
                max_s: *max_s,
                max_r: *max_r,
                oracle_max_r: *oracle_max_r,
                primes: primes.clone(),
                config: oracle_config(*bound)?,
            };
            let report = verify(&plan)?;
            let code = if report.passed {
                EXIT_OK
            } else {
                EXIT_MISMATCH
            };
            Ok(Outcome::with_code(code, render_report(&report, format)))
        }
    }
}

fn parse_indices(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|e| Error::Parse(format!("bad index {t:?}: {e}")))
        })
        .collect()
}

fn status(ok: bool) -> &'static str {
    if ok {
        "MATCH"
    } else {
        "MISMATCH"
    }
}

fn count_all(r: usize, s: usize, primes: &[u64], format: Format) -> Result<Outcome> {
    if s == 0 {
        return Err(Error::Parse("--s must be positive".into()));
    }
    let records: Vec<CountRecord> = enum_padded(r, s)
        .map(|l| {
            let params = [
                ("lambda", l.to_string()),
                ("r", r.to_string()),
                ("s", s.to_string()),
            ];
            CountRecord::new(CountKind::AlphaRs, params, alpha_rs(&l)).with_evals(primes)
        })
        .collect();
    let sum = IntPoly::sum(records.iter().map(CountRecord::answer));
    let total = total_count(r, s);
    let ok = sum == total;
    let out = match format {
        Format::Json => {
            let v = json!({
                "records": records,
                "sum": sum,
                "total": total,
                "status": status(ok),
            });
            format!("{v}\n")
        }
        Format::Csv => render_records(&records, format),
        Format::Table => {
            let mut out = render_table(&records, primes);
            let _ = writeln!(out, "sum:   {sum}");
            let _ = writeln!(out, "total: {total}");
            let _ = writeln!(out, "{}", status(ok));
            out
        }
    };
    let code = if ok { EXIT_OK } else { EXIT_MISMATCH };
    Ok(Outcome::with_code(code, out))
}

fn order_count(
    lambda: &Partition,
    k: Option<usize>,
    primes: &[u64],
    format: Format,
) -> Result<Outcome> {
    let ks: Vec<usize> = match k {
        Some(k) => vec![k],
        None => (0..=lambda.weight()).collect(),
    };
    let records: Vec<CountRecord> = ks
        .iter()
        .map(|&k| {
            let params = [("lambda", lambda.to_string()), ("k", k.to_string())];
            CountRecord::new(CountKind::OrderCount, params, alpha_order(lambda, k))
                .with_evals(primes)
        })
        .collect();
    let unimodal = |r: &CountRecord| r.answer().shape().report().is_some_and(|s| s.is_unimodal);
    let out = match format {
        Format::Json => {
            let rows: Vec<_> = records
                .iter()
                .map(|r| json!({ "record": r, "unimodal": unimodal(r) }))
                .collect();
            format!("{}\n", serde_json::Value::Array(rows))
        }
        Format::Csv => render_records(&records, format),
        Format::Table => {
            let mut out = String::new();
            for r in &records {
                let _ = writeln!(
                    out,
                    "k={}: {}  [{}]",
                    r.params["k"],
                    r.answer(),
                    if unimodal(r) {
                        "unimodal"
                    } else {
                        "not unimodal"
                    }
                );
                for (p, v) in &r.evals {
                    let _ = writeln!(out, "  p={p}: {v}");
                }
            }
            out
        }
    };
    Ok(Outcome::ok(out))
}

fn identity(n: usize, k: usize, verify: bool, primes: &[u64], format: Format) -> Result<Outcome> {
    let rhs = identity_rhs(n, k);
    let rec =
        CountRecord::new(CountKind::Identity, [("n", n), ("k", k)], rhs.clone()).with_evals(primes);
    if !verify {
        return Ok(Outcome::ok(render_records(&[rec], format)));
    }
    let expected = pbinom(n, k);
    let ok = expected == rhs;
    let out = match format {
        Format::Json => {
            let mut v = json!({ "record": rec, "status": status(ok) });
            if !ok {
                v["expected"] = json!(coeff_strings(&expected));
                v["actual"] = json!(coeff_strings(&rhs));
            }
            format!("{v}\n")
        }
        Format::Csv => {
            let mut out = render_records(&[rec], format);
            let _ = writeln!(out, "# {}", status(ok));
            out
        }
        Format::Table => {
            let mut out = render_records(&[rec], format);
            if !ok {
                let _ = writeln!(out, "expected: {expected}");
            }
            let _ = writeln!(out, "{}", status(ok));
            out
        }
    };
    let code = if ok { EXIT_OK } else { EXIT_MISMATCH };
    Ok(Outcome::with_code(code, out))
}

fn oracle(
    r: usize,
    s: usize,
    p: u64,
    compare: bool,
    config: OracleConfig,
    format: Format,
) -> Result<Outcome> {
    check_primes(&[p])?;
    if s == 0 {
        return Err(Error::Parse("--s must be positive".into()));
    }
    config.check(p, r)?;
    if format == Format::Csv && !compare {
        let mut buf = Vec::new();
        write_census_csv(s, r, p, &mut buf)?;
        return Ok(Outcome::ok(String::from_utf8(buf).expect("csv is utf-8")));
    }
    let census = census_alpha_rs(s, r, p);
    if !compare {
        let out = match format {
            Format::Json => format!("{}\n", census.to_json()),
            _ => {
                let mut out = format!("s={s} r={r} p={p}\n");
                for (ty, v) in census.tally.iter().rev() {
                    let _ = writeln!(out, "{ty:<12} {v}");
                }
                let _ = writeln!(out, "total        {}", census.total);
                out
            }
        };
        return Ok(Outcome::ok(out));
    }
    let mut rows = Vec::new();
    let mut ok = true;
    for ty in enum_padded(r, s) {
        let formula = alpha_rs(&ty).eval_u64(p);
        let seen = BigInt::from(census.count(&ty));
        ok &= formula == seen;
        rows.push((ty, seen, formula));
    }
    let total_formula = total_count(r, s).eval_u64(p);
    let total_seen = BigInt::from(census.total);
    ok &= total_formula == total_seen;
    let out = match format {
        Format::Json => {
            let cmp: Vec<_> = rows
                .iter()
                .map(|(ty, seen, f)| {
                    json!({
                        "type": ty.to_string(),
                        "census": seen.to_string(),
                        "formula": f.to_string(),
                        "status": status(seen == f),
                    })
                })
                .collect();
            let v = json!({
                "census": serde_json::to_value(&census).expect("census serializes"),
                "comparisons": cmp,
                "total": { "census": total_seen.to_string(), "formula": total_formula.to_string() },
                "status": status(ok),
            });
            format!("{v}\n")
        }
        Format::Csv => {
            let mut out = String::from("type,census,formula,status\n");
            for (ty, seen, f) in &rows {
                let _ = writeln!(out, "\"{ty}\",{seen},{f},{}", status(seen == f));
            }
            let _ = writeln!(
                out,
                "total,{total_seen},{total_formula},{}",
                status(total_seen == total_formula)
            );
            out
        }
        Format::Table => {
            let mut out = format!(
                "s={s} r={r} p={p}\n{:<12} {:>10} {:>10}\n",
                "type", "census", "formula"
            );
            for (ty, seen, f) in &rows {
                let _ = writeln!(
                    out,
                    "{:<12} {seen:>10} {f:>10}  {}",
                    ty.to_string(),
                    status(seen == f)
                );
            }
            let _ = writeln!(out, "{:<12} {total_seen:>10} {total_formula:>10}", "total");
            let _ = writeln!(out, "{}", status(ok));
            out
        }
    };
    let code = if ok { EXIT_OK } else { EXIT_MISMATCH };
    Ok(Outcome::with_code(code, out))
}

fn params_field(rec: &CountRecord) -> String {
    rec.params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn render_table(records: &[CountRecord], primes: &[u64]) -> String {
    let mut out = String::new();
    let mut header = format!("{:<28} {}", "params", "polynomial");
    for p in primes {
        let _ = write!(header, "  p={p}");
    }
    let _ = writeln!(out, "{header}");
    for r in records {
        let mut line = format!("{:<28} {}", params_field(r), r.answer());
        for v in r.evals.values() {
            let _ = write!(line, "  {v}");
        }
        let _ = writeln!(out, "{line}");
    }
    out
}

/// One record per block in table form, one JSON document per line, or one
/// CSV row each.
pub fn render_records(records: &[CountRecord], format: Format) -> String {
    match format {
        Format::Json => records.iter().map(|r| r.to_json() + "\n").collect(),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["kind", "params", "coeffs", "evals"])
                .expect("in-memory write");
            for r in records {
                let evals = r
                    .evals
                    .iter()
                    .map(|(p, v)| format!("{p}={v}"))
                    .collect::<Vec<_>>()
                    .join(";");
                w.write_record([
                    r.kind.to_string(),
                    params_field(r),
                    coeff_strings(r.answer()).join(" "),
                    evals,
                ])
                .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
        }
        Format::Table => {
            let mut out = String::new();
            for r in records {
                let _ = writeln!(out, "{} [{}]", r.kind, params_field(r));
                let _ = writeln!(out, "{}", r.answer());
                for (p, v) in &r.evals {
                    let _ = writeln!(out, "p={p}: {v}");
                }
            }
            out
        }
    }
}

/// Parameters of the `verify` sweep.
#[derive(Clone, Debug)]
pub struct VerifyPlan {
    pub max_n: usize,
    pub max_s: usize,
    pub max_r: usize,
    pub oracle_max_r: usize,
    pub primes: Vec<u64>,
    pub config: OracleConfig,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub params: BTreeMap<String, String>,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn from_checks(checks: Vec<Check>) -> Self {
        let passed = checks.iter().all(|c| c.status == CheckStatus::Pass);
        Report { passed, checks }
    }
}

fn check<K: ToString, V: ToString>(
    name: &'static str,
    params: impl IntoIterator<Item = (K, V)>,
    ok: bool,
    detail: impl FnOnce() -> String,
) -> Check {
    Check {
        name,
        params: params
            .into_iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect(),
        status: if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        detail: (!ok).then(detail),
    }
}

enum Task {
    Identity(usize),
    PbinomShape(usize),
    TotalPartition(usize, usize),
    ShiftSides(usize, usize),
    Census(usize, usize, u64),
    Butler(Partition, u64),
    Chain(Vec<usize>, u64),
    GroupOrders(usize, usize, u64),
}

fn run_task(task: &Task, config: &OracleConfig) -> Result<Vec<Check>> {
    Ok(match task {
        Task::Identity(n) => (0..=*n)
            .map(|k| {
                let (lhs, rhs) = (pbinom(*n, k), identity_rhs(*n, k));
                check("identity", [("n", n), ("k", &k)], lhs == rhs, || {
                    format!("binom = {lhs}, rhs = {rhs}")
                })
            })
            .collect(),
        Task::PbinomShape(n) => {
            let bad: Vec<usize> = (0..=*n)
                .filter(|&k| {
                    let b = pbinom(*n, k);
                    !(b.has_nonnegative_coeffs() && b.shape().is_unimodal_symmetric())
                })
                .collect();
            vec![check("pbinom_shape", [("n", n)], bad.is_empty(), || {
                format!("bad k: {bad:?}")
            })]
        }
        Task::TotalPartition(r, s) => {
            let sum = IntPoly::sum(
                &enum_padded(*r, *s)
                    .map(|l| alpha_rs(&l))
                    .collect::<Vec<_>>(),
            );
            let total = total_count(*r, *s);
            vec![check(
                "total_partition",
                [("r", r), ("s", s)],
                sum == total,
                || format!("sum = {sum}, total = {total}"),
            )]
        }
        Task::ShiftSides(r, s) => {
            let mut failures = Vec::new();
            for l in enum_padded(*r, *s) {
                let base = alpha_rs(&l);
                for t in 1..=3 {
                    let (lhs, rhs) = lemma_sides(&l, t)?;
                    if lhs != rhs {
                        failures.push(format!("{l} t={t}: {lhs} != {rhs}"));
                    }
                    if alpha_rs_shifted(&l, t)? != base {
                        failures.push(format!("{l} t={t}: alpha_rs depends on t"));
                    }
                }
                if !l.has_zero_part() && alpha_rs_shifted(&l, 0)? != base {
                    failures.push(format!("{l} t=0: alpha_rs depends on t"));
                }
            }
            vec![check(
                "sides_and_shift",
                [("r", r), ("s", s)],
                failures.is_empty(),
                || failures.join("; "),
            )]
        }
        Task::Census(s, r, p) => {
            config.check(*p, *r)?;
            let census = census_alpha_rs(*s, *r, *p);
            let mut failures = Vec::new();
            for l in enum_padded(*r, *s) {
                let a = alpha_rs(&l);
                let (f, seen) = (a.eval_u64(*p), BigInt::from(census.count(&l)));
                if f != seen {
                    failures.push(format!("{l}: census {seen}, formula {f}"));
                }
                if !a.shape().is_unimodal_symmetric() {
                    failures.push(format!("{l}: {a} not unimodal symmetric"));
                }
            }
            let t = total_count(*r, *s).eval_u64(*p);
            if t != BigInt::from(census.total) {
                failures.push(format!("total: census {}, formula {t}", census.total));
            }
            let params = [
                ("s", s.to_string()),
                ("r", r.to_string()),
                ("p", p.to_string()),
            ];
            vec![check(
                "alpha_rs_census",
                params,
                failures.is_empty(),
                || failures.join("; "),
            )]
        }
        Task::Butler(lambda, p) => {
            let census = finite_subgroup_census(lambda, *p, config)?;
            let types = census.type_marginal();
            let mut failures = Vec::new();
            for mu in (0..=lambda.weight()).flat_map(|k| partitions_of(k, lambda.len())) {
                if !lambda.contains(&mu) {
                    continue;
                }
                let a = butler_alpha(lambda, &mu);
                let f = a.eval_u64(*p);
                let seen = BigInt::from(types.get(&mu).copied().unwrap_or(0));
                if f != seen {
                    failures.push(format!("mu={mu}: census {seen}, formula {f}"));
                }
                if !a.shape().is_unimodal_symmetric() {
                    failures.push(format!("mu={mu}: {a} not unimodal symmetric"));
                }
            }
            let by_order = IntPoly::sum(
                &(0..=lambda.weight())
                    .map(|k| alpha_order(lambda, k))
                    .collect::<Vec<_>>(),
            )
            .eval_u64(*p);
            if by_order != BigInt::from(census.total()) {
                failures.push(format!(
                    "order sum {by_order}, census total {}",
                    census.total()
                ));
            }
            let dual = types == census.cotype_marginal();
            let params = [("lambda", lambda.to_string()), ("p", p.to_string())];
            vec![
                check("butler_census", params.clone(), failures.is_empty(), || {
                    failures.join("; ")
                }),
                check("duality", params, dual, || {
                    "type and cotype marginals differ".into()
                }),
            ]
        }
        Task::Chain(indices, p) => {
            let census = chain_census(indices, 2, *p, config)?;
            let f = chain_count_indices(indices, 2)?.eval_u64(*p);
            let mut failures = Vec::new();
            if f != BigInt::from(census.total) {
                failures.push(format!("census {}, formula {f}", census.total));
            }
            for chain in partition_chains(indices, 2) {
                let f = chain_count_types(&chain, 2)?.eval_u64(*p);
                let seen = BigInt::from(census.by_types.get(&chain).copied().unwrap_or(0));
                if f != seen {
                    failures.push(format!("{chain:?}: census {seen}, formula {f}"));
                }
            }
            let label = indices
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",");
            let params = [("indices", label), ("s", "2".into()), ("p", p.to_string())];
            vec![check("chain_census", params, failures.is_empty(), || {
                failures.join("; ")
            })]
        }
        Task::GroupOrders(s, r, p) => {
            let mut failures = Vec::new();
            for l in enum_padded(*r, *s).filter(|l| l.first() >= 1) {
                let (sl, g) = group_orders(&l, *p)?;
                let f = alpha_rs(&l).eval_u64(*p);
                if &sl % &g != BigInt::from(0) || sl / g != f {
                    failures.push(format!("{l}: order ratio differs from {f}"));
                }
            }
            let params = [
                ("s", s.to_string()),
                ("r", r.to_string()),
                ("p", p.to_string()),
            ];
            vec![check("group_orders", params, failures.is_empty(), || {
                failures.join("; ")
            })]
        }
    })
}

/// Run every sweep in `plan`. Checks come back in parameter order whatever
/// order the workers finish in.
pub fn verify(plan: &VerifyPlan) -> Result<Report> {
    let mut tasks = Vec::new();
    tasks.extend((0..=plan.max_n).map(Task::Identity));
    tasks.extend((0..=plan.max_n.max(20)).map(Task::PbinomShape));
    for s in 1..=plan.max_s {
        for r in 0..=plan.max_r {
            tasks.push(Task::TotalPartition(r, s));
            tasks.push(Task::ShiftSides(r, s));
        }
    }
    for &p in &plan.primes {
        plan.config.check(p, plan.oracle_max_r)?;
        for s in 1..=plan.max_s {
            for r in 0..=plan.oracle_max_r {
                tasks.push(Task::Census(s, r, p));
                tasks.push(Task::GroupOrders(s, r, p));
            }
        }
        for k in 0..=plan.oracle_max_r {
            tasks.extend(partitions_of(k, k).map(|l| Task::Butler(l, p)));
        }
        let top = plan.oracle_max_r.min(3);
        for mask in 1u32..(1 << top) {
            let indices: Vec<usize> = (1..=top).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            tasks.push(Task::Chain(indices, p));
        }
    }
    let results: Vec<Result<Vec<Check>>> = tasks
        .par_iter()
        .map(|t| run_task(t, &plan.config))
        .collect();
    let mut checks = Vec::new();
    for r in results {
        checks.extend(r?);
    }
    Ok(Report::from_checks(checks))
}

pub fn render_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string(report).expect("report serializes")
        ),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["check", "params", "status", "detail"])
                .expect("in-memory write");
            for c in &report.checks {
                let params = c
                    .params
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join(";");
                let status = if c.status == CheckStatus::Pass {
                    "pass"
                } else {
                    "fail"
                };
                w.write_record([c.name, &params, status, c.detail.as_deref().unwrap_or("")])
                    .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
        }
        Format::Table => {
            let mut out = String::new();
            for c in &report.checks {
                let params = c
                    .params
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join(" ");
                let status = if c.status == CheckStatus::Pass {
                    "PASS"
                } else {
                    "FAIL"
                };
                let _ = writeln!(out, "{status} {:<16} {params}", c.name);
                if let Some(d) = &c.detail {
                    let _ = writeln!(out, "     {d}");
                }
            }
            let passed = report
                .checks
                .iter()
                .filter(|c| c.status == CheckStatus::Pass)
                .count();
            let _ = writeln!(out, "{passed}/{} checks passed", report.checks.len());
            out
        }
    }
}
