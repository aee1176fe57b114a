//! `bschur`: command-line front end for Borel-Schur algebra computations.
//!
//! Exit codes: 0 success, 2 verification failure, 3 budget exceeded,
//! 4 usage error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use borel_schur::algebra::{coideal_closure, Algebra, LinearCombination};
use borel_schur::modules::socle_radical_top;
use borel_schur::quiver::{
    certify_rep_type, covering_fixtures, ext_quiver, ext_quiver_crosscheck, extract_presentation, fixture_characteristic,
    fixture_representations, pushdown_check, rep_type,
};
use borel_schur::resolutions::{
    ar_sequence, ar_sequence_closed_form, middle_term_analysis, regime_of, socle_report, truncation_functors, verify_ar,
    weight_id_of,
};
use borel_schur::scalars::{binomial_u128, Field, FieldSpec, PrimeField};
use borel_schur::weights::{enumerate_weights, Composition};
use borel_schur::{with_field, Error};
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "bschur", version, about = "Exact computations with Borel-Schur algebras S(B+, n, r)")]
struct Cli {
    /// Number of rows n.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Degree r.
    #[arg(long, global = true)]
    r: Option<usize>,
    /// Characteristic: 0 or a prime.
    #[arg(long = "char", global = true, default_value_t = 0)]
    characteristic: u64,
    /// Weight as comma-separated parts, e.g. `2,1,0`.
    #[arg(long, global = true)]
    lambda: Option<String>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest algebra dimension to construct.
    #[arg(long, global = true, default_value_t = 50_000)]
    budget: u64,
    /// Write the output and a manifest into this run directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the basis with left and right weights.
    Basis,
    /// Multiply two basis elements given by index.
    Mult {
        x: usize,
        y: usize,
    },
    /// The quiver: Ext arrows and relations read off the algebra.
    Quiver,
    /// Socle multiplicities of the regular module with the predicted verdicts.
    Socle,
    /// The Auslander-Reiten sequence ending in K_λ.
    Arseq {
        /// Use the closed-form construction where a regime applies.
        #[arg(long)]
        closed_form: bool,
    },
    /// Construct and verify the AR sequence for every non-projective simple.
    VerifyAr,
    /// Representation type of S(B+, n, r).
    Reptype {
        /// Also run the computational certificate.
        #[arg(long)]
        certify: bool,
    },
    /// Idempotent truncation to the coideal generated by some weights.
    Truncate {
        /// Generating weights separated by `;`, e.g. `2,0,1;2,1,0`.
        #[arg(long)]
        coideal: String,
    },
    /// Push down the stored representations of the covering fixtures.
    Pushdown {
        /// One of cover265, cover253, cover242; all when omitted.
        #[arg(long)]
        cover: Option<String>,
    },
    /// Full oracle suite for one (n, r, char).
    Crosscheck,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Basis => "basis",
            Command::Mult { .. } => "mult",
            Command::Quiver => "quiver",
            Command::Socle => "socle",
            Command::Arseq { .. } => "arseq",
            Command::VerifyAr => "verify-ar",
            Command::Reptype { .. } => "reptype",
            Command::Truncate { .. } => "truncate",
            Command::Pushdown { .. } => "pushdown",
            Command::Crosscheck => "crosscheck",
        }
    }
}

enum Failure {
    Usage(String),
    Budget(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::DimensionBudgetExceeded { .. } => Failure::Budget(e.to_string()),
            Error::Verification(_) => Failure::Verification(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

struct Outcome {
    text: String,
    extension: &'static str,
    /// Every verification in the output passed.
    ok: bool,
}

impl Outcome {
    fn json(value: Value, ok: bool) -> Self {
        Self { text: serde_json::to_string_pretty(&value).expect("serializable") + "\n", extension: "json", ok }
    }

    fn tsv(text: String, ok: bool) -> Self {
        Self { text, extension: "tsv", ok }
    }
}

struct Config {
    n: usize,
    r: usize,
    lambda: Option<Composition>,
    format: Option<Format>,
    seed: u64,
    budget: u64,
}

fn parse_weight(s: &str) -> Result<Composition, Failure> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| Failure::Usage(format!("cannot parse weight `{s}`"))))
        .collect::<Result<_, _>>()?;
    Composition::new(parts).map_err(Failure::from)
}

fn config(cli: &Cli) -> Result<Config, Failure> {
    let lambda = cli.lambda.as_deref().map(parse_weight).transpose()?;
    let n = cli.n.or(lambda.as_ref().map(|l| l.n()));
    let r = cli.r.or(lambda.as_ref().map(|l| l.r()));
    let needs_shape = !matches!(cli.command, Command::Pushdown { .. });
    let (n, r) = match (n, r) {
        (Some(n), Some(r)) => (n, r),
        _ if !needs_shape => (0, 0),
        _ => return Err(Failure::Usage("--n and --r (or --lambda) are required".into())),
    };
    if let Some(l) = &lambda {
        if l.n() != n || l.r() != r {
            return Err(Failure::Usage(format!("λ = {l} is not in Λ({n}, {r})")));
        }
    }
    if needs_shape && n == 0 {
        return Err(Failure::Usage("n must be positive".into()));
    }
    Ok(Config { n, r, lambda, format: cli.format, seed: cli.seed, budget: cli.budget })
}

/// `dim S(B⁺, n, r)`: multisets of size `r` on the `n(n+1)/2` columns.
fn algebra_dimension(n: usize, r: usize) -> Option<u128> {
    let columns = (n * (n + 1) / 2) as u64;
    binomial_u128(r as u64 + columns - 1, r as u64)
}

fn build_algebra<F: Field>(field: F, cfg: &Config) -> Result<Arc<Algebra<F>>, Failure> {
    let dim = algebra_dimension(cfg.n, cfg.r).unwrap_or(u128::MAX);
    if dim > cfg.budget as u128 {
        return Err(Error::DimensionBudgetExceeded { needed: dim.min(u64::MAX as u128) as u64, budget: cfg.budget }.into());
    }
    Ok(Arc::new(Algebra::new(field, cfg.n, cfg.r)?))
}

fn lambda_id<F: Field>(alg: &Algebra<F>, cfg: &Config) -> Result<usize, Failure> {
    let lam = cfg.lambda.as_ref().ok_or_else(|| Failure::Usage("--lambda is required".into()))?;
    Ok(weight_id_of(alg, lam)?)
}

fn combination_json<F: Field>(alg: &Algebra<F>, lc: &LinearCombination<F::Elem>) -> Value {
    let f = alg.field();
    Value::Array(lc.terms().iter().map(|(k, c)| json!({ "coeff": f.to_scalar(c).to_string(), "element": alg.element(*k) })).collect())
}

fn run<F: Field>(field: F, cli: &Cli, cfg: &Config) -> Result<Outcome, Failure> {
    let characteristic = field.characteristic();
    match &cli.command {
        Command::Basis => {
            let alg = build_algebra(field, cfg)?;
            if cfg.format == Some(Format::Tsv) {
                let mut out = String::from("index\ti\tj\tleft\tright\n");
                for (k, x) in alg.basis().iter().enumerate() {
                    let (i, j) = x.pair();
                    out += &format!("{k}\t{i}\t{j}\t{}\t{}\n", x.left_weight(), x.right_weight());
                }
                return Ok(Outcome::tsv(out, true));
            }
            let rows: Vec<Value> = alg
                .basis()
                .iter()
                .enumerate()
                .map(|(k, x)| json!({ "index": k, "element": x, "left": x.left_weight(), "right": x.right_weight() }))
                .collect();
            Ok(Outcome::json(json!({ "n": cfg.n, "r": cfg.r, "dim": alg.dim(), "basis": rows }), true))
        }
        Command::Mult { x, y } => {
            let alg = build_algebra(field, cfg)?;
            if *x >= alg.dim() || *y >= alg.dim() {
                return Err(Failure::Usage(format!("basis indices must be below {}", alg.dim())));
            }
            let f = alg.field();
            let product = LinearCombination::from_terms(f, alg.mul_basis(*x, *y).iter().cloned());
            let oracle = alg.tensor_oracle_multiply(*x, *y)?;
            let agrees = oracle == product;
            Ok(Outcome::json(
                json!({
                    "x": alg.element(*x),
                    "y": alg.element(*y),
                    "product": combination_json(&alg, &product),
                    "oracle_agrees": agrees,
                }),
                agrees,
            ))
        }
        Command::Quiver => {
            let alg = build_algebra(field, cfg)?;
            let pres = extract_presentation(&alg)?;
            let ext = ext_quiver(cfg.n, cfg.r, characteristic)?;
            let mismatches = ext_quiver_crosscheck(&alg)?;
            let ok = mismatches.is_empty() && ext.arrows().len() == pres.quiver.arrows().len();
            if cfg.format == Some(Format::Dot) {
                return Ok(Outcome { text: pres.quiver.to_dot(), extension: "dot", ok });
            }
            let q = &pres.quiver;
            Ok(Outcome::json(
                json!({
                    "vertices": q.vertices(),
                    "arrows": q.arrows().iter().map(|a| json!({ "source": q.vertices()[a.source], "target": q.vertices()[a.target] })).collect::<Vec<_>>(),
                    "relations": q.relations().iter().map(|r| q.relation_string(r)).collect::<Vec<_>>(),
                    "ext_arrow_count": ext.arrows().len(),
                    "ext_mismatches": mismatches.len(),
                }),
                ok,
            ))
        }
        Command::Socle => {
            let alg = build_algebra(field, cfg)?;
            let rows = socle_report(&alg)?;
            let ok = rows.iter().all(|row| row.agrees());
            if cfg.format == Some(Format::Json) {
                return Ok(Outcome::json(serde_json::to_value(&rows).expect("serializable"), ok));
            }
            let mut out = String::from("lambda\tmultiplicity\tcriterion\n");
            for row in &rows {
                let verdict = match row.predicted {
                    Some(true) => "in-socle",
                    Some(false) => "not-in-socle",
                    None => "no-claim",
                };
                out += &format!("{}\t{}\t{verdict}\n", row.lambda, row.multiplicity);
            }
            Ok(Outcome::tsv(out, ok))
        }
        Command::Arseq { closed_form } => {
            let alg = build_algebra(field, cfg)?;
            let w = lambda_id(&alg, cfg)?;
            let seq = if *closed_form { ar_sequence_closed_form(&alg, w)? } else { ar_sequence(&alg, w)? };
            let report = verify_ar(&seq, cfg.seed)?;
            let socle = socle_radical_top(&seq.tau);
            let decomposition: Vec<Value> =
                socle.socle_multiplicities.iter().map(|(k, m)| json!({ "weight": alg.weight(*k), "multiplicity": m })).collect();
            let ok = report.all_pass();
            Ok(Outcome::json(
                json!({
                    "lambda": alg.weight(w),
                    "construction": seq.construction,
                    "regime": regime_of(alg.weight(w), characteristic),
                    "dimU": report.dim_tau,
                    "dimE": report.dim_middle,
                    "verified": {
                        "exact": report.exact,
                        "nonsplit": report.nonsplit,
                        "ends_indecomposable": report.ends_indecomposable,
                        "ext1_is_one": report.ext1_dim == 1,
                        "tau_is_kernel": report.tau_matches_kernel,
                    },
                    "tau_socle_decomposition": decomposition,
                }),
                ok,
            ))
        }
        Command::VerifyAr => {
            let alg = build_algebra(field, cfg)?;
            let mut rows = Vec::new();
            let mut ok = true;
            for w in 0..alg.weights().len() {
                if alg.right_ideal_basis(w).len() == 1 {
                    continue;
                }
                let seq = ar_sequence(&alg, w)?;
                let report = verify_ar(&seq, cfg.seed)?;
                let middle = middle_term_analysis(&alg, w, cfg.seed)?;
                ok &= report.all_pass() && middle.holds;
                rows.push((report, middle));
            }
            if cfg.format == Some(Format::Tsv) {
                let mut out = String::from("lambda\tdimU\tdimE\texact\tnonsplit\text1\ttau_is_kernel\tmiddle_term\n");
                for (rep, mid) in &rows {
                    out += &format!(
                        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                        rep.lambda, rep.dim_tau, rep.dim_middle, rep.exact, rep.nonsplit, rep.ext1_dim, rep.tau_matches_kernel, mid.holds
                    );
                }
                return Ok(Outcome::tsv(out, ok));
            }
            let value: Vec<Value> = rows.iter().map(|(rep, mid)| json!({ "report": rep, "middle_term": mid, "pass": rep.all_pass() && mid.holds })).collect();
            Ok(Outcome::json(json!({ "sequences": value, "all_pass": ok }), ok))
        }
        Command::Reptype { certify } => {
            if *certify {
                if algebra_dimension(cfg.n, cfg.r).unwrap_or(u128::MAX) > cfg.budget as u128 {
                    return Err(Failure::Budget(format!("S(B+,{},{}) exceeds the budget", cfg.n, cfg.r)));
                }
                let cert = certify_rep_type(field, cfg.n, cfg.r)?;
                let ok = cert.verified != Some(false);
                return Ok(Outcome::json(json!({ "verdict": cert.verdict.to_string(), "certificate": cert }), ok));
            }
            let verdict = rep_type(cfg.n, cfg.r, characteristic);
            if cfg.format == Some(Format::Json) {
                return Ok(Outcome::json(json!({ "verdict": verdict.to_string(), "detail": verdict }), true));
            }
            Ok(Outcome { text: format!("{verdict}\n"), extension: "txt", ok: true })
        }
        Command::Truncate { coideal } => {
            let alg = build_algebra(field, cfg)?;
            let generators: Vec<Composition> = coideal.split(';').map(parse_weight).collect::<Result<_, _>>()?;
            let weights = coideal_closure(&enumerate_weights(cfg.n, cfg.r), &generators);
            let trunc = truncation_functors(&alg, &weights)?;
            let pres = extract_presentation(&trunc.sub)?;
            let q = &pres.quiver;
            let mut value = json!({
                "coideal": weights,
                "dim": trunc.sub.dim(),
                "arrows": q.arrows().iter().map(|a| json!({ "source": q.vertices()[a.source], "target": q.vertices()[a.target] })).collect::<Vec<_>>(),
                "relations": q.relations().iter().map(|r| q.relation_string(r)).collect::<Vec<_>>(),
            });
            if let Some(lam) = &cfg.lambda {
                value["ar_comparison"] = serde_json::to_value(trunc.ariff_check(lam, cfg.seed)?).expect("serializable");
            }
            Ok(Outcome::json(value, true))
        }
        Command::Pushdown { .. } | Command::Crosscheck => unreachable!("dispatched separately"),
    }
}

fn pushdown(cover: Option<&str>, seed: u64) -> Result<Outcome, Failure> {
    let mut results = Vec::new();
    let mut ok = true;
    let mut found = false;
    for cov in covering_fixtures() {
        if cover.is_some_and(|c| c != cov.name) {
            continue;
        }
        found = true;
        let f = PrimeField::new(fixture_characteristic(&cov))?;
        for (name, v) in fixture_representations(&f, &cov)? {
            let report = pushdown_check(&f, &cov, &v, seed)?;
            ok &= report.asserted && report.holds;
            results.push(json!({ "cover": cov.name, "representation": name, "dims": v.dims(), "report": report }));
        }
    }
    if !found {
        return Err(Failure::Usage(format!("unknown cover {}", cover.unwrap_or(""))));
    }
    Ok(Outcome::json(json!({ "results": results, "all_pass": ok }), ok))
}

fn crosscheck<F: Field>(field: F, cfg: &Config) -> Result<Outcome, Failure> {
    let alg = build_algebra(field, cfg)?;
    let dim = alg.dim();
    let mut oracle_failures = 0usize;
    for x in 0..dim {
        for y in 0..dim {
            let product = LinearCombination::from_terms(alg.field(), alg.mul_basis(x, y).iter().cloned());
            if alg.tensor_oracle_multiply(x, y)? != product {
                oracle_failures += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let triples: Vec<(usize, usize, usize)> = (0..500).map(|_| (rng.gen_range(0..dim), rng.gen_range(0..dim), rng.gen_range(0..dim))).collect();
    let associative = alg.check_associativity(&triples);
    let ext_mismatches = ext_quiver_crosscheck(&alg)?.len();
    let socle_disagreements = socle_report(&alg)?.iter().filter(|row| !row.agrees()).count();
    let mut ar_failures = Vec::new();
    for w in 0..alg.weights().len() {
        if alg.right_ideal_basis(w).len() == 1 {
            continue;
        }
        let report = verify_ar(&ar_sequence(&alg, w)?, cfg.seed)?;
        if !report.all_pass() {
            ar_failures.push(alg.weight(w).to_string());
        }
    }
    let ok = oracle_failures == 0 && associative && ext_mismatches == 0 && socle_disagreements == 0 && ar_failures.is_empty();
    Ok(Outcome::json(
        json!({
            "n": cfg.n,
            "r": cfg.r,
            "dim": dim,
            "oracle_pairs": dim * dim,
            "oracle_failures": oracle_failures,
            "associative": associative,
            "ext_quiver_mismatches": ext_mismatches,
            "socle_disagreements": socle_disagreements,
            "ar_failures": ar_failures,
            "all_pass": ok,
        }),
        ok,
    ))
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    let cfg = config(cli)?;
    let spec = FieldSpec::new(cli.characteristic)?;
    match &cli.command {
        Command::Pushdown { cover } => pushdown(cover.as_deref(), cfg.seed),
        Command::Crosscheck => with_field!(spec, |f| crosscheck(f, &cfg)),
        _ => with_field!(spec, |f| run(f, cli, &cfg)),
    }
}

fn write_run_directory(cli: &Cli, dir: &PathBuf, outcome: &Outcome, status: u8) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let file = format!("{}.{}", cli.command.name(), outcome.extension);
    fs::write(dir.join(&file), &outcome.text)?;
    let manifest = json!({
        "command": cli.command.name(),
        "n": cli.n,
        "r": cli.r,
        "char": cli.characteristic,
        "lambda": cli.lambda,
        "seed": cli.seed,
        "budget": cli.budget,
        "files": [file],
        "exit_status": status,
        "version": env!("CARGO_PKG_VERSION"),
    });
    fs::write(dir.join("manifest.json"), serde_json::to_string_pretty(&manifest).expect("serializable") + "\n")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (outcome, status) = match dispatch(&cli) {
        Ok(outcome) => {
            let status = if outcome.ok { 0 } else { 2 };
            (outcome, status)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(4);
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(3);
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    print!("{}", outcome.text);
    if let Some(dir) = &cli.out {
        if let Err(e) = write_run_directory(&cli, dir, &outcome, status) {
            eprintln!("error: cannot write run directory: {e}");
            return ExitCode::from(4);
        }
    }
    if status != 0 {
        eprintln!("verification failed");
    }
    ExitCode::from(status)
}
