//! The `novikov` command line.
//!
//! [`run`] parses arguments and returns the exit code and the text that
//! should go to stdout and stderr, so the binary is a thin wrapper and the
//! whole surface is testable in-process.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage error, 3 internal error.
//! JSON is the stable machine format; text output is for people.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::basis::{basis_of_multidegree, dim_polylinear, standard_letters};
use crate::combinatorics::{
    binomial, exponent_estimate, gf_coefficients, lemma1_lhs, lemma2_bounds, multinomial_sum_identity, partitions_of,
    vandermonde_check, EXPONENT_DIGITS,
};
use crate::diagrams::{count_fillings_per_shape, enumerate_tableaux, enumerate_young_shapes, CSV_HEADER};
use crate::diffreal::checks::{exhaustive_triples, random_triples, DEFAULT_INDEPENDENCE_CAP, DEFAULT_SPANNING_CAP};
use crate::diffreal::{
    expand, independence_check, spanning_check, verify_identities_under_realization, DiffPolynomial, DiffRealError,
    Normalizer,
};
use crate::terms::{random_polylinear_term, term_to_json, Alphabet, Letter, TermPolynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "novikov",
    version,
    about = "Free Novikov algebra basis, codimensions and normal forms"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Shorthand for --format json.
    #[arg(long, global = true)]
    json: bool,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Comma-separated ordered generator names.
    #[arg(long, global = true)]
    alphabet: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Dimension C(2n-2, n-1) of the polylinear part of degree n.
    Dim { n: u64 },
    /// Basis monomials of the polylinear part of degree n.
    Basis { n: usize },
    /// Novikov tableaux of degree n.
    Tableaux {
        n: usize,
        /// Letter multiset, comma-separated (repeats allowed); defaults to the first n letters.
        #[arg(long)]
        letters: Option<String>,
    },
    /// Expansion of a term under a∘b = ∂(a)·b.
    Expand { term: String },
    /// Coordinates of a term in the tableau basis of its multidegree.
    Normalize { term: String },
    /// Run every structural and combinatorial check up to degree max-n.
    Verify {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Lift the independence cap from 7 to 8.
        #[arg(long)]
        allow_large: bool,
    },
    /// Coefficients of x(1-4x)^(-1/2) up to x^N.
    Gf { order: usize },
    /// Table of dimensions, counting identities and growth bounds.
    Lemmas {
        #[arg(long, default_value_t = 30)]
        max_n: u64,
    },
    /// n-th root of C(2n-2, n-1) with its exact bracket.
    Exp { n: u64 },
}

/// Validated flags shared by every command.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub alphabet: Option<Alphabet>,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Execution {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Check(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Check(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Internal(_) => 3,
        }
    }

    fn report(&self) -> String {
        let (kind, message) = match self {
            Failure::Usage(m) => ("usage", m),
            Failure::Check(m) => ("check", m),
            Failure::Internal(m) => ("internal", m),
        };
        json!({ "error": kind, "message": message }).to_string() + "\n"
    }
}

impl From<DiffRealError> for Failure {
    fn from(e: DiffRealError) -> Self {
        match e {
            DiffRealError::RankDeficient { .. } | DiffRealError::IdentityViolation { .. } => {
                Failure::Check(e.to_string())
            }
            DiffRealError::CapExceeded { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

/// Output of a command: its rendering and whether all checks held.
struct Output {
    body: String,
    passed: bool,
}

impl Output {
    fn ok(body: String) -> Self {
        Output { body, passed: true }
    }
}

pub fn run<I, T>(args: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let f = Failure::Usage(rendered.trim_end().to_string());
                Execution {
                    code: 2,
                    stdout: String::new(),
                    stderr: f.report(),
                }
            } else {
                Execution {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    let config = match RunConfig::try_from(cli) {
        Ok(c) => c,
        Err(f) => {
            return Execution {
                code: f.code(),
                stdout: String::new(),
                stderr: f.report(),
            }
        }
    };
    execute(&config)
}

impl TryFrom<Cli> for RunConfig {
    type Error = Failure;

    fn try_from(cli: Cli) -> Result<Self, Failure> {
        let alphabet = cli
            .alphabet
            .as_deref()
            .map(Alphabet::from_list)
            .transpose()
            .map_err(|e| Failure::Usage(e.to_string()))?;
        match cli.command {
            Command::Verify { max_n: 0, .. } | Command::Lemmas { max_n: 0 } => {
                return Err(Failure::Usage("--max-n must be positive".into()))
            }
            Command::Dim { n: 0 }
            | Command::Exp { n: 0 }
            | Command::Basis { n: 0 }
            | Command::Tableaux { n: 0, .. } => return Err(Failure::Usage("n must be positive".into())),
            _ => {}
        }
        Ok(RunConfig {
            command: cli.command,
            format: if cli.json { Format::Json } else { cli.format },
            out: cli.out,
            seed: cli.seed,
            alphabet,
        })
    }
}

pub fn execute(config: &RunConfig) -> Execution {
    let result = dispatch(config);
    let (code, body, stderr) = match result {
        Ok(out) if out.passed => (0, out.body, String::new()),
        Ok(out) => {
            let f = Failure::Check("one or more checks failed".into());
            (1, out.body, f.report())
        }
        Err(f) => {
            return Execution {
                code: f.code(),
                stdout: String::new(),
                stderr: f.report(),
            }
        }
    };
    match &config.out {
        Some(path) => match std::fs::write(path, &body) {
            Ok(()) => Execution {
                code,
                stdout: String::new(),
                stderr,
            },
            Err(e) => {
                let f = Failure::Internal(format!("cannot write {}: {e}", path.display()));
                Execution {
                    code: 3,
                    stdout: String::new(),
                    stderr: f.report(),
                }
            }
        },
        None => Execution {
            code,
            stdout: body,
            stderr,
        },
    }
}

fn dispatch(config: &RunConfig) -> Result<Output, Failure> {
    match &config.command {
        Command::Dim { n } => Ok(cmd_dim(*n, config.format)),
        Command::Basis { n } => cmd_basis(*n, config),
        Command::Tableaux { n, letters } => cmd_tableaux(*n, letters.as_deref(), config),
        Command::Expand { term } => cmd_expand(term, config),
        Command::Normalize { term } => cmd_normalize(term, config),
        Command::Verify { max_n, allow_large } => cmd_verify(*max_n, *allow_large, config),
        Command::Gf { order } => Ok(cmd_gf(*order, config.format)),
        Command::Lemmas { max_n } => Ok(cmd_lemmas(*max_n, config.format)),
        Command::Exp { n } => Ok(cmd_exp(*n, config.format)),
    }
}

fn alphabet_for(n: usize, config: &RunConfig) -> Result<Alphabet, Failure> {
    match &config.alphabet {
        Some(a) if a.len() < n => Err(Failure::Usage(format!("alphabet has {} letters, need {n}", a.len()))),
        Some(a) => Ok(a.clone()),
        None => Ok(Alphabet::standard(n.max(26))),
    }
}

fn lines(items: impl IntoIterator<Item = String>) -> String {
    items.into_iter().map(|s| s + "\n").collect()
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

fn cmd_dim(n: u64, format: Format) -> Output {
    let d = dim_polylinear(n);
    Output::ok(match format {
        Format::Text => format!("{d}\n"),
        Format::Json => pretty(&json!({ "n": n, "dim": d.to_string() })),
        Format::Csv => format!("n,dim\n{n},{d}\n"),
    })
}

fn cmd_basis(n: usize, config: &RunConfig) -> Result<Output, Failure> {
    let alphabet = alphabet_for(n, config)?;
    let basis = basis_of_multidegree(&standard_letters(n)).map_err(|e| Failure::Internal(e.to_string()))?;
    Ok(Output::ok(match config.format {
        Format::Text => lines(basis.iter().map(|e| alphabet.print(&e.term))),
        Format::Json => pretty(&Value::Array(
            basis
                .iter()
                .map(|e| json!({ "tableau": e.tableau.to_json(&alphabet), "term": term_to_json(&e.term, &alphabet) }))
                .collect(),
        )),
        Format::Csv => {
            let mut out = format!("{CSV_HEADER},term\n");
            for e in &basis {
                let _ = writeln!(
                    out,
                    "{},{}",
                    e.tableau.to_csv_record(&alphabet),
                    alphabet.print(&e.term)
                );
            }
            out
        }
    }))
}

fn cmd_tableaux(n: usize, letters: Option<&str>, config: &RunConfig) -> Result<Output, Failure> {
    let alphabet = alphabet_for(n, config)?;
    let content: Vec<Letter> = match letters {
        None => standard_letters(n),
        Some(list) => list
            .split(',')
            .map(|name| {
                alphabet
                    .letter(name.trim())
                    .ok_or_else(|| Failure::Usage(format!("unknown letter {:?}", name.trim())))
            })
            .collect::<Result<_, _>>()?,
    };
    let tableaux = enumerate_tableaux(n, &content).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(Output::ok(match config.format {
        Format::Text => tableaux
            .iter()
            .map(|t| format!("{}\n", t.render(&alphabet)))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Json => pretty(&Value::Array(tableaux.iter().map(|t| t.to_json(&alphabet)).collect())),
        Format::Csv => {
            let mut out = format!("{CSV_HEADER}\n");
            out.push_str(&lines(tableaux.iter().map(|t| t.to_csv_record(&alphabet))));
            out
        }
    }))
}

fn parse_input_term(text: &str, config: &RunConfig) -> Result<(crate::terms::Term, Alphabet), Failure> {
    let alphabet = alphabet_for(0, config)?;
    let term = alphabet.parse(text).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok((term, alphabet))
}

fn cmd_expand(text: &str, config: &RunConfig) -> Result<Output, Failure> {
    let (term, alphabet) = parse_input_term(text, config)?;
    let p: DiffPolynomial = expand(&term);
    Ok(Output::ok(match config.format {
        Format::Text => format!("{}\n", p.to_text(&alphabet)),
        Format::Json => pretty(&p.to_json(&alphabet)),
        Format::Csv => {
            let mut out = String::from("coeff,monomial\n");
            for (m, c) in p.iter() {
                let _ = writeln!(out, "{c},{}", m.to_text(&alphabet));
            }
            out
        }
    }))
}

fn cmd_normalize(text: &str, config: &RunConfig) -> Result<Output, Failure> {
    let (term, alphabet) = parse_input_term(text, config)?;
    let normalizer = Normalizer::new(&term.multidegree())?;
    let v = normalizer.normalize_term(&term)?;
    let polylinear = normalizer.is_polylinear();
    Ok(Output::ok(match config.format {
        Format::Text => {
            let mut out = String::new();
            if !polylinear {
                out.push_str("# experimental: repeated letters\n");
            }
            for (e, c) in v.nonzero() {
                let _ = writeln!(out, "{c} {}", alphabet.print(&e.term));
            }
            out
        }
        Format::Json => pretty(&json!({
            "term": term_to_json(&term, &alphabet),
            "polylinear": polylinear,
            "basis": v.basis.iter().map(|e| term_to_json(&e.term, &alphabet)).collect::<Vec<_>>(),
            "coords": v.coords.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut out = String::from("term,coeff\n");
            for (e, c) in v.basis.iter().zip(&v.coords) {
                let _ = writeln!(out, "{},{c}", alphabet.print(&e.term));
            }
            out
        }
    }))
}

/// One line of the `verify` report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: String) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        passed,
        detail,
    }
}

/// Every check `verify` runs. Structural checks go up to `max_n` (capped per
/// check); the combinatorial ranges are fixed.
pub fn verify_checks(max_n: usize, allow_large: bool, seed: u64) -> Result<Vec<CheckResult>, DiffRealError> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let count_n = max_n.min(10);
    let bad: Vec<usize> = (1..=count_n)
        .filter(|&n| {
            let got = enumerate_tableaux(n, &standard_letters(n))
                .map(|t| t.len())
                .unwrap_or(0);
            BigInt::from(got) != dim_polylinear(n as u64)
        })
        .collect();
    out.push(check(
        "tableau count = C(2n-2,n-1)",
        bad.is_empty(),
        format!("n=1..{count_n}, failing {bad:?}"),
    ));

    let shape_n = max_n.clamp(2, 9);
    let mut mismatches = 0;
    for n in 1..=shape_n {
        let letters = standard_letters(n);
        let all = enumerate_tableaux(n, &letters).unwrap_or_default();
        for shape in enumerate_young_shapes(n - 1) {
            let enumerated = all.iter().filter(|t| t.shape() == &shape).count();
            if count_fillings_per_shape(&shape, n).ok() != Some(BigInt::from(enumerated)) {
                mismatches += 1;
            }
        }
    }
    out.push(check(
        "per-shape filling counts",
        mismatches == 0,
        format!("n=1..{shape_n}, {mismatches} mismatches"),
    ));

    let mut triples = exhaustive_triples(4, 4);
    triples.extend(random_triples(&mut rng, 1000, 7, 4));
    let identity = verify_identities_under_realization(&triples);
    out.push(check(
        "Novikov identities under realization",
        identity.is_ok(),
        match identity {
            Ok(r) => format!("{} triples", r.triples),
            Err(e) => e.to_string(),
        },
    ));

    let cap = if allow_large {
        DEFAULT_INDEPENDENCE_CAP + 1
    } else {
        DEFAULT_INDEPENDENCE_CAP
    };
    for n in 1..=max_n.min(cap) {
        let r = independence_check(n, cap)?;
        out.push(check(
            &format!("independence n={n}"),
            r.passed(),
            format!("rank {} of {}x{}", r.rank, r.dim, r.dim),
        ));
    }

    for n in 2..=max_n.min(DEFAULT_SPANNING_CAP) {
        let r = spanning_check(n, DEFAULT_SPANNING_CAP)?;
        out.push(check(
            &format!("spanning n={n}"),
            r.passed(),
            format!(
                "rank {} over {} monomials, expected {}",
                r.rank, r.monomials, r.expected
            ),
        ));
    }

    let mut unit_failures = 0;
    for n in 1..=max_n.min(5) {
        let nz = Normalizer::new(&standard_letters(n))?;
        for (i, e) in nz.basis().iter().enumerate() {
            let v = nz.normalize_term(&e.term)?;
            let unit = v
                .coords
                .iter()
                .enumerate()
                .all(|(j, c)| c.to_i64() == Some((i == j) as i64));
            if !unit {
                unit_failures += 1;
            }
        }
    }
    out.push(check(
        "normal form of basis elements",
        unit_failures == 0,
        format!("n<={}", max_n.min(5)),
    ));

    let recon_n = max_n.min(6);
    let normalizers: Vec<Normalizer> = (1..=recon_n)
        .map(|n| Normalizer::new(&standard_letters(n)))
        .collect::<Result<_, _>>()?;
    let mut recon_failures = 0;
    for _ in 0..200 {
        let n = rand::Rng::gen_range(&mut rng, 1..=recon_n);
        let t = random_polylinear_term(&mut rng, &standard_letters(n));
        let v = normalizers[n - 1].normalize(&TermPolynomial::from_term(t.clone()))?;
        if v.reconstruct() != DiffPolynomial::from(&expand(&t)) {
            recon_failures += 1;
        }
    }
    out.push(check(
        "normal form reconstruction",
        recon_failures == 0,
        format!("200 terms, degree<={recon_n}"),
    ));

    let lemma1_ok = (1..=30).all(|n| lemma1_lhs(n) == binomial(2 * n as i64 - 2, n as i64 - 1));
    out.push(check("partition-multinomial convolution", lemma1_ok, "n=1..30".into()));

    let msi_ok = (2..=20u64).all(|n| {
        (1..n).all(|s| {
            let (l, r) = multinomial_sum_identity(n, s);
            l == r
        })
    });
    out.push(check("composition count identity", msi_ok, "n<=20".into()));

    let vdm_ok = (0..=12).all(|n| {
        (0..=12).all(|p| {
            (0..=12).all(|m| {
                let (l, r) = vandermonde_check(n, p, m);
                l == r
            })
        })
    });
    out.push(check("Vandermonde convolution", vdm_ok, "n,p,m<=12".into()));

    let sandwich_ok = (2..=500).all(|n| lemma2_bounds(n).holds());
    out.push(check("growth sandwich", sandwich_ok, "n=2..500".into()));

    let est = exponent_estimate(200);
    let bounds = lemma2_bounds(200);
    let (lo, hi) = bounds.root_bracket(EXPONENT_DIGITS);
    let f = est.to_f64();
    let exp_ok = f > 3.8 && f < 4.0 && bounds.brackets(&est) && hi.to_f64() - lo.to_f64() < 0.25;
    out.push(check(
        "exponent estimate n=200",
        exp_ok,
        format!("{est} in [{lo}, {hi}]"),
    ));

    let gf = gf_coefficients(30);
    let gf_ok = gf.coefficient(0) == num_rational::BigRational::from_integer(BigInt::from(0))
        && (1..=30u64)
            .all(|n| gf.coefficient(n as usize) == num_rational::BigRational::from_integer(dim_polylinear(n)));
    out.push(check("generating function", gf_ok, "x^0..x^30".into()));

    let one_letter_ok = (1..=12usize).all(|n| {
        let got = enumerate_tableaux(n, &vec![Letter(0); n]).map(|t| t.len()).unwrap_or(0);
        got == partitions_of(n as u64 - 1).len()
    });
    out.push(check("one-letter tableaux = p(n-1)", one_letter_ok, "n<=12".into()));

    Ok(out)
}

fn cmd_verify(max_n: usize, allow_large: bool, config: &RunConfig) -> Result<Output, Failure> {
    let checks = verify_checks(max_n, allow_large, config.seed)?;
    let passed = checks.iter().all(|c| c.passed);
    let status = |c: &CheckResult| if c.passed { "PASS" } else { "FAIL" };
    let body = match config.format {
        Format::Text => {
            let mut out = lines(
                checks
                    .iter()
                    .map(|c| format!("{}  {}  ({})", status(c), c.name, c.detail)),
            );
            let _ = writeln!(out, "{}", if passed { "ALL PASS" } else { "FAILED" });
            out
        }
        Format::Json => pretty(&json!({
            "max_n": max_n,
            "seed": config.seed,
            "passed": passed,
            "checks": checks
                .iter()
                .map(|c| json!({ "name": c.name, "status": status(c), "detail": c.detail }))
                .collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut out = String::from("name,status,detail\n");
            for c in &checks {
                let _ = writeln!(out, "\"{}\",{},\"{}\"", c.name, status(c), c.detail);
            }
            out
        }
    };
    Ok(Output { body, passed })
}

fn cmd_gf(order: usize, format: Format) -> Output {
    let gf = gf_coefficients(order);
    Output::ok(match format {
        Format::Text => format!("{gf}\n"),
        Format::Json => pretty(&json!({
            "order": order,
            "coefficients": gf.coefficients().iter().map(ToString::to_string).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut out = String::from("n,coefficient\n");
            out.push_str(&lines(
                gf.coefficients().iter().enumerate().map(|(i, c)| format!("{i},{c}")),
            ));
            out
        }
    })
}

struct LemmaRow {
    n: u64,
    dim: BigInt,
    lemma1: BigInt,
    lower: Option<String>,
    upper: Option<BigInt>,
    root: String,
    ok: bool,
}

fn lemma_rows(max_n: u64) -> Vec<LemmaRow> {
    (1..=max_n)
        .map(|n| {
            let dim = dim_polylinear(n);
            let lemma1 = lemma1_lhs(n);
            let bounds = (n >= 2).then(|| lemma2_bounds(n));
            let ok = lemma1 == dim && bounds.as_ref().is_none_or(|b| b.holds());
            LemmaRow {
                n,
                dim,
                lemma1,
                lower: bounds.as_ref().map(|b| b.lower.to_string()),
                upper: bounds.map(|b| b.upper),
                root: exponent_estimate(n).to_string(),
                ok,
            }
        })
        .collect()
}

fn cmd_lemmas(max_n: u64, format: Format) -> Output {
    let rows = lemma_rows(max_n);
    let passed = rows.iter().all(|r| r.ok);
    let opt = |s: &Option<String>| s.clone().unwrap_or_default();
    let body = match format {
        Format::Text | Format::Csv => {
            let mut out = String::from("n,dim,lemma1_lhs,lower,upper,root_estimate,ok\n");
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    r.n,
                    r.dim,
                    r.lemma1,
                    opt(&r.lower),
                    r.upper.as_ref().map(ToString::to_string).unwrap_or_default(),
                    r.root,
                    r.ok
                );
            }
            out
        }
        Format::Json => pretty(&Value::Array(
            rows.iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "dim": r.dim.to_string(),
                        "lemma1_lhs": r.lemma1.to_string(),
                        "lower": r.lower,
                        "upper": r.upper.as_ref().map(ToString::to_string),
                        "root_estimate": r.root,
                        "ok": r.ok,
                    })
                })
                .collect(),
        )),
    };
    Output { body, passed }
}

fn cmd_exp(n: u64, format: Format) -> Output {
    let est = exponent_estimate(n);
    let bracket = (n >= 2).then(|| {
        let b = lemma2_bounds(n);
        let (lo, hi) = b.root_bracket(EXPONENT_DIGITS);
        (lo, hi, b.brackets(&est))
    });
    let passed = bracket.as_ref().is_none_or(|b| b.2);
    let body = match format {
        Format::Text => match &bracket {
            Some((lo, hi, _)) => format!("{est}\nbracket [{lo}, {hi}]\n"),
            None => format!("{est}\n"),
        },
        Format::Json => pretty(&json!({
            "n": n,
            "estimate": est.to_string(),
            "lower_root": bracket.as_ref().map(|b| b.0.to_string()),
            "upper_root": bracket.as_ref().map(|b| b.1.to_string()),
            "bracketed": bracket.as_ref().map(|b| b.2),
        })),
        Format::Csv => format!(
            "n,estimate,lower_root,upper_root\n{n},{est},{},{}\n",
            bracket.as_ref().map(|b| b.0.to_string()).unwrap_or_default(),
            bracket.as_ref().map(|b| b.1.to_string()).unwrap_or_default()
        ),
    };
    Output { body, passed }
}
