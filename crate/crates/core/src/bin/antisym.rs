//! Command-line front end: degree/eigenvalue reports, sharp constants,
//! determinant printing with symbolic checks, reference-table and gap-series
//! reproduction, oracle sweeps, and the Schroedinger positivity screening.
//!
//! Exit codes: 0 success, 1 verified mismatch, 2 usage or parse error,
//! 3 work budget exceeded.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use antisym::combinatorics::DegreeReport;
use antisym::constants::{
    ckn_constant, ckn_parameters, hardy_constant, positivity_check, sobolev_antisym,
    RadialPotential,
};
use antisym::polyalg::slater_determinant_with_budget;
use antisym::real::{parse_rational, RealCtx, DEFAULT_DIGITS, PRINTED_DIGITS};
use antisym::verify::{gap_csv, gap_json, gap_series, oracle_sweep, reproduce_table, GapSeries};
use antisym::{Error, WorkBudget};

const EXIT_OK: u8 = 0;
const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "antisym",
    about = "Sharp Hardy/Sobolev/CKN constants and minimal antisymmetric harmonic polynomials",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args)]
struct OutputOpts {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report to a file instead of standard output.
    #[arg(long)]
    output: Option<std::path::PathBuf>,
    /// Working precision in decimal digits (floats print at 17 significant
    /// digits regardless).
    #[arg(long, default_value_t = DEFAULT_DIGITS)]
    precision: u32,
    /// Worker threads for grid sweeps (default: all processors).
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Degree report, Hardy and Sobolev constants (and CKN rows per nu)
    /// for a (d, N) grid.
    Constants {
        /// Dimension per particle; single value or inclusive range `a..b`.
        #[arg(long, value_name = "D[..D2]")]
        d: String,
        /// Particle count; single value or inclusive range `a..b`.
        #[arg(long = "N", visible_alias = "n", value_name = "N[..N2]")]
        n: String,
        /// Comma-separated interpolation parameters in [0, 1]
        /// (decimals or fractions).
        #[arg(long)]
        nu: Option<String>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Reproduce the reference eigenvalue table (d in 1..=6, N in 2..=9).
    Table {
        /// Restrict to one dimension row.
        #[arg(long)]
        d: Option<u32>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Print the minimal antisymmetric harmonic polynomial for (d, N).
    Psi {
        #[arg(long)]
        d: u32,
        #[arg(long = "N", visible_alias = "n")]
        n: u64,
        /// Also run antisymmetry/degree/harmonicity checks.
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Gap series V_d(N) - xi_d(N) with cusp annotations (figure data).
    Figure {
        /// Dimension range, inclusive.
        #[arg(long, value_name = "D[..D2]", default_value = "2..8")]
        d: String,
        /// Particle-count range, inclusive.
        #[arg(
            long = "N",
            visible_alias = "n",
            value_name = "N[..N2]",
            default_value = "2..100"
        )]
        n: String,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Cross-validate the closed-form degree against the brute-force oracle.
    Oracle {
        /// Scan all (d, N) with d*N <= this bound.
        #[arg(long, default_value_t = 8)]
        max_dn: u32,
        /// Monomial-space cap for the oracle.
        #[arg(long)]
        budget: Option<u64>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Screen -Delta - V for positivity from a radial potential descriptor.
    Positivity {
        /// Descriptor file: lines of `<coeff> r^<power> on [<a>, <b>)`.
        file: std::path::PathBuf,
        #[arg(long)]
        d: u32,
        #[arg(long = "N", visible_alias = "n")]
        n: u64,
        /// Interpolation parameter in (0, 1].
        #[arg(long)]
        nu: String,
        #[command(flatten)]
        out: OutputOpts,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn parse_range(s: &str, flag: &str) -> Result<(u64, u64), Failure> {
    let parse_one = |t: &str| -> Result<u64, Failure> {
        t.trim()
            .parse::<u64>()
            .map_err(|_| Failure::usage(format!("--{flag}: `{t}` is not a positive integer")))
    };
    if let Some((a, b)) = s.split_once("..") {
        let lo = parse_one(a)?;
        let hi = parse_one(b)?;
        if lo > hi {
            return Err(Failure::usage(format!("--{flag}: empty range `{s}`")));
        }
        Ok((lo, hi))
    } else {
        let v = parse_one(s)?;
        Ok((v, v))
    }
}

fn parse_nu_list(s: &str) -> Result<Vec<BigRational>, Failure> {
    s.split(',')
        .map(|t| parse_rational(t).map_err(|m| Failure::usage(format!("--nu: {m}"))))
        .collect()
}

fn emit(out: &OutputOpts, content: &str) -> Result<(), Failure> {
    match &out.output {
        None => {
            print!("{content}");
            std::io::stdout()
                .flush()
                .map_err(|e| Failure::usage(format!("cannot write output: {e}")))
        }
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
    }
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    match jobs {
        None => Ok(f()),
        Some(j) => {
            if j == 0 {
                return Err(Failure::usage("--jobs must be at least 1"));
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| Failure::usage(format!("cannot build worker pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

fn run(cmd: Cmd) -> Result<u8, Failure> {
    match cmd {
        Cmd::Constants { d, n, nu, out } => cmd_constants(&d, &n, nu.as_deref(), &out),
        Cmd::Table { d, out } => cmd_table(d, &out),
        Cmd::Psi { d, n, check, out } => cmd_psi(d, n, check, &out),
        Cmd::Figure { d, n, out } => cmd_figure(&d, &n, &out),
        Cmd::Oracle {
            max_dn,
            budget,
            out,
        } => cmd_oracle(max_dn, budget, &out),
        Cmd::Positivity { file, d, n, nu, out } => cmd_positivity(&file, d, n, &nu, &out),
    }
}

/// One computed constants row, pre-formatted for deterministic assembly.
struct ConstRow {
    d: u32,
    n: u64,
    report: DegreeReport,
    hardy_classical: BigRational,
    hardy_total: BigRational,
    /// `(S(dN), (N!)^{2/dN}, S_A(dN))`, absent when dN < 3.
    sobolev: Option<(String, String, String)>,
    /// One entry per requested nu: `(nu, p, gamma, upper, lower)`.
    ckn: Vec<(BigRational, BigRational, BigRational, String, String)>,
}

fn constants_row(d: u32, n: u64, nus: &[BigRational], digits: u32) -> Result<ConstRow, Error> {
    let report = DegreeReport::compute(d, n);
    let hardy = hardy_constant(d, n);
    let mut ctx = RealCtx::new(digits)?;
    let sobolev = if d as u64 * n >= 3 {
        let s = sobolev_antisym(d, n, digits)?;
        Some((
            ctx.format_sig(&s.classical, PRINTED_DIGITS),
            ctx.format_sig(&s.factorial_factor, PRINTED_DIGITS),
            ctx.format_sig(&s.antisymmetric, PRINTED_DIGITS),
        ))
    } else {
        None
    };
    let mut ckn = Vec::new();
    if d as u64 * n >= 3 {
        for nu in nus {
            let params = ckn_parameters(d, n, nu)?;
            let k = ckn_constant(d, n, nu, digits)?;
            ckn.push((
                nu.clone(),
                params.p,
                params.gamma,
                ctx.format_sig(&k.upper, PRINTED_DIGITS),
                ctx.format_sig(&k.lower_form, PRINTED_DIGITS),
            ));
        }
    }
    Ok(ConstRow {
        d,
        n,
        report,
        hardy_classical: hardy.classical_part,
        hardy_total: hardy.total,
        sobolev,
        ckn,
    })
}

fn cmd_constants(
    d_spec: &str,
    n_spec: &str,
    nu_spec: Option<&str>,
    out: &OutputOpts,
) -> Result<u8, Failure> {
    let (d_lo, d_hi) = parse_range(d_spec, "d")?;
    let (n_lo, n_hi) = parse_range(n_spec, "N")?;
    if d_lo < 1 {
        return Err(Failure::usage("--d: dimension must be >= 1"));
    }
    if n_lo < 2 {
        return Err(Failure::usage(
            "--N: N >= 2 required for antisymmetric constants",
        ));
    }
    let nus = match nu_spec {
        Some(s) => parse_nu_list(s)?,
        None => Vec::new(),
    };
    for nu in &nus {
        use num_traits::{One, Signed};
        if nu.is_negative() || nu > &BigRational::one() {
            return Err(Failure::usage(format!("--nu: {nu} outside [0, 1]")));
        }
    }
    let digits = out.precision;
    let cells: Vec<(u32, u64)> = (d_lo..=d_hi)
        .flat_map(|d| (n_lo..=n_hi).map(move |n| (d as u32, n)))
        .collect();
    let rows: Result<Vec<ConstRow>, Error> = with_pool(out.jobs, || {
        use rayon::prelude::*;
        let mut rows: Vec<(usize, Result<ConstRow, Error>)> = cells
            .par_iter()
            .enumerate()
            .map(|(i, &(d, n))| (i, constants_row(d, n, &nus, digits)))
            .collect();
        rows.sort_by_key(|(i, _)| *i);
        rows.into_iter().map(|(_, r)| r).collect()
    })?;
    let rows = rows?;

    let content = match out.format {
        Format::Csv => {
            let mut s = String::from(
                "d,N,m,N_m,V,lambda,hardy_classical,hardy_total,sobolev_classical,factorial_factor,sobolev_antisym",
            );
            if nu_spec.is_some() {
                s.push_str(",nu,p,gamma,ckn_upper,ckn_lower");
            }
            s.push('\n');
            for r in &rows {
                let base = format!(
                    "{},{},{},{},{},{},{},{},{},{},{}",
                    r.d,
                    r.n,
                    r.report.m,
                    r.report.n_m,
                    r.report.degree,
                    r.report.lambda,
                    r.hardy_classical,
                    r.hardy_total,
                    r.sobolev.as_ref().map_or("", |s| &s.0),
                    r.sobolev.as_ref().map_or("", |s| &s.1),
                    r.sobolev.as_ref().map_or("", |s| &s.2),
                );
                if nu_spec.is_none() {
                    s.push_str(&base);
                    s.push('\n');
                } else if r.ckn.is_empty() {
                    s.push_str(&format!("{base},,,,,\n"));
                } else {
                    for (nu, p, gamma, upper, lower) in &r.ckn {
                        s.push_str(&format!("{base},{nu},{p},{gamma},{upper},{lower}\n"));
                    }
                }
            }
            s
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "d": r.d,
                        "N": r.n,
                        "m": r.report.m,
                        "N_m": num_json(&r.report.n_m),
                        "V": num_json(&r.report.degree),
                        "lambda": num_json(&r.report.lambda),
                        "hardy_classical": r.hardy_classical.to_string(),
                        "hardy_total": r.hardy_total.to_string(),
                        "sobolev_classical": r.sobolev.as_ref().map(|s| float_json(&s.0)),
                        "factorial_factor": r.sobolev.as_ref().map(|s| float_json(&s.1)),
                        "sobolev_antisym": r.sobolev.as_ref().map(|s| float_json(&s.2)),
                        "ckn": r.ckn.iter().map(|(nu, p, gamma, upper, lower)| json!({
                            "nu": nu.to_string(),
                            "p": p.to_string(),
                            "gamma": gamma.to_string(),
                            "upper": float_json(upper),
                            "lower": float_json(lower),
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let v = json!({"report": "constants", "rows": rows});
            format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
        }
        Format::Text => {
            let mut s = String::new();
            for r in &rows {
                s.push_str(&format!(
                    "d={} N={}: m={} N_m={} V={} lambda={}\n",
                    r.d, r.n, r.report.m, r.report.n_m, r.report.degree, r.report.lambda
                ));
                s.push_str(&format!(
                    "  H_A = {} (classical {} + antisymmetric {})\n",
                    r.hardy_total, r.hardy_classical, r.report.lambda
                ));
                match &r.sobolev {
                    Some((cl, ff, sa)) => s.push_str(&format!(
                        "  S = {cl}  (N!)^(2/dN) = {ff}  S_A = {sa}\n"
                    )),
                    None => s.push_str("  S_A undefined (requires dN >= 3)\n"),
                }
                for (nu, p, gamma, upper, lower) in &r.ckn {
                    s.push_str(&format!(
                        "  nu={nu}: p={p} gamma={gamma} K~={upper} K={lower}\n"
                    ));
                }
            }
            s
        }
    };
    emit(out, &content)?;
    Ok(EXIT_OK)
}

fn num_json(v: &BigInt) -> Value {
    Value::Number(v.to_string().parse().expect("integer literal"))
}

fn float_json(literal: &str) -> Value {
    Value::Number(literal.parse().expect("float literal"))
}

fn cmd_table(d: Option<u32>, out: &OutputOpts) -> Result<u8, Failure> {
    if let Some(d) = d {
        if !(1..=6).contains(&d) {
            return Err(Failure::usage("--d: the reference table covers d in 1..=6"));
        }
    }
    let table = reproduce_table().filtered(d);
    let content = match out.format {
        Format::Csv => table.to_csv(),
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&table.to_json()).unwrap()
        ),
        Format::Text => {
            let mut s =
                String::from("d\\N      2      3      4      5      6      7      8      9\n");
            let ds: Vec<u32> = match d {
                Some(d) => vec![d],
                None => (1..=6).collect(),
            };
            for d in ds {
                s.push_str(&format!("{d}  "));
                for e in table.entries.iter().filter(|e| e.d == d) {
                    s.push_str(&format!("{:>7}", e.lambda_computed.to_string()));
                }
                s.push('\n');
            }
            s.push_str(&format!(
                "all {} entries match: {}\n",
                table.entries.len(),
                table.all_match()
            ));
            s
        }
    };
    emit(out, &content)?;
    Ok(if table.all_match() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    })
}

fn cmd_psi(d: u32, n: u64, check: bool, out: &OutputOpts) -> Result<u8, Failure> {
    if d < 1 || n < 1 {
        return Err(Failure::usage("--d and --N must be >= 1"));
    }
    let budget = WorkBudget::DETERMINANT_DEFAULT.with_env_override();
    let psi = slater_determinant_with_budget(d, n, budget)?;
    let mut content = format!("{}\n", psi.render(d));
    let mut ok = true;
    if check {
        let expected = antisym::combinatorics::vandermonde_degree(d, n);
        let antisymmetric = psi.is_antisymmetric(d)?;
        let homogeneous = psi.is_homogeneous() && !psi.is_zero();
        let degree_ok = homogeneous && BigInt::from(psi.total_degree()) == expected;
        let harmonic = psi.laplacian().is_zero();
        ok = antisymmetric && degree_ok && harmonic;
        content.push_str(&format!("terms: {}\n", psi.term_count()));
        content.push_str(&format!(
            "antisymmetric: {}\n",
            if antisymmetric { "PASS" } else { "FAIL" }
        ));
        content.push_str(&format!(
            "homogeneous of degree {expected}: {}\n",
            if degree_ok { "PASS" } else { "FAIL" }
        ));
        content.push_str(&format!(
            "harmonic: {}\n",
            if harmonic { "PASS" } else { "FAIL" }
        ));
    }
    emit(out, &content)?;
    Ok(if ok { EXIT_OK } else { EXIT_MISMATCH })
}

fn cmd_figure(d_spec: &str, n_spec: &str, out: &OutputOpts) -> Result<u8, Failure> {
    let (d_lo, d_hi) = parse_range(d_spec, "d")?;
    let (n_lo, n_hi) = parse_range(n_spec, "N")?;
    if d_lo < 1 {
        return Err(Failure::usage("--d: dimension must be >= 1"));
    }
    if n_lo != 2 || n_hi < 2 {
        return Err(Failure::usage("--N: the gap series starts at N = 2"));
    }
    let digits = out.precision;
    let ds: Vec<u32> = (d_lo..=d_hi).map(|d| d as u32).collect();
    let series: Result<Vec<GapSeries>, Error> = with_pool(out.jobs, || {
        use rayon::prelude::*;
        let mut list: Vec<(u32, Result<GapSeries, Error>)> = ds
            .par_iter()
            .map(|&d| (d, gap_series(d, n_hi, digits)))
            .collect();
        list.sort_by_key(|(d, _)| *d);
        list.into_iter().map(|(_, s)| s).collect()
    })?;
    let series = series?;
    let content = match out.format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&gap_json(&series)).unwrap()
        ),
        _ => gap_csv(&series),
    };
    emit(out, &content)?;
    Ok(EXIT_OK)
}

fn cmd_oracle(max_dn: u32, budget: Option<u64>, out: &OutputOpts) -> Result<u8, Failure> {
    if max_dn < 2 {
        return Err(Failure::usage("--max-dn must be at least 2"));
    }
    let b = match budget {
        Some(0) => return Err(Failure::usage("--budget must be positive")),
        Some(v) => WorkBudget { max_terms: v },
        None => WorkBudget::ORACLE_DEFAULT.with_env_override(),
    };
    let sweep = oracle_sweep(max_dn, b)?;
    let content = match out.format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&sweep.to_json()).unwrap()
        ),
        _ => sweep.to_csv(),
    };
    emit(out, &content)?;
    Ok(if sweep.all_agree() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    })
}

fn cmd_positivity(
    file: &std::path::Path,
    d: u32,
    n: u64,
    nu_spec: &str,
    out: &OutputOpts,
) -> Result<u8, Failure> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", file.display())))?;
    let potential = RadialPotential::parse(&text)?;
    let nu = parse_rational(nu_spec).map_err(|m| Failure::usage(format!("--nu: {m}")))?;
    let digits = out.precision;
    let verdict = positivity_check(d, n, &nu, &potential, digits)?;
    let mut ctx = RealCtx::new(digits).map_err(Failure::from)?;
    let threshold = ctx.format_sig(&verdict.threshold, PRINTED_DIGITS);
    let norm = ctx.format_sig(&verdict.potential_norm, PRINTED_DIGITS);
    let err = ctx.format_sig(&verdict.quadrature_error, PRINTED_DIGITS);
    let margin = ctx.format_sig(&verdict.margin, PRINTED_DIGITS);
    let content = match out.format {
        Format::Csv => format!(
            "d,N,nu,p,gamma,threshold,potential_norm,quadrature_error,verdict,margin\n{},{},{},{},{},{},{},{},{},{}\n",
            d,
            n,
            verdict.params.nu,
            verdict.params.p,
            verdict.params.gamma,
            threshold,
            norm,
            err,
            verdict.verdict,
            margin
        ),
        Format::Json => {
            let v = json!({
                "report": "positivity",
                "d": d,
                "N": n,
                "nu": verdict.params.nu.to_string(),
                "p": verdict.params.p.to_string(),
                "gamma": verdict.params.gamma.to_string(),
                "threshold": float_json(&threshold),
                "potential_norm": float_json(&norm),
                "quadrature_error": float_json(&err),
                "verdict": verdict.verdict.to_string(),
                "margin": float_json(&margin),
            });
            format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
        }
        Format::Text => format!(
            "d={} N={} nu={} (p={}, gamma={})\n\
             threshold K_d(N, nu) = {}\n\
             potential norm       = {} (quadrature error {})\n\
             verdict: {}  margin = {}\n",
            d,
            n,
            verdict.params.nu,
            verdict.params.p,
            verdict.params.gamma,
            threshold,
            norm,
            err,
            verdict.verdict,
            margin
        ),
    };
    emit(out, &content)?;
    Ok(EXIT_OK)
}
