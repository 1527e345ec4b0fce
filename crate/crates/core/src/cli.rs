//! The `tracecode` command line.
//!
//! Exit codes: 0 pass, 1 theory mismatch or failed check, 2 usage, 3 budget,
//! 4 I/O.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use rayon::prelude::*;

use crate::character::CharacterSums;
use crate::code::{code_summary_with, generator_matrix, CodeSummary, DEFAULT_BUDGET};
use crate::error::Error;
use crate::field::{is_prime, parse_modulus, Field, FieldSpec, FpElement};
use crate::theory::{predicted_distribution, ratio_condition, TheoreticalDistribution};
use crate::verify::{verify_field, Sampling};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Subcommand {
    /// Describe GF(p^m): modulus, generator, trace of the basis.
    Field,
    /// Enumerate one code and compare with the predicted distribution.
    Code,
    /// Run every closed-form cross-check for one field.
    Verify,
    /// Gauss sums over GF(p^m) and F_p, numeric and closed form.
    Gauss,
    /// Enumerate every code whose cost p^(2m-1) fits the budget.
    Scan,
    /// Write the generator matrix (csv) or the code summary (json).
    Export,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Parsed command line.
#[derive(Clone, Debug, Parser)]
#[command(name = "tracecode", version, about = "Three-weight trace codes over odd prime fields")]
pub struct RunConfig {
    #[arg(value_enum)]
    pub subcommand: Subcommand,
    /// Characteristic, an odd prime.
    #[arg(long)]
    pub p: Option<u64>,
    /// Extension degree.
    #[arg(long)]
    pub m: Option<u32>,
    /// Trace value of the defining set, taken mod p.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<i64>,
    /// Monic irreducible modulus as little-endian coefficients "c0,...,cm".
    #[arg(long)]
    pub modulus: Option<String>,
    /// Largest allowed enumeration cost p^(2m-1).
    #[arg(long, env = "TRACECODE_BUDGET", default_value_t = DEFAULT_BUDGET,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file for `export` (stdout if absent).
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Spread enumeration over all cores.
    #[arg(long)]
    pub parallel: bool,
}

/// Failure of one command, carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    fn io(e: std::io::Error) -> Self {
        Failure { code: EXIT_IO, message: format!("I/O error: {e}") }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            Error::NonIntegral(_) => EXIT_MISMATCH,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::io(e)
    }
}

type CmdResult = Result<i32, Failure>;

/// Parses `args` (program name first) and runs the command, writing reports
/// to `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    run_config(&cfg, out, err)
}

pub fn run_config(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cfg.subcommand {
        Subcommand::Field => cmd_field(cfg, out),
        Subcommand::Code => cmd_code(cfg, out, err),
        Subcommand::Verify => cmd_verify(cfg, out, err),
        Subcommand::Gauss => cmd_gauss(cfg, out),
        Subcommand::Scan => cmd_scan(cfg, out, err),
        Subcommand::Export => cmd_export(cfg, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn require<T: Copy>(value: Option<T>, flag: &str, cmd: Subcommand) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::usage(format!("--{flag} is required for {cmd:?}").to_lowercase()))
}

fn build_field(cfg: &RunConfig) -> Result<Field, Failure> {
    let p = require(cfg.p, "p", cfg.subcommand)?;
    let m = require(cfg.m, "m", cfg.subcommand)?;
    let modulus = cfg.modulus.as_deref().map(parse_modulus).transpose()?;
    Ok(Field::new(FieldSpec::new(p, m, modulus)?))
}

fn build_a(cfg: &RunConfig, field: &Field) -> Result<FpElement, Failure> {
    let a = field.fp(require(cfg.a, "a", cfg.subcommand)?);
    if a.is_zero() {
        return Err(Error::BadA.into());
    }
    Ok(a)
}

fn reject_format(cfg: &RunConfig, allowed: &[Format]) -> Result<(), Failure> {
    if allowed.contains(&cfg.format) {
        Ok(())
    } else {
        Err(Failure::usage(format!("--format {:?} is not available for this command", cfg.format).to_lowercase()))
    }
}

/// `x^3 + 2x + 1` style rendering of a little-endian coefficient vector.
pub fn render_poly(coeffs: &[u32]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
        terms.push(match i {
            0 => coef,
            1 => format!("{coef}x"),
            _ => format!("{coef}x^{i}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn enumerator_of(rows: &[(u64, u64)]) -> String {
    rows.iter()
        .filter(|r| r.1 > 0)
        .map(|&(w, c)| if w == 0 { c.to_string() } else { format!("{c}x^{w}") })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn cmd_field(cfg: &RunConfig, out: &mut dyn Write) -> CmdResult {
    reject_format(cfg, &[Format::Text, Format::Json])?;
    let field = build_field(cfg)?;
    let generator = field.find_generator();
    let spec = field.spec();
    if cfg.format == Format::Json {
        let value = serde_json::json!({
            "p": spec.p(),
            "m": spec.m(),
            "q": spec.q(),
            "modulus": crate::field::format_modulus(spec.modulus()),
            "generator": generator.coeffs(),
            "trace_basis": field.trace_basis(),
        });
        writeln!(out, "{value}")?;
    } else {
        writeln!(out, "GF({}^{}) with q = {}", spec.p(), spec.m(), spec.q())?;
        writeln!(out, "modulus     {}", render_poly(spec.modulus()))?;
        writeln!(out, "generator   {generator}")?;
        writeln!(out, "Tr(alpha^i) {:?}", field.trace_basis())?;
    }
    Ok(EXIT_OK)
}

fn write_code_text(out: &mut dyn Write, s: &CodeSummary, predicted: &TheoreticalDistribution) -> std::io::Result<()> {
    writeln!(out, "code p={} m={} a={} modulus {}", s.p, s.m, s.a, render_poly(&s.modulus))?;
    writeln!(out, "[{},{},{}]", s.n, s.k, s.d)?;
    writeln!(out, "enumerated  {}", s.distribution)?;
    writeln!(out, "predicted   {}", enumerator_of(&predicted.rows))?;
    writeln!(out, "matches theory: {}", s.matches_theory)?;
    writeln!(
        out,
        "w_min/w_max > (p-1)/p: {} ({}/{})",
        s.wmin_wmax_holds,
        s.distribution.min_nonzero(),
        s.distribution.max_nonzero()
    )
}

fn cmd_code(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let field = build_field(cfg)?;
    let a = build_a(cfg, &field)?;
    let summary = code_summary_with(&field, a, cfg.budget, cfg.parallel)?;
    match cfg.format {
        Format::Json => writeln!(out, "{}", summary.to_json())?,
        Format::Csv => {
            writeln!(out, "w,count")?;
            for (w, c) in summary.distribution.entries() {
                writeln!(out, "{w},{c}")?;
            }
        }
        Format::Text => {
            let predicted = predicted_distribution(field.p(), field.m())?;
            write_code_text(out, &summary, &predicted)?;
        }
    }
    if summary.matches_theory {
        Ok(EXIT_OK)
    } else {
        writeln!(err, "mismatch: enumerated distribution differs from the prediction")?;
        Ok(EXIT_MISMATCH)
    }
}

fn check_cost(field: &Field, budget: u64) -> Result<(), Failure> {
    let cost = crate::code::enumeration_cost(field.p(), field.m()).unwrap_or(u64::MAX);
    if cost > budget {
        return Err(Error::BudgetExceeded { cost, budget }.into());
    }
    Ok(())
}

fn cmd_verify(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    reject_format(cfg, &[Format::Text, Format::Json])?;
    let field = build_field(cfg)?;
    if field.m() <= 2 {
        return Err(Error::UnsupportedM(field.m()).into());
    }
    check_cost(&field, cfg.budget)?;
    let reports = verify_field(&field, &Sampling::with_seed(cfg.seed))?;
    let ok = reports.iter().all(|r| r.passed());
    if cfg.format == Format::Json {
        let checks: Vec<_> = reports
            .iter()
            .map(|r| {
                serde_json::json!({
                    "name": r.name,
                    "passed": r.passed(),
                    "checked": r.checked,
                    "failures": r.failures,
                    "exhaustive": r.exhaustive,
                    "max_error": r.max_error,
                    "witness": r.witness,
                })
            })
            .collect();
        let value = serde_json::json!({
            "p": field.p(),
            "m": field.m(),
            "seed": cfg.seed,
            "passed": ok,
            "checks": checks,
        });
        writeln!(out, "{value}")?;
    } else {
        writeln!(out, "verify GF({}^{}) seed {}", field.p(), field.m(), cfg.seed)?;
        for r in &reports {
            writeln!(out, "{r}")?;
        }
    }
    if ok {
        Ok(EXIT_OK)
    } else {
        for r in reports.iter().filter(|r| !r.passed()) {
            writeln!(err, "{} failed: {}", r.name, r.witness.as_deref().unwrap_or("no cases"))?;
        }
        Ok(EXIT_MISMATCH)
    }
}

fn cmd_gauss(cfg: &RunConfig, out: &mut dyn Write) -> CmdResult {
    reject_format(cfg, &[Format::Text, Format::Json])?;
    let field = build_field(cfg)?;
    if field.q() > cfg.budget {
        return Err(Error::BudgetExceeded { cost: field.q(), budget: cfg.budget }.into());
    }
    let cs = CharacterSums::<f64>::new(&field);
    let sums = [
        ("G(eta, chi_1)", cs.gauss_sum_numeric(), cs.gauss_sum_closed_form()),
        (
            "G(eta_p, chi_p)",
            cs.prime_gauss_sum_numeric(),
            crate::character::prime_gauss_sum_closed_form(field.p()),
        ),
    ];
    let mut ok = true;
    let mut rows = Vec::new();
    for (name, numeric, closed) in sums {
        let rel = (numeric - closed).norm() / closed.norm();
        let pass = rel <= 1e-6;
        ok &= pass;
        rows.push((name, numeric, closed, rel, pass));
    }
    if cfg.format == Format::Json {
        let sums: Vec<_> = rows
            .iter()
            .map(|(name, n, c, rel, pass)| {
                serde_json::json!({
                    "name": name,
                    "numeric": [n.re, n.im],
                    "closed_form": [c.re, c.im],
                    "relative_error": rel,
                    "passed": pass,
                })
            })
            .collect();
        writeln!(out, "{}", serde_json::json!({"p": field.p(), "m": field.m(), "sums": sums}))?;
    } else {
        for (name, n, c, rel, pass) in &rows {
            writeln!(
                out,
                "{} {name:<16} numeric {} closed {} rel error {rel:.2e}",
                if *pass { "PASS" } else { "FAIL" },
                fmt_complex(*n),
                fmt_complex(*c),
            )?;
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_MISMATCH })
}

fn fmt_complex(z: num_complex::Complex<f64>) -> String {
    // avoid printing -0.0000000
    let clean = |v: f64| if v.abs() < 5e-8 { 0.0 } else { v };
    let (re, im) = (clean(z.re), clean(z.im));
    let mut s = String::new();
    let _ = write!(s, "{re:.7} {} {:.7}i", if im < 0.0 { '-' } else { '+' }, im.abs());
    s
}

/// Every `(p, m)` with p an odd prime, m > 2 and `p^(2m-1) <= budget`,
/// ordered by p then m.
pub fn scan_grid(budget: u64) -> Vec<(u64, u32)> {
    let mut grid = Vec::new();
    let mut p = 3u64;
    while p.checked_pow(5).is_some_and(|c| c <= budget) {
        if is_prime(p) {
            let mut m = 3u32;
            while p.checked_pow(2 * m - 1).is_some_and(|c| c <= budget) {
                grid.push((p, m));
                m += 1;
            }
        }
        p += 2;
    }
    grid
}

struct ScanRow {
    summary: CodeSummary,
    ratio_theory: bool,
}

fn scan_cell(p: u64, m: u32, budget: u64) -> Result<Vec<ScanRow>, Error> {
    let field = Field::canonical(p, m)?;
    let ratio_theory = ratio_condition(field.p(), m)?.holds;
    (1..p as i64)
        .map(|a| {
            let summary = code_summary_with(&field, field.fp(a), budget, false)?;
            Ok(ScanRow { summary, ratio_theory })
        })
        .collect()
}

fn cmd_scan(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let grid = scan_grid(cfg.budget);
    if grid.is_empty() {
        writeln!(err, "warning: no (p, m) with m > 2 fits budget {}", cfg.budget)?;
    }
    let cells: Vec<Result<Vec<ScanRow>, Error>> = if cfg.parallel {
        // collect preserves grid order regardless of completion order
        grid.par_iter().map(|&(p, m)| scan_cell(p, m, cfg.budget)).collect()
    } else {
        grid.iter().map(|&(p, m)| scan_cell(p, m, cfg.budget)).collect()
    };
    let mut rows = Vec::new();
    for cell in cells {
        rows.extend(cell?);
    }
    match cfg.format {
        Format::Json => {
            let values: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| serde_json::to_value(&r.summary).expect("summary serializes"))
                .collect();
            writeln!(out, "{}", serde_json::Value::Array(values))?;
        }
        Format::Csv => {
            writeln!(out, "p,m,a,n,k,d,matches_theory,wmin_wmax_holds,ratio_theory")?;
            for r in &rows {
                let s = &r.summary;
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    s.p, s.m, s.a, s.n, s.k, s.d, s.matches_theory, s.wmin_wmax_holds, r.ratio_theory
                )?;
            }
        }
        Format::Text => {
            writeln!(out, "{:>3} {:>2} {:>3}  {:<18} {:<6} {:<6} enumerator", "p", "m", "a", "[n,k,d]", "match", "ratio")?;
            for r in &rows {
                let s = &r.summary;
                writeln!(
                    out,
                    "{:>3} {:>2} {:>3}  {:<18} {:<6} {:<6} {}",
                    s.p,
                    s.m,
                    s.a,
                    format!("[{},{},{}]", s.n, s.k, s.d),
                    if s.matches_theory { "PASS" } else { "FAIL" },
                    s.wmin_wmax_holds && r.ratio_theory,
                    s.distribution,
                )?;
            }
            writeln!(out, "{} codes over {} fields", rows.len(), grid.len())?;
        }
    }
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| !r.summary.matches_theory)
        .map(|r| format!("({},{},{})", r.summary.p, r.summary.m, r.summary.a))
        .collect();
    if bad.is_empty() {
        Ok(EXIT_OK)
    } else {
        writeln!(err, "mismatching (p,m,a): {}", bad.join(" "))?;
        Ok(EXIT_MISMATCH)
    }
}

fn cmd_export(cfg: &RunConfig, out: &mut dyn Write) -> CmdResult {
    let field = build_field(cfg)?;
    let a = build_a(cfg, &field)?;
    if field.m() <= 2 {
        return Err(Error::UnsupportedM(field.m()).into());
    }
    let text = match cfg.format {
        Format::Csv => generator_matrix(&field, a).to_csv(),
        Format::Json => code_summary_with(&field, a, cfg.budget, cfg.parallel)?.to_json() + "\n",
        Format::Text => return Err(Failure::usage("export needs --format csv or --format json")),
    };
    match &cfg.output {
        Some(path) => std::fs::write(path, text).map_err(Failure::io)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(EXIT_OK)
}
