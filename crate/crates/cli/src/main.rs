//! `kelvin`: evaluate, tabulate and verify Kelvin functions and their order
//! derivatives.
//!
//! Exit codes: 0 success, 1 a verification identity failed, 2 bad
//! configuration or a domain error.

mod range;

use std::fmt::{self, Write as _};
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kelvin_core::bench::{run_bench, BenchReport};
use kelvin_core::kelvin::{ber_bei_eval, ker_kei_eval, ENVELOPE_NU, ENVELOPE_X, NOMINAL_ACCURACY};
use kelvin_core::verify::{manifest, run_suite, Suite, VerifyConfig};
use kelvin_core::{dkelvin, kelvin_all, IdentityReport, SeriesConfig};

use range::Range;

/// Environment variable overriding the series term limit.
const MAX_TERMS_ENV: &str = "KELVIN_MAX_TERMS";

#[derive(Parser)]
#[command(
    name = "kelvin",
    version,
    about = "Kelvin functions of real order and their derivatives with respect to the order"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function at one point.
    Eval(EvalArgs),
    /// Tabulate all functions and order derivatives over a grid (CSV).
    Table(TableArgs),
    /// Run the numerical identity checks; exits 1 if any fails.
    Verify(VerifyArgs),
    /// Time the closed-form order derivatives against quadrature.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Func {
    Ber,
    Bei,
    Ker,
    Kei,
    Dber,
    Dbei,
    Dker,
    Dkei,
}

const ALL_FUNCS: [Func; 8] = [
    Func::Ber,
    Func::Bei,
    Func::Ker,
    Func::Kei,
    Func::Dber,
    Func::Dbei,
    Func::Dker,
    Func::Dkei,
];

impl fmt::Display for Func {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Plain,
}

#[derive(Args)]
struct EvalArgs {
    /// Function to evaluate (or use --fn).
    #[arg(value_enum)]
    func: Option<Func>,
    #[arg(long = "fn", value_enum, conflicts_with = "func")]
    func_flag: Option<Func>,
    #[arg(long, allow_negative_numbers = true)]
    nu: f64,
    #[arg(long, allow_negative_numbers = true)]
    x: f64,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, allow_negative_numbers = true, conflicts_with = "nu_range")]
    nu: Option<f64>,
    /// Orders as start:stop:step, stop inclusive.
    #[arg(long = "nu-range", allow_hyphen_values = true)]
    nu_range: Option<Range>,
    #[arg(long, allow_negative_numbers = true, conflicts_with = "x_range")]
    x: Option<f64>,
    /// Arguments as start:stop:step, stop inclusive.
    #[arg(long = "x-range", allow_hyphen_values = true)]
    x_range: Option<Range>,
}

impl GridArgs {
    fn axis(single: Option<f64>, range: Option<Range>) -> Option<Vec<f64>> {
        single.map(Range::single).or(range).map(|r| r.values())
    }

    fn nu_values(&self) -> Option<Vec<f64>> {
        Self::axis(self.nu, self.nu_range)
    }

    fn x_values(&self) -> Option<Vec<f64>> {
        Self::axis(self.x, self.x_range)
    }
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    grid: GridArgs,
    /// Columns to fill, comma separated; the others are left empty.
    #[arg(long = "fn", value_enum, value_delimiter = ',')]
    funcs: Vec<Func>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// all, fd, reflection, ode, conjugation, integer, brychkov, apelblat,
    /// log_integral (alias theorem5) or appendix.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Replace every tolerance of the bundled grids.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Defaults to the bundled benchmark grid on any axis not given.
    #[command(flatten)]
    grid: GridArgs,
    /// Closed-form repetitions per point.
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Config(String),
    Core(kelvin_core::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<kelvin_core::Error> for CliError {
    fn from(e: kelvin_core::Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    let series = series_config()?;
    match cli.command {
        Command::Eval(a) => cmd_eval(&a, &series),
        Command::Table(a) => cmd_table(&a, &series),
        Command::Verify(a) => cmd_verify(&a, &series),
        Command::Bench(a) => cmd_bench(&a, &series),
    }
}

fn series_config() -> CliResult<SeriesConfig> {
    let mut cfg = SeriesConfig::default();
    if let Ok(v) = std::env::var(MAX_TERMS_ENV) {
        cfg.max_terms = v
            .trim()
            .parse()
            .map_err(|_| CliError::Config(format!("{MAX_TERMS_ENV} must be a positive integer, got '{v}'")))?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn emit(text: &str, out: &Option<PathBuf>) -> CliResult<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).ok();
            Ok(())
        }
    }
}

struct Point {
    value: f64,
    err: f64,
    method: &'static str,
    degraded: bool,
}

fn in_envelope(nu: f64, x: f64) -> bool {
    nu.abs() <= ENVELOPE_NU && x <= ENVELOPE_X
}

fn evaluate(func: Func, nu: f64, x: f64, cfg: &SeriesConfig) -> CliResult<Point> {
    let method = if nu < 0.0 { "reflection" } else { "series" };
    let value_point = |r: kelvin_core::EvalResult, v: f64| Point {
        value: v,
        err: r.abs_err_estimate,
        method,
        degraded: !in_envelope(nu, x) || !r.converged || r.abs_err_estimate > NOMINAL_ACCURACY * (1.0 + v.abs()),
    };
    Ok(match func {
        Func::Ber | Func::Bei => {
            let r = ber_bei_eval(nu, x, cfg)?;
            let v = if func == Func::Ber { r.value.re } else { r.value.im };
            value_point(r, v)
        }
        Func::Ker | Func::Kei => {
            let r = ker_kei_eval(nu, x, cfg)?;
            let v = if func == Func::Ker { r.value.re } else { r.value.im };
            value_point(r, v)
        }
        Func::Dber | Func::Dbei | Func::Dker | Func::Dkei => {
            let d = dkelvin(nu, x, cfg)?;
            let (value, method) = match func {
                Func::Dber => (d.dber, d.method_bb),
                Func::Dbei => (d.dbei, d.method_bb),
                Func::Dker => (d.dker, d.method_kk),
                _ => (d.dkei, d.method_kk),
            };
            Point {
                value,
                err: d.err_estimate,
                method: method.as_str(),
                degraded: d.degraded,
            }
        }
    })
}

fn cmd_eval(a: &EvalArgs, cfg: &SeriesConfig) -> CliResult<ExitCode> {
    let func = a.func.or(a.func_flag).ok_or_else(|| {
        CliError::Config("eval needs a function: ber, bei, ker, kei, dber, dbei, dker or dkei".into())
    })?;
    let p = evaluate(func, a.nu, a.x, cfg)?;
    let text = match a.format {
        Format::Plain => format!(
            "{}  err {}  method {}{}\n",
            num(p.value),
            num(p.err),
            p.method,
            if p.degraded { "  degraded" } else { "" }
        ),
        Format::Csv => format!(
            "fn,nu,x,value,err_estimate,method,degraded\n{func},{},{},{},{},{},{}\n",
            num(a.nu),
            num(a.x),
            num(p.value),
            num(p.err),
            p.method,
            p.degraded
        ),
    };
    emit(&text, &a.out)?;
    Ok(ExitCode::SUCCESS)
}

const TABLE_HEADER: [&str; 11] = [
    "nu", "x", "ber", "bei", "ker", "kei", "dber", "dbei", "dker", "dkei", "method",
];

/// Note in the method column of rows at `x = 0`, where only `ber/bei` exist.
const ORIGIN_NOTE: &str = "singular_at_x0";

fn table_row(nu: f64, x: f64, selected: &[Func], cfg: &SeriesConfig) -> CliResult<Vec<String>> {
    let mut cells: [Option<f64>; 8] = [None; 8];
    let method = if x == 0.0 {
        if let Ok(r) = ber_bei_eval(nu, x, cfg) {
            cells[0] = Some(r.value.re);
            cells[1] = Some(r.value.im);
        }
        ORIGIN_NOTE.to_string()
    } else {
        let q = kelvin_all(nu, x, cfg)?;
        let d = dkelvin(nu, x, cfg)?;
        cells = [q.ber, q.bei, q.ker, q.kei, d.dber, d.dbei, d.dker, d.dkei].map(Some);
        if q.degraded || d.degraded {
            format!("{}|degraded", d.method)
        } else {
            d.method.to_string()
        }
    };
    let mut row = vec![num(nu), num(x)];
    for (f, c) in ALL_FUNCS.iter().zip(cells) {
        let keep = selected.is_empty() || selected.contains(f);
        row.push(c.filter(|_| keep).map(num).unwrap_or_default());
    }
    row.push(method);
    Ok(row)
}

fn render(rows: &[Vec<String>], format: Format) -> String {
    let mut s = String::new();
    match format {
        Format::Csv => {
            for r in rows {
                s.push_str(&r.join(","));
                s.push('\n');
            }
        }
        Format::Plain => {
            let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
            let width: Vec<usize> = (0..cols)
                .map(|c| rows.iter().filter_map(|r| r.get(c)).map(String::len).max().unwrap_or(0))
                .collect();
            for r in rows {
                let line: Vec<String> = r.iter().zip(&width).map(|(v, w)| format!("{v:<w$}")).collect();
                s.push_str(line.join("  ").trim_end());
                s.push('\n');
            }
        }
    }
    s
}

fn cmd_table(a: &TableArgs, cfg: &SeriesConfig) -> CliResult<ExitCode> {
    let nus = a
        .grid
        .nu_values()
        .ok_or_else(|| CliError::Config("table needs --nu or --nu-range".into()))?;
    let xs = a
        .grid
        .x_values()
        .ok_or_else(|| CliError::Config("table needs --x or --x-range".into()))?;
    let mut rows = vec![TABLE_HEADER.iter().map(|s| s.to_string()).collect::<Vec<_>>()];
    for &nu in &nus {
        for &x in &xs {
            rows.push(table_row(nu, x, &a.funcs, cfg)?);
        }
    }
    emit(&render(&rows, a.format), &a.out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(a: &VerifyArgs, cfg: &SeriesConfig) -> CliResult<ExitCode> {
    let suite: Suite = a.suite.parse()?;
    let vcfg = VerifyConfig {
        series: *cfg,
        tol: a.tol,
        ..Default::default()
    };
    let reports = run_suite(suite, &vcfg)?;
    let failed = reports.iter().filter(|r| !r.pass).count();
    let mut text = String::new();
    match a.format {
        Format::Csv => {
            text.push_str(IdentityReport::CSV_HEADER);
            text.push('\n');
            for r in &reports {
                text.push_str(&r.csv_row());
                text.push('\n');
            }
        }
        Format::Plain => {
            for r in &reports {
                let _ = writeln!(
                    text,
                    "{} {} nu={} x={} |diff|={:.3e} tol={:.3e}",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.name,
                    r.nu,
                    r.x,
                    r.abs_diff,
                    r.tol
                );
            }
            let _ = writeln!(text, "{} checks, {failed} failed", reports.len());
        }
    }
    emit(&text, &a.out)?;
    eprintln!("verify {suite}: {} checks, {failed} failed", reports.len());
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn bench_text(r: &BenchReport, format: Format) -> String {
    let mut rows = vec![BenchReport::CSV_HEADER.split(',').map(String::from).collect::<Vec<_>>()];
    for p in &r.rows {
        rows.push(vec![
            num(p.nu),
            num(p.x),
            num(p.closed_form_s),
            num(p.quadrature_s),
            num(p.ratio),
        ]);
    }
    let mut s = render(&rows, format);
    match format {
        Format::Csv => {
            let _ = writeln!(
                s,
                "median,median,{},{},{}",
                num(r.closed_form_median_s),
                num(r.quadrature_median_s),
                num(r.ratio)
            );
        }
        Format::Plain => {
            let _ = writeln!(s, "closed form median: {:.3e} s per point", r.closed_form_median_s);
            let _ = writeln!(s, "quadrature median:  {:.3e} s per point", r.quadrature_median_s);
            let _ = writeln!(s, "speedup: {:.1}x", r.ratio);
        }
    }
    s
}

fn cmd_bench(a: &BenchArgs, cfg: &SeriesConfig) -> CliResult<ExitCode> {
    let m = &manifest().bench;
    let nus = a.grid.nu_values().unwrap_or_else(|| m.nu.clone());
    let xs = a.grid.x_values().unwrap_or_else(|| m.x.clone());
    let points: Vec<(f64, f64)> = nus.iter().flat_map(|&n| xs.iter().map(move |&x| (n, x))).collect();
    let report = run_bench(&points, a.reps.unwrap_or(m.reps), cfg, &Default::default())?;
    emit(&bench_text(&report, a.format), &a.out)?;
    Ok(ExitCode::SUCCESS)
}
