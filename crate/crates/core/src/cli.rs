//! Command-line front end.
//!
//! Exit codes: 0 success, 1 domain or usage error, 2 convergence failure,
//! 3 partial grid failure.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::grid::{
    evaluate_point, figure_records, map_points, Figure, GridSpec, Observable, OutputRecord, RecordMethod,
};
use crate::mu_core::{intercept_asymptotic, DeformationMu, Fallback, Method, ThermoPoint, PION_MASS_MEV};
use crate::output::{records_table, Cell, Format, Table};
use crate::partial_fraction::a_coeffs;
use crate::pq_compare::{
    mu_vs_pq_asymptotic_gap, pq_intercept, pq_intercept_asymptotic, pq_moment, pq_oracle_moment, PQParams,
};
use crate::series_expansion::{divergence_diagnostic, divergence_onset};
use crate::special_fn::lerch::DEFAULT_TOL;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_CONVERGENCE: i32 = 2;
pub const EXIT_PARTIAL: i32 = 3;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NonConvergence { .. } => EXIT_CONVERGENCE,
        _ => EXIT_DOMAIN,
    }
}

#[derive(Debug, Parser)]
#[command(name = "mubose", version, about = "Correlation intercepts of the mu-deformed Bose gas")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,

    /// Write to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Preset {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
}

impl From<Preset> for Figure {
    fn from(p: Preset) -> Self {
        match p {
            Preset::Fig1 => Figure::Fig1,
            Preset::Fig2 => Figure::Fig2,
            Preset::Fig3 => Figure::Fig3,
            Preset::Fig4 => Figure::Fig4,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Plot data for one of the four figure presets.
    Figure(FigureArgs),
    /// r-th order intercept at given points.
    Intercept(InterceptArgs),
    /// Mean occupation at given points.
    Distribution(PointArgs),
    /// The r3 combination of the 2- and 3-particle intercepts.
    R3(PointArgs),
    /// Partial-fraction weights A_l for one order and mu.
    Coeffs(CoeffsArgs),
    /// Term growth of the Taylor expansion in mu.
    TaylorDiagnose(TaylorArgs),
    /// p,q-deformed gas at one point, optionally against a mu-gas.
    PqCompare(PqArgs),
}

#[derive(Debug, Args)]
struct Accuracy {
    /// Particle mass in MeV.
    #[arg(long, default_value_t = PION_MASS_MEV)]
    mass: f64,

    /// Absolute tolerance for series evaluation.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,

    /// Evaluate by direct summation where the closed form is out of range.
    #[arg(long)]
    allow_oracle_fallback: bool,
}

impl Accuracy {
    fn fallback(&self) -> Fallback {
        if self.allow_oracle_fallback {
            Fallback::Oracle
        } else {
            Fallback::Strict
        }
    }
}

#[derive(Debug, Args)]
struct FigureArgs {
    #[arg(value_enum)]
    preset: Preset,

    /// Deformation parameter; repeatable. Defaults to the preset's values.
    #[arg(long = "mu", allow_negative_numbers = true)]
    mu: Vec<f64>,

    /// Temperature in MeV; repeatable. Defaults to 120 and 180.
    #[arg(long = "temperature", allow_negative_numbers = true)]
    temperature: Vec<f64>,

    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    k_min: f64,

    #[arg(long, default_value_t = 1000.0)]
    k_max: f64,

    #[arg(long, default_value_t = 101)]
    k_steps: usize,

    #[command(flatten)]
    accuracy: Accuracy,
}

#[derive(Debug, Args)]
struct PointArgs {
    /// Deformation parameter; repeatable.
    #[arg(long = "mu", required = true, allow_negative_numbers = true)]
    mu: Vec<f64>,

    /// Temperature in MeV; repeatable.
    #[arg(long = "temperature", default_values_t = [120.0], allow_negative_numbers = true)]
    temperature: Vec<f64>,

    /// Momentum in MeV; repeatable.
    #[arg(long = "k", default_values_t = [0.0], allow_negative_numbers = true)]
    k: Vec<f64>,

    #[command(flatten)]
    accuracy: Accuracy,
}

#[derive(Debug, Args)]
struct InterceptArgs {
    #[command(flatten)]
    point: PointArgs,

    /// Intercept order r.
    #[arg(long, default_value_t = 2)]
    order: u32,

    /// Also print the direct-summation value and the difference.
    #[arg(long)]
    with_oracle: bool,
}

#[derive(Debug, Args)]
struct CoeffsArgs {
    #[arg(long, allow_negative_numbers = true)]
    mu: f64,

    #[arg(long)]
    order: u32,
}

#[derive(Debug, Args)]
struct TaylorArgs {
    #[arg(long, allow_negative_numbers = true)]
    mu: f64,

    #[arg(long, default_value_t = 120.0, allow_negative_numbers = true)]
    temperature: f64,

    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    k: f64,

    #[arg(long, default_value_t = PION_MASS_MEV)]
    mass: f64,

    /// Moment order r.
    #[arg(long, default_value_t = 1)]
    order: u32,

    /// Highest Taylor order.
    #[arg(long, default_value_t = 40)]
    s_max: usize,
}

#[derive(Debug, Args)]
struct PqArgs {
    #[arg(long, allow_negative_numbers = true)]
    p: f64,

    #[arg(long, allow_negative_numbers = true)]
    q: f64,

    /// Compare the asymptote against this mu-gas.
    #[arg(long, allow_negative_numbers = true)]
    mu: Option<f64>,

    #[arg(long, default_value_t = 120.0, allow_negative_numbers = true)]
    temperature: f64,

    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    k: f64,

    #[arg(long, default_value_t = PION_MASS_MEV)]
    mass: f64,

    /// Intercept order r.
    #[arg(long, default_value_t = 2)]
    order: u32,

    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,

    /// Also print the direct-summation moment.
    #[arg(long)]
    with_oracle: bool,
}

struct Outcome {
    table: Table,
    code: i32,
}

type CmdResult = std::result::Result<Outcome, Error>;

fn ok(table: Table) -> CmdResult {
    Ok(Outcome { table, code: EXIT_OK })
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            return if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                EXIT_DOMAIN
            } else {
                let _ = write!(stdout, "{e}");
                EXIT_OK
            };
        }
    };
    let outcome = match dispatch(&cli.command, stderr) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", describe(&e));
            return exit_code(&e);
        }
    };
    let format = Format::from(cli.format);
    let written = match &cli.output {
        Some(path) => File::create(path).and_then(|f| {
            let mut w = BufWriter::new(f);
            outcome.table.write(&mut w, format)?;
            w.flush()
        }),
        None => outcome.table.write(stdout, format),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_DOMAIN;
    }
    outcome.code
}

fn describe(e: &Error) -> String {
    let msg = e.to_string();
    if msg.contains("fallback") {
        format!("{msg} (pass --allow-oracle-fallback)")
    } else {
        msg
    }
}

fn dispatch(cmd: &Command, stderr: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Figure(a) => cmd_figure(a, stderr),
        Command::Intercept(a) => {
            let r = a.order;
            let mut obs = vec![Observable::Intercept(r)];
            if a.with_oracle {
                obs.push(Observable::InterceptOracle(r));
            }
            cmd_points(&a.point, &obs, stderr)
        }
        Command::Distribution(a) => cmd_points(a, &[Observable::Distribution], stderr),
        Command::R3(a) => cmd_points(a, &[Observable::R3], stderr),
        Command::Coeffs(a) => cmd_coeffs(a),
        Command::TaylorDiagnose(a) => cmd_taylor(a, stderr),
        Command::PqCompare(a) => cmd_pq(a),
    }
}

/// Warns about failed or imprecise records; returns the number failed.
fn report(records: &[OutputRecord], tol: f64, stderr: &mut dyn Write) -> usize {
    let mut failed = 0;
    for r in records {
        let at = format!("{} at T = {}, mu = {}, k = {}, r = {}", r.quantity.as_str(), r.temperature, r.mu, r.k, r.r);
        if let Some(e) = r.failed() {
            failed += 1;
            let _ = writeln!(stderr, "warning: {at} failed: {}", describe(e));
        } else if r.exceeds(tol) {
            let _ = writeln!(stderr, "warning: {at}: error bound {:e} exceeds tol {tol:e}", r.error_bound);
        }
    }
    failed
}

fn cmd_figure(a: &FigureArgs, stderr: &mut dyn Write) -> CmdResult {
    let fig = Figure::from(a.preset);
    let mut grid = GridSpec::for_figure(fig);
    grid.k_min = a.k_min;
    grid.k_max = a.k_max;
    grid.k_steps = a.k_steps;
    if !a.mu.is_empty() {
        grid.mus = a.mu.clone();
    }
    if !a.temperature.is_empty() {
        grid.temperatures = a.temperature.clone();
    }
    grid.mass = a.accuracy.mass;
    grid.tol = a.accuracy.tol;
    grid.fallback = a.accuracy.fallback();
    let records = figure_records(fig, &grid)?;
    let failed = report(&records, grid.tol, stderr);
    Ok(Outcome { table: records_table(&records), code: if failed > 0 { EXIT_PARTIAL } else { EXIT_OK } })
}

fn sorted(v: &[f64]) -> Vec<f64> {
    let mut v = v.to_vec();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

fn cmd_points(a: &PointArgs, obs: &[Observable], stderr: &mut dyn Write) -> CmdResult {
    let acc = &a.accuracy;
    let mut points = Vec::new();
    for t in sorted(&a.temperature) {
        for mu in sorted(&a.mu) {
            for k in sorted(&a.k) {
                points.push((t, mu, k));
            }
        }
    }
    let fallback = acc.fallback();
    let groups: Vec<Vec<OutputRecord>> = map_points(&points, |&(t, mu, k)| {
        obs.iter().map(|&o| evaluate_point(o, mu, t, k, acc.mass, acc.tol, fallback)).collect()
    });
    if points.len() == 1 {
        if let Some(e) = groups[0].iter().find_map(OutputRecord::failed) {
            return Err(e.clone());
        }
    }
    let mut records = Vec::new();
    for mut g in groups {
        if g.len() == 2 && g.iter().all(|r| r.failed().is_none()) {
            let diff = OutputRecord {
                value: g[0].value - g[1].value,
                error_bound: g[0].error_bound + g[1].error_bound,
                method: RecordMethod::Difference,
                ..g[0].clone()
            };
            g.push(diff);
        }
        records.extend(g);
    }
    let failed = report(&records, acc.tol, stderr);
    Ok(Outcome { table: records_table(&records), code: if failed > 0 { EXIT_PARTIAL } else { EXIT_OK } })
}

fn cmd_coeffs(a: &CoeffsArgs) -> CmdResult {
    let coeffs = a_coeffs(a.order, a.mu)?;
    let mut t = Table::new(vec!["l", "a_coeff"]);
    for (l, v) in coeffs.values().iter().enumerate() {
        t.push(vec![Cell::Int(l as i64), Cell::Num(*v)]);
    }
    ok(t)
}

fn cmd_taylor(a: &TaylorArgs, stderr: &mut dyn Write) -> CmdResult {
    let mu = DeformationMu::new(a.mu)?;
    let alpha = ThermoPoint::new(a.temperature, a.k, a.mass)?.alpha();
    let rows = divergence_diagnostic(mu, alpha, a.order, a.s_max)?;
    let mut t = Table::new(vec!["s", "partial_sum", "term_magnitude", "overflow"]);
    for e in &rows {
        t.push(vec![
            Cell::Int(e.s as i64),
            Cell::Num(e.partial_sum),
            Cell::Num(e.term_magnitude),
            Cell::Text(e.overflow.to_string()),
        ]);
    }
    let _ = match divergence_onset(&rows) {
        Some(s) => writeln!(stderr, "term magnitudes increase from s = {s} on"),
        None => writeln!(stderr, "term magnitudes still decreasing at s = {}", a.s_max),
    };
    ok(t)
}

fn cmd_pq(a: &PqArgs) -> CmdResult {
    let pq = PQParams::new(a.p, a.q)?;
    let alpha = ThermoPoint::new(a.temperature, a.k, a.mass)?.alpha();
    let r = a.order;
    let mut t = Table::new(vec!["quantity", "k_mev", "T_mev", "p", "q", "mu", "r", "value", "method"]);
    let blank = || Cell::Text(String::new());
    let row = |quantity: &str, k: f64, mu: Cell, r: u32, value: f64, method: &str| {
        vec![
            Cell::Text(quantity.to_string()),
            Cell::Input(k),
            Cell::Input(a.temperature),
            Cell::Input(pq.p()),
            Cell::Input(pq.q()),
            mu,
            Cell::Int(i64::from(r)),
            Cell::Num(value),
            Cell::Text(method.to_string()),
        ]
    };
    let closed = Method::ClosedForm.as_str();
    t.push(row("distribution", a.k, blank(), 1, pq_moment(pq, alpha, 1)?, closed));
    t.push(row("moment", a.k, blank(), r, pq_moment(pq, alpha, r)?, closed));
    if a.with_oracle {
        t.push(row("moment", a.k, blank(), r, pq_oracle_moment(pq, alpha, r, a.tol)?, Method::Oracle.as_str()));
    }
    if r >= 2 {
        let tag = crate::grid::Quantity::intercept(r).as_str();
        t.push(row(tag, a.k, blank(), r, pq_intercept(pq, alpha, r)?, closed));
        let asym = Method::Asymptotic.as_str();
        t.push(row("asymptote", f64::INFINITY, blank(), r, pq_intercept_asymptotic(pq, r), asym));
        if let Some(m) = a.mu {
            let mu = DeformationMu::new(m)?;
            t.push(row("mu_asymptote", f64::INFINITY, Cell::Input(m), r, intercept_asymptotic(mu, r), asym));
            t.push(row("gap_ratio", f64::INFINITY, Cell::Input(m), r, mu_vs_pq_asymptotic_gap(mu, r), asym));
        }
    }
    ok(t)
}
