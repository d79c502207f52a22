//! `xyswap` command line: single-point evaluation, critical temperatures and
//! the table/figure sweeps, emitted as CSV or JSON.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use crate::critical::{self, CriticalKind, CriticalResult, SolverConfig};
use crate::error::{Error, Result};
use crate::swapnet::swap_all;
use crate::teleport::{teleport, TeleportConfig};
use crate::xychain::{chain_state, pair_metrics, ChainParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NO_CONVERGENCE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    State,
    Metrics,
    Swap,
    Fidelity,
    Critical { kind: CriticalKind },
    Table1,
    Fig1,
}

/// Everything a run needs, after parsing.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub j: f64,
    pub gamma: f64,
    pub eta: f64,
    pub t: Option<f64>,
    pub mu: f64,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub precision: usize,
    pub gammas: Vec<f64>,
    pub eta_max: f64,
    pub steps: usize,
}

#[derive(Debug, Parser)]
#[command(name = "xyswap", version, about = "Thermal XY chains, GHZ swapping and teleportation fidelity")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Density matrix of one chain (ground state at T = 0).
    State(Common),
    /// Closed-form λ's, concurrence and fully entangled fraction.
    Metrics(Common),
    /// GHZ-outcome probabilities after swapping three chains.
    Swap(Common),
    /// Teleportation fidelity, closed form and full simulation.
    Fidelity(Common),
    /// One critical temperature.
    Critical {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        kind: u8,
    },
    /// T2 and T3 at gamma = 0 for eta = 0, 0.1, ..., 0.9.
    Table1(Output),
    /// T3 against eta for several anisotropies.
    Fig1 {
        #[command(flatten)]
        output: Output,
        #[arg(long, value_delimiter = ',', default_values_t = [0.0, 0.3, 0.6, 1.0], allow_negative_numbers = true)]
        gammas: Vec<f64>,
        #[arg(long = "eta-max", default_value_t = 2.0)]
        eta_max: f64,
        #[arg(long, default_value_t = 80)]
        steps: usize,
    },
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long = "J", default_value_t = 1.0, allow_negative_numbers = true)]
    j: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    gamma: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    eta: f64,
    /// Temperature; accepts 0 and inf.
    #[arg(long = "T", allow_negative_numbers = true)]
    t: Option<f64>,
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_4, allow_negative_numbers = true)]
    mu: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct Output {
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 6)]
    precision: usize,
}

impl RunConfig {
    pub fn parse_from<I, T>(args: I) -> std::result::Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<OsString> + Clone,
    {
        Ok(Cli::try_parse_from(args)?.into())
    }
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        let point = |command: Command, c: Common| RunConfig {
            command,
            j: c.j,
            gamma: c.gamma,
            eta: c.eta,
            t: c.t,
            mu: c.mu,
            format: c.output.format.unwrap_or(OutputFormat::Json),
            out: c.output.out,
            precision: c.output.precision,
            gammas: Vec::new(),
            eta_max: 0.0,
            steps: 0,
        };
        let sweep = |command: Command, o: Output| RunConfig {
            command,
            j: 1.0,
            gamma: 0.0,
            eta: 0.0,
            t: None,
            mu: std::f64::consts::FRAC_PI_4,
            format: o.format.unwrap_or(OutputFormat::Csv),
            out: o.out,
            precision: o.precision,
            gammas: Vec::new(),
            eta_max: 0.0,
            steps: 0,
        };
        match cli.command {
            Cmd::State(c) => point(Command::State, c),
            Cmd::Metrics(c) => point(Command::Metrics, c),
            Cmd::Swap(c) => point(Command::Swap, c),
            Cmd::Fidelity(c) => point(Command::Fidelity, c),
            Cmd::Critical { common, kind } => {
                let kind = CriticalKind::from_index(kind).expect("clap restricts the range");
                point(Command::Critical { kind }, common)
            }
            Cmd::Table1(o) => sweep(Command::Table1, o),
            Cmd::Fig1 {
                output,
                gammas,
                eta_max,
                steps,
            } => RunConfig {
                gammas,
                eta_max,
                steps,
                ..sweep(Command::Fig1, output)
            },
        }
    }
}

/// One CSV/JSON cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    /// Computed value, fixed decimals.
    Real(f64),
    /// Input value, shortest round-trip form.
    Exact(f64),
    /// Small computed value, scientific notation.
    Sci(f64),
    Int(i64),
    Bool(bool),
    Text(String),
}

impl Field {
    fn csv(&self, precision: usize) -> String {
        match self {
            Field::Real(v) => format!("{v:.precision$}"),
            Field::Exact(v) => format!("{v}"),
            Field::Sci(v) => format!("{v:.precision$e}"),
            Field::Int(v) => v.to_string(),
            Field::Bool(v) => v.to_string(),
            Field::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Field::Real(v) | Field::Exact(v) | Field::Sci(v) => {
                serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number)
            }
            Field::Int(v) => Value::from(*v),
            Field::Bool(v) => Value::Bool(*v),
            Field::Text(s) => Value::String(s.clone()),
        }
    }
}

fn check_rows(header: &[&str], rows: &[Vec<Field>]) -> Result<()> {
    for (row, fields) in rows.iter().enumerate() {
        if fields.len() != header.len() {
            return Err(Error::RaggedRow {
                row,
                expected: header.len(),
                got: fields.len(),
            });
        }
    }
    Ok(())
}

/// Header line plus one line per row, LF-terminated.
pub fn emit_csv(header: &[&str], rows: &[Vec<Field>], precision: usize) -> Result<String> {
    check_rows(header, rows)?;
    let mut out = header.join(",");
    out.push('\n');
    for fields in rows {
        let line: Vec<String> = fields.iter().map(|f| f.csv(precision)).collect();
        let _ = writeln!(out, "{}", line.join(","));
    }
    Ok(out)
}

/// Array of flat objects keyed by column name.
pub fn emit_json(header: &[&str], rows: &[Vec<Field>]) -> Result<String> {
    check_rows(header, rows)?;
    let array: Vec<Value> = rows
        .iter()
        .map(|fields| {
            let obj: Map<String, Value> = header
                .iter()
                .zip(fields)
                .map(|(k, f)| (k.to_string(), f.json()))
                .collect();
            Value::Object(obj)
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&Value::Array(array)).expect("values are serializable");
    s.push('\n');
    Ok(s)
}

struct Table {
    header: Vec<String>,
    rows: Vec<Vec<Field>>,
    converged: bool,
}

impl Table {
    fn new(header: &[&str], rows: Vec<Vec<Field>>) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows,
            converged: true,
        }
    }
}

fn point_params(cfg: &RunConfig) -> Result<ChainParams> {
    let t = cfg.t.ok_or(Error::InvalidParam {
        name: "T",
        value: f64::NAN,
        reason: "is required for this command",
    })?;
    ChainParams::new(cfg.j, cfg.gamma, cfg.eta, t)
}

fn param_fields(p: &ChainParams) -> Vec<Field> {
    vec![Field::Exact(p.j), Field::Exact(p.gamma), Field::Exact(p.eta), Field::Exact(p.t)]
}

fn critical_row(r: &CriticalResult) -> Vec<Field> {
    vec![
        Field::Int(r.kind.index() as i64),
        Field::Exact(r.gamma),
        Field::Exact(r.eta),
        Field::Real(r.t_over_j),
        Field::Real(r.bracket.0),
        Field::Real(r.bracket.1),
        Field::Bool(r.converged),
        Field::Int(r.crossings as i64),
    ]
}

fn compute(cfg: &RunConfig) -> Result<Table> {
    match cfg.command {
        Command::State => {
            let p = point_params(cfg)?;
            let rho = chain_state(&p)?;
            let m = rho.matrix();
            let rows = (0..4)
                .flat_map(|r| (0..4).map(move |c| (r, c)))
                .map(|(r, c)| {
                    vec![Field::Int(r as i64), Field::Int(c as i64), Field::Real(m[(r, c)].re), Field::Real(m[(r, c)].im)]
                })
                .collect();
            Ok(Table::new(&["row", "col", "re", "im"], rows))
        }
        Command::Metrics => {
            let p = point_params(cfg)?;
            let m = pair_metrics(&p)?;
            let mut row = param_fields(&p);
            row.extend(m.lambdas.iter().map(|&l| Field::Real(l)));
            row.push(Field::Real(m.concurrence));
            row.push(Field::Real(m.fef));
            Ok(Table::new(
                &["J", "gamma", "eta", "T", "lambda1", "lambda2", "lambda3", "lambda4", "concurrence", "fef"],
                vec![row],
            ))
        }
        Command::Swap => {
            let p = point_params(cfg)?;
            let swap = swap_all(&p)?;
            let rows = swap
                .outcomes
                .iter()
                .enumerate()
                .map(|(i, o)| {
                    let purity = o.state.as_ref().map_or(0.0, |s| s.purity());
                    vec![Field::Int(i as i64), Field::Real(o.probability), Field::Real(purity)]
                })
                .collect();
            Ok(Table::new(&["outcome", "probability", "purity"], rows))
        }
        Command::Fidelity => {
            let p = point_params(cfg)?;
            let tcfg = TeleportConfig::new(cfg.mu)?;
            let r = teleport(&p, &tcfg)?;
            let mut row = param_fields(&p);
            row.extend([
                Field::Exact(cfg.mu),
                Field::Real(r.c1),
                Field::Real(r.c2),
                Field::Real(r.phi_closed),
                Field::Real(r.phi_simulated),
                Field::Sci(r.phi_closed - r.phi_simulated),
            ]);
            Ok(Table::new(
                &["J", "gamma", "eta", "T", "mu", "c1", "c2", "phi_closed", "phi_simulated", "difference"],
                vec![row],
            ))
        }
        Command::Critical { kind } => {
            ChainParams::new(cfg.j, cfg.gamma, cfg.eta, cfg.t.unwrap_or(0.0))?;
            let r = critical::solve(kind, cfg.gamma, cfg.eta, cfg.j, &SolverConfig::default())?;
            let mut table = Table::new(
                &["kind", "gamma", "eta", "t_over_j", "bracket_lo", "bracket_hi", "converged", "crossings"],
                vec![critical_row(&r)],
            );
            table.converged = r.converged;
            Ok(table)
        }
        Command::Table1 => table1(cfg.format),
        Command::Fig1 => fig1(cfg),
    }
}

pub const TABLE1_ETAS: [f64; 10] = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

fn table1(format: OutputFormat) -> Result<Table> {
    let t2 = critical::sweep(CriticalKind::FullyEntangledFraction, 0.0, &TABLE1_ETAS, 1.0)?;
    let t3 = critical::sweep(CriticalKind::Fidelity, 0.0, &TABLE1_ETAS, 1.0)?;
    let converged = t2.iter().chain(&t3).all(|r| r.converged);
    let mut table = match format {
        // Wide layout: one column per η, one row per threshold.
        OutputFormat::Csv => {
            let mut header = vec!["eta".to_string()];
            header.extend(TABLE1_ETAS.iter().map(|e| e.to_string()));
            let row = |label: &str, rs: &[CriticalResult]| {
                let mut r = vec![Field::Text(label.to_string())];
                r.extend(rs.iter().map(|x| Field::Real(x.t_over_j)));
                r
            };
            Table {
                header,
                rows: vec![row("t2_over_j", &t2), row("t3_over_j", &t3)],
                converged: true,
            }
        }
        OutputFormat::Json => Table::new(
            &["eta", "t2_over_j", "t3_over_j"],
            TABLE1_ETAS
                .iter()
                .zip(t2.iter().zip(&t3))
                .map(|(&eta, (a, b))| vec![Field::Exact(eta), Field::Real(a.t_over_j), Field::Real(b.t_over_j)])
                .collect(),
        ),
    };
    table.converged = converged;
    Ok(table)
}

fn fig1(cfg: &RunConfig) -> Result<Table> {
    if cfg.steps == 0 {
        return Err(Error::InvalidParam {
            name: "steps",
            value: 0.0,
            reason: "must be at least 1",
        });
    }
    if !(cfg.eta_max.is_finite() && cfg.eta_max > 0.0) {
        return Err(Error::InvalidParam {
            name: "eta-max",
            value: cfg.eta_max,
            reason: "must be positive and finite",
        });
    }
    let etas: Vec<f64> = (0..=cfg.steps)
        .map(|n| cfg.eta_max * n as f64 / cfg.steps as f64)
        .collect();
    let mut rows = Vec::new();
    let mut converged = true;
    for &gamma in &cfg.gammas {
        for r in critical::sweep(CriticalKind::Fidelity, gamma, &etas, 1.0)? {
            converged &= r.converged;
            rows.push(vec![Field::Exact(gamma), Field::Exact(r.eta), Field::Real(r.t_over_j)]);
        }
    }
    let mut table = Table::new(&["gamma", "eta", "t3_over_j"], rows);
    table.converged = converged;
    Ok(table)
}

/// Runs with explicit sinks; returns the process exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    let table = match compute(&cfg) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let header: Vec<&str> = table.header.iter().map(String::as_str).collect();
    let text = match cfg.format {
        OutputFormat::Csv => emit_csv(&header, &table.rows, cfg.precision),
        OutputFormat::Json => emit_json(&header, &table.rows),
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let written = match &cfg.out {
        Some(path) => std::fs::write(path, &text),
        None => stdout.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_USAGE;
    }
    if table.converged {
        EXIT_OK
    } else {
        let _ = writeln!(stderr, "warning: root finding did not converge");
        EXIT_NO_CONVERGENCE
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with(std::iter::once("xyswap").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn csv_examples() {
        assert_eq!(emit_csv(&["eta", "t"], &[], 5).unwrap(), "eta,t\n");
        let rows = vec![vec![Field::Exact(0.5), Field::Real(0.43810)]];
        assert_eq!(emit_csv(&["eta", "t"], &rows, 5).unwrap(), "eta,t\n0.5,0.43810\n");
        let ragged = vec![vec![Field::Exact(0.5)]];
        assert!(matches!(emit_csv(&["eta", "t"], &ragged, 5), Err(Error::RaggedRow { .. })));
    }

    #[test]
    fn csv_round_trip_at_precision() {
        let values = [0.123456789, 1.0 / 3.0, 2.5e-3];
        let rows: Vec<_> = values.iter().map(|&v| vec![Field::Real(v)]).collect();
        let text = emit_csv(&["v"], &rows, 6).unwrap();
        for (line, v) in text.lines().skip(1).zip(values) {
            let parsed: f64 = line.parse().unwrap();
            assert!((parsed - v).abs() <= 5e-7);
            assert_eq!(format!("{parsed:.6}"), line);
        }
    }

    #[test]
    fn metrics_json_has_named_fields() {
        let (code, out, _) = run_capture(&["metrics", "--J", "1", "--gamma", "0", "--eta", "0", "--T", "0.5"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        let row = &v[0];
        assert!(row["concurrence"].as_f64().unwrap() > 0.0);
        assert!(row["fef"].as_f64().unwrap() > 0.5);
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_capture(&["metrics", "--bogus", "1"]).0, 1);
        assert_eq!(run_capture(&["metrics", "--T", "abc"]).0, 1);
        assert_eq!(run_capture(&["critical", "--kind", "4"]).0, 1);
        let (code, _, err) = run_capture(&["metrics", "--T", "-1"]);
        assert_eq!(code, 1);
        assert!(err.contains("--T"), "{err}");
        let (code, _, err) = run_capture(&["metrics"]);
        assert_eq!(code, 1);
        assert!(err.contains("--T"));
        assert_eq!(run_capture(&["--help"]).0, 0);
    }

    #[test]
    fn negative_values_parse() {
        let (code, out, _) = run_capture(&["metrics", "--J", "-1", "--eta", "-0.5", "--T", "1", "--format", "csv"]);
        assert_eq!(code, 0);
        assert!(out.lines().nth(1).unwrap().starts_with("-1,0,-0.5,1,"));
    }
}
