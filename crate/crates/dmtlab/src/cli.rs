//! Batch command-line front end: curve sampling, closed-form comparison,
//! Monte Carlo simulation, and the verification suites, all emitting
//! reproducible CSV/JSON artifacts.
//!
//! Every output embeds the tool version and the full run configuration, so
//! re-running the embedded configuration reproduces the file byte for byte.
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::closedform::{
    ddf_1k1, ddf_2k2_upper, ddf_n1n, fd_df_n1n, fundamental_1k1, scf_1k1, ClosedFormError,
};
use crate::curves::{ptp_dmt, CurveError};
use crate::exponents::AntennaConfig;
use crate::optimizer::{ddf_curve, ddf_dmt, SolveError, SolverSettings};
use crate::simulator::{diversity_slope, OutageEstimate, SimError};
use crate::validation::{run_suite, Suite, SuiteOptions};

/// Tool version stamped into every output artifact.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(
    name = "dmtlab",
    version,
    about = "Diversity-multiplexing tradeoff toolkit for a dynamic decode-and-forward MIMO relay"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample the numeric tradeoff curve plus the direct-link baseline.
    Curve {
        /// Antenna counts as m,k,n (source, relay, destination).
        #[arg(long, value_parser = parse_antennas)]
        antennas: Antennas,
        /// Multiplexing-gain grid step.
        #[arg(long, default_value_t = 0.05)]
        r_step: f64,
        /// Write the artifact here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Artifact format.
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Numeric curve side by side with every applicable closed form.
    Compare {
        /// Antenna counts as m,k,n (source, relay, destination).
        #[arg(long, value_parser = parse_antennas)]
        antennas: Antennas,
        /// Multiplexing-gain grid step.
        #[arg(long, default_value_t = 0.05)]
        r_step: f64,
        /// Write the artifact here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Artifact format.
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Monte Carlo outage sweep with a fitted diversity slope.
    Simulate {
        /// Antenna counts as m,k,n (source, relay, destination).
        #[arg(long, value_parser = parse_antennas)]
        antennas: Antennas,
        /// Multiplexing gain to simulate at.
        #[arg(long)]
        r: f64,
        /// SNR grid in dB as start:stop:step.
        #[arg(long, value_parser = parse_snr_grid, default_value = "20:35:5")]
        snr: SnrGrid,
        /// Channel draws per SNR point.
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        /// Root seed; together with the grid it fixes every draw.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Write the artifact here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Artifact format.
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Run a verification suite (closedform, properties, montecarlo, support).
    Validate {
        /// Suite name.
        suite: String,
        /// Support suite only: check a single SNR point (dB) instead of the
        /// three-decade sweep.
        #[arg(long)]
        snr_db: Option<f64>,
        /// Optional path for the JSON report (the table always prints).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Antenna counts (source m, relay k, destination n).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Antennas {
    pub m: usize,
    pub k: usize,
    pub n: usize,
}

fn parse_antennas(s: &str) -> Result<Antennas, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected m,k,n (three comma-separated counts), got '{s}'"));
    }
    let mut v = [0usize; 3];
    for (slot, part) in v.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse::<usize>()
            .map_err(|_| format!("'{part}' is not a valid antenna count"))?;
        if *slot == 0 {
            return Err("antenna counts must be at least 1".to_string());
        }
    }
    Ok(Antennas { m: v[0], k: v[1], n: v[2] })
}

/// Inclusive dB grid parsed from start:stop:step.
#[derive(Debug, Clone, PartialEq)]
pub struct SnrGrid(pub Vec<f64>);

fn parse_snr_grid(s: &str) -> Result<SnrGrid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected start:stop:step in dB, got '{s}'"));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>().map_err(|_| format!("'{p}' is not a number")))
        .collect::<Result<_, _>>()?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if !(step > 0.0) {
        return Err(format!("step must be positive, got {step}"));
    }
    if stop < start {
        return Err(format!("stop {stop} lies below start {start}"));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize;
    let grid = (0..=count).map(|i| start + i as f64 * step).collect();
    Ok(SnrGrid(grid))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    fn as_str(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

/// Run parameters embedded in every output artifact for provenance.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub antennas: Option<(usize, usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_step: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub snr_db_grid: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_path: Option<String>,
    pub format: String,
}

impl RunConfig {
    fn new(command: &str, format: &str) -> Self {
        RunConfig {
            command: command.to_string(),
            antennas: None,
            r: None,
            r_step: None,
            snr_db_grid: None,
            trials: None,
            seed: None,
            suite: None,
            output_path: None,
            format: format.to_string(),
        }
    }

    fn json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unsupported inputs → exit code 2.
    Usage(String),
    /// Failures while computing or writing → exit code 1.
    Runtime(String),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(format!("i/o error: {e}"))
    }
}

impl From<CurveError> for CliError {
    fn from(e: CurveError) -> Self {
        match e {
            CurveError::InvalidAntennas { .. } | CurveError::OutOfDomain { .. } => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::MuxOutOfRange { .. }
            | SolveError::BadStep { .. }
            | SolveError::InvalidSettings(_) => CliError::Usage(e.to_string()),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<ClosedFormError> for CliError {
    fn from(e: ClosedFormError) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        match e {
            SimError::InvalidInput(m) => CliError::Usage(m),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

/// Executes a parsed command line; prints errors to stderr and returns the
/// process exit code.
pub fn run(cli: Cli) -> i32 {
    let outcome = match cli.command {
        Command::Curve { antennas, r_step, out, format } => {
            cmd_curve(antennas, r_step, &out, format)
        }
        Command::Compare { antennas, r_step, out, format } => {
            cmd_compare(antennas, r_step, &out, format)
        }
        Command::Simulate { antennas, r, snr, trials, seed, out, format } => {
            cmd_simulate(antennas, r, &snr, trials, seed, &out, format)
        }
        Command::Validate { suite, snr_db, out } => cmd_validate(&suite, snr_db, &out),
    };
    match outcome {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn antenna_config(a: Antennas) -> Result<AntennaConfig, CliError> {
    AntennaConfig::new(a.m, a.k, a.n).map_err(|e| CliError::Usage(e.to_string()))
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

/// JSON number rounded to 12 significant digits (null when not finite).
fn sig12(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("float round-trips");
    serde_json::Number::from_f64(rounded).map(Value::Number).unwrap_or(Value::Null)
}

/// Tabular artifact: provenance header, optional notes, named columns.
struct TableDoc {
    config: RunConfig,
    notes: Vec<String>,
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl TableDoc {
    fn to_csv(&self) -> String {
        let mut s = format!("# dmtlab {VERSION}\n# config {}\n", self.config.json());
        for note in &self.notes {
            s.push_str(&format!("# note {note}\n"));
        }
        s.push_str(&self.columns.join(","));
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    fn to_json(&self) -> String {
        let mut doc = Map::new();
        doc.insert("version".into(), Value::String(VERSION.into()));
        doc.insert(
            "config".into(),
            serde_json::to_value(&self.config).expect("config serializes"),
        );
        if !self.notes.is_empty() {
            doc.insert(
                "notes".into(),
                Value::Array(self.notes.iter().map(|n| Value::String(n.clone())).collect()),
            );
        }
        doc.insert(
            "columns".into(),
            Value::Array(self.columns.iter().map(|c| Value::String(c.clone())).collect()),
        );
        doc.insert(
            "rows".into(),
            Value::Array(
                self.rows
                    .iter()
                    .map(|row| Value::Array(row.iter().map(|&v| sig12(v)).collect()))
                    .collect(),
            ),
        );
        let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("doc serializes");
        s.push('\n');
        s
    }

    fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }
}

fn cmd_curve(
    antennas: Antennas,
    r_step: f64,
    out: &Option<PathBuf>,
    format: OutputFormat,
) -> Result<i32, CliError> {
    let cfg = antenna_config(antennas)?;
    let ddf = ddf_curve(cfg, r_step, SolverSettings::default())?;
    let ptp = ptp_dmt(antennas.m, antennas.n)?;

    let mut config = RunConfig::new("curve", format.as_str());
    config.antennas = Some((antennas.m, antennas.k, antennas.n));
    config.r_step = Some(r_step);
    config.output_path = out.as_ref().map(|p| p.display().to_string());

    let mut rows = Vec::with_capacity(ddf.breakpoints.len());
    for &(r, d) in &ddf.breakpoints {
        rows.push(vec![r, d, ptp.eval(r)?]);
    }
    let doc = TableDoc {
        config,
        notes: Vec::new(),
        columns: vec!["r".into(), "ddf".into(), "ptp".into()],
        rows,
    };
    emit(out, &doc.render(format))?;
    Ok(0)
}

type ClosedColumn = (&'static str, Box<dyn Fn(f64) -> Result<f64, ClosedFormError>>);

/// Closed-form reference columns applicable to a configuration.
fn closed_columns(a: Antennas) -> Vec<ClosedColumn> {
    let mut cols: Vec<ClosedColumn> = Vec::new();
    let (m, k, n) = (a.m, a.k, a.n);
    if m == 1 && n == 1 {
        cols.push(("ddf_closed", Box::new(move |r| ddf_1k1(k, r))));
        cols.push(("fundamental", Box::new(move |r| fundamental_1k1(k, r))));
        if k >= 2 {
            cols.push(("scf", Box::new(move |r| scf_1k1(k, r))));
        }
    } else if k == 1 && m == n {
        cols.push(("ddf_closed", Box::new(move |r| ddf_n1n(n, r))));
        cols.push(("fddf", Box::new(move |r| fd_df_n1n(n, r))));
    } else if m == 2 && n == 2 && k >= 2 {
        cols.push(("ddf_upper", Box::new(move |r| ddf_2k2_upper(k, r))));
    }
    cols
}

fn cmd_compare(
    antennas: Antennas,
    r_step: f64,
    out: &Option<PathBuf>,
    format: OutputFormat,
) -> Result<i32, CliError> {
    let cfg = antenna_config(antennas)?;
    let ddf = ddf_curve(cfg, r_step, SolverSettings::default())?;
    let ptp = ptp_dmt(antennas.m, antennas.n)?;
    let closed = closed_columns(antennas);

    let mut config = RunConfig::new("compare", format.as_str());
    config.antennas = Some((antennas.m, antennas.k, antennas.n));
    config.r_step = Some(r_step);
    config.output_path = out.as_ref().map(|p| p.display().to_string());

    let mut notes = Vec::new();
    if closed.is_empty() {
        let msg = format!(
            "no closed-form reference applies to ({},{},{}); emitting numeric curve and \
             direct-link baseline only",
            antennas.m, antennas.k, antennas.n
        );
        eprintln!("warning: {msg}");
        notes.push(msg);
    }

    let mut columns = vec!["r".to_string(), "ddf_numeric".to_string()];
    columns.extend(closed.iter().map(|(name, _)| name.to_string()));
    columns.push("ptp".to_string());

    let mut rows = Vec::with_capacity(ddf.breakpoints.len());
    for &(r, d) in &ddf.breakpoints {
        let mut row = vec![r, d];
        for (_, f) in &closed {
            row.push(f(r)?);
        }
        row.push(ptp.eval(r)?);
        rows.push(row);
    }

    let doc = TableDoc { config, notes, columns, rows };
    emit(out, &doc.render(format))?;
    Ok(0)
}

fn simulate_doc(
    config: &RunConfig,
    reference: f64,
    est: &OutageEstimate,
    reason: Option<&str>,
    format: OutputFormat,
) -> String {
    match format {
        OutputFormat::Csv => {
            let mut s = format!("# dmtlab {VERSION}\n# config {}\n", config.json());
            s.push_str(&format!("# reference_diversity {reference}\n"));
            match est.slope {
                Some(v) => s.push_str(&format!("# slope {v}\n")),
                None => s.push_str("# slope null\n"),
            }
            match est.slope_stderr {
                Some(v) => s.push_str(&format!("# slope_stderr {v}\n")),
                None => s.push_str("# slope_stderr null\n"),
            }
            if let Some(msg) = reason {
                s.push_str(&format!("# reason {msg}\n"));
            }
            s.push_str(&est.to_csv());
            s
        }
        OutputFormat::Json => {
            let mut doc = Map::new();
            doc.insert("version".into(), Value::String(VERSION.into()));
            doc.insert(
                "config".into(),
                serde_json::to_value(config).expect("config serializes"),
            );
            doc.insert("reference_diversity".into(), sig12(reference));
            doc.insert(
                "slope".into(),
                est.slope.map(sig12).unwrap_or(Value::Null),
            );
            doc.insert(
                "slope_stderr".into(),
                est.slope_stderr.map(sig12).unwrap_or(Value::Null),
            );
            if let Some(msg) = reason {
                doc.insert("reason".into(), Value::String(msg.into()));
            }
            let points: Vec<Value> = (0..est.snr_db_grid.len())
                .map(|i| {
                    let mut pt = Map::new();
                    pt.insert("snr_db".into(), sig12(est.snr_db_grid[i]));
                    pt.insert("p_out".into(), sig12(est.p_out[i]));
                    pt.insert("trials".into(), Value::from(est.trials[i]));
                    pt.insert("ci_radius".into(), sig12(est.wilson_radius[i]));
                    pt.insert("events".into(), Value::from(est.events[i]));
                    pt.insert("included".into(), Value::from(est.included[i]));
                    Value::Object(pt)
                })
                .collect();
            doc.insert("points".into(), Value::Array(points));
            let mut s =
                serde_json::to_string_pretty(&Value::Object(doc)).expect("doc serializes");
            s.push('\n');
            s
        }
    }
}

fn cmd_simulate(
    antennas: Antennas,
    r: f64,
    snr: &SnrGrid,
    trials: u64,
    seed: u64,
    out: &Option<PathBuf>,
    format: OutputFormat,
) -> Result<i32, CliError> {
    let cfg = antenna_config(antennas)?;
    let reference = ddf_dmt(cfg, r, SolverSettings::default())?;

    let mut config = RunConfig::new("simulate", format.as_str());
    config.antennas = Some((antennas.m, antennas.k, antennas.n));
    config.r = Some(r);
    config.snr_db_grid = Some(snr.0.clone());
    config.trials = Some(trials);
    config.seed = Some(seed);
    config.output_path = out.as_ref().map(|p| p.display().to_string());

    let (est, reason) = match diversity_slope(cfg, r, &snr.0, trials, seed) {
        Ok(est) => (est, None),
        Err(SimError::InsufficientStatistics(est)) => (*est, Some("insufficient outage events")),
        Err(e) => return Err(e.into()),
    };

    emit(out, &simulate_doc(&config, reference, &est, reason, format))?;
    Ok(0)
}

fn cmd_validate(
    suite: &str,
    snr_db: Option<f64>,
    out: &Option<PathBuf>,
) -> Result<i32, CliError> {
    let suite = Suite::from_str(suite).map_err(CliError::Usage)?;
    let opts = SuiteOptions { support_snr_db: snr_db };
    let report = run_suite(suite, &opts);
    print!("{}", report.render_table());

    if out.is_some() {
        let mut config = RunConfig::new("validate", "json");
        config.suite = Some(suite.to_string());
        config.output_path = out.as_ref().map(|p| p.display().to_string());
        let mut doc = Map::new();
        doc.insert("version".into(), Value::String(VERSION.into()));
        doc.insert(
            "config".into(),
            serde_json::to_value(&config).expect("config serializes"),
        );
        doc.insert(
            "report".into(),
            serde_json::to_value(&report).expect("report serializes"),
        );
        let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("doc serializes");
        s.push('\n');
        emit(out, &s)?;
    }

    Ok(if report.passed { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antenna_parsing() {
        assert_eq!(
            parse_antennas("1,2,3").unwrap(),
            Antennas { m: 1, k: 2, n: 3 }
        );
        assert_eq!(
            parse_antennas(" 2 , 2 , 2 ").unwrap(),
            Antennas { m: 2, k: 2, n: 2 }
        );
        assert!(parse_antennas("1,2").is_err());
        assert!(parse_antennas("0,1,1").is_err());
        assert!(parse_antennas("a,b,c").is_err());
    }

    #[test]
    fn snr_grid_parsing() {
        assert_eq!(parse_snr_grid("20:35:5").unwrap().0, vec![20.0, 25.0, 30.0, 35.0]);
        assert_eq!(parse_snr_grid("10:10:1").unwrap().0, vec![10.0]);
        assert!(parse_snr_grid("20:35:0").is_err());
        assert!(parse_snr_grid("35:20:5").is_err());
        assert!(parse_snr_grid("20:35").is_err());
    }

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sig12(0.05).to_string(), "0.05");
        let v = sig12(1.0 / 3.0);
        assert_eq!(v.to_string(), "0.333333333333");
        assert_eq!(sig12(f64::NAN), Value::Null);
    }

    #[test]
    fn curve_csv_shape() {
        let doc = TableDoc {
            config: RunConfig::new("curve", "csv"),
            notes: vec!["hello".into()],
            columns: vec!["r".into(), "d".into()],
            rows: vec![vec![0.0, 3.0], vec![1.0, 0.0]],
        };
        let csv = doc.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert!(lines[0].starts_with("# dmtlab "));
        assert!(lines[1].starts_with("# config {"));
        assert_eq!(lines[2], "# note hello");
        assert_eq!(lines[3], "r,d");
        assert_eq!(lines[4], "0,3");
        assert_eq!(lines[5], "1,0");
    }

    #[test]
    fn closed_column_selection() {
        let names = |a: Antennas| -> Vec<&'static str> {
            closed_columns(a).iter().map(|(n, _)| *n).collect()
        };
        assert_eq!(
            names(Antennas { m: 1, k: 2, n: 1 }),
            vec!["ddf_closed", "fundamental", "scf"]
        );
        assert_eq!(
            names(Antennas { m: 1, k: 1, n: 1 }),
            vec!["ddf_closed", "fundamental"]
        );
        assert_eq!(names(Antennas { m: 2, k: 1, n: 2 }), vec!["ddf_closed", "fddf"]);
        assert_eq!(names(Antennas { m: 2, k: 3, n: 2 }), vec!["ddf_upper"]);
        assert!(names(Antennas { m: 3, k: 3, n: 3 }).is_empty());
    }

    #[test]
    fn cli_parses_spec_examples() {
        let cli = Cli::try_parse_from([
            "dmtlab", "curve", "--antennas", "1,2,1", "--r-step", "0.05",
        ])
        .unwrap();
        match cli.command {
            Command::Curve { antennas, r_step, .. } => {
                assert_eq!(antennas, Antennas { m: 1, k: 2, n: 1 });
                assert_eq!(r_step, 0.05);
            }
            other => panic!("parsed wrong command: {other:?}"),
        }

        let cli = Cli::try_parse_from([
            "dmtlab", "simulate", "--antennas", "1,1,1", "--r", "0.5", "--snr", "20:35:5",
            "--trials", "2000000", "--seed", "7",
        ])
        .unwrap();
        match cli.command {
            Command::Simulate { r, snr, trials, seed, .. } => {
                assert_eq!(r, 0.5);
                assert_eq!(snr.0.len(), 4);
                assert_eq!(trials, 2_000_000);
                assert_eq!(seed, 7);
            }
            other => panic!("parsed wrong command: {other:?}"),
        }

        assert!(Cli::try_parse_from(["dmtlab", "curve", "--antennas", "1,2"]).is_err());
    }
}
