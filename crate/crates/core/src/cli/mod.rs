//! Command-line front end.
//!
//! Exit statuses: 0 success, 1 tolerance or physicality failure, 2 usage or
//! I/O error.

pub mod output;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::bd::{werner, BdTriple};
use crate::error::Error;
use crate::oracle::oracle_compare;
use crate::quantifiers::{classical_correlations_bd, laqc_bd, laqc_search};
use crate::search::GridSpec;
use output::{Cell, Format, Record, Report};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// `T,P,R`: theta steps, phi steps, refinement rounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridArg {
    pub theta_steps: usize,
    pub phi_steps: usize,
    pub refine_rounds: usize,
}

impl FromStr for GridArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [t, p, r] = parts.as_slice() else {
            return Err(format!("expected T,P,R, got {s:?}"));
        };
        let num = |x: &str| x.parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
        Ok(Self {
            theta_steps: num(t)?,
            phi_steps: num(p)?,
            refine_rounds: num(r)?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepAxis {
    C1,
    C2,
    C3,
    #[value(name = "werner_z")]
    WernerZ,
}

impl SweepAxis {
    fn name(self) -> &'static str {
        match self {
            SweepAxis::C1 => "c1",
            SweepAxis::C2 => "c2",
            SweepAxis::C3 => "c3",
            SweepAxis::WernerZ => "werner_z",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "laqc", version, about = "Classical correlations and LAQC of Bell-diagonal states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Also run the numeric optimization paths.
    #[arg(long, global = true)]
    pub numeric: bool,

    /// Symmetric-basis grid: theta steps, phi steps, refinement rounds.
    #[arg(long, global = true, value_name = "T,P,R")]
    pub grid: Option<GridArg>,

    /// Points per complementary-basis phase.
    #[arg(long, global = true, value_name = "N")]
    pub phi_steps: Option<usize>,

    /// Maximum accepted |analytic - numeric| difference.
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub tol: f64,

    /// Tolerance on negative eigenvalues when checking physicality.
    #[arg(long, global = true, default_value_t = crate::bd::DEFAULT_TOL)]
    pub phys_tol: f64,

    /// Seed for random sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Write output here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Quantifiers of a single state.
    Compute {
        #[arg(allow_negative_numbers = true)]
        c1: f64,
        #[arg(allow_negative_numbers = true)]
        c2: f64,
        #[arg(allow_negative_numbers = true)]
        c3: f64,
    },
    /// Quantifiers along one parameter axis.
    Sweep {
        #[arg(long, value_enum)]
        axis: SweepAxis,
        #[arg(long, allow_negative_numbers = true)]
        start: f64,
        #[arg(long, allow_negative_numbers = true)]
        stop: f64,
        #[arg(long)]
        steps: usize,
        /// Fixed c1 when not swept.
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        c1: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        c2: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        c3: f64,
    },
    /// Physicality verdict for every triple in a file.
    Validate { path: PathBuf },
    /// Compare closed forms against the numeric optimization on random states.
    OracleCompare {
        #[arg(long, default_value_t = 500)]
        count: usize,
        /// Use the maximally mixed state as the first sample.
        #[arg(long)]
        include_origin: bool,
    },
}

impl Cli {
    pub fn grid_spec(&self) -> GridSpec {
        let mut g = GridSpec::default();
        if let Some(a) = self.grid {
            g.theta_steps = a.theta_steps;
            g.phi_steps = a.phi_steps;
            g.refine_rounds = a.refine_rounds;
        }
        if let Some(n) = self.phi_steps {
            g.phase_steps = n;
        }
        g
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit status.
pub fn run<I, S>(args: I) -> u8
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let mut stderr = io::stderr();
    match &cli.output {
        Some(path) => match File::create(path) {
            Ok(f) => {
                let mut w = BufWriter::new(f);
                let code = execute(&cli, &mut w, &mut stderr);
                if let Err(e) = w.flush() {
                    let _ = writeln!(stderr, "error: {}: {e}", path.display());
                    return EXIT_USAGE;
                }
                code
            }
            Err(e) => {
                let _ = writeln!(stderr, "error: cannot create {}: {e}", path.display());
                EXIT_USAGE
            }
        },
        None => execute(&cli, &mut io::stdout().lock(), &mut stderr),
    }
}

/// Runs a parsed command against the given streams.
pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let grid = cli.grid_spec();
    if cli.numeric || matches!(cli.command, Command::OracleCompare { .. }) {
        if let Err(e) = grid.validate() {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    }
    if !(cli.tol >= 0.0) || !(cli.phys_tol >= 0.0) {
        let _ = writeln!(err, "error: tolerances must be non-negative");
        return EXIT_USAGE;
    }

    let outcome = match &cli.command {
        Command::Compute { c1, c2, c3 } => cmd_compute(cli, &grid, BdTriple::new(*c1, *c2, *c3), err),
        Command::Sweep {
            axis,
            start,
            stop,
            steps,
            c1,
            c2,
            c3,
        } => cmd_sweep(cli, &grid, *axis, *start, *stop, *steps, [*c1, *c2, *c3], err),
        Command::Validate { path } => cmd_validate(cli, path, err),
        Command::OracleCompare { count, include_origin } => {
            cmd_oracle_compare(cli, &grid, *count, *include_origin, err)
        }
    };
    let (report, code) = match outcome {
        Ok(v) => v,
        Err(code) => return code,
    };
    if let Err(e) = report.write(cli.format, out) {
        let _ = writeln!(err, "error: writing output: {e}");
        return EXIT_USAGE;
    }
    if cli.format == Format::Csv {
        if let Some(line) = report.summary_line() {
            let _ = writeln!(err, "{line}");
        }
    }
    code
}

fn meta(cli: &Cli, grid: &GridSpec, command: &str, seed: Option<u64>) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    m.insert("command".into(), json!(command));
    m.insert(
        "grid".into(),
        json!({
            "theta_steps": grid.theta_steps,
            "phi_steps": grid.phi_steps,
            "refine_rounds": grid.refine_rounds,
            "refine_shrink": grid.refine_shrink,
            "phase_steps": grid.phase_steps,
            "general_steps": grid.general_steps,
        }),
    );
    m.insert("seed".into(), seed.map_or(Value::Null, |s| json!(s)));
    m.insert("numeric".into(), json!(cli.numeric));
    m.insert("tol".into(), json!(cli.tol));
    m.insert("phys_tol".into(), json!(cli.phys_tol));
    m
}

/// Columns shared by `compute` and `sweep`. Returns the record and whether
/// the state passed (physical, and numeric deltas within `tol`).
fn state_record(cli: &Cli, grid: &GridSpec, state: &BdTriple<f64>) -> (Record, Result<bool, Error>) {
    let mut r = Record::new();
    r.push("c1", state.c1).push("c2", state.c2).push("c3", state.c3);
    let check = state.check_physical(cli.phys_tol);
    r.push("physical", check.is_ok());
    r.push("reason", check.as_ref().err().map(ToString::to_string));
    for (k, l) in state.eigenvalues().into_iter().enumerate() {
        r.push(&format!("lambda{}", k + 1), l);
    }

    let analytic = check
        .clone()
        .and_then(|_| Ok((classical_correlations_bd(state)?, laqc_bd(state)?)));
    let numeric = match (&analytic, cli.numeric) {
        (Ok(_), true) => Some(laqc_search(state, grid)),
        _ => None,
    };

    let get = |f: &dyn Fn() -> Cell| if analytic.is_ok() { f() } else { Cell::Empty };
    let (c, l) = match &analytic {
        Ok((c, l)) => (Some(c), Some(l)),
        Err(_) => (None, None),
    };
    r.push("c_m", get(&|| c.unwrap().extremal_coefficient.into()));
    r.push("c_M", get(&|| l.unwrap().extremal_coefficient.into()));
    r.push("C", get(&|| c.unwrap().value.into()));
    r.push("L", get(&|| l.unwrap().value.into()));
    r.push("case_C", get(&|| c.unwrap().case.to_string().into()));
    r.push("case_L", get(&|| l.unwrap().case.to_string().into()));
    r.push("tie", get(&|| (c.unwrap().tie || l.unwrap().tie).into()));

    let mut pass = analytic.is_ok();
    if cli.numeric {
        let n = numeric.as_ref().and_then(|n| n.as_ref().ok());
        let delta_c = n.map(|n| (n.classical.result.value - c.unwrap().value).abs());
        let delta_l = n.map(|n| (n.result.value - l.unwrap().value).abs());
        r.push("C_numeric", n.map(|n| n.classical.result.value));
        r.push("L_numeric", n.map(|n| n.result.value));
        r.push("delta_C", delta_c);
        r.push("delta_L", delta_l);
        r.push("theta", n.map(|n| n.basis.theta));
        r.push("phi", n.map(|n| n.basis.phi));
        r.push("phase1", n.map(|n| n.phases.phi1));
        r.push("phase2", n.map(|n| n.phases.phi2));
        r.push("case_C_numeric", n.map(|n| n.classical.result.case.to_string()));
        r.push("case_L_numeric", n.map(|n| n.result.case.to_string()));
        r.push("C_general", n.map(|n| n.classical.general.value));
        if let (Some(dc), Some(dl)) = (delta_c, delta_l) {
            pass &= dc <= cli.tol && dl <= cli.tol;
        }
    }
    let status = match (check, numeric) {
        (Err(e), _) => Err(e),
        (Ok(_), Some(Err(e))) => Err(e),
        _ => Ok(pass),
    };
    (r, status)
}

type Outcome = Result<(Report, u8), u8>;

fn cmd_compute(cli: &Cli, grid: &GridSpec, state: BdTriple<f64>, err: &mut dyn Write) -> Outcome {
    let (record, status) = state_record(cli, grid, &state);
    let code = match status {
        Ok(true) => EXIT_OK,
        Ok(false) => {
            let _ = writeln!(err, "error: numeric result differs from closed form by more than {}", cli.tol);
            EXIT_FAILURE
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    };
    let report = Report {
        meta: meta(cli, grid, "compute", None),
        rows: vec![record],
        summary: None,
    };
    Ok((report, code))
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    cli: &Cli,
    grid: &GridSpec,
    axis: SweepAxis,
    start: f64,
    stop: f64,
    steps: usize,
    fixed: [f64; 3],
    err: &mut dyn Write,
) -> Outcome {
    if !(start <= stop) || steps < 2 || !start.is_finite() || !stop.is_finite() {
        let _ = writeln!(err, "error: sweep needs finite start <= stop and steps >= 2");
        return Err(EXIT_USAGE);
    }
    let mut rows = Vec::with_capacity(steps);
    let mut failures = 0usize;
    for k in 0..steps {
        let x = if k + 1 == steps {
            stop
        } else {
            start + (stop - start) * k as f64 / (steps - 1) as f64
        };
        let mut row = Record::new();
        row.push("axis", axis.name()).push("value", x);
        let state = match axis {
            SweepAxis::C1 => Ok(BdTriple::new(x, fixed[1], fixed[2])),
            SweepAxis::C2 => Ok(BdTriple::new(fixed[0], x, fixed[2])),
            SweepAxis::C3 => Ok(BdTriple::new(fixed[0], fixed[1], x)),
            SweepAxis::WernerZ => werner(x),
        };
        match state {
            Ok(s) => {
                let (rec, status) = state_record(cli, grid, &s);
                if status == Ok(false) {
                    failures += 1;
                }
                row.extend(rec);
            }
            Err(e) => {
                row.push("physical", false).push("reason", e.to_string());
            }
        }
        rows.push(row);
    }
    if failures > 0 {
        let _ = writeln!(err, "error: {failures} rows exceed the numeric tolerance {}", cli.tol);
    }
    let report = Report {
        meta: meta(cli, grid, "sweep", None),
        rows,
        summary: None,
    };
    Ok((report, if failures > 0 { EXIT_FAILURE } else { EXIT_OK }))
}

/// Parses one line of a triple file: comma- or whitespace-separated, `#`
/// starts a comment. `Ok(None)` for blank lines.
pub fn parse_triple_line(line: &str) -> Result<Option<[f64; 3]>, String> {
    let body = line.split('#').next().unwrap_or("").trim();
    if body.is_empty() {
        return Ok(None);
    }
    let fields: Vec<&str> = body
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect();
    if fields.len() != 3 {
        return Err(format!("expected 3 values, found {}", fields.len()));
    }
    let mut out = [0.0; 3];
    for (slot, f) in out.iter_mut().zip(&fields) {
        *slot = f.parse::<f64>().map_err(|e| format!("{f:?}: {e}"))?;
        if !slot.is_finite() {
            return Err(format!("{f:?} is not finite"));
        }
    }
    Ok(Some(out))
}

fn cmd_validate(cli: &Cli, path: &Path, err: &mut dyn Write) -> Outcome {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: cannot read {}: {e}", path.display());
            return Err(EXIT_USAGE);
        }
    };
    let (mut physical, mut unphysical, mut malformed) = (0i64, 0i64, 0i64);
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let mut row = Record::new();
        row.push("line", Cell::Int(lineno as i64));
        match parse_triple_line(line) {
            Ok(None) => continue,
            Ok(Some([c1, c2, c3])) => {
                let s = BdTriple::new(c1, c2, c3);
                let check = s.check_physical(cli.phys_tol);
                row.push("c1", c1).push("c2", c2).push("c3", c3);
                row.push("physical", check.is_ok());
                match check {
                    Ok(()) => {
                        physical += 1;
                        row.push("reason", Cell::Empty);
                    }
                    Err(e) => {
                        unphysical += 1;
                        row.push("reason", e.to_string());
                    }
                }
            }
            Err(msg) => {
                malformed += 1;
                let _ = writeln!(err, "{}:{lineno}: malformed row: {msg}", path.display());
                row.push("c1", Cell::Empty).push("c2", Cell::Empty).push("c3", Cell::Empty);
                row.push("physical", false).push("reason", format!("malformed: {msg}"));
            }
        }
        rows.push(row);
    }
    let mut summary = Record::new();
    summary
        .push("rows", Cell::Int(physical + unphysical + malformed))
        .push("physical", Cell::Int(physical))
        .push("unphysical", Cell::Int(unphysical))
        .push("malformed", Cell::Int(malformed));
    let code = if unphysical == 0 && malformed == 0 {
        EXIT_OK
    } else {
        EXIT_FAILURE
    };
    let grid = GridSpec::default();
    let report = Report {
        meta: meta(cli, &grid, "validate", None),
        rows,
        summary: Some(summary),
    };
    Ok((report, code))
}

fn cmd_oracle_compare(cli: &Cli, grid: &GridSpec, count: usize, include_origin: bool, err: &mut dyn Write) -> Outcome {
    if count == 0 {
        let _ = writeln!(err, "error: --count must be at least 1");
        return Err(EXIT_USAGE);
    }
    let first = include_origin.then(|| BdTriple::new(0.0, 0.0, 0.0));
    let summary = match oracle_compare::<f64>(count, cli.seed, first, grid) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return Err(EXIT_USAGE);
        }
    };
    let rows = summary
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut rec = Record::new();
            rec.push("index", Cell::Int(i as i64))
                .push("c1", r.state.c1)
                .push("c2", r.state.c2)
                .push("c3", r.state.c3)
                .push("C", r.classical_analytic)
                .push("C_numeric", r.classical_numeric)
                .push("delta_C", r.delta_classical())
                .push("L", r.laqc_analytic)
                .push("L_numeric", r.laqc_numeric)
                .push("delta_L", r.delta_laqc());
            rec
        })
        .collect();
    let pass = summary.passes(cli.tol);
    let mut s = Record::new();
    s.push("count", Cell::Int(count as i64))
        .push("max_delta_C", summary.max_delta_classical)
        .push("worst_C_c1", summary.worst_classical.c1)
        .push("worst_C_c2", summary.worst_classical.c2)
        .push("worst_C_c3", summary.worst_classical.c3)
        .push("max_delta_L", summary.max_delta_laqc)
        .push("worst_L_c1", summary.worst_laqc.c1)
        .push("worst_L_c2", summary.worst_laqc.c2)
        .push("worst_L_c3", summary.worst_laqc.c3)
        .push("tol", cli.tol)
        .push("pass", pass);
    let report = Report {
        meta: meta(cli, grid, "oracle-compare", Some(cli.seed)),
        rows,
        summary: Some(s),
    };
    Ok((report, if pass { EXIT_OK } else { EXIT_FAILURE }))
}
