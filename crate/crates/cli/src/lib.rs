//! Subcommands of the `ellipmean` binary. Everything writes to caller-supplied
//! sinks so the commands can be driven from tests.

use std::fmt;
use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use ellipmean::analysis::{
    conjecture_scan, family_difference, open_grid, ratio_r, scan_values, CertifiedGap, Direction,
    MONOTONE_TOL,
};
use ellipmean::approximations::{approx_value, fit_leading_order, max_abs_error, s_family, ApproxId};
use ellipmean::special_fn::{ellip_e, ellip_k, two_over_pi_e, EvalOptions};
use ellipmean::verify::{self, Context, Level, PaperCatalog};
use ellipmean::Modulus64;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Domain(String),
    #[error("verification failed: {0}")]
    Verify(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

impl CliError {
    /// 1 verification failure, 2 domain or flag error, 3 I/O error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verify(_) => 1,
            CliError::Domain(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}

impl From<ellipmean::Error> for CliError {
    fn from(e: ellipmean::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "ellipmean", version, about = "Stolarsky-mean approximations of (2/pi)E(r) and their sharp bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print values and signed errors at one modulus.
    Eval {
        #[arg(long)]
        r: f64,
        /// Comma-separated: E, K, A1..A8, s_family(p)
        #[arg(long, value_delimiter = ',', required = true)]
        target: Vec<Target>,
    },
    /// Tabulate approximation errors on the open grid as CSV.
    Table {
        #[arg(long)]
        grid: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        ids: Vec<ApproxId>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the named checks; exit 1 if any fails.
    Verify {
        #[arg(long, value_enum, default_value = "fast")]
        level: LevelArg,
    },
    /// Scan p ↦ R_p for direction and the sign of (2/pi)E − S_{9/2−p,p}.
    ScanP {
        #[arg(long, allow_hyphen_values = true)]
        lo: f64,
        #[arg(long, allow_hyphen_values = true)]
        hi: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        grid: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Explore H(r) at p0, where theta_p = 2/pi.
    Conjecture {
        #[arg(long)]
        grid: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    Fast,
    Full,
}

impl From<LevelArg> for Level {
    fn from(l: LevelArg) -> Self {
        match l {
            LevelArg::Fast => Level::Fast,
            LevelArg::Full => Level::Full,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Target {
    E,
    K,
    Approx(ApproxId),
    Family(f64),
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let t = s.trim();
        match t {
            "E" | "e" => return Ok(Target::E),
            "K" | "k" => return Ok(Target::K),
            _ => {}
        }
        if let Ok(id) = t.parse::<ApproxId>() {
            return Ok(Target::Approx(id));
        }
        let inner = t
            .strip_prefix("s_family(")
            .or_else(|| t.strip_prefix("S("))
            .and_then(|rest| rest.strip_suffix(')'));
        match inner.map(|p| p.trim().parse::<f64>()) {
            Some(Ok(p)) => Ok(Target::Family(p)),
            _ => Err(format!("unknown target {t:?} (expected E, K, A1..A8 or s_family(p))")),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::E => f.write_str("E"),
            Target::K => f.write_str("K"),
            Target::Approx(id) => write!(f, "{id}"),
            Target::Family(p) => write!(f, "s_family({p})"),
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Eval { r, target } => cmd_eval(r, &target, out),
        Command::Table { grid, ids, out: path } => {
            let summary = cmd_table(grid, &ids, &path)?;
            writeln!(out, "{summary}").map_err(stdout_err)
        }
        Command::Verify { level } => cmd_verify(level.into(), out),
        Command::ScanP { lo, hi, steps, grid, out: path } => cmd_scan_p(lo, hi, steps, grid, &path, out),
        Command::Conjecture { grid, out: path } => cmd_conjecture(grid, &path, out),
    }
}

fn stdout_err(e: io::Error) -> CliError {
    CliError::Io {
        path: PathBuf::from("<stdout>"),
        source: e,
    }
}

fn modulus(r: f64) -> Result<Modulus64> {
    if !(0.0..=1.0).contains(&r) {
        return Err(CliError::Domain(format!("--r must lie in [0, 1], got {r}")));
    }
    Ok(Modulus64::new(r)?)
}

pub fn cmd_eval(r: f64, targets: &[Target], out: &mut dyn Write) -> Result<()> {
    let m = modulus(r)?;
    for t in targets {
        if let Target::Family(p) = t {
            if !(*p <= 2.25) {
                return Err(CliError::Domain(format!("s_family needs p <= 9/4, got {p}")));
            }
        }
    }
    let opts = EvalOptions::default();
    let e = two_over_pi_e(&m);
    for t in targets {
        let line = match *t {
            Target::E => format!("E r={r} value={}", ellip_e(&m, &opts)?),
            Target::K => format!("K r={r} value={}", ellip_k(&m, &opts)?),
            Target::Approx(id) => {
                let v = approx_value(id, &m);
                format!("{id} r={r} value={v} error={}", v - e)
            }
            Target::Family(p) => {
                let v = s_family(p, &m);
                format!("{t} r={r} value={v} error={}", v - e)
            }
        };
        writeln!(out, "{line}").map_err(stdout_err)?;
    }
    Ok(())
}

fn csv_writer(path: &Path) -> Result<csv::Writer<File>> {
    let file = File::create(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    Ok(csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(file))
}

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> CliError + '_ {
    move |e| CliError::Io {
        path: path.to_path_buf(),
        source: io::Error::other(e.to_string()),
    }
}

fn num(v: f64) -> String {
    // shortest round-trip form
    format!("{v}")
}

/// Writes the error table and returns a one-line summary per id.
pub fn cmd_table(grid: usize, ids: &[ApproxId], path: &Path) -> Result<String> {
    if grid < 2 {
        return Err(CliError::Domain(format!("--grid must be at least 2, got {grid}")));
    }
    let rows: Vec<Vec<String>> = open_grid(grid)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&r| {
            let m = Modulus64::new(r).expect("grid point in (0, 1)");
            let e = two_over_pi_e(&m);
            let mut row = vec![num(r), num(m.complement()), num(e)];
            for &id in ids {
                let v = approx_value(id, &m);
                row.push(num(v));
                row.push(num(v - e));
            }
            row
        })
        .collect();
    // supremum over [0, 1], not only over the printed grid
    let summary: Vec<(ApproxId, f64, f64, Option<(u32, f64)>)> = ids
        .par_iter()
        .map(|&id| {
            let (r_star, err) = max_abs_error(id, grid.max(2000));
            (id, err, r_star, fit_leading_order(id).ok())
        })
        .collect();

    let mut w = csv_writer(path)?;
    let to_err = csv_err(path);
    let mut header = vec!["r".to_string(), "rprime".into(), "two_over_pi_E".into()];
    for id in ids {
        header.push(format!("{id}_value"));
        header.push(format!("{id}_error"));
    }
    w.write_record(&header).map_err(&to_err)?;
    for row in &rows {
        w.write_record(row).map_err(&to_err)?;
    }
    let stat_row = |label: &str, f: &dyn Fn(&(ApproxId, f64, f64, Option<(u32, f64)>)) -> String| {
        let mut row = vec![label.to_string(), String::new(), String::new()];
        for s in &summary {
            row.push(String::new());
            row.push(f(s));
        }
        row
    };
    w.write_record(stat_row("max_abs_error", &|s| num(s.1))).map_err(&to_err)?;
    w.write_record(stat_row("argmax_r", &|s| num(s.2))).map_err(&to_err)?;
    w.write_record(stat_row("leading_order_n0", &|s| s.3.map_or(String::new(), |f| f.0.to_string())))
        .map_err(&to_err)?;
    w.write_record(stat_row("leading_order_eps", &|s| s.3.map_or(String::new(), |f| num(f.1))))
        .map_err(&to_err)?;
    w.flush().map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    Ok(summary
        .iter()
        .map(|(id, err, r, fit)| {
            let fit = fit.map_or("fit failed".to_string(), |(n0, eps)| format!("n0={n0} eps={eps:e}"));
            format!("{id} max_abs_error={err} at r={r} {fit}")
        })
        .collect::<Vec<_>>()
        .join("\n"))
}

pub fn cmd_verify(level: Level, out: &mut dyn Write) -> Result<()> {
    verify_with(level, &PaperCatalog, out)
}

/// [`cmd_verify`] against an arbitrary catalog.
pub fn verify_with(level: Level, catalog: &dyn verify::Catalog, out: &mut dyn Write) -> Result<()> {
    let ctx = Context { level, catalog };
    let outcomes: Vec<_> = verify::checks().par_iter().map(|c| c.run(&ctx)).collect();
    for o in &outcomes {
        writeln!(out, "{}", o.line()).map_err(stdout_err)?;
    }
    let report = verify::VerifyReport { outcomes };
    if report.passed() {
        writeln!(out, "all required checks passed").map_err(stdout_err)?;
        Ok(())
    } else {
        Err(CliError::Verify(report.failing().join(", ")))
    }
}

/// What the corollary asserts about `R_p`'s direction.
pub fn expected_direction(p: f64) -> Option<Direction> {
    if p <= 1.75 {
        Some(Direction::Increasing)
    } else if (2.0..=2.25).contains(&p) {
        Some(Direction::Decreasing)
    } else {
        None
    }
}

fn direction_name(d: Option<Direction>) -> &'static str {
    match d {
        Some(Direction::Increasing) => "increasing",
        Some(Direction::Decreasing) => "decreasing",
        Some(Direction::NonMonotone) => "non-monotone",
        None => "unclassified",
    }
}

pub fn cmd_scan_p(lo: f64, hi: f64, steps: usize, grid: usize, path: &Path, out: &mut dyn Write) -> Result<()> {
    if !(hi <= 2.25) {
        return Err(CliError::Domain(format!("--hi must be <= 9/4, got {hi}")));
    }
    if !(lo <= hi) || !lo.is_finite() {
        return Err(CliError::Domain(format!("--lo must be finite and <= --hi, got {lo}")));
    }
    if steps == 0 || grid < 16 {
        return Err(CliError::Domain("--steps must be >= 1 and --grid >= 16".into()));
    }
    let ps: Vec<f64> = (0..steps)
        .map(|i| if steps == 1 { lo } else { lo + (hi - lo) * i as f64 / (steps - 1) as f64 })
        .collect();
    let rs: Vec<f64> = open_grid(grid).collect();
    let rows: Vec<Vec<String>> = ps
        .par_iter()
        .map(|&p| {
            let ys: Vec<f64> = rs
                .iter()
                .map(|&r| ratio_r(p, &Modulus64::new(r).expect("grid point")).unwrap_or(f64::NAN))
                .collect();
            let rep = scan_values(&rs, &ys, MONOTONE_TOL);
            let gap = CertifiedGap::new(p);
            let (mut pos, mut neg, mut unknown) = (0usize, 0usize, 0usize);
            let mut max_abs = 0.0_f64;
            for &r in &rs {
                let m = Modulus64::new(r).expect("grid point");
                max_abs = max_abs.max(family_difference(p, &m).abs());
                // gap is S − (2/π)E; report (2/π)E − S
                match gap.sign(&m) {
                    Some(true) => neg += 1,
                    Some(false) => pos += 1,
                    None => unknown += 1,
                }
            }
            let pattern = match (pos, neg, unknown) {
                (_, 0, 0) => "positive",
                (0, _, 0) => "negative",
                (_, _, 0) => "mixed",
                _ => "undetermined",
            };
            let expected = expected_direction(p);
            let observed = Some(rep.direction);
            let agrees = match expected {
                Some(d) => (d == rep.direction).to_string(),
                None => String::new(),
            };
            vec![
                num(p),
                direction_name(observed).into(),
                direction_name(expected).into(),
                agrees,
                num(rep.max_violation),
                pattern.into(),
                pos.to_string(),
                neg.to_string(),
                unknown.to_string(),
                num(max_abs),
            ]
        })
        .collect();
    let mut w = csv_writer(path)?;
    let to_err = csv_err(path);
    w.write_record([
        "p",
        "direction",
        "expected",
        "agrees",
        "max_violation",
        "difference_sign",
        "positive_points",
        "negative_points",
        "undetermined_points",
        "max_abs_difference",
    ])
    .map_err(&to_err)?;
    for row in &rows {
        w.write_record(row).map_err(&to_err)?;
        writeln!(out, "p={} R_p {} (expected {}), (2/pi)E - S {}", row[0], row[1], row[2], row[5])
            .map_err(stdout_err)?;
    }
    w.flush().map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        source: e,
    })
}

pub fn cmd_conjecture(grid: usize, path: &Path, out: &mut dyn Write) -> Result<()> {
    if grid < 100 {
        return Err(CliError::Domain(format!("--grid must be at least 100, got {grid}")));
    }
    let rep = conjecture_scan(grid)?;
    let mut w = csv_writer(path)?;
    let to_err = csv_err(path);
    w.write_record(["r", "H", "S_minus_two_over_pi_E"]).map_err(&to_err)?;
    for (r, h, g) in &rep.profile {
        w.write_record([num(*r), num(*h), num(*g)]).map_err(&to_err)?;
    }
    w.flush().map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    let lines = [
        format!("p0 = {}", rep.p0),
        format!(
            "unimodality: {} (rising {:?}, falling {:?})",
            if rep.single_peaked() { "single peak" } else { "NOT single-peaked" },
            rep.rising.direction,
            rep.falling.direction
        ),
        format!("r0 estimate = {} (H = {})", rep.r0_estimate, rep.peak),
        if rep.inequality_holds() {
            format!("inequality (2/pi)E < S_(9/2-p0,p0)(1,r'): holds at all {} grid points", rep.profile.len())
        } else {
            format!(
                "inequality (2/pi)E < S_(9/2-p0,p0)(1,r'): unconfirmed at {} of {} grid points",
                rep.inequality_failures.len(),
                rep.profile.len()
            )
        },
    ];
    for l in lines {
        writeln!(out, "{l}").map_err(stdout_err)?;
    }
    Ok(())
}
