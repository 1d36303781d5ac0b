//! Command-line front end. [`run`] is the whole program minus process
//! exit, so it can be driven from tests.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::analytic_bounds::{Bounds, DUSART_THRESHOLD};
use crate::error::{Error, Result};
use crate::interval_solver::{
    IntervalSolver, SolutionRecord, SolverConfig, DEFAULT_GAP_BUDGET, DEFAULT_MAX_C, MIN_GAP_INDEX,
};
use crate::pi_engine::{
    check_capacity, load_checkpoints, save_checkpoints, PiEngine, PiEngineConfig, Sieve,
};
use crate::pi_engine::sieve::DEFAULT_MEMORY_BUDGET;
use crate::predicates::{Natural, PrecisionPolicy, Predicates, BINDING_THRESHOLD};
use crate::sequences::{find_repeats, golomb_witness, integer_sequence, ratio_sequence};

/// Environment variable naming the checkpoint cache file.
pub const CACHE_ENV: &str = "PIDIV_CACHE";

/// Where a falsification is written for later reproduction.
pub const REPRO_FILE: &str = "pidiv-falsification.json";

const DEFAULT_CRITERIA_HI: u64 = 10_000_000;
const DEFAULT_DUSART_HI: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyTarget {
    /// Dusart bracket over [lo, hi] (default 60184..10^6)
    T1,
    /// frac(ln n) > 0.1 excludes π(n) | n over [lo, hi] (default 60184..10^7)
    T5,
    /// gap zones for a in [lo, hi] (default 11..13)
    T6,
    /// f(n) = 0 excludes π(n) | n over [lo, hi] (default 60184..10^7)
    T8,
    /// n/π(n) < 11 for 2 <= n <= 60183
    SmallBound,
}

#[derive(Debug, Parser)]
#[command(name = "pidiv", version, about = "Exact π(n) and the divisibility π(n) | n")]
pub struct Cli {
    /// Checkpoint cache file, loaded before and saved after the command
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Largest working precision for certified logarithms, in bits
    #[arg(long, global = true, default_value_t = 4096)]
    pub precision_cap: u32,
    /// Largest candidate interval index solved without complaint
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_C)]
    pub max_c: u32,
    /// log2 of the sieve segment size (odd entries)
    #[arg(long, global = true, default_value_t = 22)]
    pub segment_bits: u32,
    /// Label every result NON-BINDING and allow predicates below 60184
    #[arg(long, global = true)]
    pub advisory: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// π(n) with the method used
    Pi { n: String },
    /// g, h, f and the verdict for n (any size)
    Check { n: String },
    /// every solution in candidate interval c
    Solve { c: u32 },
    /// n/π(n) for n = 2..=n_max, or only the integer values
    Seq {
        #[arg(long)]
        integers: bool,
        n_max: u64,
    },
    /// smallest m with m/π(m) = v
    Witness { v: u64 },
    /// adjacent equal integer ratios up to candidate interval c_max
    Repeats { c_max: u32 },
    /// ⌊e^a⌋, π(⌊e^a⌋) and their ratio for a = 1..=a_max
    Table { a_max: u32 },
    /// run one of the numerical checks
    Verify {
        #[arg(value_enum)]
        target: VerifyTarget,
        lo: Option<u64>,
        hi: Option<u64>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub cache_path: Option<PathBuf>,
    pub segment_bits: u32,
    pub c_max: u32,
    pub precision_cap_bits: u32,
    pub output_format: OutputFormat,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(16..=30).contains(&self.segment_bits) {
            return Err(Error::Usage(format!(
                "segment bits must be in [16, 30], got {}",
                self.segment_bits
            )));
        }
        if self.precision_cap_bits < 128 {
            return Err(Error::Usage(format!(
                "precision cap must be at least 128 bits, got {}",
                self.precision_cap_bits
            )));
        }
        Ok(())
    }

    fn engine(&self) -> Result<PiEngine> {
        Ok(PiEngine::new(PiEngineConfig {
            sieve: Sieve::new(self.segment_bits, DEFAULT_MEMORY_BUDGET)?,
            ..Default::default()
        }))
    }

    fn policy(&self) -> PrecisionPolicy {
        PrecisionPolicy::with_cap(self.precision_cap_bits)
    }
}

/// One solution as written to CSV or JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionRow {
    pub c: u32,
    pub n: u64,
    pub pi: u64,
    pub ratio: u64,
    pub chain_ok: bool,
}

impl From<&SolutionRecord> for SolutionRow {
    fn from(r: &SolutionRecord) -> Self {
        SolutionRow {
            c: r.c,
            n: r.n,
            pi: r.pi,
            ratio: r.ratio,
            chain_ok: r.chain_ok(),
        }
    }
}

#[derive(Serialize)]
struct Statement {
    target: String,
    lo: u64,
    hi: u64,
    checked: u64,
    statement: String,
}

/// Writes `rows` in the chosen format. CSV and table output carry a header
/// row; JSON is one object per line.
pub fn emit<T: Serialize>(rows: &[T], format: OutputFormat, out: &mut dyn Write) -> Result<()> {
    match format {
        OutputFormat::Json => {
            for row in rows {
                serde_json::to_writer(&mut *out, row)?;
                writeln!(out).map_err(stdout_err)?;
            }
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for row in rows {
                w.serialize(row)?;
            }
            w.flush().map_err(stdout_err)?;
        }
        OutputFormat::Table => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in rows {
                w.serialize(row)?;
            }
            let bytes = w.into_inner().map_err(|e| stdout_err(e.into_error()))?;
            let mut r = csv::ReaderBuilder::new().has_headers(false).from_reader(bytes.as_slice());
            let cells: Vec<Vec<String>> = r
                .records()
                .map(|rec| rec.map(|rec| rec.iter().map(str::to_string).collect()))
                .collect::<std::result::Result<_, _>>()?;
            let cols = cells.iter().map(Vec::len).max().unwrap_or(0);
            let widths: Vec<usize> = (0..cols)
                .map(|i| cells.iter().filter_map(|r| r.get(i)).map(|c| c.chars().count()).max().unwrap_or(0))
                .collect();
            for row in &cells {
                let line: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect();
                writeln!(out, "{}", line.join("  ").trim_end()).map_err(stdout_err)?;
            }
        }
    }
    Ok(())
}

fn stdout_err(e: std::io::Error) -> Error {
    Error::io("<stdout>", e)
}

fn statement(
    format: OutputFormat,
    out: &mut dyn Write,
    target: &str,
    (lo, hi, checked): (u64, u64, u64),
    text: String,
) -> Result<()> {
    match format {
        OutputFormat::Json => {
            let s = Statement {
                target: target.to_string(),
                lo,
                hi,
                checked,
                statement: text,
            };
            serde_json::to_writer(&mut *out, &s)?;
            writeln!(out).map_err(stdout_err)
        }
        _ => writeln!(out, "{text}").map_err(stdout_err),
    }
}

fn parse_u64(s: &str) -> Result<u64> {
    let n: Natural = s.parse()?;
    match n.to_u64() {
        Some(v) => {
            check_capacity(v)?;
            Ok(v)
        }
        None => Err(Error::Capacity(format!(
            "{s} is beyond the 64-bit range supported by π computations"
        ))),
    }
}

const ADVISORY: &str = "ADVISORY: NON-BINDING. The criteria are proven only for n >= 60184.";

fn execute(cli: &Cli, config: &RunConfig, engine: &PiEngine, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let format = config.output_format;
    let predicates = Predicates::new(config.policy());
    let solver = IntervalSolver::new(engine)
        .with_predicates(predicates)
        .with_config(SolverConfig {
            max_c: config.c_max,
            gap_budget: DEFAULT_GAP_BUDGET,
        });
    let banner = |err: &mut dyn Write| writeln!(err, "{ADVISORY}").map_err(|e| Error::io("<stderr>", e));
    if cli.advisory {
        banner(err)?;
    }
    match &cli.command {
        Command::Pi { n } => {
            let n = parse_u64(n)?;
            let result = if n == 0 {
                return Err(Error::domain("π is evaluated for n >= 1"));
            } else {
                engine.pi_exact(n)?
            };
            emit(&[result], format, out)
        }
        Command::Check { n } => {
            let n: Natural = n.parse()?;
            let below = n < Natural::Word(BINDING_THRESHOLD);
            let mut report = if below || cli.advisory {
                if below && !cli.advisory {
                    banner(err)?;
                }
                predicates.advisory_report(n)?
            } else {
                predicates.report(n)?
            };
            if cli.advisory {
                report.binding = false;
            }
            emit(&[report], format, out)
        }
        Command::Solve { c } => {
            if *c > DEFAULT_MAX_C && *c <= config.c_max {
                writeln!(err, "warning: c = {c} is above {DEFAULT_MAX_C}; the sweep may take a long time")
                    .map_err(|e| Error::io("<stderr>", e))?;
            }
            let rows: Vec<SolutionRow> = solver.solve_interval(*c)?.iter().map(SolutionRow::from).collect();
            emit(&rows, format, out)
        }
        Command::Seq { integers, n_max } => {
            check_capacity(*n_max)?;
            if *integers {
                emit(&integer_sequence(engine, *n_max)?, format, out)
            } else {
                let terms: Vec<_> = ratio_sequence(engine, *n_max)?.collect();
                emit(&terms, format, out)
            }
        }
        Command::Witness { v } => emit(&[golomb_witness(&solver, *v)?], format, out),
        Command::Repeats { c_max } => {
            let report = find_repeats(&solver, *c_max)?;
            for interval in &report.crowded {
                writeln!(err, "interval c = {} holds {} solutions", interval.c, interval.solutions.len())
                    .map_err(|e| Error::io("<stderr>", e))?;
            }
            emit(&report.repeats, format, out)
        }
        Command::Table { a_max } => emit(&solver.corollary_table(*a_max)?, format, out),
        Command::Verify { target, lo, hi } => verify(*target, *lo, *hi, &solver, config, out),
    }
}

fn verify(
    target: VerifyTarget,
    lo: Option<u64>,
    hi: Option<u64>,
    solver: &IntervalSolver<'_>,
    config: &RunConfig,
    out: &mut dyn Write,
) -> Result<()> {
    let format = config.output_format;
    match target {
        VerifyTarget::T1 => {
            let (lo, hi) = (lo.unwrap_or(DUSART_THRESHOLD), hi.unwrap_or(DEFAULT_DUSART_HI));
            let s = Bounds::new(config.policy()).verify_dusart_range(solver.engine(), lo, hi)?;
            let text = format!(
                "n/(ln n - 1) < π(n) < n/(ln n - 1.1) for all {} n in [{lo}, {hi}] (max precision {} bits)",
                s.checked, s.max_precision_bits
            );
            statement(format, out, "t1", (lo, hi, s.checked), text)
        }
        VerifyTarget::T5 | VerifyTarget::T8 => {
            let (lo, hi) = (lo.unwrap_or(BINDING_THRESHOLD), hi.unwrap_or(DEFAULT_CRITERIA_HI));
            check_capacity(hi)?;
            let s = solver.verify_criteria(lo, hi)?;
            let (id, text) = if target == VerifyTarget::T5 {
                (
                    "t5",
                    format!(
                        "no n in [{lo}, {hi}] has frac(ln n) > 0.1 and π(n) | n ({} checked, {} excluded by the fractional part, {} solutions)",
                        s.checked, s.frac_excluded, s.solutions.len()
                    ),
                )
            } else {
                (
                    "t8",
                    format!(
                        "no n in [{lo}, {hi}] has f(n) = 0 and π(n) | n; every solution has f(n) = 1 ({} checked, {} with f = 0, {} solutions)",
                        s.checked, s.f_zero, s.solutions.len()
                    ),
                )
            };
            statement(format, out, id, (lo, hi, s.checked), text)
        }
        VerifyTarget::T6 => {
            let a_lo = lo.unwrap_or(MIN_GAP_INDEX as u64);
            let a_hi = hi.unwrap_or(a_lo.max(13));
            let mut checked = 0;
            let mut lines = Vec::new();
            for a in a_lo..=a_hi {
                let a = u32::try_from(a).map_err(|_| Error::Capacity(format!("a = {a}")))?;
                let r = solver.verify_gap_zone(a, solver.config().gap_budget)?;
                checked += r.checked;
                lines.push(format!(
                    "a = {a}: π(n) does not divide n for n in [{}, {}] ({:?}, {} checked)",
                    r.lo, r.hi, r.coverage, r.checked
                ).replace("Exhaustive", "exhaustive").replace("Sampled", "sampled"));
            }
            statement(format, out, "t6", (a_lo, a_hi, checked), lines.join("\n"))
        }
        VerifyTarget::SmallBound => {
            let b = solver.verify_small_ratio_bound()?;
            let text = format!(
                "max n/π(n) on [2,{}] = {} (n = {}) < 11",
                BINDING_THRESHOLD - 1,
                b.max_ratio,
                b.argmax
            );
            statement(format, out, "small-bound", (2, BINDING_THRESHOLD - 1, b.evaluated), text)
        }
    }
}

fn write_repro(path: &Path, error: &Error) {
    if let Error::Falsified(f) = error {
        if let Ok(json) = serde_json::to_string_pretty(f) {
            let _ = std::fs::write(path, json + "\n");
        }
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code. `cache_env` stands in for the
/// `PIDIV_CACHE` variable.
pub fn run<I, T>(args: I, cache_env: Option<PathBuf>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    let config = RunConfig {
        cache_path: cli.cache.clone().or(cache_env),
        segment_bits: cli.segment_bits,
        c_max: cli.max_c,
        precision_cap_bits: cli.precision_cap,
        output_format: cli.format,
    };
    match run_config(&cli, &config, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if matches!(e, Error::Falsified(_)) {
                write_repro(Path::new(REPRO_FILE), &e);
                let _ = writeln!(err, "THEOREM FALSIFIED; details written to {REPRO_FILE}");
            }
            e.exit_code()
        }
    }
}

fn run_config(cli: &Cli, config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    config.validate()?;
    let engine = config.engine()?;
    if let Some(path) = &config.cache_path {
        if path.exists() {
            engine.absorb(&load_checkpoints(path)?)?;
        }
    }
    let result = execute(cli, config, &engine, out, err);
    if let Some(path) = &config.cache_path {
        save_checkpoints(path, &engine.checkpoint())?;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["pidiv"];
        full.extend_from_slice(args);
        let code = run(full, None, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn pi_command() {
        assert_eq!(run_str(&["pi", "7"]).1, "n,pi,method\n7,4,sieve\n");
        assert_eq!(run_str(&["pi", "1"]).1, "n,pi,method\n1,0,sieve\n");
        assert_eq!(run_str(&["pi", "x7"]).0, 2);
        assert_eq!(run_str(&["pi", "0"]).0, 2);
        assert_eq!(run_str(&["pi", "10000000000000000000000000000000"]).0, 2);
    }

    #[test]
    fn check_command() {
        let (code, out, _) = run_str(&["check", "10000000000000000000000000000000"]);
        assert_eq!(code, 0);
        assert!(out.contains(",3,") && out.contains("NotDivisible_ByFrac"), "{out}");
        let (code, _, err) = run_str(&["check", "60183"]);
        assert_eq!(code, 0);
        assert!(err.contains("ADVISORY"));
        let (_, out, _) = run_str(&["--format", "json", "check", "162755"]);
        let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!((v["g"].as_u64(), v["h"].as_u64(), v["f"].as_u64()), (Some(1), Some(0), Some(0)));
    }

    #[test]
    fn solve_and_formats() {
        let (code, out, _) = run_str(&["solve", "12"]);
        assert_eq!(code, 0);
        assert_eq!(out, "c,n,pi,ratio,chain_ok\n12,175197,15927,11,true\n");
        let (_, json, _) = run_str(&["solve", "12", "--format", "json"]);
        assert_eq!(json.lines().count(), 1);
        let row: SolutionRow = serde_json::from_str(json.trim()).unwrap();
        assert_eq!(row.n, 175_197);
        assert_eq!(run_str(&["solve", "11"]).0, 2);
        assert_eq!(run_str(&["--max-c", "12", "solve", "13"]).0, 1);
        let (_, table, _) = run_str(&["--format", "table", "solve", "12"]);
        assert!(table.starts_with(" c       n     pi  ratio  chain_ok"), "{table}");
    }

    #[test]
    fn config_is_validated() {
        assert_eq!(run_str(&["--segment-bits", "12", "pi", "7"]).0, 2);
        assert_eq!(run_str(&["--precision-cap", "64", "pi", "7"]).0, 2);
        assert_eq!(run_str(&[]).0, 2);
        assert_eq!(run_str(&["--help"]).0, 0);
    }

    #[test]
    fn small_bound_statement() {
        let (code, out, _) = run_str(&["verify", "small-bound"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("max n/π(n) on [2,60183] = ") && out.trim_end().ends_with("< 11"), "{out}");
    }
}
