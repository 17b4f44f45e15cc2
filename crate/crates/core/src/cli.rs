//! The `turan` command line.
//!
//! Exit status: 0 when no record fails, 1 when at least one fails, 2 on a
//! usage or input error. Not-applicable records never fail a run.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::checks::{CheckReport, CheckStatus};
use crate::dispatch::{is_check_name, rational_arg, run_check, CheckParams, SequenceSpec, CHECK_NAMES};
use crate::error::{Error, Result};
use crate::exact::ExactRational;
use crate::partition_scan::{
    self, delta_increasing_scan, fk_scan, rows_to_csv, terminal_bounds_scan, ScanRow,
    UpperReading, DEFAULT_K_MAX, DEFAULT_MAX_N, TABLE_RANGES,
};
use crate::report::{self, Format};
use crate::sequences::{window_to_csv, PartitionTable, SequenceWindow};

pub const MAX_N_ENV: &str = "TURAN_MAX_N";

#[derive(Debug, Parser)]
#[command(name = "turan", version, about = "Exact log-concavity and Turán-type checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Output {
    #[arg(long, default_value = "json")]
    format: FormatArg,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
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

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenKind {
    Partition,
    Binomial,
    Geometric,
    Hermite,
    Laguerre,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ScanKind {
    Fk,
    TerminalBounds,
    Delta,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a generated sequence or coefficient list.
    Gen {
        kind: GenKind,
        /// Last index (partition), row (binomial) or degree (hermite, laguerre).
        #[arg(long)]
        n: Option<usize>,
        /// Ratio for geometric, as p/q.
        #[arg(long)]
        r: Option<String>,
        /// Length for geometric.
        #[arg(long)]
        len: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Run one named check over a sequence.
    Check {
        name: String,
        /// partition | binomial:N | geometric:R:LEN | hermite:N | laguerre:N | terms:a,b,.. | csv:PATH
        #[arg(long)]
        seq: String,
        /// Inclusive index range lo:hi.
        #[arg(long)]
        range: Option<String>,
        #[arg(long)]
        j: Option<usize>,
        #[arg(long)]
        r: Option<String>,
        #[arg(long)]
        depth: Option<usize>,
        /// Evaluate log-concavity levels only where the window determines them.
        #[arg(long)]
        interior: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Scan the partition function.
    Scan {
        kind: ScanKind,
        #[arg(long)]
        range: String,
        #[arg(long, default_value_t = DEFAULT_K_MAX)]
        kmax: u32,
        /// Fixed k for terminal-bounds.
        #[arg(long, default_value_t = 3)]
        k: u32,
        /// Use the upper bound exactly as printed, with `1 + c` under the root.
        #[arg(long)]
        literal_upper: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Reproduce the partition-function tables and ranges.
    VerifyPaper {
        #[arg(long)]
        max_n: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
}

/// Scan ceiling from `TURAN_MAX_N`, default 1000.
pub fn max_n() -> Result<usize> {
    match std::env::var(MAX_N_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Input(format!("{MAX_N_ENV} must be a nonnegative integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

pub fn parse_range(s: &str) -> Result<(i64, i64)> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| Error::Input(format!("range `{s}` must be lo:hi")))?;
    let parse = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|_| Error::Input(format!("bad range bound `{t}`")))
    };
    let (lo, hi) = (parse(lo)?, parse(hi)?);
    if lo > hi {
        return Err(Error::Input(format!("range `{s}` has lo > hi")));
    }
    Ok((lo, hi))
}

fn capped(hi: i64, cap: usize) -> Result<()> {
    if hi > cap as i64 {
        return Err(Error::Input(format!(
            "range end {hi} exceeds the scan ceiling {cap} (set {MAX_N_ENV} to raise it)"
        )));
    }
    Ok(())
}

struct Outcome {
    text: String,
    failed: bool,
}

fn window_output(w: &SequenceWindow, format: Format) -> String {
    match format {
        Format::Csv => window_to_csv(w),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(w).expect("plain JSON values");
            s.push('\n');
            s
        }
    }
}

fn gen(kind: GenKind, n: Option<usize>, r: Option<String>, len: Option<usize>, format: Format) -> Result<Outcome> {
    let need_n = || n.ok_or_else(|| Error::Input("this generator needs --n".into()));
    let spec = match kind {
        GenKind::Partition => {
            let n = need_n()?;
            capped(n as i64, max_n()?)?;
            let w = PartitionTable::shared(n).window(n);
            return Ok(Outcome {
                text: window_output(&w, format),
                failed: false,
            });
        }
        GenKind::Binomial => SequenceSpec::Binomial(need_n()?),
        GenKind::Hermite => SequenceSpec::Hermite(need_n()?),
        GenKind::Laguerre => SequenceSpec::Laguerre(need_n()?),
        GenKind::Geometric => {
            let r = r.ok_or_else(|| Error::Input("geometric needs --r".into()))?;
            let len = len.ok_or_else(|| Error::Input("geometric needs --len".into()))?;
            SequenceSpec::Geometric(rational_arg("--r", &r)?, len)
        }
    };
    Ok(Outcome {
        text: window_output(&spec.materialize(0)?, format),
        failed: false,
    })
}

fn check(name: &str, seq: &str, params: CheckParams, format: Format) -> Result<Outcome> {
    if !is_check_name(name) {
        return Err(Error::Input(format!(
            "unknown check `{name}` (one of {})",
            CHECK_NAMES.join(", ")
        )));
    }
    let spec: SequenceSpec = seq.parse()?;
    if spec == SequenceSpec::Partition {
        if let Some((_, hi)) = params.range {
            capped(hi, max_n()?)?;
        }
    }
    let window = spec.materialize(params.partition_top(name))?;
    let report = run_check(&window, name, &params)?;
    Ok(report_outcome(&report, format))
}

fn report_outcome(report: &CheckReport, format: Format) -> Outcome {
    Outcome {
        text: report::render(report, format),
        failed: !report.passed(),
    }
}

fn rows_output(rows: &[ScanRow], terminal: bool, format: Format) -> Outcome {
    let failed = rows.iter().any(|r| r.status == CheckStatus::Fails);
    let text = match format {
        Format::Csv => rows_to_csv(rows, terminal),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(rows).expect("plain JSON values");
            s.push('\n');
            s
        }
    };
    Outcome { text, failed }
}

fn scan(kind: ScanKind, range: &str, kmax: u32, k: u32, literal: bool, format: Format) -> Result<Outcome> {
    let (lo, hi) = parse_range(range)?;
    capped(hi, max_n()?)?;
    if kmax < 1 {
        return Err(Error::Input("--kmax must be at least 1".into()));
    }
    let reach = match kind {
        ScanKind::Fk => hi + kmax as i64 + 2,
        ScanKind::TerminalBounds => hi + (k.max(kmax)) as i64 + 2,
        ScanKind::Delta => hi + 1,
    };
    let table = PartitionTable::shared(reach.max(2) as usize);
    match kind {
        ScanKind::Fk => Ok(rows_output(&fk_scan(&table, lo, hi, kmax)?, false, format)),
        ScanKind::TerminalBounds => {
            let reading = if literal {
                UpperReading::Literal
            } else {
                UpperReading::Corrected
            };
            let rows = terminal_bounds_scan(&table, lo, hi, k, kmax, reading)?;
            Ok(rows_output(&rows, true, format))
        }
        ScanKind::Delta => Ok(report_outcome(&delta_increasing_scan(&table, lo, hi)?, format)),
    }
}

fn verify_command(max_n_arg: Option<usize>, format: Format) -> Result<Outcome> {
    let cap = max_n()?;
    let n = max_n_arg.unwrap_or(cap);
    capped(n as i64, cap)?;
    if n < TABLE_RANGES[TABLE_RANGES.len() - 1].1 as usize {
        return Err(Error::Input(format!(
            "--max-n must be at least {}",
            TABLE_RANGES[TABLE_RANGES.len() - 1].1
        )));
    }
    let v = partition_scan::verify_all(n)?;
    let ranges: Vec<_> = TABLE_RANGES
        .iter()
        .map(|&(lo, hi, k)| {
            let part = v.tables.restricted(lo as i64, hi as i64);
            (lo, hi, k, part.all_holding(), part.summary)
        })
        .collect();
    let text = match format {
        Format::Json => {
            let tables: Vec<_> = ranges
                .iter()
                .map(|(lo, hi, k, ok, summary)| {
                    json!({"range": [lo, hi], "k": k, "verified": ok, "summary": summary})
                })
                .collect();
            let claims: Vec<_> = v
                .claims
                .iter()
                .map(|c| {
                    json!({
                        "claim": c.claim,
                        "threshold": c.threshold,
                        "scan_range": [c.scan.range.0, c.scan.range.1],
                        "holds_from": c.holds_from,
                        "verified": c.verified,
                        "summary": c.scan.summary,
                    })
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&json!({
                "max_n": n,
                "tables": tables,
                "claims": claims,
                "verified": v.all_verified(),
            }))
            .expect("plain JSON values");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("claim,threshold,holds_from,verified,holds,holds_strict,fails,not_applicable\n");
            for (lo, hi, k, ok, sm) in &ranges {
                s.push_str(&format!(
                    "fk-table(k={k}),{lo}..{hi},,{ok},{},{},{},{}\n",
                    sm.holds, sm.holds_strict, sm.fails, sm.not_applicable
                ));
            }
            for c in &v.claims {
                let sm = c.scan.summary;
                s.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    c.claim,
                    c.threshold,
                    c.holds_from.map(|x| x.to_string()).unwrap_or_default(),
                    c.verified,
                    sm.holds,
                    sm.holds_strict,
                    sm.fails,
                    sm.not_applicable
                ));
            }
            s
        }
    };
    Ok(Outcome {
        text,
        failed: !v.all_verified(),
    })
}

fn parse_opt_rational(what: &str, s: Option<String>) -> Result<Option<ExactRational>> {
    s.map(|s| rational_arg(what, &s)).transpose()
}

fn execute(cmd: Command) -> Result<(Outcome, Option<PathBuf>)> {
    match cmd {
        Command::Gen { kind, n, r, len, output } => {
            Ok((gen(kind, n, r, len, output.format.into())?, output.out))
        }
        Command::Check {
            name,
            seq,
            range,
            j,
            r,
            depth,
            interior,
            output,
        } => {
            let params = CheckParams {
                range: range.as_deref().map(parse_range).transpose()?,
                j,
                r: parse_opt_rational("--r", r)?,
                depth,
                interior,
            };
            Ok((check(&name, &seq, params, output.format.into())?, output.out))
        }
        Command::Scan {
            kind,
            range,
            kmax,
            k,
            literal_upper,
            output,
        } => Ok((
            scan(kind, &range, kmax, k, literal_upper, output.format.into())?,
            output.out,
        )),
        Command::VerifyPaper { max_n, output } => {
            Ok((verify_command(max_n, output.format.into())?, output.out))
        }
    }
}

/// Runs `argv` (including the program name), writing the report to `stdout`
/// unless `--out` is given, and diagnostics to `stderr`.
pub fn run_with(args: &[String], stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let (outcome, out) = match execute(cli.command) {
        Ok(v) => v,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    };
    let written = match out {
        Some(path) => std::fs::write(&path, outcome.text.as_bytes()),
        None => stdout.write_all(outcome.text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return 2;
    }
    i32::from(outcome.failed)
}

pub fn run(args: &[String]) -> i32 {
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let argv: Vec<String> = std::iter::once("turan").chain(args.iter().copied()).map(String::from).collect();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with(&argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("95:600").unwrap(), (95, 600));
        assert!(parse_range("9").is_err());
        assert!(parse_range("9:3").is_err());
        assert!(parse_range("a:3").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["check", "hot", "--seq", "partition", "--range", "1:10"]).0, 1);
        assert_eq!(call(&["check", "hot", "--seq", "binomial:10"]).0, 0);
        assert_eq!(call(&["check", "nope", "--seq", "partition"]).0, 2);
        assert_eq!(call(&["check", "hot", "--seq", "fib"]).0, 2);
        assert_eq!(call(&["check", "hot", "--seq", "partition", "--range", "5:1"]).0, 2);
        assert_eq!(call(&["check", "hot", "--seq", "partition", "--range", "1:5000"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn gen_output() {
        let (code, out, _) = call(&["gen", "binomial", "--n", "4", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out, "index,value\n0,1/1\n1,4/1\n2,6/1\n3,4/1\n4,1/1\n");
        assert_eq!(call(&["gen", "geometric", "--r", "2"]).0, 2);
    }
}
