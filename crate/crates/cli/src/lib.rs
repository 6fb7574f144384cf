//! `dispersal` command-line front end.
//!
//! All numbers cross the process boundary as decimal strings. Exit codes:
//! 0 success, 1 verification or check failure, 2 usage error, 3 input or
//! parse error, 4 arithmetic overflow.

mod input;
mod report;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use dispersal::harness::{self, Family, GenSpec, OracleChoice, VerifyConfig, DEFAULT_SEED};
use dispersal::oracles::pav_isotonic_solve;
use dispersal::{audit, parse_scalar, replay, solve, Error, Instance, SolveOptions, TraceEvent, TraceKind};
use serde_json::{json, Value};

pub use input::{format_plain, parse_instance, InputFormat};

#[derive(Debug)]
pub enum CliError {
    Check(String),
    Usage(String),
    Input(String),
    Overflow,
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Check(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Input(_) => 3,
            CliError::Overflow => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Check(m) => write!(f, "check failed: {m}"),
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Overflow => f.write_str("arithmetic overflow"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Overflow => CliError::Overflow,
            Error::MalformedLiteral(_)
            | Error::TooManyFractionalDigits { .. }
            | Error::NonPositiveDelta
            | Error::Unsorted(_)
            | Error::LengthMismatch { .. } => CliError::Input(e.to_string()),
            Error::InvalidSpec(_) | Error::TooLarge { .. } => CliError::Usage(e.to_string()),
            Error::NotIndependent(_) | Error::Invariant(_) => CliError::Check(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "dispersal", version, about = "Spread points on a line at minimum total displacement")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Json,
    Plain,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one instance file ("-" reads stdin).
    Solve {
        file: String,
        /// Input format; defaults to the file extension (.csv, .json) or plain.
        #[arg(long, value_enum)]
        format: Option<InputFormat>,
        /// Separation, required for csv input and overriding the file otherwise.
        #[arg(long)]
        delta: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        out: OutFormat,
        /// Write solver actions as JSON lines to this path.
        #[arg(long)]
        trace: Option<String>,
        /// Audit the result and compare its cost with the isotonic oracle.
        #[arg(long)]
        check: bool,
    },
    /// Cross-check the solver against an oracle on seeded random instances.
    Verify {
        #[arg(long, value_parser = parse_oracle)]
        oracle: OracleChoice,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        nmin: usize,
        #[arg(long, default_value_t = 12)]
        nmax: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_delimiter = ',', value_parser = parse_family)]
        families: Vec<Family>,
        #[arg(long)]
        json: bool,
    },
    /// Time the solver and report operation counts.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "1000,10000,100000")]
        sizes: Vec<usize>,
        #[arg(long, value_delimiter = ',', value_parser = parse_family, default_value = "uniform,adversarial_single_chain")]
        families: Vec<Family>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Also time the quadratic reference implementation.
        #[arg(long)]
        naive: bool,
        #[arg(long)]
        json: bool,
    },
    /// Generate an instance file in the plain format.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        range: String,
        #[arg(long)]
        delta: String,
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        out: Option<String>,
    },
    /// Rebuild a solution from an instance and its trace.
    #[command(hide = true)]
    Replay {
        file: String,
        trace: String,
        #[arg(long, value_enum)]
        format: Option<InputFormat>,
        #[arg(long)]
        delta: Option<String>,
    },
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_oracle(s: &str) -> Result<OracleChoice, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "dispersal: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Solve { file, format, delta, out: out_format, trace, check } => {
            let inst = load_instance(&file, format, delta.as_deref())?;
            cmd_solve(&inst, out_format, trace.as_deref(), check, out)
        }
        Command::Verify { oracle, count, nmin, nmax, seed, families, json } => {
            let families = if families.is_empty() { Family::ALL.to_vec() } else { families };
            let report = harness::verify_batch(&VerifyConfig { count, n_min: nmin, n_max: nmax, oracle, seed, families })?;
            let text = if json {
                format!("{}\n", serde_json::to_string_pretty(&report::verify_json(&report)).expect("json"))
            } else {
                report::verify_table(&report)
            };
            out.write_all(text.as_bytes())?;
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::Check(format!("{} mismatches", report.mismatches.len())))
            }
        }
        Command::Bench { sizes, families, seed, naive, json } => {
            let report = harness::bench(&sizes, &families, seed, naive)?;
            let text = if json {
                format!("{}\n", serde_json::to_string_pretty(&report::bench_json(&report)).expect("json"))
            } else {
                report::bench_table(&report)
            };
            out.write_all(text.as_bytes())?;
            if report.rows.iter().all(|r| r.within_bound()) {
                Ok(())
            } else {
                Err(CliError::Check("heap operation count above 4 n log2(n + 2)".into()))
            }
        }
        Command::Gen { n, seed, range, delta, family, out: path } => {
            let range = parse_scalar(&range)?;
            let delta = parse_scalar(&delta)?;
            let digits = range.digits.max(delta.digits);
            let spec = GenSpec {
                seed,
                n,
                coord_range: range.at_digits(digits)?,
                delta: delta.at_digits(digits)?,
                digits,
                family,
            };
            let inst = harness::gen_instance(&spec)?;
            let header = format!(
                "generated: family={} n={} seed={} range={} delta={}",
                family,
                n,
                seed,
                inst.format(spec.coord_range),
                inst.format(spec.delta)
            );
            let text = format_plain(&inst, Some(&header));
            match path {
                Some(p) => fs::write(p, text)?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(())
        }
        Command::Replay { file, trace, format, delta } => {
            let inst = load_instance(&file, format, delta.as_deref())?;
            let events = read_trace(&inst, &fs::read_to_string(&trace)?)?;
            let cfg = replay(&inst, &events)?;
            let positions: Vec<Value> =
                inst.to_input_order(&cfg.positions).into_iter().map(|p| Value::String(inst.format(p))).collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&json!({ "positions": positions })).expect("json"))?;
            Ok(())
        }
    }
}

fn read_source(file: &str) -> Result<String, CliError> {
    if file == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(file).map_err(|e| CliError::Input(format!("{file}: {e}")))
    }
}

fn load_instance(file: &str, format: Option<InputFormat>, delta: Option<&str>) -> Result<Instance, CliError> {
    let text = read_source(file)?;
    parse_instance(&text, format.unwrap_or_else(|| InputFormat::detect(file)), delta)
}

fn cmd_solve(
    inst: &Instance,
    out_format: OutFormat,
    trace_path: Option<&str>,
    check: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let result = solve(inst, SolveOptions { trace: trace_path.is_some(), debug_audit: false })?;
    if let (Some(path), Some(trace)) = (trace_path, &result.trace) {
        fs::write(path, write_trace(inst, trace))?;
    }
    let positions = inst.to_input_order(&result.configuration.positions);
    let initial = inst.to_input_order(&inst.initial);
    let displacements = positions
        .iter()
        .zip(&initial)
        .map(|(p, q)| p.checked_sub(*q).ok_or(CliError::Overflow))
        .collect::<Result<Vec<_>, _>>()?;
    let text = match out_format {
        OutFormat::Json => {
            let strings = |v: &[i128]| v.iter().map(|&x| Value::String(inst.format(x))).collect::<Vec<_>>();
            let doc = json!({
                "delta": inst.format(inst.delta),
                "total_cost": inst.format(result.total_cost),
                "positions": strings(&positions),
                "displacements": strings(&displacements),
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
        }
        OutFormat::Plain => {
            let mut s = format!("delta {}\ntotal_cost {}\n", inst.format(inst.delta), inst.format(result.total_cost));
            for (p, d) in positions.iter().zip(&displacements) {
                s.push_str(&format!("{} {}\n", inst.format(*p), inst.format(*d)));
            }
            s
        }
    };
    out.write_all(text.as_bytes())?;
    if check {
        let report = audit(inst, &result.configuration);
        if !report.passed() {
            return Err(CliError::Check(report.failures().join("; ")));
        }
        let pav = pav_isotonic_solve(inst)?;
        if pav.best_cost != result.total_cost {
            return Err(CliError::Check(format!(
                "solver cost {} differs from isotonic oracle cost {}",
                inst.format(result.total_cost),
                inst.format(pav.best_cost)
            )));
        }
    }
    Ok(())
}

/// One JSON object per line; indices refer to the sorted order.
pub fn write_trace(inst: &Instance, trace: &[TraceEvent<i128>]) -> String {
    let mut s = String::new();
    for e in trace {
        let line = json!({
            "iter": e.iter,
            "kind": e.kind.as_str(),
            "chain_start": e.chain_start,
            "amount": e.amount.map(|a| inst.format(a)),
            "merged_with_start": e.merged_with_start,
        });
        s.push_str(&line.to_string());
        s.push('\n');
    }
    s
}

pub fn read_trace(inst: &Instance, text: &str) -> Result<Vec<TraceEvent<i128>>, CliError> {
    let bad = |line: usize, why: &str| CliError::Input(format!("trace line {}: {why}", line + 1));
    let mut events = Vec::new();
    for (k, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let v: Value = serde_json::from_str(line).map_err(|e| bad(k, &e.to_string()))?;
        let index = |key: &str| v.get(key).and_then(Value::as_u64).map(|x| x as usize);
        let kind = v
            .get("kind")
            .and_then(Value::as_str)
            .and_then(TraceKind::parse)
            .ok_or_else(|| bad(k, "missing or unknown kind"))?;
        let amount = match v.get("amount").and_then(Value::as_str) {
            Some(a) => {
                let a = parse_scalar(a)?;
                if a.digits > inst.digits {
                    return Err(bad(k, "amount finer than the instance scale"));
                }
                Some(a.at_digits(inst.digits)?)
            }
            None => None,
        };
        events.push(TraceEvent {
            iter: index("iter").ok_or_else(|| bad(k, "missing iter"))?,
            kind,
            chain_start: index("chain_start").ok_or_else(|| bad(k, "missing chain_start"))?,
            amount,
            merged_with_start: index("merged_with_start"),
        });
    }
    Ok(events)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (u8, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("dispersal").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_args(&[]).0, 2);
        assert_eq!(run_args(&["solve"]).0, 2);
        assert_eq!(run_args(&["verify", "--oracle", "lp"]).0, 2);
        assert_eq!(run_args(&["--help"]).0, 0);
    }

    #[test]
    fn missing_file_exits_three() {
        assert_eq!(run_args(&["solve", "/nonexistent/instance.txt"]).0, 3);
    }

    #[test]
    fn trace_text_round_trip() {
        let inst = parse_instance("0.5\n0 0.1 0.2 3\n", InputFormat::Plain, None).unwrap();
        let r = solve(&inst, SolveOptions { trace: true, debug_audit: true }).unwrap();
        let text = write_trace(&inst, r.trace.as_ref().unwrap());
        assert_eq!(read_trace(&inst, &text).unwrap(), r.trace.unwrap());
    }

    #[test]
    fn gen_rejects_bad_family_spec() {
        let (code, _, _) = run_args(&["gen", "--n", "3", "--range", "5", "--delta", "1", "--family", "adversarial_single_chain"]);
        assert_eq!(code, 2);
    }
}
