use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use involution_lab::algebra::{is_prime, Valuation};
use involution_lab::checks::{self, Check, CheckOutcome, CheckParams};
use involution_lab::conjecture::{fit_rho_with, TwoAdicPrefix};
use involution_lab::enumeration::{Caps, DEFAULT_MAX_PERMUTATIONS, DEFAULT_MAX_VERTICES};
use involution_lab::periodicity::{self, PeriodReport};
use involution_lab::sequences::{SequenceRow, Sequences};
use involution_lab::valuations::{self, ValuationReport};
use involution_lab::Error;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "involution-lab", version, about = "Exact computations on involution counts and their 2-adic structure")]
struct Cli {
    /// Output format (defaults to csv, or json for `rho`)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write to this file instead of standard output
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Largest permutation enumeration allowed
    #[arg(long, global = true, env = "INVOLUTION_LAB_CAP")]
    cap: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Kind {
    T,
    Tau,
    Beta,
    G,
    GAlt,
    TSigned,
    TEven,
    TOdd,
}

#[derive(Subcommand)]
enum Command {
    /// Emit n,value rows of a sequence
    Seq {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 0)]
        from: u64,
        #[arg(long)]
        to: u64,
        /// Prime for `tau`
        #[arg(long)]
        p: Option<u64>,
    },
    /// 2-adic valuations of t_n, t_n(1,-1), t_n^e, t_n^o against their closed forms
    Table {
        #[arg(long, default_value_t = 25)]
        k_max: u64,
    },
    /// Run verification batches
    Verify {
        /// Check name, or `all`
        #[arg(long)]
        check: String,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        n_max: Option<u64>,
    },
    /// Preperiod and smallest period of t_n mod m or beta_n mod 2^s
    Period {
        #[arg(long, conflicts_with = "beta_mod_2s", required_unless_present = "beta_mod_2s")]
        t_mod: Option<u64>,
        #[arg(long)]
        beta_mod_2s: Option<u32>,
        /// Terms to scan before giving up (t_n mod m only)
        #[arg(long)]
        window: Option<u64>,
        /// Compare with the closed-form preperiod and period
        #[arg(long)]
        expect: bool,
    },
    /// Fit binary digits of the 2-adic constant rho
    Rho {
        #[arg(long)]
        k_max: u64,
        /// Report at most this many digits
        #[arg(long)]
        bits: Option<u32>,
    },
}

enum Failure {
    Usage(String),
    Inconclusive(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Argument(_) => Failure::Usage(e.to_string()),
            Error::Inconclusive(msg) => Failure::Inconclusive(msg),
            Error::Resource { .. } => Failure::Inconclusive(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Inconclusive(msg)) => {
            eprintln!("inconclusive: {msg}");
            ExitCode::from(EXIT_INCONCLUSIVE)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let caps = Caps {
        max_permutations: cli.cap.unwrap_or(DEFAULT_MAX_PERMUTATIONS),
        max_vertices: DEFAULT_MAX_VERTICES,
    };
    let default_format = if matches!(cli.command, Command::Rho { .. }) { Format::Json } else { Format::Csv };
    let format = cli.format.unwrap_or(default_format);
    let mut out: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let ok = match cli.command {
        Command::Seq { kind, from, to, p } => cmd_seq(&mut out, format, kind, from, to, p)?,
        Command::Table { k_max } => cmd_table(&mut out, format, k_max)?,
        Command::Verify { check, p, n_max } => cmd_verify(&mut out, format, &check, CheckParams { p, n_max, caps })?,
        Command::Period { t_mod, beta_mod_2s, window, expect } => {
            cmd_period(&mut out, format, t_mod, beta_mod_2s, window, expect)?
        }
        Command::Rho { k_max, bits } => cmd_rho(&mut out, format, k_max, bits)?,
    };
    out.flush()?;
    Ok(ok)
}

fn emit<T: Serialize>(out: &mut dyn Write, format: Format, rows: &[T]) -> Result<(), Failure> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for row in rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, rows)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn cmd_seq(out: &mut dyn Write, format: Format, kind: Kind, from: u64, to: u64, p: Option<u64>) -> Outcome {
    if from > to {
        return Err(Failure::Usage(format!("--from {from} is after --to {to}")));
    }
    if to > 100_000 {
        return Err(Failure::Usage(format!("--to {to} exceeds 100000")));
    }
    match (kind, p) {
        (Kind::Tau, None) => return Err(Failure::Usage("--kind tau needs --p".into())),
        (Kind::Tau, Some(p)) if !is_prime(p) => return Err(Failure::Usage(format!("--p {p} is not prime"))),
        (Kind::Tau, _) | (_, None) => {}
        (_, Some(_)) => return Err(Failure::Usage("--p only applies to --kind tau".into())),
    }
    let n = to as usize;
    let mut seq = Sequences::new();
    let values: Vec<String> = match kind {
        Kind::T => strings(seq.t_prefix(n)),
        Kind::Tau => strings(seq.tau_prefix(n, p.unwrap())?),
        Kind::Beta => strings(seq.beta_prefix(n)),
        Kind::G => strings(&seq.g_int_prefix(n)),
        Kind::GAlt => strings(&seq.g_alt_prefix(n)),
        Kind::TSigned => strings(seq.t_signed_prefix(n)),
        Kind::TEven => valuations::parity_counts(&mut seq, n).iter().map(|(e, _)| e.to_string()).collect(),
        Kind::TOdd => valuations::parity_counts(&mut seq, n).iter().map(|(_, o)| o.to_string()).collect(),
    };
    let rows: Vec<SequenceRow> = values
        .into_iter()
        .enumerate()
        .skip(from as usize)
        .map(|(i, value)| SequenceRow { n: i as u64, value })
        .collect();
    emit(out, format, &rows)?;
    Ok(true)
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

#[derive(Serialize)]
struct TableRecord {
    n: u64,
    k: u64,
    r: u64,
    ord_t: String,
    ord_signed: String,
    ord_even: String,
    ord_odd: String,
    predicted_t: String,
    predicted_signed: String,
    predicted_even: String,
    predicted_odd: String,
    match_t: String,
    match_signed: String,
    match_even: String,
    match_odd: String,
}

fn predicted(r: &ValuationReport) -> String {
    r.predicted.map(|v: Valuation| v.to_string()).unwrap_or_else(|| "unknown".into())
}

fn matched(r: &ValuationReport) -> String {
    match r.predicted {
        None => "unknown".into(),
        Some(_) => r.matches.to_string(),
    }
}

fn cmd_table(out: &mut dyn Write, format: Format, k_max: u64) -> Outcome {
    if k_max > 20_000 {
        return Err(Failure::Usage(format!("--k-max {k_max} exceeds 20000")));
    }
    let rows = valuations::valuation_table(k_max);
    let ok = rows.iter().all(|r| r.violations().next().is_none());
    let records: Vec<TableRecord> = rows
        .iter()
        .map(|row| TableRecord {
            n: row.n,
            k: row.k,
            r: row.r,
            ord_t: row.t.computed.to_string(),
            ord_signed: row.signed.computed.to_string(),
            ord_even: row.even.computed.to_string(),
            ord_odd: row.odd.computed.to_string(),
            predicted_t: predicted(&row.t),
            predicted_signed: predicted(&row.signed),
            predicted_even: predicted(&row.even),
            predicted_odd: predicted(&row.odd),
            match_t: matched(&row.t),
            match_signed: matched(&row.signed),
            match_even: matched(&row.even),
            match_odd: matched(&row.odd),
        })
        .collect();
    emit(out, format, &records)?;
    Ok(ok)
}

#[derive(Serialize)]
struct VerifyRecord<'a> {
    check: &'a str,
    result: &'static str,
    cases: u64,
    counterexample: &'a str,
}

fn cmd_verify(out: &mut dyn Write, format: Format, name: &str, params: CheckParams) -> Outcome {
    let selected: Vec<Check> = if name == "all" {
        Check::ALL.to_vec()
    } else {
        vec![name.parse::<Check>().map_err(|_| {
            let known: Vec<&str> = Check::ALL.iter().map(|c| c.name()).collect();
            Failure::Usage(format!("unknown check {name:?}; known checks: all, {}", known.join(", ")))
        })?]
    };
    if let Some(p) = params.p {
        if !is_prime(p as u64) {
            return Err(Failure::Usage(format!("--p {p} is not prime")));
        }
    }
    let mut seq = Sequences::new();
    let mut outcomes: Vec<CheckOutcome> = Vec::new();
    for check in selected {
        eprintln!("running {check}: {}", check.description());
        outcomes.push(checks::run_with(&mut seq, check, &params)?);
    }
    let records: Vec<VerifyRecord> = outcomes
        .iter()
        .map(|o| VerifyRecord {
            check: o.check.name(),
            result: if o.passed { "PASS" } else { "FAIL" },
            cases: o.cases,
            counterexample: o.counterexample.as_deref().unwrap_or(""),
        })
        .collect();
    emit(out, format, &records)?;
    Ok(outcomes.iter().all(|o| o.passed))
}

#[derive(Serialize)]
struct PeriodRecord {
    sequence: String,
    modulus: u64,
    preperiod: u64,
    period: u64,
    window_checked: u64,
    expected_preperiod: Option<u64>,
    expected_period: Option<u64>,
    result: &'static str,
}

#[derive(Serialize)]
struct PeriodDocument<'a> {
    sequence: &'a str,
    expected_preperiod: Option<u64>,
    expected_period: Option<u64>,
    result: &'static str,
    #[serde(flatten)]
    report: &'a PeriodReport,
}

fn cmd_period(
    out: &mut dyn Write,
    format: Format,
    t_mod: Option<u64>,
    beta_mod_2s: Option<u32>,
    window: Option<u64>,
    expect: bool,
) -> Outcome {
    let (label, report, expected) = match (t_mod, beta_mod_2s) {
        (Some(m), None) => {
            if m == 0 {
                return Err(Failure::Usage("--t-mod must be positive".into()));
            }
            let window = window.unwrap_or_else(|| periodicity::default_window(m));
            if window > periodicity::MAX_WINDOW {
                return Err(Failure::Usage(format!("--window {window} exceeds {}", periodicity::MAX_WINDOW)));
            }
            let report = periodicity::detect_t_period(m, window)?;
            (format!("t mod {m}"), report, periodicity::expected_t_period(m))
        }
        (None, Some(s)) => {
            if window.is_some() {
                return Err(Failure::Usage("--window only applies to --t-mod".into()));
            }
            if !(1..=20).contains(&s) {
                return Err(Failure::Usage(format!("--beta-mod-2s {s} outside 1..=20")));
            }
            if expect && s < 3 {
                return Err(Failure::Usage("no closed-form period is known for s < 3".into()));
            }
            let report = periodicity::beta_period(s)?;
            (format!("beta mod 2^{s}"), report, (0, 1u64 << (s + 1)))
        }
        _ => return Err(Failure::Usage("give exactly one of --t-mod and --beta-mod-2s".into())),
    };
    let (result, ok, exp_pre, exp_per) = if expect {
        let ok = report.preperiod == expected.0 && report.period == expected.1;
        (if ok { "PASS" } else { "FAIL" }, ok, Some(expected.0), Some(expected.1))
    } else {
        ("", true, None, None)
    };
    match format {
        Format::Csv => {
            let record = PeriodRecord {
                sequence: label,
                modulus: report.modulus,
                preperiod: report.preperiod,
                period: report.period,
                window_checked: report.window_checked,
                expected_preperiod: exp_pre,
                expected_period: exp_per,
                result,
            };
            emit(out, format, &[record])?;
        }
        Format::Json => {
            let doc = PeriodDocument {
                sequence: &label,
                expected_preperiod: exp_pre,
                expected_period: exp_per,
                result,
                report: &report,
            };
            serde_json::to_writer_pretty(&mut *out, &doc)?;
            writeln!(out)?;
        }
    }
    Ok(ok)
}

#[derive(Serialize)]
struct DigitRecord {
    index: usize,
    digit: u8,
}

fn cmd_rho(out: &mut dyn Write, format: Format, k_max: u64, bits: Option<u32>) -> Outcome {
    if k_max == 0 {
        return Err(Failure::Usage("--k-max must be at least 1".into()));
    }
    if k_max > 20_000 {
        return Err(Failure::Usage(format!("--k-max {k_max} exceeds 20000")));
    }
    if k_max > 2000 {
        eprintln!("computing t_n exactly up to n = {}", 4 * k_max + 1);
    }
    let fit: TwoAdicPrefix = fit_rho_with(&mut Sequences::new(), k_max, bits);
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &fit)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let rows: Vec<DigitRecord> =
                fit.digits.iter().enumerate().map(|(index, &digit)| DigitRecord { index, digit }).collect();
            emit(out, format, &rows)?;
        }
    }
    for v in &fit.violations {
        eprintln!("violation at k = {}: {v:?}", v.k());
    }
    Ok(fit.is_consistent())
}
