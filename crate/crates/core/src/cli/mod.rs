//! The `enumorder` command-line front end.
//!
//! Exit codes: 0 positive finding, 1 usage or resolution error, 2 negative
//! finding, 3 inconclusive.

mod family;
mod svg;

pub use family::{resolve, ResolveError};
pub use svg::scatter;

use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::coorder::{
    match_listing, prefix_coorder, type2_search, CellOutcome, CoorderVerdict, Fuel, MatchFailure,
    MatchOutcome, ShiftPair,
};
use crate::experiments::{
    lemma5_growth, repro_examples, repro_theorem5_chain, repro_theorem9, ReproReport,
    DEFAULT_M_MAX, DEFAULT_N_MAX, DEFAULT_PREFIX,
};
use crate::ordertype::{refute_type2, Type2Verdict};
use crate::sequences::{Cardinality, SetSpec};

pub const EXIT_POSITIVE: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Svg,
}

#[derive(Debug, Parser)]
#[command(
    name = "enumorder",
    version,
    about = "Listings of sets of rationals and their co-order relations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the first values of a family's listing.
    List {
        family: String,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the relative order of two listings on a prefix.
    Check {
        left: String,
        right: String,
        #[arg(short = 'N', long = "prefix", default_value_t = 100)]
        prefix: usize,
    },
    /// Search every shift pair for a disagreement witness.
    Type2 {
        left: String,
        right: String,
        #[arg(long, default_value_t = DEFAULT_M_MAX)]
        mmax: usize,
        #[arg(long, default_value_t = DEFAULT_N_MAX)]
        nmax: usize,
        #[arg(short = 'N', long = "prefix", default_value_t = DEFAULT_PREFIX)]
        prefix: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a listing of the right set in the same order as the left listing.
    Match {
        left: String,
        right: String,
        /// Total number of values drawn from the right listing.
        #[arg(long, default_value_t = 100_000)]
        fuel: u64,
        #[arg(short = 'N', long = "prefix", default_value_t = 50)]
        prefix: usize,
    },
    /// Run a scripted experiment: theorem9, theorem5, examples or lemma5.
    Repro {
        name: String,
        #[arg(long)]
        imax: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_M_MAX)]
        mmax: usize,
        #[arg(long, default_value_t = DEFAULT_N_MAX)]
        nmax: usize,
        #[arg(short = 'N', long = "prefix", default_value_t = DEFAULT_PREFIX)]
        prefix: usize,
        /// lemma5: left family.
        #[arg(long, default_value = "harmonic")]
        left: String,
        /// lemma5: right family.
        #[arg(long, default_value = "thirds")]
        right: String,
        /// lemma5: shift pairs as `m,n;m,n;...`.
        #[arg(long, default_value = "0,0;3,1;7,7")]
        shifts: String,
        /// lemma5: prefix lengths as `a,b,...`.
        #[arg(long, default_value = "50,100,200,400")]
        schedule: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn fail(&mut self, message: impl Display) -> i32 {
        let _ = writeln!(self.err, "error: {message}");
        EXIT_USAGE
    }

    fn emit(&mut self, path: Option<&PathBuf>, content: &str) -> Result<(), String> {
        match path {
            Some(p) => std::fs::write(p, content).map_err(|e| format!("{}: {e}", p.display())),
            None => self
                .out
                .write_all(content.as_bytes())
                .map_err(|e| e.to_string()),
        }
    }
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut io = Io { out, err };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(io.out, "{e}");
                EXIT_POSITIVE
            } else {
                let _ = write!(io.err, "{e}");
                EXIT_USAGE
            };
        }
    };
    match cli.command {
        Command::List {
            family,
            count,
            format,
            out,
        } => cmd_list(&mut io, &family, count, format, out),
        Command::Check {
            left,
            right,
            prefix,
        } => cmd_check(&mut io, &left, &right, prefix),
        Command::Type2 {
            left,
            right,
            mmax,
            nmax,
            prefix,
            format,
            out,
        } => cmd_type2(&mut io, &left, &right, mmax, nmax, prefix, format, out),
        Command::Match {
            left,
            right,
            fuel,
            prefix,
        } => cmd_match(&mut io, &left, &right, fuel, prefix),
        Command::Repro {
            name,
            imax,
            mmax,
            nmax,
            prefix,
            left,
            right,
            shifts,
            schedule,
            out,
        } => {
            let params = ReproParams {
                imax,
                mmax,
                nmax,
                prefix,
                left,
                right,
                shifts,
                schedule,
            };
            cmd_repro(&mut io, &name, &params, out)
        }
    }
}

fn resolve_pair(io: &mut Io<'_>, left: &str, right: &str) -> Result<(SetSpec, SetSpec), i32> {
    let l = resolve(left).map_err(|e| io.fail(e))?;
    let r = resolve(right).map_err(|e| io.fail(e))?;
    Ok((l, r))
}

fn cmd_list(
    io: &mut Io<'_>,
    family: &str,
    count: usize,
    format: Format,
    out: Option<PathBuf>,
) -> i32 {
    let spec = match resolve(family) {
        Ok(s) => s,
        Err(e) => return io.fail(e),
    };
    let mut listing = spec.listing();
    let values = match listing.take(count) {
        Ok(v) => v.to_vec(),
        Err(e) => return io.fail(e),
    };
    if values.len() < count {
        let _ = writeln!(
            io.err,
            "notice: {family} has only {} values; {count} requested",
            values.len()
        );
    }
    let shown: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    let content = match format {
        Format::Text => format!("{}\n", shown.join(", ")),
        Format::Json => format!(
            "{}\n",
            serde_json::to_string(&shown).expect("strings serialize")
        ),
        Format::Svg => scatter(spec.label(), &values),
    };
    match io.emit(out.as_ref(), &content) {
        Ok(()) => EXIT_POSITIVE,
        Err(e) => io.fail(e),
    }
}

fn cmd_check(io: &mut Io<'_>, left: &str, right: &str, prefix: usize) -> i32 {
    let (l, r) = match resolve_pair(io, left, right) {
        Ok(p) => p,
        Err(code) => return code,
    };
    match prefix_coorder(&mut l.listing(), &mut r.listing(), prefix) {
        Ok(CoorderVerdict::Agree(n)) => {
            let _ = writeln!(
                io.out,
                "agree: {left} and {right} have the same order pattern on {n} positions"
            );
            EXIT_POSITIVE
        }
        Ok(CoorderVerdict::Disagree(w)) => {
            let _ = writeln!(
                io.out,
                "disagree at ({}, {}): h = {}, {}; g = {}, {}",
                w.i, w.j, w.h_i, w.h_j, w.g_i, w.g_j
            );
            EXIT_NEGATIVE
        }
        Err(e) => io.fail(e),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_type2(
    io: &mut Io<'_>,
    left: &str,
    right: &str,
    mmax: usize,
    nmax: usize,
    prefix: usize,
    format: Format,
    out: Option<PathBuf>,
) -> i32 {
    if format == Format::Svg {
        return io.fail("type2 supports --format text or json");
    }
    let (l, r) = match resolve_pair(io, left, right) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let report = match type2_search(&mut l.listing(), &mut r.listing(), mmax, nmax, prefix) {
        Ok(rep) => rep,
        Err(e) => return io.fail(e),
    };
    let verdict = refute_type2(&l, &r);
    let content = match format {
        Format::Json => {
            let v = json!({
                "experiment": "type2",
                "params": { "m_max": mmax, "n_max": nmax, "N": prefix },
                "pairs": [{
                    "left": l.label(),
                    "right": r.label(),
                    "descriptor_verdict": if verdict.is_refuted() { "refuted" } else { "unknown" },
                    "cells": report.cells_json(),
                }],
            });
            format!(
                "{}\n",
                serde_json::to_string_pretty(&v).expect("report serializes")
            )
        }
        _ => {
            let mut s = String::new();
            match &verdict {
                Type2Verdict::Refuted { reason } => {
                    s.push_str(&format!("descriptors: refuted ({reason})\n"))
                }
                Type2Verdict::Unknown => s.push_str("descriptors: unknown\n"),
            }
            for cell in &report.cells {
                let ShiftPair { m, n } = cell.shift;
                match &cell.outcome {
                    CellOutcome::Witness(w) => s.push_str(&format!(
                        "({m}, {n}): witness ({}, {}): h = {}, {}; g = {}, {}\n",
                        w.i, w.j, w.h_i, w.h_j, w.g_i, w.g_j
                    )),
                    CellOutcome::NoWitnessWithin(k) => {
                        s.push_str(&format!("({m}, {n}): no witness within {k}\n"))
                    }
                }
            }
            let clean = report.candidates().count();
            s.push_str(&format!(
                "{} of {} cells witnessed\n",
                report.cells.len() - clean,
                report.cells.len()
            ));
            s
        }
    };
    if let Err(e) = io.emit(out.as_ref(), &content) {
        return io.fail(e);
    }
    if report.all_witnessed() {
        EXIT_NEGATIVE
    } else {
        EXIT_POSITIVE
    }
}

fn show_bound(b: &Option<crate::rational::Rational>, infinite: &str) -> String {
    b.as_ref()
        .map(|v| v.to_string())
        .unwrap_or_else(|| infinite.to_string())
}

fn show_count(c: Cardinality) -> String {
    match c {
        Cardinality::Finite(k) => k.to_string(),
        Cardinality::Infinite => "infinitely many".to_string(),
    }
}

fn cmd_match(io: &mut Io<'_>, left: &str, right: &str, fuel: u64, prefix: usize) -> i32 {
    let (l, r) = match resolve_pair(io, left, right) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let source = l.oracle().cloned();
    let outcome = match match_listing(
        &mut l.listing(),
        source.as_deref(),
        &r,
        prefix,
        Fuel::Total(fuel),
    ) {
        Ok(o) => o,
        Err(e) => return io.fail(e),
    };
    match outcome {
        MatchOutcome::Matched(ok) => {
            let shown: Vec<String> = ok.values.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(
                io.out,
                "matched {} steps using {} draws",
                ok.values.len(),
                ok.draws
            );
            let _ = writeln!(io.out, "g: {}", shown.join(", "));
            EXIT_POSITIVE
        }
        MatchOutcome::Failed(MatchFailure::GapEmpty {
            step,
            lo,
            hi,
            required,
            available,
        }) => {
            let _ = writeln!(
                io.out,
                "gap empty at step {step}: ({}, {}) holds {} of {right}, {} required",
                show_bound(&lo, "-inf"),
                show_bound(&hi, "+inf"),
                show_count(available),
                show_count(required)
            );
            EXIT_NEGATIVE
        }
        MatchOutcome::Failed(MatchFailure::FuelExhausted { step, draws }) => {
            let _ = writeln!(io.out, "fuel exhausted at step {step} after {draws} draws");
            EXIT_INCONCLUSIVE
        }
    }
}

struct ReproParams {
    imax: Option<u64>,
    mmax: usize,
    nmax: usize,
    prefix: usize,
    left: String,
    right: String,
    shifts: String,
    schedule: String,
}

fn parse_shifts(text: &str) -> Result<Vec<ShiftPair>, String> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let (m, n) = s
                .split_once(',')
                .ok_or_else(|| format!("bad shift pair {s:?}"))?;
            let m = m
                .trim()
                .parse()
                .map_err(|_| format!("bad shift pair {s:?}"))?;
            let n = n
                .trim()
                .parse()
                .map_err(|_| format!("bad shift pair {s:?}"))?;
            Ok(ShiftPair { m, n })
        })
        .collect()
}

fn parse_schedule(text: &str) -> Result<Vec<usize>, String> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| format!("bad prefix length {s:?}"))
        })
        .collect()
}

fn run_repro(name: &str, p: &ReproParams) -> Result<ReproReport, String> {
    let report = match name {
        "theorem9" => repro_theorem9(p.imax.unwrap_or(5), p.mmax, p.nmax, p.prefix),
        "theorem5" => repro_theorem5_chain(p.imax.unwrap_or(4), p.mmax, p.nmax, p.prefix),
        "examples" => repro_examples(),
        "lemma5" => {
            let left = resolve(&p.left).map_err(|e| e.to_string())?;
            let right = resolve(&p.right).map_err(|e| e.to_string())?;
            let shifts = parse_shifts(&p.shifts)?;
            let schedule = parse_schedule(&p.schedule)?;
            lemma5_growth(&left, &right, &shifts, &schedule)
        }
        other => {
            return Err(format!(
                "unknown experiment {other:?}; expected theorem9, theorem5, examples or lemma5"
            ))
        }
    };
    report.map_err(|e| e.to_string())
}

fn cmd_repro(io: &mut Io<'_>, name: &str, params: &ReproParams, out: Option<PathBuf>) -> i32 {
    let report = match run_repro(name, params) {
        Ok(r) => r,
        Err(e) => return io.fail(e),
    };
    let content = format!("{}\n", report.to_json());
    if let Err(e) = io.emit(out.as_ref(), &content) {
        return io.fail(e);
    }
    if let Some(path) = &out {
        let status = if report.passed { "passed" } else { "failed" };
        let _ = writeln!(
            io.out,
            "{name}: {status}; report written to {}",
            path.display()
        );
    }
    if report.passed {
        EXIT_POSITIVE
    } else {
        EXIT_NEGATIVE
    }
}
