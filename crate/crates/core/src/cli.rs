//! Command-line front end: argument parsing, JSON output and the result cache.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::dessin::{euler_theta_report, passport, regular_dessin, Dessin, EulerThetaReport, Passport};
use crate::error::{Error, Result};
use crate::galois::verify_theorem_c;
use crate::oarith::{split_prime, Fq, PrimeIdeal};
use crate::qfield::trace_field;
use crate::selftest;
use crate::tri::{
    congruence_quotient, validate_signature, Entry, QuotientOptions, Signature, TraceSign,
    DEFAULT_MAX_ORDER,
};

pub const CACHE_ENV: &str = "DESSIN_CACHE_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "congruence-dessins",
    version,
    about = "Trace fields, congruence quotients and congruence dessins of triangle groups"
)]
struct Cli {
    /// Directory for cached results (the DESSIN_CACHE_DIR variable takes precedence).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SigArgs {
    p: Entry,
    q: Entry,
    r: Entry,
}

impl SigArgs {
    fn signature(&self) -> Result<Signature> {
        validate_signature(self.p, self.q, self.r)
    }
}

#[derive(Debug, Args)]
struct BuildArgs {
    /// Allow primes dividing 2 or a finite entry.
    #[arg(long)]
    force: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    max_group_order: u64,
}

impl BuildArgs {
    fn options(&self) -> QuotientOptions {
        QuotientOptions {
            max_order: self.max_group_order,
            force: self.force,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Trace field, primitive element and Galois group.
    Field {
        #[command(flatten)]
        sig: SigArgs,
    },
    /// Primes of the trace field above a rational prime.
    Splits {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long)]
        ell: u64,
    },
    /// The congruence dessin at one prime above `ell`.
    Dessin {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long)]
        ell: u64,
        #[arg(long, default_value_t = 0)]
        ideal_index: usize,
        #[command(flatten)]
        build: BuildArgs,
    },
    /// Galois orbits of primes above `ell` and their dessin invariants.
    Orbit {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long)]
        ell: u64,
        /// Also write the full report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        build: BuildArgs,
    },
    /// Runs the acceptance checks.
    Selftest {
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

pub fn field_json(sig: Signature) -> Result<String> {
    let k = trace_field(sig)?;
    to_json(&k.to_json()?)
}

#[derive(Serialize)]
struct SplitsJson<'a> {
    signature: Signature,
    ell: u64,
    degree: usize,
    ideals: &'a [PrimeIdeal],
}

pub fn splits_json(sig: Signature, ell: u64) -> Result<String> {
    let k = trace_field(sig)?;
    let ideals = split_prime(&k, ell)?;
    to_json(&SplitsJson {
        signature: sig,
        ell,
        degree: k.degree(),
        ideals: &ideals,
    })
}

#[derive(Serialize)]
struct TraceTripleJson<'a> {
    beta_p: &'a Fq,
    beta_q: &'a Fq,
    beta_r: &'a Fq,
}

#[derive(Serialize)]
struct DessinJson<'a> {
    signature: Signature,
    ell: u64,
    ideal_index: usize,
    ideal: &'a PrimeIdeal,
    q: u64,
    trace_triple: TraceTripleJson<'a>,
    sign: TraceSign,
    group_order: usize,
    generator_orders: [u64; 3],
    passport: Passport,
    report: EulerThetaReport,
    genus_crosscheck: bool,
    dessin: Dessin,
}

pub fn dessin_json(sig: Signature, ell: u64, ideal_index: usize, opts: QuotientOptions) -> Result<String> {
    let k = trace_field(sig)?;
    let ideals = split_prime(&k, ell)?;
    let ideal = ideals.get(ideal_index).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "ideal index {ideal_index} out of range: {} primes above {ell}",
            ideals.len()
        ))
    })?;
    let g = congruence_quotient(&k, ideal, opts)?;
    let d = regular_dessin(&g);
    let t = g.trace_triple();
    to_json(&DessinJson {
        signature: sig,
        ell,
        ideal_index,
        ideal,
        q: t.q,
        trace_triple: TraceTripleJson {
            beta_p: &t.beta_p,
            beta_q: &t.beta_q,
            beta_r: &t.beta_r,
        },
        sign: g.sign(),
        group_order: g.order(),
        generator_orders: g.orders(),
        passport: passport(&d),
        report: euler_theta_report(&d, &g)?,
        genus_crosscheck: crate::dessin::genus_crosscheck(&d, &g),
        dessin: d,
    })
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// First 12 hex digits of the SHA-256 of a value's JSON.
fn short_hash<T: Serialize>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).unwrap_or_default();
    format!("{:x}", Sha256::digest(bytes))[..12].to_string()
}

fn plural(n: usize, word: &str) -> String {
    format!("{n} {word}{}", if n == 1 { "" } else { "s" })
}

/// Orbit table and verdict as printed by `orbit`, plus the report JSON.
pub fn orbit_output(sig: Signature, ell: u64, opts: QuotientOptions) -> Result<(String, String, bool)> {
    let k = trace_field(sig)?;
    let report = verify_theorem_c(&k, ell, opts)?;
    let mut table = format!(
        "{sig} over {ell}: {} in {}\n{:<24} {:>3} {:>10} {:>6} {:>6} {:>14} {:>6}\n",
        plural(report.per_ideal.len(), "prime"),
        plural(report.orbits.len(), "orbit"),
        "ideal",
        "f",
        "|G|",
        "genus",
        "cusps",
        "passport",
        "orbit"
    );
    for e in &report.per_ideal {
        table.push_str(&format!(
            "{:<24} {:>3} {:>10} {:>6} {:>6} {:>14} {:>6}\n",
            e.ideal.to_string(),
            e.ideal.f,
            e.record.group_order,
            e.record.genus,
            e.record.cusps,
            short_hash(&e.record.passport),
            e.orbit
        ));
    }
    for (o, m) in report.iso_matrix.iter().enumerate() {
        let rows: Vec<String> = m
            .iter()
            .map(|row| row.iter().map(|&b| if b { '1' } else { '0' }).collect())
            .collect();
        table.push_str(&format!("orbit {o} isomorphism matrix: {}\n", rows.join(" ")));
    }
    table.push_str(&format!(
        "verdict: {}\n",
        if report.verdict {
            "invariants agree along every orbit"
        } else {
            "invariants DIFFER within an orbit"
        }
    ));
    Ok((table, to_json(&report)?, report.verdict))
}

fn cache_dir(flag: Option<&Path>) -> Option<PathBuf> {
    match std::env::var_os(CACHE_ENV) {
        Some(v) if !v.is_empty() => Some(PathBuf::from(v)),
        _ => flag.map(Path::to_path_buf),
    }
}

fn cache_key(parts: &[String]) -> String {
    format!("{:x}", Sha256::digest(parts.join("\u{1f}").as_bytes()))
}

/// Returns the cached value for `key`, or computes and stores it.
fn cached(dir: Option<&Path>, key: &str, compute: impl FnOnce() -> Result<String>) -> Result<String> {
    let Some(dir) = dir else { return compute() };
    let path = dir.join(format!("{key}.json"));
    if let Ok(s) = fs::read_to_string(&path) {
        return Ok(s);
    }
    let value = compute()?;
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(value.as_bytes())?;
    tmp.persist(&path).map_err(|e| Error::Io(e.to_string()))?;
    Ok(value)
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<i32> {
    let cache = cache_dir(cli.cache_dir.as_deref());
    let out = cli.output.as_deref();
    match cli.command {
        Command::Field { sig } => emit(out, &field_json(sig.signature()?)?)?,
        Command::Splits { sig, ell } => emit(out, &splits_json(sig.signature()?, ell)?)?,
        Command::Dessin {
            sig,
            ell,
            ideal_index,
            build,
        } => {
            let s = sig.signature()?;
            let opts = build.options();
            let key = cache_key(&[
                "dessin/1".into(),
                s.to_string(),
                ell.to_string(),
                ideal_index.to_string(),
                opts.force.to_string(),
                opts.max_order.to_string(),
            ]);
            let json = cached(cache.as_deref(), &key, || dessin_json(s, ell, ideal_index, opts))?;
            emit(out, &json)?;
        }
        Command::Orbit {
            sig,
            ell,
            json,
            build,
        } => {
            let (table, report, verdict) = orbit_output(sig.signature()?, ell, build.options())?;
            if let Some(path) = json {
                fs::write(path, report)?;
            }
            emit(out, &table)?;
            return Ok(if verdict { 0 } else { 1 });
        }
        Command::Selftest { inject_fault } => {
            let results = selftest::run_all(selftest::Mode::from_fault_flag(inject_fault));
            let text: String = results.iter().map(|r| format!("{r}\n")).collect();
            emit(out, &text)?;
            return Ok(if results.iter().all(|r| r.passed) { 0 } else { 1 });
        }
    }
    Ok(0)
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(p: Entry, q: Entry, r: Entry) -> Signature {
        validate_signature(p, q, r).unwrap()
    }

    #[test]
    fn cache_key_is_stable() {
        let a = cache_key(&["x".into(), "y".into()]);
        assert_eq!(a, cache_key(&["x".into(), "y".into()]));
        assert_ne!(a, cache_key(&["xy".into()]));
        assert_eq!(a.len(), 64);
    }

    #[test]
    fn cache_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let mut calls = 0;
        let mut f = || {
            calls += 1;
            Ok("value\n".to_string())
        };
        assert_eq!(cached(Some(dir.path()), "k", &mut f).unwrap(), "value\n");
        assert_eq!(cached(Some(dir.path()), "k", &mut f).unwrap(), "value\n");
        assert_eq!(calls, 1);
    }

    #[test]
    fn splits_output() {
        let s = splits_json(sig(Entry::Finite(2), Entry::Finite(3), Entry::Finite(7)), 13).unwrap();
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["ideals"].as_array().unwrap().len(), 3);
        assert_eq!(v["ideals"][0], serde_json::json!({"ell": 13, "g": [7, 1], "f": 1}));
    }

    #[test]
    fn dessin_output_shape() {
        let s = dessin_json(
            sig(Entry::Finite(2), Entry::Finite(3), Entry::Infinite),
            5,
            0,
            QuotientOptions::default(),
        )
        .unwrap();
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["signature"]["r"], "inf");
        assert_eq!(v["dessin"]["n"], 60);
        assert_eq!(v["report"]["cusps"], 12);
        assert_eq!(v["report"]["theta_count"], serde_json::json!({"log2": 0}));
        assert_eq!(v["passport"]["overinf"], serde_json::json!([[5, 12]]));
    }

    #[test]
    fn bad_ideal_index() {
        let e = dessin_json(
            sig(Entry::Finite(2), Entry::Finite(3), Entry::Infinite),
            5,
            1,
            QuotientOptions::default(),
        )
        .unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }
}
