//! Command-line front end: classification reports, Poincaré polynomials,
//! group enumeration info, and the verification suites.
//!
//! Exit codes: 0 success, 2 validation error (one-line diagnostic on
//! stderr), 1 internal error. Verify suites print progress to stderr and
//! results to stdout.

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::classify::{
    classify, BSecondParameter, ClassificationInput, ClassificationReport, Parameter,
};
use crate::coxeter::{
    generate_group, is_prime, poincare_bruteforce, realize, GroupTable, SylowReport,
    DEFAULT_ELEMENT_CAP,
};
use crate::poly::IntPolynomial;
use crate::verify::{run_suite, SuiteLimits, SUITE_NAMES};
use crate::weyl::{IrreducibleType, WeylSpec};

/// Environment variable overriding the group-enumeration element cap.
pub const MAX_ELEMENTS_ENV: &str = "HECKE_TYPER_MAX_ELEMENTS";

#[derive(Parser, Debug)]
#[command(
    name = "hecke-typer",
    version,
    about = "Representation type of Hecke algebras of finite Weyl groups, with brute-force verification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify a Hecke algebra (or group algebra at q = 1) as semisimple,
    /// finite, or infinite representation type.
    Classify {
        /// Weyl spec, e.g. "A4xB3", "D5", "1"
        #[arg(long)]
        spec: String,
        /// Field characteristic (0 or a prime)
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        /// q = 1: classify the group algebra
        #[arg(long, conflicts_with = "e")]
        q1: bool,
        /// q a primitive e-th root of unity (e >= 2)
        #[arg(long)]
        e: Option<u64>,
        /// Second parameter for type-B factors
        #[arg(long, value_enum)]
        bq: Option<BqArg>,
        /// Exponent f for --bq minus-power (-Q = q^f, 0 <= f < e)
        #[arg(long)]
        f: Option<u64>,
        /// Emit the JSON report instead of the table
        #[arg(long)]
        json: bool,
    },
    /// Print the Poincaré polynomial of a Weyl spec.
    Poincare {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate one irreducible group: order, length histogram, element
    /// orders and Sylow cyclicity per prime.
    GroupInfo {
        /// A single irreducible type, e.g. "F4" or "I2(9)"
        #[arg(long = "type")]
        type_spec: String,
        /// Primes to report on (default: 2,3,5,7,11,13)
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite (formula vs brute-force oracle).
    Verify {
        /// One of: poincare-oracle, multiplicity-oracle, sylow-oracle,
        /// morita-consistency, kunneth-bound, witt-appendix
        suite: String,
        /// Skip enumerating groups larger than this
        #[arg(long)]
        max_order: Option<u64>,
        #[arg(long)]
        max_rank: Option<usize>,
        #[arg(long)]
        max_e: Option<u64>,
        #[arg(long)]
        max_n: Option<u64>,
        /// Random samples for the kunneth-bound suite
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Include W(E7) in enumeration suites (minutes of work)
        #[arg(long)]
        include_e7: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BqArg {
    /// Q = q (the one-parameter algebra)
    EqualQ,
    /// Q = 1
    One,
    /// -Q is not a power of q
    Generic,
    /// -Q = q^f
    MinusPower,
}

enum CliError {
    Validation(String),
    Internal(String),
}

impl CliError {
    fn validation(msg: impl std::fmt::Display) -> Self {
        CliError::Validation(msg.to_string())
    }
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::Classify {
            spec,
            characteristic,
            q1,
            e,
            bq,
            f,
            json,
        } => run_classify(&spec, characteristic, q1, e, bq, f, json),
        Command::Poincare { spec, json } => run_poincare(&spec, json),
        Command::GroupInfo {
            type_spec,
            primes,
            json,
        } => run_group_info(&type_spec, &primes, json),
        Command::Verify {
            suite,
            max_order,
            max_rank,
            max_e,
            max_n,
            samples,
            seed,
            include_e7,
        } => run_verify(
            &suite, max_order, max_rank, max_e, max_n, samples, seed, include_e7,
        ),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            1
        }
    }
}

fn parse_spec(text: &str) -> Result<WeylSpec, CliError> {
    text.parse().map_err(CliError::validation)
}

fn element_cap() -> Result<u64, CliError> {
    match std::env::var(MAX_ELEMENTS_ENV) {
        Ok(value) => value.trim().parse().map_err(|_| {
            CliError::validation(format!("{MAX_ELEMENTS_ENV}={value} is not an integer"))
        }),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_ELEMENT_CAP),
        Err(e) => Err(CliError::Internal(e.to_string())),
    }
}

#[allow(clippy::too_many_arguments)]
fn run_classify(
    spec: &str,
    characteristic: u64,
    q1: bool,
    e: Option<u64>,
    bq: Option<BqArg>,
    f: Option<u64>,
    json: bool,
) -> Result<i32, CliError> {
    let spec = parse_spec(spec)?;
    let parameter = match (q1, e) {
        (true, None) => Parameter::One,
        (false, Some(e)) => Parameter::RootOfUnity { e },
        (false, None) => return Err(CliError::validation("one of --q1 or --e is required")),
        (true, Some(_)) => unreachable!("clap conflicts_with"),
    };
    let b_second = match (bq, f) {
        (Some(BqArg::MinusPower), Some(f)) => Some(BSecondParameter::MinusPower { f }),
        (Some(BqArg::MinusPower), None) => {
            return Err(CliError::validation("--bq minus-power requires --f"))
        }
        (Some(other), Some(_)) => {
            return Err(CliError::validation(format!(
                "--f only applies to --bq minus-power, not --bq {}",
                other.to_possible_value().unwrap().get_name()
            )))
        }
        (Some(BqArg::EqualQ), None) => Some(BSecondParameter::EqualQ),
        (Some(BqArg::One), None) => Some(BSecondParameter::One),
        (Some(BqArg::Generic), None) => Some(BSecondParameter::GenericQ),
        (None, Some(_)) => return Err(CliError::validation("--f requires --bq minus-power")),
        (None, None) => None,
    };
    let input = ClassificationInput::new(spec, characteristic, parameter, b_second)
        .map_err(CliError::validation)?;
    let report = classify(&input).map_err(CliError::validation)?;
    if json {
        print_json(&report)?;
    } else {
        print_classification_table(&report);
    }
    Ok(0)
}

fn print_classification_table(report: &ClassificationReport) {
    println!("spec: {}", report.input.spec);
    match report.input.q {
        Parameter::One => println!(
            "parameter: q = 1 (group algebra), characteristic {}",
            report.input.characteristic
        ),
        Parameter::RootOfUnity { e } => println!(
            "parameter: q a primitive root of unity of order e = {e}, characteristic {}",
            report.input.characteristic
        ),
    }
    if let Some(bq) = report.input.b_q {
        let desc = match bq {
            BSecondParameter::EqualQ => "Q = q".to_string(),
            BSecondParameter::One => "Q = 1".to_string(),
            BSecondParameter::GenericQ => "-Q not a power of q".to_string(),
            BSecondParameter::MinusPower { f } => format!("-Q = q^{f}"),
        };
        println!("type-B second parameter: {desc}");
    }
    if report.factors.is_empty() {
        println!("factors: none (trivial group)");
    } else {
        println!(
            "{:<8} {:<38} {:<6} {:<12} criterion",
            "factor", "status", "mult", "basis"
        );
        for f in &report.factors {
            let mult = f.multiplicity.map_or(String::from("-"), |m| m.to_string());
            println!(
                "{:<8} {:<38} {:<6} {:<12} {}",
                f.factor.to_string(),
                f.status.to_string(),
                mult,
                f.basis.to_string(),
                f.criterion
            );
        }
    }
    println!(
        "overall: {}  [basis: {}]",
        report.overall.status, report.overall.basis
    );
}

#[derive(Serialize)]
struct PoincareJson {
    spec: String,
    degree: usize,
    value_at_one: String,
    coefficients: IntPolynomial,
}

fn run_poincare(spec: &str, json: bool) -> Result<i32, CliError> {
    let spec = parse_spec(spec)?;
    let p = spec.poincare_polynomial();
    if json {
        print_json(&PoincareJson {
            spec: spec.to_string(),
            degree: p.degree().unwrap_or(0),
            value_at_one: p.eval_at_integer(&BigInt::one()).to_string(),
            coefficients: p,
        })?;
    } else {
        println!("spec: {spec}");
        println!("|W| = P_W(1) = {}", p.eval_at_integer(&BigInt::one()));
        println!("deg P_W = {}", p.degree().unwrap_or(0));
        println!("P_W(x) = {p}");
    }
    Ok(0)
}

#[derive(Serialize)]
struct GroupInfoJson {
    #[serde(rename = "type")]
    type_name: String,
    order: u64,
    max_length: u32,
    length_histogram: Vec<u64>,
    primes: Vec<PrimeInfoJson>,
}

#[derive(Serialize)]
struct PrimeInfoJson {
    #[serde(flatten)]
    report: SylowReport,
    witness_order: u32,
}

fn run_group_info(type_spec: &str, primes: &[u64], json: bool) -> Result<i32, CliError> {
    let spec = parse_spec(type_spec)?;
    let t: IrreducibleType = match spec.factors() {
        [one] => *one,
        _ => {
            return Err(CliError::validation(
                "group-info takes a single irreducible type",
            ))
        }
    };
    let primes: Vec<u64> = if primes.is_empty() {
        vec![2, 3, 5, 7, 11, 13]
    } else {
        primes.to_vec()
    };
    for &l in &primes {
        if !is_prime(l) {
            return Err(CliError::validation(format!("{l} is not prime")));
        }
    }
    let cap = element_cap()?;
    let table: GroupTable = generate_group(&realize(t), cap).map_err(CliError::validation)?;
    let reports: Vec<PrimeInfoJson> = primes
        .iter()
        .map(|&l| {
            let report = table.sylow_is_cyclic(l);
            let witness_order = table.element_order(report.witness);
            PrimeInfoJson {
                report,
                witness_order,
            }
        })
        .collect();
    if json {
        print_json(&GroupInfoJson {
            type_name: t.to_string(),
            order: table.order(),
            max_length: table.max_length(),
            length_histogram: table.length_histogram(),
            primes: reports,
        })?;
    } else {
        println!("type: {t}");
        println!("order: {}", table.order());
        println!("max length: {}", table.max_length());
        println!(
            "length generating function: {}",
            poincare_bruteforce(&table)
        );
        for info in &reports {
            let r = &info.report;
            println!(
                "l = {}: |W|_l = {}, max element l-power order = {} (witness order {}), sylow cyclic: {}",
                r.prime, r.group_l_part, r.max_element_l_part, info.witness_order, r.cyclic
            );
        }
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn run_verify(
    suite: &str,
    max_order: Option<u64>,
    max_rank: Option<usize>,
    max_e: Option<u64>,
    max_n: Option<u64>,
    samples: Option<usize>,
    seed: Option<u64>,
    include_e7: bool,
) -> Result<i32, CliError> {
    let mut limits = SuiteLimits::default();
    if let Ok(cap) = std::env::var(MAX_ELEMENTS_ENV) {
        limits.element_cap = cap.trim().parse().map_err(|_| {
            CliError::validation(format!("{MAX_ELEMENTS_ENV}={cap} is not an integer"))
        })?;
    }
    if let Some(v) = max_order {
        limits.max_order = v;
        limits.element_cap = limits.element_cap.max(v);
    }
    if let Some(v) = max_rank {
        limits.max_rank = v;
    }
    if let Some(v) = max_e {
        limits.max_e = v;
    }
    if let Some(v) = max_n {
        limits.max_n = v;
    }
    if let Some(v) = samples {
        limits.samples = v;
    }
    if let Some(v) = seed {
        limits.seed = v;
    }
    limits.include_e7 = include_e7;

    let Some(report) = run_suite(suite, &limits, &mut |msg| eprintln!("  .. {msg}")) else {
        return Err(CliError::validation(format!(
            "unknown suite '{suite}' (expected one of: {})",
            SUITE_NAMES.join(", ")
        )));
    };
    for check in &report.checks {
        let tag = if check.passed { "PASS" } else { "FAIL" };
        println!("{tag} {} - {}", check.name, check.detail);
    }
    let failed = report.checks.iter().filter(|c| !c.passed).count();
    println!(
        "suite {}: {}/{} checks passed",
        report.suite,
        report.checks.len() - failed,
        report.checks.len()
    );
    Ok(if failed == 0 { 0 } else { 1 })
}

fn print_json<T: Serialize>(value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Internal(format!("serialization failed: {e}")))?;
    println!("{text}");
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }
}
