//! Batch command-line surface: single-state reports, family sweeps and
//! algebra self-tests, emitting diff-friendly JSON and CSV.
//!
//! Exit codes: 0 on success, 2 on invalid input, 3 on an internal
//! invariant failure.

pub mod format;
mod state_file;

pub use state_file::StateFile;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bell_state::{
    bloch_state, spectrum_from_tensor, tensor_from_spectrum, BellDiagonalState, BlochSphereState,
    CorrelationTensor,
};
use crate::correlation_measures::correlation_report;
use crate::css_family::{gap_direct, trace_condition, witness, x_max, GapReport};
use crate::error::Error;
use crate::oracle::birkhoff_certificate;
use crate::pauli_algebra::{
    build_gamma_set, enumerate_abelian_subgroups, exponent_commutes, verify_clifford,
    AbelianSubgroup, ExponentVector,
};

use format::{csv_row, json_object, sig12, JsonValue};

const CSV_HEADER: &str = "x,E,Q,C_sigma,T_rho,gap_direct,gap_analytic";

#[derive(Parser)]
#[command(
    name = "qcorr",
    version,
    about = "Correlation measures for 2^n-dimensional Bell-diagonal states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Correlation report (discord, entropy, T, C, CCS subgroup) for one state
    Report {
        /// State file: JSON map from exponent bitstrings to coefficients
        #[arg(long)]
        state: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Sweep the entangled family rho(x, sigma) over x in (0, x_max]
    CssSweep {
        /// Separable boundary state sigma, in Bloch-sphere form
        #[arg(long)]
        state: PathBuf,
        /// Witness sign bits i_1 ... i_2n, e.g. "00"
        #[arg(long)]
        witness: String,
        /// Number of sweep rows; row k sits at x = k * x_max / steps
        #[arg(long)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Run the built-in verification suites
    Selftest {
        /// Largest n for the matrix-backed suites (1 or 2)
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Seed for the randomized certificates
        #[arg(long, default_value_t = 17)]
        seed: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InfiniteDivergence { .. }
            | Error::SingularMap { .. }
            | Error::UnboundedFamily
            | Error::SinkhornNonConvergence { .. } => 3,
            _ => 2,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// Parses the process arguments, dispatches, and returns the exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let outcome = std::panic::catch_unwind(|| dispatch(&cli.command));
    match outcome {
        Ok(Ok(())) => 0,
        Ok(Err(e)) => {
            eprintln!("error: {}", e.message);
            e.code
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .map(String::as_str)
                .or_else(|| panic.downcast_ref::<&str>().copied())
                .unwrap_or("unknown panic");
            eprintln!("internal invariant failure: {msg}");
            3
        }
    }
}

fn dispatch(command: &Command) -> Result<(), CliError> {
    match command {
        Command::Report { state, format } => cmd_report(state, *format),
        Command::CssSweep {
            state,
            witness,
            steps,
            format,
        } => cmd_css_sweep(state, witness, *steps, *format),
        Command::Selftest { n, seed } => cmd_selftest(*n, *seed),
    }
}

fn load_tensor(path: &Path) -> Result<CorrelationTensor<f64>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    let file = StateFile::parse(&text)?;
    Ok(file.to_tensor()?)
}

fn cmd_report(path: &Path, format: OutputFormat) -> Result<(), CliError> {
    let tensor = load_tensor(path)?;
    let state = BellDiagonalState::from_tensor(tensor)?;
    let report = correlation_report(&state)?;
    let entries = [
        ("discord_bits", JsonValue::Number(report.discord)),
        ("entropy_bits", JsonValue::Number(report.entropy)),
        (
            "T_bits",
            JsonValue::Number(report.total_mutual_information),
        ),
        ("C_bits", JsonValue::Number(report.classical_correlation)),
        (
            "ccs_subgroup",
            JsonValue::Text(report.ccs.subgroup().to_string()),
        ),
    ];
    match format {
        OutputFormat::Json => println!("{}", json_object(&entries)),
        OutputFormat::Csv => {
            println!("key,value");
            for (key, value) in &entries {
                match value {
                    JsonValue::Number(x) => println!("{key},{}", sig12(*x)),
                    JsonValue::Text(s) => println!("{key},{s}"),
                }
            }
        }
    }
    Ok(())
}

/// Reads a Bloch-sphere state out of a general tensor: only axis entries
/// (a single exponent bit set) and the all-ones entry may be nonzero.
fn bloch_from_tensor(tensor: &CorrelationTensor<f64>) -> Result<BlochSphereState<f64>, CliError> {
    let n = tensor.n();
    let width = 2 * n;
    let all_ones = (1usize << width) - 1;
    for a in tensor.support() {
        let idx = a.index();
        if idx.count_ones() != 1 && idx != all_ones {
            return Err(CliError::input(format!(
                "coefficient at {a} is outside the Bloch-sphere form \
                 (axis and all-ones entries only)"
            )));
        }
    }
    let axis: Vec<f64> = (0..width)
        .map(|k| tensor.coefficients()[1usize << (width - 1 - k)])
        .collect();
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let t_all = sign * tensor.coefficients()[all_ones];
    Ok(bloch_state(&axis, t_all)?)
}

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var("QCORR_THREADS") {
        let threads: usize = raw
            .parse()
            .ok()
            .filter(|&t| t >= 1)
            .ok_or_else(|| CliError::input("QCORR_THREADS must be a positive integer"))?;
        builder = builder.num_threads(threads);
    }
    builder
        .build()
        .map_err(|e| CliError::input(format!("cannot build thread pool: {e}")))
}

fn cmd_css_sweep(
    path: &Path,
    witness_bits: &str,
    steps: usize,
    format: OutputFormat,
) -> Result<(), CliError> {
    if steps == 0 {
        return Err(CliError::input("--steps must be at least 1"));
    }
    let tensor = load_tensor(path)?;
    let sigma = bloch_from_tensor(&tensor)?;
    let n = sigma.n();

    let bits = ExponentVector::from_bitstring(witness_bits)?;
    if bits.width() != 2 * n {
        return Err(CliError::input(format!(
            "witness bits {witness_bits:?} must have length {}",
            2 * n
        )));
    }
    let w = witness::<f64>(n, bits)?;

    let residual = trace_condition(&sigma, &w)?;
    if residual.abs() > 1e-12 {
        return Err(CliError::input(format!(
            "sigma violates the trace condition: residual {}",
            sig12(residual)
        )));
    }
    if sigma
        .state()
        .spectrum()
        .probabilities()
        .iter()
        .any(|&p| p <= 0.0)
    {
        return Err(CliError::input(
            "sigma must have a strictly positive spectrum",
        ));
    }

    let xm = x_max(&sigma, &w)?;
    let xs: Vec<f64> = (1..=steps)
        .map(|k| xm * (k as f64) / (steps as f64))
        .collect();
    let pool = thread_pool()?;
    let rows: Result<Vec<GapReport<f64>>, Error> = pool.install(|| {
        xs.par_iter()
            .map(|&x| gap_direct(&sigma, &w, x))
            .collect()
    });
    let rows = rows?;

    match format {
        OutputFormat::Csv => {
            println!("{CSV_HEADER}");
            for r in &rows {
                println!(
                    "{}",
                    csv_row(&[
                        r.x,
                        r.entanglement,
                        r.dissonance,
                        r.classical_correlation,
                        r.total_mutual_information,
                        r.gap_direct,
                        r.gap_analytic,
                    ])
                );
            }
        }
        OutputFormat::Json => {
            let objects: Vec<String> = rows
                .iter()
                .map(|r| {
                    json_object(&[
                        ("x", JsonValue::Number(r.x)),
                        ("E", JsonValue::Number(r.entanglement)),
                        ("Q", JsonValue::Number(r.dissonance)),
                        ("C_sigma", JsonValue::Number(r.classical_correlation)),
                        ("T_rho", JsonValue::Number(r.total_mutual_information)),
                        ("gap_direct", JsonValue::Number(r.gap_direct)),
                        ("gap_analytic", JsonValue::Number(r.gap_analytic)),
                    ])
                })
                .collect();
            println!("[{}]", objects.join(",\n"));
        }
    }
    Ok(())
}

fn cmd_selftest(n: usize, seed: u64) -> Result<(), CliError> {
    if n == 0 || n > 2 {
        return Err(CliError::input(
            "--n must be 1 or 2 for the matrix-backed suites",
        ));
    }
    let corrupt = std::env::var("QCORR_SELFTEST_CORRUPT").is_ok_and(|v| v == "1");
    let mut all_ok = true;
    let mut run = |name: &str, outcome: Result<(), String>| match outcome {
        Ok(()) => println!("PASS {name}"),
        Err(detail) => {
            all_ok = false;
            println!("FAIL {name}: {detail}");
        }
    };

    let gamma_suite = || -> Result<(), String> {
        for d in [2usize, 4, 6] {
            let mut set = build_gamma_set::<f64>(d).map_err(|e| e.to_string())?;
            if corrupt {
                set.corrupt_entry();
            }
            let report = verify_clifford(&set);
            if !report.is_exact() {
                return Err(format!("violations at d={d}: {report:?}"));
            }
        }
        Ok(())
    };
    run("gamma_clifford", gamma_suite());

    let transform_suite = || -> Result<(), String> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..200 {
            let nn = rng.gen_range(1..=3usize);
            let len = 1usize << (2 * nn);
            let mut t: Vec<f64> = (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect();
            t[0] = 1.0;
            let tensor =
                CorrelationTensor::from_coefficients(nn, t.clone()).map_err(|e| e.to_string())?;
            let back = tensor_from_spectrum(&spectrum_from_tensor(&tensor));
            for (a, b) in t.iter().zip(back.coefficients()) {
                if (a - b).abs() > 1e-12 {
                    return Err(format!("round-trip drift {} at n={nn}", (a - b).abs()));
                }
            }
        }
        Ok(())
    };
    run("transform_round_trip", transform_suite());

    let witness_suite = || -> Result<(), String> {
        for nn in 1..=n {
            let set = build_gamma_set::<f64>(2 * nn).map_err(|e| e.to_string())?;
            for bits in 0..(1usize << (2 * nn)) {
                let ev = ExponentVector::from_index(bits, 2 * nn).map_err(|e| e.to_string())?;
                let w = witness::<f64>(nn, ev).map_err(|e| e.to_string())?;
                if !w.normalization_is_exact() {
                    return Err(format!("normalization fails at n={nn} bits={bits}"));
                }
                let dense = w.materialize(&set).map_err(|e| e.to_string())?;
                let mut eigs: Vec<f64> = dense.symmetric_eigenvalues().iter().copied().collect();
                eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
                let mut expected = w.eigenvalues().to_vec();
                expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
                for (e, x) in eigs.iter().zip(&expected) {
                    if (e - x).abs() > 1e-10 {
                        return Err(format!("dense spectrum drift at n={nn} bits={bits}"));
                    }
                }
            }
        }
        Ok(())
    };
    run("witness_normalization", witness_suite());

    let birkhoff_suite = || -> Result<(), String> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5151);
        let normalize = |mut v: Vec<f64>| {
            let s: f64 = v.iter().sum();
            v.iter_mut().for_each(|x| *x /= s);
            v
        };
        let lambda = normalize((0..6).map(|_| rng.gen_range(0.01..1.0)).collect());
        let mu = normalize((0..6).map(|_| rng.gen_range(0.01..1.0)).collect());
        match birkhoff_certificate(&lambda, &mu, 2000, seed) {
            Ok(report) if report.violations == 0 => Ok(()),
            Ok(report) => Err(format!(
                "{} of {} samples exceeded the optimum (seed {})",
                report.violations, report.samples, report.seed
            )),
            Err(e) => Err(e.to_string()),
        }
    };
    run("birkhoff_certificate", birkhoff_suite());

    if n >= 2 {
        let pairs_suite = || -> Result<(), String> {
            let subs = enumerate_abelian_subgroups(2).map_err(|e| e.to_string())?;
            let mut seen = std::collections::BTreeSet::new();
            for (a, b) in crate::pauli_algebra::N2_GENERATOR_PAIRS {
                let a = ExponentVector::from_bitstring(a).map_err(|e| e.to_string())?;
                let b = ExponentVector::from_bitstring(b).map_err(|e| e.to_string())?;
                if !exponent_commutes(a, b).map_err(|e| e.to_string())? {
                    return Err(format!("pair ({a}, {b}) does not commute"));
                }
                let sub = AbelianSubgroup::from_generators(&[a, b]).map_err(|e| e.to_string())?;
                if !subs.contains(&sub) {
                    return Err(format!("pair ({a}, {b}) missing from the enumeration"));
                }
                seen.insert(sub);
            }
            if seen.len() != subs.len() {
                return Err(format!(
                    "pairs generate {} of {} subgroups",
                    seen.len(),
                    subs.len()
                ));
            }
            Ok(())
        };
        run("commuting_pairs_n2", pairs_suite());
    }

    if all_ok {
        Ok(())
    } else {
        Err(CliError {
            code: 3,
            message: "self-test failures reported above".into(),
        })
    }
}
