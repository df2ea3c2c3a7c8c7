//! Command-line front end: realize, verify, decide. JSON in, JSON out,
//! deterministic reports (timings go to stderr so identical invocations
//! produce byte-identical reports).

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use permspec::construct::{self, Method};
use permspec::decide::{certify_any, decide};
use permspec::error::Error;
use permspec::report::{
    certificate_to_json, decision_exit_code, decision_to_json, matrix_from_json, matrix_to_json,
    spectrum_to_json, Json, RunReport,
};
use permspec::spectrum::parse_spectrum;
use permspec::verify::Tolerances;
use permspec::AnySpectrum;

#[derive(Parser)]
#[command(
    name = "permspec",
    version,
    about = "Construct and certify permutative nonnegative matrices with a prescribed spectrum",
    after_help = "The environment variable PERMSPEC_SEED is reserved; the deterministic paths ignore it."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Construct a realizing matrix for a spectrum JSON file.
    Realize {
        /// Spectrum JSON path, or a directory with --batch.
        spectrum: PathBuf,
        /// auto|suleimanova|mean|circulant|lolo3|block|direct-sum
        #[arg(long, default_value = "auto")]
        method: String,
        /// Require a symmetric realizer.
        #[arg(long)]
        symmetric: bool,
        /// Force exact rational arithmetic.
        #[arg(long)]
        exact: bool,
        /// Override the spectral residual threshold (default 1e-8).
        #[arg(long)]
        tolerance: Option<f64>,
        /// Write the realizing matrix JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Treat the input path as a directory of spectrum files.
        #[arg(long)]
        batch: bool,
    },
    /// Certify a matrix JSON file against a spectrum JSON file.
    Verify {
        matrix: PathBuf,
        spectrum: PathBuf,
        /// Force exact rational arithmetic for the spectrum.
        #[arg(long)]
        exact: bool,
        /// Override the spectral residual threshold (default 1e-8).
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Print the realizability decision for a spectrum JSON file.
    Decide {
        spectrum: PathBuf,
        /// Force exact rational arithmetic.
        #[arg(long)]
        exact: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let code = match cli.cmd {
        Cmd::Realize {
            spectrum,
            method,
            symmetric,
            exact,
            tolerance,
            out,
            batch,
        } => {
            if batch {
                run_batch(&spectrum, &method, symmetric, exact, tolerance)
            } else {
                run_realize(&spectrum, &method, symmetric, exact, tolerance, out.as_deref())
            }
        }
        Cmd::Verify {
            matrix,
            spectrum,
            exact,
            tolerance,
        } => run_verify(&matrix, &spectrum, exact, tolerance),
        Cmd::Decide { spectrum, exact } => run_decide(&spectrum, exact),
    };
    eprintln!("# elapsed_ms: {}", started.elapsed().as_millis());
    ExitCode::from(code)
}

fn tolerances(spectral: Option<f64>) -> Tolerances {
    let mut tol = Tolerances::default();
    if let Some(s) = spectral {
        tol.spectral = s;
    }
    tol
}

fn load_spectrum(path: &Path, exact: bool) -> Result<AnySpectrum, (u8, String)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| (1u8, format!("cannot read {}: {e}", path.display())))?;
    parse_spectrum(&text, exact).map_err(|e| match e {
        Error::Io(e) => (1, e.to_string()),
        other => (1, format!("bad spectrum {}: {other}", path.display())),
    })
}

fn run_realize(
    path: &Path,
    method: &str,
    symmetric: bool,
    exact: bool,
    tolerance: Option<f64>,
    out: Option<&Path>,
) -> u8 {
    let spectrum = match load_spectrum(path, exact) {
        Ok(s) => s,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            return code;
        }
    };
    let tol = tolerances(tolerance);

    let constructed: Result<(Method, permspec::AnyMatrix, Option<Json>), (u8, String)> =
        match method {
            "auto" => {
                let d = decide(&spectrum);
                let djson = decision_to_json(&d);
                match (d.method, d.witness) {
                    (Some(m), Some(w)) => Ok((m, w, Some(djson))),
                    _ => Err((
                        2,
                        format!("no applicable construction: verdict {}", d.verdict.as_str()),
                    )),
                }
            }
            "suleimanova" => construct::realize_suleimanova_any(&spectrum)
                .map(|m| (Method::Suleimanova, m, None))
                .map_err(|e| (2u8, e.to_string())),
            "mean" => construct::realize_mean_any(&spectrum)
                .map(|m| (Method::Mean, m, None))
                .map_err(|e| (2u8, e.to_string())),
            "circulant" => construct::realize_circulant_any(&spectrum)
                .map(|m| (Method::Circulant, m, None))
                .map_err(|e| (2u8, e.to_string())),
            "lolo3" => construct::realize_lolo3_any(&spectrum)
                .map(|m| (Method::Lolo3, m, None))
                .map_err(|e| (2u8, e.to_string())),
            "block" => construct::realize_block_any(&spectrum, symmetric)
                .map(|o| (Method::Block, o.matrix, None))
                .map_err(|e| (2u8, e.to_string())),
            "direct-sum" => construct::realize_direct_sum_any(&spectrum)
                .map(|(m, _)| (Method::DirectSum, m, None))
                .map_err(|e| (2u8, e.to_string())),
            other => Err((1, format!("unknown method {other:?}"))),
        };

    let (method, matrix, decision_json) = match constructed {
        Ok(v) => v,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            return code;
        }
    };

    let cert = match certify_any(&matrix, &spectrum, tol) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: certification failed to run: {e}");
            return 3;
        }
    };
    let symmetric_ok = !symmetric || cert.symmetric;

    let report = RunReport {
        command: "realize".into(),
        input: spectrum_to_json(&spectrum),
        method: Some(method.as_str().to_string()),
        witness: Some(matrix_to_json(&matrix)),
        certificate: Some(certificate_to_json(&cert)),
        decision: decision_json,
    };
    print!("{}", report.to_json().to_string_pretty());

    if let Some(out_path) = out {
        if let Err(e) = std::fs::write(out_path, matrix_to_json(&matrix).to_string_pretty()) {
            eprintln!("error: cannot write {}: {e}", out_path.display());
            return 1;
        }
    }

    if !symmetric_ok {
        eprintln!("error: a symmetric realizer was requested but the construction is not symmetric");
        return 2;
    }
    if cert.pass() {
        0
    } else {
        eprintln!(
            "error: constructed matrix failed certification (residual {:.3e})",
            cert.spectral_residual
        );
        3
    }
}

fn run_batch(dir: &Path, method: &str, symmetric: bool, exact: bool, tolerance: Option<f64>) -> u8 {
    let entries = match std::fs::read_dir(dir) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: cannot read directory {}: {e}", dir.display());
            return 1;
        }
    };
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.extension().map_or(false, |ext| ext == "json")
                && !p
                    .file_name()
                    .and_then(|n| n.to_str())
                    .map_or(false, |n| n.ends_with(".out.json"))
        })
        .collect();
    paths.sort();
    let mut worst = 0u8;
    for p in paths {
        let out = p.with_extension("out.json");
        eprintln!("# batch: {}", p.display());
        let code = run_realize(&p, method, symmetric, exact, tolerance, Some(&out));
        worst = worst.max(code);
    }
    worst
}

fn run_verify(matrix_path: &Path, spectrum_path: &Path, exact: bool, tolerance: Option<f64>) -> u8 {
    let spectrum = match load_spectrum(spectrum_path, exact) {
        Ok(s) => s,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            return code;
        }
    };
    let matrix_text = match std::fs::read_to_string(matrix_path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", matrix_path.display());
            return 1;
        }
    };
    let matrix = match matrix_from_json(&matrix_text) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: bad matrix {}: {e}", matrix_path.display());
            return 1;
        }
    };
    let cert = match certify_any(&matrix, &spectrum, tolerances(tolerance)) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 3;
        }
    };
    let report = RunReport {
        command: "verify".into(),
        input: spectrum_to_json(&spectrum),
        method: None,
        witness: Some(matrix_to_json(&matrix)),
        certificate: Some(certificate_to_json(&cert)),
        decision: None,
    };
    print!("{}", report.to_json().to_string_pretty());
    if cert.pass() {
        0
    } else {
        3
    }
}

fn run_decide(spectrum_path: &Path, exact: bool) -> u8 {
    let spectrum = match load_spectrum(spectrum_path, exact) {
        Ok(s) => s,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            return code;
        }
    };
    let d = decide(&spectrum);
    let report = RunReport {
        command: "decide".into(),
        input: spectrum_to_json(&spectrum),
        method: d.method.map(|m| m.as_str().to_string()),
        witness: None,
        certificate: None,
        decision: Some(decision_to_json(&d)),
    };
    print!("{}", report.to_json().to_string_pretty());
    decision_exit_code(&d) as u8
}
