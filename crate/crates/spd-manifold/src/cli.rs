//! Batch command-line front end over the library: matrix I/O in the JSON
//! envelope format, geometry commands, and the seeded property suite.
//!
//! Exit codes: 0 success, 1 property-suite failure, 2 unusable input
//! (argument, JSON, or file errors), 3 violated mathematical invariant
//! (non-positive-definite input, dimension mismatch, failed group
//! membership).

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_complex::Complex64;

use crate::envelope::MatrixEnvelope;
use crate::error::{Error, Result};
use crate::manifold::{distance, project_det1, project_trace0, riem_log, Geodesic};
use crate::scalar::{Field, Scalar};
use crate::symmat::{mat_exp, mat_log, mat_sqrt};
use crate::tolerances;
use crate::verify::{run_check, CheckConfig, Mutation};

#[derive(Parser, Debug)]
#[command(
    name = "spdm",
    version,
    about = "Geometry of positive-definite matrices: exp/log/sqrt, geodesics, distances, and a property-check suite"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Matrix exponential of a self-adjoint envelope (result kind: spd).
    Exp {
        /// Path to a selfadjoint/spd envelope.
        input: PathBuf,
        /// Validation tolerance for envelope invariants.
        #[arg(long, default_value_t = tolerances::ENVELOPE_TOL)]
        tol: f64,
    },
    /// Matrix logarithm of an SPD envelope (result kind: selfadjoint).
    Log {
        input: PathBuf,
        #[arg(long, default_value_t = tolerances::ENVELOPE_TOL)]
        tol: f64,
    },
    /// Principal square root of an SPD envelope (result kind: spd).
    Sqrt {
        input: PathBuf,
        #[arg(long, default_value_t = tolerances::ENVELOPE_TOL)]
        tol: f64,
    },
    /// Geodesic distance between two SPD envelopes.
    Dist {
        p: PathBuf,
        q: PathBuf,
        #[arg(long, default_value_t = tolerances::ENVELOPE_TOL)]
        tol: f64,
    },
    /// Sample the geodesic from P to Q at t = 0, 1/k, ..., 1; one envelope
    /// per line.
    Geodesic {
        p: PathBuf,
        q: PathBuf,
        /// Number of geodesic segments k (emits k+1 samples).
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
        samples: u32,
        #[arg(long, default_value_t = tolerances::ENVELOPE_TOL)]
        tol: f64,
    },
    /// Rescale an SPD envelope onto the unit-determinant submanifold.
    #[command(name = "project-det1")]
    ProjectDet1 {
        input: PathBuf,
        #[arg(long, default_value_t = tolerances::ENVELOPE_TOL)]
        tol: f64,
    },
    /// Project a self-adjoint envelope onto the trace-zero subspace.
    #[command(name = "project-trace0")]
    ProjectTrace0 {
        input: PathBuf,
        #[arg(long, default_value_t = tolerances::ENVELOPE_TOL)]
        tol: f64,
    },
    /// Run the seeded property suite and print a JSON report; exits 1 if
    /// any property fails.
    Check {
        #[arg(long, default_value_t = 5)]
        dim: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "real")]
        field: Field,
        /// Deliberately inject a known defect (available: metric-sign);
        /// the suite must then fail. Smoke test for the suite itself.
        #[arg(long, value_name = "NAME")]
        inject_bug: Option<Mutation>,
    },
}

/// Parse arguments and execute; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

fn read_envelope(path: &Path) -> Result<MatrixEnvelope> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    MatrixEnvelope::from_json(&text)
}

fn execute(command: Command) -> Result<i32> {
    match command {
        Command::Exp { input, tol } => {
            let env = read_envelope(&input)?;
            let out = match env.field {
                Field::Real => cmd_exp::<f64>(&env, tol)?,
                Field::Complex => cmd_exp::<Complex64>(&env, tol)?,
            };
            println!("{}", out.to_json());
            Ok(0)
        }
        Command::Log { input, tol } => {
            let env = read_envelope(&input)?;
            let out = match env.field {
                Field::Real => cmd_log::<f64>(&env, tol)?,
                Field::Complex => cmd_log::<Complex64>(&env, tol)?,
            };
            println!("{}", out.to_json());
            Ok(0)
        }
        Command::Sqrt { input, tol } => {
            let env = read_envelope(&input)?;
            let out = match env.field {
                Field::Real => cmd_sqrt::<f64>(&env, tol)?,
                Field::Complex => cmd_sqrt::<Complex64>(&env, tol)?,
            };
            println!("{}", out.to_json());
            Ok(0)
        }
        Command::Dist { p, q, tol } => {
            let pe = read_envelope(&p)?;
            let qe = read_envelope(&q)?;
            let d = match pe.field {
                Field::Real => cmd_dist::<f64>(&pe, &qe, tol)?,
                Field::Complex => cmd_dist::<Complex64>(&pe, &qe, tol)?,
            };
            println!("{d}");
            Ok(0)
        }
        Command::Geodesic { p, q, samples, tol } => {
            let pe = read_envelope(&p)?;
            let qe = read_envelope(&q)?;
            let lines = match pe.field {
                Field::Real => cmd_geodesic::<f64>(&pe, &qe, samples as usize, tol)?,
                Field::Complex => cmd_geodesic::<Complex64>(&pe, &qe, samples as usize, tol)?,
            };
            for line in lines {
                println!("{}", line.to_json());
            }
            Ok(0)
        }
        Command::ProjectDet1 { input, tol } => {
            let env = read_envelope(&input)?;
            let out = match env.field {
                Field::Real => cmd_project_det1::<f64>(&env, tol)?,
                Field::Complex => cmd_project_det1::<Complex64>(&env, tol)?,
            };
            println!("{}", out.to_json());
            Ok(0)
        }
        Command::ProjectTrace0 { input, tol } => {
            let env = read_envelope(&input)?;
            let out = match env.field {
                Field::Real => cmd_project_trace0::<f64>(&env, tol)?,
                Field::Complex => cmd_project_trace0::<Complex64>(&env, tol)?,
            };
            println!("{}", out.to_json());
            Ok(0)
        }
        Command::Check {
            dim,
            trials,
            seed,
            field,
            inject_bug,
        } => {
            if dim == 0 || trials == 0 {
                return Err(Error::Envelope(
                    "--dim and --trials must be at least 1".to_string(),
                ));
            }
            let cfg = CheckConfig {
                dim,
                trials,
                seed,
                field,
                mutation: inject_bug,
            };
            let report = run_check(&cfg)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serialization cannot fail")
            );
            Ok(if report.all_pass { 0 } else { 1 })
        }
    }
}

fn cmd_exp<S: Scalar>(env: &MatrixEnvelope, tol: f64) -> Result<MatrixEnvelope> {
    let a = env.decode_self_adjoint::<S>(tol)?;
    Ok(MatrixEnvelope::from_spd(&mat_exp(&a)?))
}

fn cmd_log<S: Scalar>(env: &MatrixEnvelope, tol: f64) -> Result<MatrixEnvelope> {
    let p = env.decode_spd::<S>(tol)?;
    Ok(MatrixEnvelope::from_self_adjoint(&mat_log(&p)))
}

fn cmd_sqrt<S: Scalar>(env: &MatrixEnvelope, tol: f64) -> Result<MatrixEnvelope> {
    let p = env.decode_spd::<S>(tol)?;
    Ok(MatrixEnvelope::from_spd(&mat_sqrt(&p)))
}

fn cmd_dist<S: Scalar>(pe: &MatrixEnvelope, qe: &MatrixEnvelope, tol: f64) -> Result<f64> {
    let p = pe.decode_spd::<S>(tol)?;
    let q = qe.decode_spd::<S>(tol)?;
    distance(&p, &q)
}

fn cmd_geodesic<S: Scalar>(
    pe: &MatrixEnvelope,
    qe: &MatrixEnvelope,
    samples: usize,
    tol: f64,
) -> Result<Vec<MatrixEnvelope>> {
    let p = pe.decode_spd::<S>(tol)?;
    let q = qe.decode_spd::<S>(tol)?;
    let v = riem_log(&p, &q)?;
    let g = Geodesic::new(v);
    (0..=samples)
        .map(|i| {
            let t = i as f64 / samples as f64;
            Ok(MatrixEnvelope::from_spd(&g.at(t)?))
        })
        .collect()
}

fn cmd_project_det1<S: Scalar>(env: &MatrixEnvelope, tol: f64) -> Result<MatrixEnvelope> {
    let p = env.decode_spd::<S>(tol)?;
    let unit = project_det1(&p)?;
    Ok(MatrixEnvelope::from_spd::<S>(&unit))
}

fn cmd_project_trace0<S: Scalar>(env: &MatrixEnvelope, tol: f64) -> Result<MatrixEnvelope> {
    let a = env.decode_self_adjoint::<S>(tol)?;
    Ok(MatrixEnvelope::from_self_adjoint(&project_trace0(&a)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_zero_matrix_envelope_is_identity() {
        let env = MatrixEnvelope::from_json(
            r#"{"data":[0.0,0.0,0.0,0.0],"dim":2,"field":"real","kind":"selfadjoint"}"#,
        )
        .unwrap();
        let out = cmd_exp::<f64>(&env, tolerances::ENVELOPE_TOL).unwrap();
        assert_eq!(
            out.to_json(),
            r#"{"data":[1.0,0.0,0.0,1.0],"dim":2,"field":"real","kind":"spd"}"#
        );
    }

    #[test]
    fn dist_of_identical_envelopes_is_zero() {
        let env = MatrixEnvelope::from_json(
            r#"{"data":[2.0,0.0,0.0,3.0],"dim":2,"field":"real","kind":"spd"}"#,
        )
        .unwrap();
        let d = cmd_dist::<f64>(&env, &env, tolerances::ENVELOPE_TOL).unwrap();
        assert_eq!(d, 0.0);
        assert_eq!(format!("{d}"), "0");
    }

    #[test]
    fn geodesic_between_equal_points_repeats_the_input() {
        let env = MatrixEnvelope::from_json(
            r#"{"data":[2.0,0.5,0.5,1.0],"dim":2,"field":"real","kind":"spd"}"#,
        )
        .unwrap();
        let lines = cmd_geodesic::<f64>(&env, &env, 3, tolerances::ENVELOPE_TOL).unwrap();
        assert_eq!(lines.len(), 4);
        for line in &lines {
            assert_eq!(line.to_json(), env.to_json());
        }
    }

    #[test]
    fn project_trace0_of_identity_is_zero_matrix() {
        let env = MatrixEnvelope::from_json(
            r#"{"data":[1.0,0.0,0.0,0.0,1.0,0.0,0.0,0.0,1.0],"dim":3,"field":"real","kind":"selfadjoint"}"#,
        )
        .unwrap();
        let out = cmd_project_trace0::<f64>(&env, tolerances::ENVELOPE_TOL).unwrap();
        assert_eq!(
            out.to_json(),
            r#"{"data":[0.0,0.0,0.0,0.0,0.0,0.0,0.0,0.0,0.0],"dim":3,"field":"real","kind":"selfadjoint"}"#
        );
    }
}
