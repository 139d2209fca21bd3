//! `torusq` command-line front end: parse, dispatch to `torusq-core`, write
//! one CSV or JSON document.

pub mod config;
pub mod report;

use std::fs;
use std::io::Write;

use torusq_core::{
    build_hamiltonian, charpoly_closed, classical_equivalence_check, degeneracy_pairing,
    delta_grid, duality_certificate, eigh, factorization_study, flow, limit_energies,
    moduli_scan, vacuum_report, verify_charpoly, verify_charpoly_matching, ClassicalState,
    ComplexMatrix, Error, ModuliPoint,
};

pub use config::{parse_args, Command, Format, RunConfig};
use report::*;

/// Initial state and horizon of the trajectory comparison inside `certify`.
const CERTIFY_STATE: (f64, f64) = (0.5, 0.2);
const CERTIFY_T: f64 = 10.0;
const CERTIFY_DT: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Malformed input; exit 2.
    Usage(String),
    /// A computation failed; exit 1.
    Compute(String),
    /// `--help` / `--version`: print and exit 0.
    Info(String),
}

impl CliError {
    pub(crate) fn from_clap(e: clap::Error) -> Self {
        use clap::error::ErrorKind;
        match e.kind() {
            ErrorKind::DisplayHelp
            | ErrorKind::DisplayVersion
            | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => CliError::Info(e.to_string()),
            _ => {
                let text = e.to_string();
                let line = text.lines().next().unwrap_or("invalid arguments");
                CliError::Usage(line.trim_start_matches("error: ").to_string())
            }
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Info(_) => 0,
            CliError::Compute(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(msg) => CliError::Usage(msg),
            Error::Scan { ref source, .. } if matches!(**source, Error::Domain(_)) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Compute(e.to_string()),
        }
    }
}

/// Rendered output plus the exit status it should end with.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub output: String,
    /// 0, or 1 when the report was produced but records a failure.
    pub status: i32,
    pub diagnostic: Option<String>,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome {
            output,
            status: 0,
            diagnostic: None,
        }
    }
}

fn point(c: &RunConfig) -> ModuliPoint {
    c.moduli.expect("moduli validated for this command")
}

/// Compute the report for `c` without touching the filesystem.
pub fn render(c: &RunConfig) -> Result<Outcome, CliError> {
    let name = c.command.name();
    let json = c.format == Format::Json;
    match &c.command {
        Command::Spectrum => {
            let m = point(c);
            let h = build_hamiltonian(&m);
            let s = eigh(&h)?;
            let tau = m.modular_parameter();
            let body = SpectrumBody {
                hilbert_dim: m.hilbert_dim(),
                symplectic_volume: m.symplectic_volume(),
                modular_parameter: [tau.re, tau.im],
                picard: m.picard_label(),
                eigenvalues: s.eigenvalues,
                eigenvectors: s.eigenvectors,
                hamiltonian: ComplexMatrix::from(h),
            };
            Ok(Outcome::ok(if json {
                to_json(name, Some(m), body)
            } else {
                spectrum_csv(&body)
            }))
        }
        Command::Charpoly { check, strict } => {
            let m = point(c);
            let (verification, matching) = if *check {
                (Some(verify_charpoly(&m)?), Some(verify_charpoly_matching(&m)?))
            } else {
                (None, None)
            };
            let body = CharpolyBody {
                n: m.hilbert_dim(),
                closed: charpoly_closed(&m),
                verification,
                matching,
            };
            let mut out = Outcome::ok(if json {
                to_json(name, Some(m), &body)
            } else {
                charpoly_csv(&body)
            });
            if let Some(v) = &body.verification {
                if !v.pass {
                    let msg = format!(
                        "closed form differs from the oracle at n = {}: max coefficient difference {:e} > {:e}",
                        v.n, v.max_coeff_diff, v.threshold
                    );
                    if *strict {
                        out.status = 1;
                    }
                    out.diagnostic = Some(msg);
                }
            }
            Ok(out)
        }
        Command::Vacuum { kinetic_off } => {
            let m = point(c);
            if *kinetic_off && m.delta() != 0.0 {
                return Err(CliError::Usage("--kinetic-off needs --delta 0".into()));
            }
            let vacuum = vacuum_report(&m)?;
            let pairing = if m.delta() == 0.0 {
                Some(degeneracy_pairing(&m, *kinetic_off)?)
            } else {
                None
            };
            let body = VacuumBody { vacuum, pairing };
            Ok(Outcome::ok(match (json, *kinetic_off) {
                (true, _) => to_json(name, Some(m), body),
                (false, true) => pairing_csv(body.pairing.as_ref().expect("delta is zero")),
                (false, false) => vacuum_csv(&m, &body),
            }))
        }
        Command::Factorize { dims } => {
            let m = point(c);
            let body = FactorizeBody {
                reports: factorization_study(m.beta(), m.delta(), dims)?,
            };
            Ok(Outcome::ok(if json {
                to_json(name, Some(m), body)
            } else {
                factorize_csv(&body)
            }))
        }
        Command::Classical { q0, p0, t, dt } => {
            let m = point(c);
            let trajectory = flow(&ClassicalState::new(*q0, *p0), &m, *t, *dt)?;
            if json {
                let body = ClassicalBody {
                    q0: *q0,
                    p0: *p0,
                    t: *t,
                    energy_drift: trajectory.energy_drift(),
                    trajectory,
                };
                Ok(Outcome::ok(to_json(name, Some(m), body)))
            } else {
                Ok(Outcome::ok(trajectory.to_csv()))
            }
        }
        Command::Limits { q0, p0 } => {
            let s = ClassicalState::new(*q0, *p0);
            let energies = limit_energies(&s);
            let body = LimitsBody {
                q: s.q(),
                p: s.p(),
                energies,
                offset: energies.offset(),
                max_pairwise_difference: energies.max_pairwise_difference(),
            };
            Ok(Outcome::ok(if json {
                to_json(name, None, body)
            } else {
                limits_csv(&body)
            }))
        }
        Command::Scan { delta_steps } => {
            let m = point(c);
            let r = moduli_scan(m.beta(), &delta_grid(*delta_steps), m.dim_override())?;
            Ok(Outcome::ok(if json {
                to_json(name, Some(m), r)
            } else {
                scan_csv(&r)
            }))
        }
        Command::Certify { second } => {
            let m = point(c);
            let certificate = duality_certificate(&m, second)?;
            let classical_equivalence = if m.beta() == 1.0 && second.beta() == 1.0 {
                let s0 = ClassicalState::new(CERTIFY_STATE.0, CERTIFY_STATE.1);
                Some(classical_equivalence_check(&m, second, &s0, CERTIFY_T, CERTIFY_DT)?)
            } else {
                None
            };
            let body = CertifyBody {
                certificate,
                classical_equivalence,
            };
            Ok(Outcome::ok(if json {
                to_json(name, Some(m), body)
            } else {
                certify_csv(&body)
            }))
        }
    }
}

/// Full invocation: parse, compute, write; returns the process exit code.
pub fn execute<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let result = parse_args(argv).and_then(|c| render(&c).map(|o| (c, o)));
    let (config, outcome) = match result {
        Ok(x) => x,
        Err(CliError::Info(text)) => {
            print!("{text}");
            return 0;
        }
        Err(e) => {
            let (kind, msg) = match &e {
                CliError::Usage(m) => ("usage error", m),
                CliError::Compute(m) => ("error", m),
                CliError::Info(_) => unreachable!(),
            };
            eprintln!("torusq: {kind}: {msg}");
            return e.exit_code();
        }
    };
    if let Some(d) = &outcome.diagnostic {
        eprintln!("torusq: {d}");
    }
    let written = match &config.output {
        Some(path) => fs::write(path, &outcome.output)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout()
            .lock()
            .write_all(outcome.output.as_bytes())
            .map_err(|e| format!("cannot write to stdout: {e}")),
    };
    if let Err(msg) = written {
        eprintln!("torusq: error: {msg}");
        return 1;
    }
    outcome.status
}
