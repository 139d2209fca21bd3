//! JSON bodies and CSV renderings of each command's output.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use torusq_core::{
    ComplexMatrix, DualityCertificate, FactorizationReport, LimitEnergies, ModuliPoint,
    PairingReport, PicardLabel, Polynomial, ScanReport, Trajectory, VacuumReport,
    VerificationReport,
};

pub const SCHEMA_VERSION: u32 = 1;

/// Every JSON document the CLI writes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema_version: u32,
    pub command: String,
    /// Absent for `limits`.
    pub moduli: Option<ModuliPoint>,
    pub report: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumBody {
    pub hilbert_dim: usize,
    pub symplectic_volume: f64,
    /// `beta e^{i delta}` as `[re, im]`.
    pub modular_parameter: [f64; 2],
    pub picard: PicardLabel,
    pub eigenvalues: Vec<f64>,
    /// Eigenvectors as columns.
    pub eigenvectors: ComplexMatrix,
    pub hamiltonian: ComplexMatrix,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharpolyBody {
    pub n: usize,
    pub closed: Polynomial,
    /// Closed form against the oracle, with `--check`.
    pub verification: Option<VerificationReport>,
    /// Perfect-matching expansion against the oracle, with `--check`.
    pub matching: Option<VerificationReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VacuumBody {
    pub vacuum: VacuumReport,
    /// Present when `delta = 0`.
    pub pairing: Option<PairingReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorizeBody {
    pub reports: Vec<FactorizationReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassicalBody {
    pub q0: f64,
    pub p0: f64,
    pub t: f64,
    pub energy_drift: f64,
    pub trajectory: Trajectory,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitsBody {
    pub q: f64,
    pub p: f64,
    pub energies: LimitEnergies,
    /// Energies shifted to vanish at the origin.
    pub offset: [f64; 3],
    pub max_pairwise_difference: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertifyBody {
    pub certificate: DualityCertificate,
    /// Trajectory comparison, only when both points have `beta = 1`.
    pub classical_equivalence: Option<bool>,
}

pub fn to_json<T: Serialize>(command: &str, moduli: Option<ModuliPoint>, report: T) -> String {
    let env = Envelope {
        schema_version: SCHEMA_VERSION,
        command: command.to_string(),
        moduli,
        report,
    };
    let mut s = serde_json::to_string_pretty(&env).expect("reports serialize");
    s.push('\n');
    s
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn spectrum_csv(b: &SpectrumBody) -> String {
    let mut out = String::from("k,E\n");
    for (k, e) in b.eigenvalues.iter().enumerate() {
        writeln!(out, "{k},{e}").unwrap();
    }
    out
}

pub fn charpoly_csv(b: &CharpolyBody) -> String {
    let mut out = String::from("k,closed");
    if b.verification.is_some() {
        out.push_str(",oracle,matching");
    }
    out.push('\n');
    for k in 0..=b.n {
        write!(out, "{k},{}", b.closed.coeff(k)).unwrap();
        if let (Some(v), Some(m)) = (&b.verification, &b.matching) {
            write!(out, ",{},{}", v.oracle.coeff(k), m.closed.coeff(k)).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn vacuum_csv(m: &ModuliPoint, b: &VacuumBody) -> String {
    let v = &b.vacuum;
    let mut out =
        String::from("beta,delta,n,E0,gap,spectral_range,nondegenerate,localization_index\n");
    writeln!(
        out,
        "{},{},{},{},{},{},{},{}",
        m.beta(),
        m.delta(),
        v.n,
        v.vacuum_energy,
        opt(v.gap),
        v.spectral_range,
        v.nondegenerate,
        v.localization_index
    )
    .unwrap();
    out
}

/// One row per cluster: `kind,labels,energy`, labels separated by `;`.
pub fn pairing_csv(p: &PairingReport) -> String {
    let mut out = String::from("kind,labels,energy\n");
    let energy = |label: usize| p.energies[label - 1];
    for &(a, b) in &p.pairs {
        writeln!(out, "pair,{a};{b},{}", energy(a)).unwrap();
    }
    for &s in &p.singletons {
        writeln!(out, "singleton,{s},{}", energy(s)).unwrap();
    }
    for cluster in &p.higher_multiplets {
        let labels: Vec<String> = cluster.iter().map(|l| l.to_string()).collect();
        writeln!(out, "multiplet,{},{}", labels.join(";"), energy(cluster[0])).unwrap();
    }
    out
}

pub fn factorize_csv(b: &FactorizeBody) -> String {
    let mut out = String::from("n,boxes_zeroed,defect,corner_E0,E0,corner_vs_full\n");
    for r in &b.reports {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.n, r.boxes_zeroed, r.defect, r.corner_energy, r.vacuum_energy, r.corner_vs_full
        )
        .unwrap();
    }
    out
}

pub fn limits_csv(b: &LimitsBody) -> String {
    let e = &b.energies;
    format!(
        "q,p,H,H_SG,H_2,max_offset_difference\n{},{},{},{},{},{}\n",
        b.q, b.p, e.full, e.sine_gordon, e.harmonic, b.max_pairwise_difference
    )
}

pub fn certify_csv(b: &CertifyBody) -> String {
    let c = &b.certificate;
    let diff = if c.max_spectral_difference.is_finite() {
        c.max_spectral_difference.to_string()
    } else {
        String::new()
    };
    let mut out = String::from(
        "beta1,delta1,n1,beta2,delta2,n2,max_spectral_difference,classically_canonical,spectra_equal,is_duality,classical_equivalence\n",
    );
    writeln!(
        out,
        "{},{},{},{},{},{},{},{},{},{},{}",
        c.first.beta(),
        c.first.delta(),
        c.first.hilbert_dim(),
        c.second.beta(),
        c.second.delta(),
        c.second.hilbert_dim(),
        diff,
        c.classically_canonical,
        c.spectra_equal,
        c.is_duality,
        b.classical_equivalence.map(|x| x.to_string()).unwrap_or_default()
    )
    .unwrap();
    out
}

pub fn scan_csv(r: &ScanReport) -> String {
    r.to_csv()
}
