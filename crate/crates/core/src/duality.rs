//! Moduli sweeps and duality certificates.
//!
//! At fixed `beta` the phase `delta` is invisible to the classical theory
//! (for `beta = 1` the shift `q -> q + delta` is canonical and maps
//! trajectories onto trajectories) but in general changes the quantum
//! spectrum. A pair of moduli points that is classically equivalent yet
//! spectrally distinct is certified as a duality.

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classical::{flow, ClassicalState};
use crate::error::{domain, Error, Result};
use crate::moduli::{angular_distance, ModuliPoint};
use crate::numerics::eigvalsh;
use crate::operators::build_hamiltonian;

/// Elementwise tolerance on sorted spectra.
pub const SPECTRAL_EQUALITY_TOL: f64 = 1e-9;
/// Pointwise tolerance of [`classical_equivalence_check`].
pub const TRAJECTORY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub beta: f64,
    pub delta: f64,
    pub n: usize,
    pub eigenvalues: Vec<f64>,
    #[serde(rename = "E0")]
    pub vacuum_energy: f64,
    pub gap: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub rows: Vec<ScanRow>,
}

impl ScanReport {
    /// CSV `beta,delta,n,E0,gap,E_1..E_n` preceded by a `#` comment line
    /// describing the variable-width tail.
    pub fn to_csv(&self) -> String {
        let width = self.rows.iter().map(|r| r.n).max().unwrap_or(0);
        let mut out = format!(
            "# beta,delta,n,E0,gap then E_1..E_n ascending ({width} eigenvalue columns); gap empty when n = 1\n"
        );
        out.push_str("beta,delta,n,E0,gap");
        for k in 1..=width {
            out.push_str(&format!(",E_{k}"));
        }
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{},", r.beta, r.delta, r.n, r.vacuum_energy));
            if let Some(g) = r.gap {
                out.push_str(&g.to_string());
            }
            for e in &r.eigenvalues {
                out.push_str(&format!(",{e}"));
            }
            out.push('\n');
        }
        out
    }
}

/// `steps` equally spaced angles `2πk/steps` covering `[0, 2π)`.
pub fn delta_grid(steps: usize) -> Vec<f64> {
    (0..steps).map(|k| TAU * k as f64 / steps as f64).collect()
}

/// Sorted spectrum of the Hamiltonian at `m`.
pub fn spectrum_of(m: &ModuliPoint) -> Result<Vec<f64>> {
    eigvalsh(&build_hamiltonian(m))
}

/// One row per `delta`, computed concurrently and returned in input order.
/// The first failing `delta` (in input order) aborts the scan.
pub fn moduli_scan(beta: f64, deltas: &[f64], dim_override: Option<usize>) -> Result<ScanReport> {
    if deltas.is_empty() {
        return Err(domain("moduli scan needs at least one delta"));
    }
    let rows = deltas
        .par_iter()
        .map(|&delta| {
            scan_row(beta, delta, dim_override).map_err(|e| Error::Scan {
                delta,
                source: Box::new(e),
            })
        })
        .collect::<Vec<_>>();
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(ScanReport { rows })
}

fn scan_row(beta: f64, delta: f64, dim_override: Option<usize>) -> Result<ScanRow> {
    let m = ModuliPoint::new(beta, delta, dim_override)?;
    let eigenvalues = spectrum_of(&m)?;
    Ok(ScanRow {
        beta: m.beta(),
        delta: m.delta(),
        n: eigenvalues.len(),
        vacuum_energy: eigenvalues[0],
        gap: (eigenvalues.len() > 1).then(|| eigenvalues[1] - eigenvalues[0]),
        eigenvalues,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualityCertificate {
    pub first: ModuliPoint,
    pub second: ModuliPoint,
    pub first_spectrum: Vec<f64>,
    pub second_spectrum: Vec<f64>,
    /// `max_k |E_k - E'_k|`; infinite when the dimensions differ.
    #[serde(with = "finite_or_null")]
    pub max_spectral_difference: f64,
    pub classically_canonical: bool,
    pub spectra_equal: bool,
    pub is_duality: bool,
}

/// Classically canonical: equal `beta` and equal Hilbert dimension, so the
/// symplectic forms agree and the points differ by a shift in `delta`.
pub fn duality_certificate(m1: &ModuliPoint, m2: &ModuliPoint) -> Result<DualityCertificate> {
    let s1 = spectrum_of(m1)?;
    let s2 = spectrum_of(m2)?;
    let classically_canonical = m1.beta() == m2.beta() && m1.hilbert_dim() == m2.hilbert_dim();
    let max_spectral_difference = if s1.len() == s2.len() {
        s1.iter()
            .zip(&s2)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    let spectra_equal = max_spectral_difference <= SPECTRAL_EQUALITY_TOL;
    Ok(DualityCertificate {
        first: *m1,
        second: *m2,
        first_spectrum: s1,
        second_spectrum: s2,
        max_spectral_difference,
        classically_canonical,
        spectra_equal,
        is_duality: classically_canonical && !spectra_equal,
    })
}

/// Whether the `delta_2` flow is the `delta_1` flow shifted by
/// `delta_1 - delta_2` in `q`, pointwise to [`TRAJECTORY_TOL`].
///
/// Only defined for `beta = 1` on both sides, where the shift is canonical.
pub fn classical_equivalence_check(
    m1: &ModuliPoint,
    m2: &ModuliPoint,
    s0: &ClassicalState,
    t_total: f64,
    dt: f64,
) -> Result<bool> {
    for m in [m1, m2] {
        if m.beta() != 1.0 {
            return Err(domain(format!(
                "classical equivalence is defined for beta = 1, got beta = {}",
                m.beta()
            )));
        }
    }
    let shift = m1.delta() - m2.delta();
    let a = flow(s0, m1, t_total, dt)?;
    let b = flow(&s0.shifted(shift), m2, t_total, dt)?;
    Ok(a.samples.iter().zip(&b.samples).all(|(x, y)| {
        angular_distance(y.q - shift, x.q) <= TRAJECTORY_TOL
            && angular_distance(y.p, x.p) <= TRAJECTORY_TOL
    }))
}

mod finite_or_null {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn point(beta: f64, delta: f64, dim: Option<usize>) -> ModuliPoint {
        ModuliPoint::new(beta, delta, dim).unwrap()
    }

    #[test]
    fn scan_examples() {
        let r = moduli_scan(1.0, &[0.0, PI / 2.0, PI], Some(1)).unwrap();
        let e0: Vec<f64> = r.rows.iter().map(|r| r.vacuum_energy).collect();
        assert!((e0[0] + 1.0).abs() < 1e-15 && e0[1].abs() < 1e-15 && (e0[2] - 1.0).abs() < 1e-15);

        let r = moduli_scan(4.0, &[0.0, PI / 2.0], None).unwrap();
        for (row, want) in r.rows.iter().zip([[-2.0, -1.0, -1.0, 0.0], [-1.0, 0.0, 0.0, 1.0]]) {
            for (e, w) in row.eigenvalues.iter().zip(want) {
                assert!((e - w).abs() < 1e-9);
            }
        }

        let r = moduli_scan(4.0, &[0.3, 0.3 + TAU], None).unwrap();
        for (a, b) in r.rows[0].eigenvalues.iter().zip(&r.rows[1].eigenvalues) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn scan_reports_offending_delta() {
        let err = moduli_scan(2.0, &[0.0, f64::NAN], None).unwrap_err();
        assert!(matches!(err, Error::Scan { delta, .. } if delta.is_nan()));
        assert!(moduli_scan(2.0, &[], None).is_err());
        let err = moduli_scan(0.5, &[0.1], None).unwrap_err();
        assert!(matches!(err, Error::Scan { delta, .. } if delta == 0.1));
    }

    #[test]
    fn certificate_examples() {
        let c = duality_certificate(&point(1.0, 0.0, Some(1)), &point(1.0, PI / 2.0, Some(1))).unwrap();
        assert!(c.classically_canonical && !c.spectra_equal && c.is_duality);

        let m = point(2.7, 1.3, None);
        let c = duality_certificate(&m, &m).unwrap();
        assert!(c.classically_canonical && c.spectra_equal && !c.is_duality);

        let c = duality_certificate(&point(4.0, 0.0, None), &point(4.0, TAU, None)).unwrap();
        assert!(c.spectra_equal && !c.is_duality);

        let c = duality_certificate(&point(4.0, 0.0, None), &point(5.0, 0.0, None)).unwrap();
        assert!(!c.classically_canonical && !c.is_duality);
        assert!(c.max_spectral_difference.is_infinite());
    }

    #[test]
    fn classical_check_examples() {
        let s0 = ClassicalState::new(0.5, 0.2);
        let a = point(1.0, 0.0, None);
        let b = point(1.0, 1.0, None);
        assert!(classical_equivalence_check(&a, &b, &s0, 5.0, 1e-3).unwrap());
        assert!(classical_equivalence_check(&a, &a, &s0, 5.0, 1e-3).unwrap());
        let c = point(2.0, 0.0, None);
        assert!(matches!(
            classical_equivalence_check(&c, &c, &s0, 1.0, 1e-3),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn delta_grid_spacing() {
        let g = delta_grid(64);
        assert_eq!(g.len(), 64);
        assert_eq!(g[0], 0.0);
        assert!(g[63] < TAU);
    }
}
