//! Vacuum analysis: ground-state gap and localization, the 3x3 corner block
//! around the potential minimum, and how far the characteristic polynomial
//! is from factorizing across that block.
//!
//! The reordered basis is `(|q_n>, |q_1>, |q_2>, ..., |q_{n-1}>)`, which puts
//! every matrix element touching `|q_1>` into the upper-left 3x3 corner.
//! The only couplings between the corner and the rest are the four entries
//! of the boxes `B`, `B†`: `<q_{n-1}|H|q_n>` and `<q_3|H|q_2>` and their
//! conjugates.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::matrix::{ComplexMatrix, HermitianMatrix};
use crate::moduli::ModuliPoint;
use crate::numerics::{charpoly_oracle, eigh, eigvalsh, Polynomial, Spectrum};
use crate::operators::{build_hamiltonian, build_potential};

/// Relative gap below which two levels count as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Absolute tolerance for equal diagonal entries in kinetic-off pairing.
const DIAGONAL_TIE_TOL: f64 = 1e-12;

fn degeneracy_threshold(range: f64) -> f64 {
    DEGENERACY_TOL * range.max(1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VacuumReport {
    pub n: usize,
    pub vacuum_energy: f64,
    /// `E_1 - E_0`; absent in one dimension.
    pub gap: Option<f64>,
    pub spectral_range: f64,
    pub nondegenerate: bool,
    /// Components `c_j` of the vacuum in the position basis, as `[re, im]`.
    #[serde(with = "complex_pairs")]
    pub vacuum_vector: Vec<Complex64>,
    /// 1-based `j` maximizing `|c_j|`.
    pub localization_index: usize,
}

pub fn vacuum_report(m: &ModuliPoint) -> Result<VacuumReport> {
    let spectrum = eigh(&build_hamiltonian(m))?;
    Ok(report_from_spectrum(&spectrum))
}

pub(crate) fn report_from_spectrum(s: &Spectrum) -> VacuumReport {
    let gap = s.gap();
    let range = s.range();
    let vacuum_vector = s.vector(0);
    let localization_index = vacuum_vector
        .iter()
        .enumerate()
        .fold((0, -1.0), |(bj, bm), (j, z)| {
            if z.norm() > bm {
                (j, z.norm())
            } else {
                (bj, bm)
            }
        })
        .0
        + 1;
    VacuumReport {
        n: s.dim(),
        vacuum_energy: s.ground_energy(),
        gap,
        spectral_range: range,
        nondegenerate: gap.map_or(true, |g| g > degeneracy_threshold(range)),
        vacuum_vector,
        localization_index,
    }
}

/// 0-based basis order `(n, 1, 2, ..., n-1)` in 1-based labels.
pub fn vacuum_ordering(n: usize) -> Vec<usize> {
    std::iter::once(n - 1).chain(0..n - 1).collect()
}

/// Hamiltonian in the vacuum-adapted ordering.
pub fn reordered_hamiltonian(m: &ModuliPoint) -> HermitianMatrix {
    let h = build_hamiltonian(m);
    let n = h.dim();
    HermitianMatrix::new(h.as_matrix().permuted(&vacuum_ordering(n)))
        .expect("permutation preserves hermiticity")
}

/// The upper-left 3x3 block of the reordered Hamiltonian:
///
/// ```text
/// [ -cos θ_n   -i/2       0       ]
/// [  i/2       -cos θ_1  -i/2     ]
/// [  0          i/2      -cos θ_2 ]
/// ```
pub fn corner_submatrix(m: &ModuliPoint) -> Result<HermitianMatrix> {
    let n = m.hilbert_dim();
    if n < 4 {
        return Err(domain(format!(
            "corner block needs n >= 4 to be a proper submatrix, got n = {n}"
        )));
    }
    let theta = m.potential_phases();
    let h = |re: f64, im: f64| Complex64::new(re, im);
    let rows = vec![
        vec![h(-theta[n - 1].cos(), 0.0), h(0.0, -0.5), h(0.0, 0.0)],
        vec![h(0.0, 0.5), h(-theta[0].cos(), 0.0), h(0.0, -0.5)],
        vec![h(0.0, 0.0), h(0.0, 0.5), h(-theta[1].cos(), 0.0)],
    ];
    HermitianMatrix::new(ComplexMatrix::from_rows(rows)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorizationReport {
    pub n: usize,
    /// Whether `B`, `B†` were zeroed before computing `s_n`.
    pub boxes_zeroed: bool,
    /// `max |coeff(s_n) - coeff(s_3 s_{n-3})| / max(1, max |coeff(s_n)|)`.
    pub defect: f64,
    /// Lowest eigenvalue of the corner block.
    pub corner_energy: f64,
    /// Vacuum energy of the full Hamiltonian.
    pub vacuum_energy: f64,
    pub corner_vs_full: f64,
}

/// Minimum dimension for [`factorization_defect`].
pub const MIN_FACTORIZATION_DIM: usize = 7;

/// How far `s_n` is from `s_3 * s_{n-3}`, with the corner boxes in place.
pub fn factorization_defect(m: &ModuliPoint) -> Result<FactorizationReport> {
    factorize(m, false)
}

/// Same, with `B` and `B†` zeroed; the defect then only measures rounding.
pub fn factorization_defect_without_boxes(m: &ModuliPoint) -> Result<FactorizationReport> {
    factorize(m, true)
}

fn factorize(m: &ModuliPoint, zero_boxes: bool) -> Result<FactorizationReport> {
    let n = m.hilbert_dim();
    if n < MIN_FACTORIZATION_DIM {
        return Err(domain(format!(
            "factorization study needs n >= {MIN_FACTORIZATION_DIM}, got n = {n}"
        )));
    }
    let reordered = reordered_hamiltonian(m);
    let mut full = reordered.as_matrix().clone();
    if zero_boxes {
        for r in 0..3 {
            for c in 3..n {
                full[(r, c)] = Complex64::new(0.0, 0.0);
                full[(c, r)] = Complex64::new(0.0, 0.0);
            }
        }
    }
    let corner_idx = [0, 1, 2];
    let rest_idx: Vec<usize> = (3..n).collect();
    let corner = full.submatrix(&corner_idx);
    let rest = full.submatrix(&rest_idx);

    let s_n = charpoly_oracle(&full)?;
    let s_3 = charpoly_oracle(&corner)?;
    let s_rest = charpoly_oracle(&rest)?;
    let product = s_3.mul(&s_rest);
    let defect = s_n.max_coeff_diff(&product) / s_n.max_abs_coeff().max(1.0);

    let corner_energy = eigvalsh(&HermitianMatrix::new(corner)?)?[0];
    let vacuum_energy = eigvalsh(&reordered)?[0];
    Ok(FactorizationReport {
        n,
        boxes_zeroed: zero_boxes,
        defect,
        corner_energy,
        vacuum_energy,
        corner_vs_full: (corner_energy - vacuum_energy).abs(),
    })
}

/// Factorization reports for several dimensions at fixed `(beta, delta)`,
/// computed concurrently and returned in ascending `n`.
pub fn factorization_study(beta: f64, delta: f64, dims: &[usize]) -> Result<Vec<FactorizationReport>> {
    let mut dims = dims.to_vec();
    dims.sort_unstable();
    dims.dedup();
    dims.par_iter()
        .map(|&n| factorization_defect(&ModuliPoint::new(beta, delta, Some(n))?))
        .collect()
}

/// Characteristic polynomials `(s_n, s_3, s_{n-3})` behind a factorization
/// report, for callers that want the coefficients themselves.
pub fn factorization_polynomials(m: &ModuliPoint) -> Result<(Polynomial, Polynomial, Polynomial)> {
    let n = m.hilbert_dim();
    if n < MIN_FACTORIZATION_DIM {
        return Err(domain(format!(
            "factorization study needs n >= {MIN_FACTORIZATION_DIM}, got n = {n}"
        )));
    }
    let full = reordered_hamiltonian(m).into_matrix();
    let rest_idx: Vec<usize> = (3..n).collect();
    Ok((
        charpoly_oracle(&full)?,
        charpoly_oracle(&full.submatrix(&[0, 1, 2]))?,
        charpoly_oracle(&full.submatrix(&rest_idx))?,
    ))
}

/// Degenerate pairs and singletons.
///
/// With the kinetic term off the labels are basis states `|q_j>` (1-based)
/// and pairs are equal diagonal entries. With it on the labels are energy
/// levels (1-based, ascending) and pairs are coincident eigenvalues.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairingReport {
    pub n: usize,
    pub kinetic_off: bool,
    pub energies: Vec<f64>,
    pub pairs: Vec<(usize, usize)>,
    pub singletons: Vec<usize>,
    /// Labels in clusters larger than two, if any.
    pub higher_multiplets: Vec<Vec<usize>>,
}

pub fn degeneracy_pairing(m: &ModuliPoint, kinetic_off: bool) -> Result<PairingReport> {
    if m.delta() != 0.0 {
        return Err(domain(format!(
            "degeneracy pairing needs the reflection-symmetric potential (delta = 0), got delta = {}",
            m.delta()
        )));
    }
    let n = m.hilbert_dim();
    let (energies, clusters) = if kinetic_off {
        let diag = build_potential(m).real_diagonal();
        let mut clusters: Vec<Vec<usize>> = Vec::new();
        for j in 0..n {
            match clusters
                .iter_mut()
                .find(|c| (diag[c[0]] - diag[j]).abs() <= DIAGONAL_TIE_TOL)
            {
                Some(c) => c.push(j),
                None => clusters.push(vec![j]),
            }
        }
        (diag, clusters)
    } else {
        let e = eigvalsh(&build_hamiltonian(m))?;
        let tol = degeneracy_threshold(e[n - 1] - e[0]);
        let mut clusters: Vec<Vec<usize>> = Vec::new();
        for k in 0..n {
            match clusters.last_mut() {
                Some(c) if e[k] - e[*c.last().unwrap()] <= tol => c.push(k),
                _ => clusters.push(vec![k]),
            }
        }
        (e, clusters)
    };

    let mut pairs = Vec::new();
    let mut singletons = Vec::new();
    let mut higher_multiplets = Vec::new();
    for c in clusters {
        let labels: Vec<usize> = c.iter().map(|j| j + 1).collect();
        match labels.len() {
            1 => singletons.push(labels[0]),
            2 => pairs.push((labels[0], labels[1])),
            _ => higher_multiplets.push(labels),
        }
    }
    pairs.sort_unstable();
    singletons.sort_unstable();
    Ok(PairingReport {
        n,
        kinetic_off,
        energies,
        pairs,
        singletons,
        higher_multiplets,
    })
}

pub(crate) mod complex_pairs {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(d)?;
        Ok(pairs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
    }
}
