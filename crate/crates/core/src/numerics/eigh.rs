//! Cyclic Jacobi eigensolver for dense Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary and then applies a real Givens rotation, so the combined 2x2
//! update on columns `(p, q)` is
//!
//! ```text
//! W = [ c          s         ]
//!     [ -s e^{-iφ}  c e^{-iφ} ]      a_pq = |a_pq| e^{iφ}
//! ```
//!
//! and `A <- W† A W`, `V <- V W`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, HermitianMatrix};

/// Off-diagonal Frobenius norm, relative to the matrix norm, at which the
/// sweep loop stops.
pub const JACOBI_THRESHOLD: f64 = 1e-13;
pub const MAX_SWEEPS: usize = 64;

/// Sorted eigenvalues with orthonormal eigenvectors stored as columns.
///
/// Each eigenvector is normalized so that its first component of largest
/// modulus is real and positive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// The `k`-th eigenvector (0-based, ascending energy).
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.eigenvectors.column(k)
    }

    pub fn ground_energy(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// `E_1 - E_0`, or `None` for a one-dimensional space.
    pub fn gap(&self) -> Option<f64> {
        (self.dim() > 1).then(|| self.eigenvalues[1] - self.eigenvalues[0])
    }

    /// `E_max - E_min`.
    pub fn range(&self) -> f64 {
        self.eigenvalues[self.dim() - 1] - self.eigenvalues[0]
    }

    /// `V diag(E) V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = self.dim();
        ComplexMatrix::from_fn(n, |r, c| {
            (0..n)
                .map(|k| v[(r, k)] * v[(c, k)].conj() * self.eigenvalues[k])
                .sum()
        })
    }
}

/// Full eigendecomposition of a Hermitian matrix.
pub fn eigh(h: &HermitianMatrix) -> Result<Spectrum> {
    let mut a = h.symmetrized();
    let n = a.dim();
    let mut v = ComplexMatrix::identity(n);

    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);
    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= JACOBI_THRESHOLD * scale {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::Convergence {
                sweeps,
                off_norm: off,
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|j| a[(j, j)].re).collect();
    order.sort_by(|&x, &y| diag[x].total_cmp(&diag[y]));

    let eigenvalues = order.iter().map(|&j| diag[j]).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n);
    for (k, &j) in order.iter().enumerate() {
        let col = fix_phase(v.column(j));
        for (r, z) in col.into_iter().enumerate() {
            eigenvectors[(r, k)] = z;
        }
    }
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// Eigenvalues only.
pub fn eigvalsh(h: &HermitianMatrix) -> Result<Vec<f64>> {
    eigh(h).map(|s| s.eigenvalues)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                acc += a[(r, c)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let phase = apq / mag;
    let theta = (aqq - app) / (2.0 * mag);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let w_pp = Complex64::new(c, 0.0);
    let w_pq = Complex64::new(s, 0.0);
    let w_qp = -phase.conj() * s;
    let w_qq = phase.conj() * c;

    let n = a.dim();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * w_pp + akq * w_qp;
        a[(k, q)] = akp * w_pq + akq * w_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = w_pp.conj() * apk + w_qp.conj() * aqk;
        a[(q, k)] = w_pq.conj() * apk + w_qq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(app - t * mag, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * mag, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * w_pp + vkq * w_qp;
        v[(k, q)] = vkp * w_pq + vkq * w_qq;
    }
}

fn fix_phase(mut col: Vec<Complex64>) -> Vec<Complex64> {
    let mut best = 0;
    let mut best_mod = -1.0;
    for (j, z) in col.iter().enumerate() {
        let m = z.norm();
        if m > best_mod {
            best_mod = m;
            best = j;
        }
    }
    if best_mod > 0.0 {
        let rot = col[best].conj() / best_mod;
        for z in &mut col {
            *z *= rot;
        }
        col[best] = Complex64::new(col[best].norm(), 0.0);
    }
    col
}
