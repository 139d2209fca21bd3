//! Position, shift and momentum operators on `C^n`, and the quantum
//! Hamiltonian `H = -(U + U†)/2 - cos(beta Q + delta)`.
//!
//! Basis vectors `e_j` (0-based here) stand for the position eigenstates
//! `|q_{j+1}>`. Indices wrap: `|q_{n+1}> = |q_1>`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::matrix::{ComplexMatrix, HermitianMatrix};
use crate::moduli::{position_grid, ModuliPoint};

const I: Complex64 = Complex64::new(0.0, 1.0);
const HALF_I: Complex64 = Complex64::new(0.0, 0.5);

fn hermitian(m: ComplexMatrix) -> HermitianMatrix {
    HermitianMatrix::new(m).expect("operator is Hermitian by construction")
}

/// `Q = diag(q_1, ..., q_n)` for an explicit dimension.
pub fn position_operator_n(n: usize) -> Result<HermitianMatrix> {
    let grid = position_grid(n)?;
    Ok(hermitian(ComplexMatrix::from_real_diagonal(grid.points())))
}

/// Position operator on the Hilbert space of `m`.
pub fn position_operator(m: &ModuliPoint) -> HermitianMatrix {
    position_operator_n(m.hilbert_dim()).expect("hilbert_dim is at least 1")
}

/// `U e_j = -i e_{j+1}`, cyclically.
pub fn shift_operator(n: usize) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(domain("shift operator needs n >= 1"));
    }
    let mut u = ComplexMatrix::zeros(n);
    for j in 0..n {
        u[((j + 1) % n, j)] = -I;
    }
    Ok(u)
}

/// Eigenphases of `U`, principal branch in `(-π, π]`, in Fourier order
/// `k = 0..n`: `wrap(2πk/n - π/2)`.
///
/// The branch is chosen in integer arithmetic so that phases landing on
/// `π` are never flipped to `-π` by rounding.
pub fn shift_eigenphases(n: usize) -> Vec<f64> {
    let n_i = n as i64;
    (0..n_i)
        .map(|k| {
            // phase = π (4k - n) / (2n), reduced to (-2n, 2n]
            let mut r = 4 * k - n_i;
            if r > 2 * n_i {
                r -= 4 * n_i;
            }
            if r <= -2 * n_i {
                r += 4 * n_i;
            }
            PI * r as f64 / (2 * n_i) as f64
        })
        .collect()
}

/// Normalized Fourier eigenvector of the cyclic shift: `v_k[j] = e^{-2πi jk/n}/√n`.
pub fn shift_eigenvector(n: usize, k: usize) -> Vec<Complex64> {
    let norm = 1.0 / (n as f64).sqrt();
    (0..n)
        .map(|j| {
            let angle = -2.0 * PI * ((j * k) % n) as f64 / n as f64;
            Complex64::from_polar(norm, angle)
        })
        .collect()
}

/// `P = -i log U`, principal branch.
///
/// `U` is `-i` times the cyclic shift, so it is diagonalized exactly by the
/// discrete Fourier basis; the logarithm is taken eigenvalue by eigenvalue.
pub fn momentum_operator(n: usize) -> Result<HermitianMatrix> {
    if n == 0 {
        return Err(domain("momentum operator needs n >= 1"));
    }
    let phases = shift_eigenphases(n);
    let vectors: Vec<Vec<Complex64>> = (0..n).map(|k| shift_eigenvector(n, k)).collect();
    let p = ComplexMatrix::from_fn(n, |r, c| {
        (0..n)
            .map(|k| vectors[k][r] * vectors[k][c].conj() * phases[k])
            .sum()
    });
    let h = HermitianMatrix::new(p)?;
    Ok(hermitian(h.symmetrized()))
}

/// `exp(i A)` for Hermitian `A`, through its eigendecomposition.
pub fn exp_i(a: &HermitianMatrix) -> Result<ComplexMatrix> {
    let s = crate::numerics::eigh(a)?;
    let n = a.dim();
    let v = &s.eigenvectors;
    Ok(ComplexMatrix::from_fn(n, |r, c| {
        (0..n)
            .map(|k| v[(r, k)] * v[(c, k)].conj() * Complex64::from_polar(1.0, s.eigenvalues[k]))
            .sum()
    }))
}

/// `[A, B] = AB - BA`.
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let ab = a.mul_checked(b)?;
    let ba = b.mul_checked(a)?;
    Ok(&ab - &ba)
}

/// Hamiltonian from its matrix elements:
/// `<q_j|H|q_k> = (i/2)(δ_{j,k+1} - δ_{j,k-1}) - δ_{jk} cos(beta q_j + delta)`.
///
/// For `n <= 2` the two kinetic contributions land on the same entry and
/// cancel.
pub fn build_hamiltonian(m: &ModuliPoint) -> HermitianMatrix {
    hermitian(hamiltonian_matrix(m, true))
}

/// The potential part alone, `-cos(beta Q + delta)`.
pub fn build_potential(m: &ModuliPoint) -> HermitianMatrix {
    hermitian(hamiltonian_matrix(m, false))
}

fn hamiltonian_matrix(m: &ModuliPoint, kinetic: bool) -> ComplexMatrix {
    let n = m.hilbert_dim();
    let mut h = ComplexMatrix::zeros(n);
    if kinetic {
        for k in 0..n {
            h[((k + 1) % n, k)] += HALF_I;
            h[((k + n - 1) % n, k)] -= HALF_I;
        }
    }
    for (j, theta) in m.potential_phases().into_iter().enumerate() {
        h[(j, j)] -= Complex64::new(theta.cos(), 0.0);
    }
    h
}

/// Hamiltonian assembled from operators, `-(U + U†)/2 - cos(beta Q + delta)`.
pub fn hamiltonian_from_operators(m: &ModuliPoint) -> HermitianMatrix {
    let n = m.hilbert_dim();
    let u = shift_operator(n).expect("n >= 1");
    let kinetic = (&u + &u.adjoint()).scale(Complex64::new(-0.5, 0.0));
    let q = position_operator(m);
    let potential: Vec<f64> = q
        .real_diagonal()
        .into_iter()
        .map(|qj| -(m.beta() * qj + m.delta()).cos())
        .collect();
    let h = &kinetic + &ComplexMatrix::from_real_diagonal(&potential);
    hermitian(h)
}

/// `|| [Q, P] - i I ||_F`.
///
/// Every commutator is traceless while `tr(i I) = i n`, so by Cauchy–Schwarz
/// this is at least `√n` for any choice of `P`.
pub fn heisenberg_defect(n: usize) -> Result<f64> {
    let q = position_operator_n(n)?;
    let p = momentum_operator(n)?;
    let c = commutator(q.as_matrix(), p.as_matrix())?;
    let target = ComplexMatrix::identity(n).scale(I);
    Ok((&c - &target).frobenius_norm())
}
