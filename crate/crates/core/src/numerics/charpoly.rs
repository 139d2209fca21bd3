//! Characteristic polynomials by the Faddeev–LeVerrier recurrence.
//!
//! With `M_0 = 0`, `c_n = 1`:
//!
//! ```text
//! M_k     = A M_{k-1} + c_{n-k+1} I
//! c_{n-k} = -tr(A M_k) / k
//! ```
//!
//! gives `det(E I - A) = sum_k c_k E^k`. The recurrence never touches an
//! eigenvalue, which is what makes it a usable cross-check on `eigh`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::numerics::Polynomial;

/// Imaginary residue below which coefficients are accepted as real.
pub const IMAG_RESIDUE_TOL: f64 = 1e-9;

/// Complex coefficients of `det(E I - A)`, ascending degree.
pub fn faddeev_leverrier(a: &ComplexMatrix) -> Vec<Complex64> {
    let n = a.dim();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
    coeffs[n] = Complex64::new(1.0, 0.0);
    let mut m = ComplexMatrix::zeros(n);
    for k in 1..=n {
        let mut next = a * &m;
        let c = coeffs[n - k + 1];
        for j in 0..n {
            next[(j, j)] += c;
        }
        let am = a * &next;
        coeffs[n - k] = -am.trace() / k as f64;
        m = next;
    }
    coeffs
}

/// Real characteristic polynomial of a matrix whose polynomial is real
/// (Hermitian input, in particular). Imaginary parts up to
/// [`IMAG_RESIDUE_TOL`] relative to the coefficient scale are dropped.
pub fn charpoly_oracle(a: &ComplexMatrix) -> Result<Polynomial> {
    let coeffs = faddeev_leverrier(a);
    let scale = coeffs.iter().fold(1.0_f64, |m, z| m.max(z.re.abs()));
    let residue = coeffs.iter().fold(0.0_f64, |m, z| m.max(z.im.abs()));
    if residue > IMAG_RESIDUE_TOL * scale {
        return Err(Error::ComplexCoefficients(residue));
    }
    Ok(Polynomial::new(coeffs.into_iter().map(|z| z.re).collect()))
}
