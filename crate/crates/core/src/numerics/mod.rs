//! Numerical kernels: Hermitian eigensolver, characteristic-polynomial oracle
//! and real polynomial arithmetic.

mod charpoly;
mod eigh;
mod poly;

pub use charpoly::{charpoly_oracle, faddeev_leverrier, IMAG_RESIDUE_TOL};
pub use eigh::{eigh, eigvalsh, Spectrum, JACOBI_THRESHOLD, MAX_SWEEPS};
pub use poly::Polynomial;
