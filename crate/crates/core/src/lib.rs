//! Canonical quantization of classical mechanics on a torus phase space.
//!
//! A [`ModuliPoint`] `(beta, delta)` fixes the Hamiltonian
//! `H = -cos p - cos(beta q + delta)` on the torus. Its symplectic volume
//! fixes the Hilbert space `C^n`, on which the crate builds the position,
//! shift and momentum operators and the quantum Hamiltonian, and then
//! studies its spectrum, characteristic polynomial and vacuum. Sweeping
//! `delta` at fixed `beta` exhibits classically equivalent theories with
//! distinct quantum spectra.

pub mod classical;
pub mod closed_form;
pub mod duality;
pub mod error;
pub mod matrix;
pub mod moduli;
pub mod numerics;
pub mod operators;
pub mod vacuum;

pub use classical::{
    flow, hamiltonian_value, kinetic_expansion, limit_energies, oscillation_period,
    ClassicalState, LimitEnergies, Sample, Trajectory,
};
pub use closed_form::{
    charpoly_closed, charpoly_matching, cyclic_tuples, verify_charpoly, verify_charpoly_matching,
    CyclicTupleSet, VerificationReport,
};
pub use duality::{
    classical_equivalence_check, delta_grid, duality_certificate, moduli_scan, DualityCertificate,
    ScanReport, ScanRow,
};
pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, HermitianMatrix};
pub use moduli::{position_grid, ModuliPoint, ModuliRecord, PicardLabel, PositionGrid};
pub use numerics::{charpoly_oracle, eigh, eigvalsh, Polynomial, Spectrum};
pub use operators::{
    build_hamiltonian, commutator, hamiltonian_from_operators, heisenberg_defect,
    momentum_operator, position_operator, shift_operator,
};
pub use vacuum::{
    corner_submatrix, degeneracy_pairing, factorization_defect, factorization_defect_without_boxes,
    factorization_study, vacuum_report, FactorizationReport, PairingReport, VacuumReport,
};

pub use num_complex::Complex64;
