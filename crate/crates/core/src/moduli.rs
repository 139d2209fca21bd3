//! Points in the moduli space of complex structures on the torus, and the
//! geometric data derived from them: symplectic volume, Hilbert dimension,
//! the position grid, the modular parameter and the Picard label.
//!
//! The Hamiltonian family is `H = -cos(alpha p) - cos(beta q + delta)` with
//! `alpha` fixed to 1. Everything downstream is a function of a
//! [`ModuliPoint`].

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Reduce an angle to `[0, 2π)`.
pub fn reduce_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Wrap an angle into the fundamental domain `(-π, π]`.
pub fn wrap_angle(x: f64) -> f64 {
    let r = reduce_angle(x);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Distance between two angles on the circle, in `[0, π]`.
pub fn angular_distance(a: f64, b: f64) -> f64 {
    wrap_angle(a - b).abs()
}

/// A point `(beta, delta)` in the moduli space, with an optional explicit
/// Hilbert dimension.
///
/// `beta` is the ratio of the torus axis lengths and `delta` the phase
/// offset between the two periodicities, stored reduced to `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ModuliRecord", into = "ModuliRecord")]
pub struct ModuliPoint {
    beta: f64,
    delta: f64,
    dim_override: Option<usize>,
}

/// Flat wire form of a [`ModuliPoint`]: `{"beta": .., "delta": .., "dim": ..}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModuliRecord {
    pub beta: f64,
    pub delta: f64,
    #[serde(default)]
    pub dim: Option<usize>,
}

impl TryFrom<ModuliRecord> for ModuliPoint {
    type Error = Error;

    fn try_from(r: ModuliRecord) -> Result<Self> {
        ModuliPoint::new(r.beta, r.delta, r.dim)
    }
}

impl From<ModuliPoint> for ModuliRecord {
    fn from(m: ModuliPoint) -> Self {
        ModuliRecord {
            beta: m.beta,
            delta: m.delta,
            dim: m.dim_override,
        }
    }
}

impl ModuliPoint {
    /// Build a moduli point.
    ///
    /// Without a dimension override the Hilbert dimension is `floor(beta)`,
    /// so `beta >= 1` is required.
    pub fn new(beta: f64, delta: f64, dim_override: Option<usize>) -> Result<Self> {
        if !beta.is_finite() || !delta.is_finite() {
            return Err(domain(format!(
                "beta and delta must be finite (beta = {beta}, delta = {delta})"
            )));
        }
        if beta <= 0.0 {
            return Err(domain(format!("beta must be positive, got {beta}")));
        }
        match dim_override {
            Some(0) => return Err(domain("dimension override must be at least 1")),
            None if beta < 1.0 => {
                return Err(domain(format!(
                    "beta = {beta} < 1 gives no Hilbert space; pass an explicit dimension"
                )))
            }
            _ => {}
        }
        Ok(ModuliPoint {
            beta,
            delta: reduce_angle(delta),
            dim_override,
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Phase offset in `[0, 2π)`.
    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn dim_override(&self) -> Option<usize> {
        self.dim_override
    }

    /// Coefficient of `p` inside the kinetic cosine. Always 1.
    pub fn alpha(&self) -> f64 {
        1.0
    }

    /// Same point with a different phase offset.
    pub fn with_delta(&self, delta: f64) -> Result<Self> {
        ModuliPoint::new(self.beta, delta, self.dim_override)
    }

    /// Total symplectic volume of `beta dp∧dq`, normalized so the `beta = 1`
    /// torus has unit volume.
    pub fn symplectic_volume(&self) -> f64 {
        self.beta
    }

    /// One quantum state per unit of symplectic volume: `floor(beta)`, unless
    /// overridden.
    pub fn hilbert_dim(&self) -> usize {
        self.dim_override
            .unwrap_or_else(|| self.symplectic_volume().floor() as usize)
    }

    /// `tau = beta * e^{i delta}`.
    pub fn modular_parameter(&self) -> Complex64 {
        Complex64::from_polar(self.beta, self.delta)
    }

    /// Potential phases `theta_j = beta q_j + delta` on the position grid.
    pub fn potential_phases(&self) -> Vec<f64> {
        position_grid(self.hilbert_dim())
            .expect("hilbert_dim is at least 1")
            .points()
            .iter()
            .map(|q| self.beta * q + self.delta)
            .collect()
    }

    pub fn picard_label(&self) -> PicardLabel {
        PicardLabel {
            degree: self.hilbert_dim() as i64,
            coordinate: format!("w = ({} q + {}) + i p", self.beta, self.delta),
        }
    }
}

/// Discrete label `(l, lambda)` of the vacuum line bundle. Metadata only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PicardLabel {
    /// Chern degree; equals the Hilbert dimension. Negative values would
    /// denote the dual space and are never produced here.
    #[serde(rename = "l")]
    pub degree: i64,
    /// Holomorphic coordinate `w` the label is attached to.
    #[serde(rename = "lambda_coordinate")]
    pub coordinate: String,
}

/// Uniform grid of `n` positions in `(-π, π]`, anchored at `q_1 = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct PositionGrid {
    points: Vec<f64>,
}

/// `q_j = wrap(2π(j-1)/n)` for `j = 1..n`.
///
/// Mirror points are computed from the same fraction so that
/// `q_{n-j+2} = -q_j` holds bit for bit.
pub fn position_grid(n: usize) -> Result<PositionGrid> {
    if n == 0 {
        return Err(domain("grid size must be at least 1"));
    }
    let points = (0..n)
        .map(|j| {
            if 2 * j > n {
                -TAU * ((n - j) as f64 / n as f64)
            } else {
                TAU * (j as f64 / n as f64)
            }
        })
        .collect();
    Ok(PositionGrid { points })
}

impl PositionGrid {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// 1-based access, matching the `q_j` labelling.
    pub fn q(&self, j: usize) -> f64 {
        self.points[j - 1]
    }
}
