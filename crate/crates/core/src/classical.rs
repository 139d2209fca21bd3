//! Classical mechanics on the torus phase space.
//!
//! `H(q, p) = -cos p - cos(beta q + delta)` is separable, `T(p) + V(q)`, so
//! the Störmer–Verlet (kick-drift-kick) splitting is explicit and
//! symplectic:
//!
//! ```text
//! q' =  sin p
//! p' = -beta sin(beta q + delta)
//! ```

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::moduli::{wrap_angle, ModuliPoint};

pub const DEFAULT_DT: f64 = 1e-3;
pub const METHOD_STORMER_VERLET: &str = "stormer-verlet";

/// A point of the torus, both coordinates wrapped to `(-π, π]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassicalState {
    q: f64,
    p: f64,
}

impl ClassicalState {
    pub fn new(q: f64, p: f64) -> Self {
        ClassicalState {
            q: wrap_angle(q),
            p: wrap_angle(p),
        }
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// `(q, p) -> (q, -p)`.
    pub fn time_reversed(&self) -> Self {
        ClassicalState::new(self.q, -self.p)
    }

    /// `(q, p) -> (q + shift, p)`.
    pub fn shifted(&self, shift: f64) -> Self {
        ClassicalState::new(self.q + shift, self.p)
    }
}

pub fn hamiltonian_value(s: &ClassicalState, m: &ModuliPoint) -> f64 {
    -s.p.cos() - (m.beta() * s.q + m.delta()).cos()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub t: f64,
    pub q: f64,
    pub p: f64,
    /// Recomputed from `(q, p)` at each sample, never integrated.
    #[serde(rename = "H")]
    pub energy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub dt: f64,
    pub method: String,
    pub samples: Vec<Sample>,
}

impl Trajectory {
    pub fn final_state(&self) -> ClassicalState {
        let last = self.samples.last().expect("trajectory has at least one sample");
        ClassicalState::new(last.q, last.p)
    }

    /// `max_t |H(t) - H(0)|`.
    pub fn energy_drift(&self) -> f64 {
        let e0 = self.samples[0].energy;
        self.samples
            .iter()
            .map(|s| (s.energy - e0).abs())
            .fold(0.0, f64::max)
    }

    /// CSV with header `t,q,p,H`, shortest round-trip decimals.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,q,p,H\n");
        for s in &self.samples {
            writeln!(out, "{},{},{},{}", s.t, s.q, s.p, s.energy).expect("write to String");
        }
        out
    }
}

/// Integrate for time `t_total` with step `dt`.
///
/// The number of steps is `round(t_total / dt)` (at least one); sample `k`
/// sits at `t = k dt`.
pub fn flow(s0: &ClassicalState, m: &ModuliPoint, t_total: f64, dt: f64) -> Result<Trajectory> {
    if !t_total.is_finite() || t_total <= 0.0 {
        return Err(domain(format!("total time must be positive, got {t_total}")));
    }
    if dt.is_nan() || dt <= 0.0 || dt > t_total {
        return Err(domain(format!("step must satisfy 0 < dt <= T, got dt = {dt}")));
    }
    let steps = ((t_total / dt).round() as usize).max(1);
    let (beta, delta) = (m.beta(), m.delta());
    let force = |q: f64| -beta * (beta * q + delta).sin();

    let mut samples = Vec::with_capacity(steps + 1);
    let (mut q, mut p) = (s0.q, s0.p);
    let record = |samples: &mut Vec<Sample>, k: usize, q: f64, p: f64| {
        let s = ClassicalState { q, p };
        samples.push(Sample {
            t: k as f64 * dt,
            q,
            p,
            energy: hamiltonian_value(&s, m),
        });
    };
    record(&mut samples, 0, q, p);
    for k in 1..=steps {
        let p_half = p + 0.5 * dt * force(q);
        q = wrap_angle(q + dt * p_half.sin());
        p = wrap_angle(p_half + 0.5 * dt * force(q));
        record(&mut samples, k, q, p);
    }
    Ok(Trajectory {
        dt,
        method: METHOD_STORMER_VERLET.to_string(),
        samples,
    })
}

/// Mean spacing of upward zero crossings of `q(t)`, linearly interpolated.
/// `None` if fewer than two crossings occur.
pub fn oscillation_period(traj: &Trajectory) -> Option<f64> {
    let crossings: Vec<f64> = traj
        .samples
        .windows(2)
        .filter(|w| w[0].q < 0.0 && w[1].q >= 0.0)
        .map(|w| w[0].t + (w[1].t - w[0].t) * (-w[0].q) / (w[1].q - w[0].q))
        .collect();
    if crossings.len() < 2 {
        return None;
    }
    Some((crossings[crossings.len() - 1] - crossings[0]) / (crossings.len() - 1) as f64)
}

/// Kinetic energy with the quartic and higher terms truncated after `terms`
/// of them: `p^2/2 - 1 - sum_{k=2}^{terms+1} (-1)^k p^{2k} / (2k)!`.
///
/// `terms = 0` is the sine-Gordon kinetic term; the series tends to `-cos p`.
pub fn kinetic_expansion(p: f64, terms: usize) -> f64 {
    let p2 = p * p;
    let mut value = 0.5 * p2 - 1.0;
    // term_k = p^{2k}/(2k)!, updated in place
    let mut term = 0.5 * p2;
    for k in 2..=terms + 1 {
        term *= p2 / ((2 * k - 1) * (2 * k)) as f64;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        value -= sign * term;
    }
    value
}

/// Energies of the full, sine-Gordon and harmonic Hamiltonians at `beta = 1`,
/// `delta = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitEnergies {
    /// `-cos p - cos q`
    pub full: f64,
    /// `p^2/2 - cos q`
    pub sine_gordon: f64,
    /// `(p^2 + q^2)/2`
    pub harmonic: f64,
}

impl LimitEnergies {
    /// Energies shifted so that all three vanish at the origin.
    pub fn offset(&self) -> [f64; 3] {
        [self.full + 2.0, self.sine_gordon + 1.0, self.harmonic]
    }

    pub fn max_pairwise_difference(&self) -> f64 {
        let [a, b, c] = self.offset();
        (a - b).abs().max((a - c).abs()).max((b - c).abs())
    }
}

pub fn limit_energies(s: &ClassicalState) -> LimitEnergies {
    let (q, p) = (s.q, s.p);
    LimitEnergies {
        full: -p.cos() - q.cos(),
        sine_gordon: 0.5 * p * p - q.cos(),
        harmonic: 0.5 * (p * p + q * q),
    }
}
