use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Real polynomial in the energy variable, coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    /// Trailing zero coefficients are kept; the degree is `len - 1`.
    pub fn new(coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty(), "a polynomial needs at least one coefficient");
        Polynomial { coeffs }
    }

    pub fn constant(c: f64) -> Self {
        Polynomial { coeffs: vec![c] }
    }

    /// The linear factor `constant + E`.
    pub fn linear(constant: f64) -> Self {
        Polynomial {
            coeffs: vec![constant, 1.0],
        }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> f64 {
        self.coeffs[self.degree()]
    }

    /// Coefficient of `E^k`, zero beyond the stored degree.
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial { coeffs: out }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        Polynomial {
            coeffs: (0..len).map(|k| self.coeff(k) + other.coeff(k)).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn derivative(&self) -> Polynomial {
        if self.degree() == 0 {
            return Polynomial::constant(0.0);
        }
        Polynomial {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| k as f64 * c)
                .collect(),
        }
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// `max_k |a_k - b_k|` over the union of supports.
    pub fn max_coeff_diff(&self, other: &Polynomial) -> f64 {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len)
            .map(|k| (self.coeff(k) - other.coeff(k)).abs())
            .fold(0.0, f64::max)
    }

    /// All complex roots by Aberth–Ehrlich iteration, unsorted.
    ///
    /// Simple roots come out to near machine precision; a root of
    /// multiplicity `m` is only accurate to about `eps^(1/m)`.
    pub fn roots(&self) -> Vec<Complex64> {
        let deg = self.degree();
        if deg == 0 {
            return Vec::new();
        }
        let lead = self.leading();
        assert!(lead != 0.0, "leading coefficient must be nonzero");
        let monic = self.scale(1.0 / lead);
        let dp = monic.derivative();

        // Cauchy bound for the initial circle
        let radius = 1.0
            + monic.coeffs[..deg]
                .iter()
                .fold(0.0_f64, |m, c| m.max(c.abs()));
        let mut z: Vec<Complex64> = (0..deg)
            .map(|k| {
                let angle = std::f64::consts::TAU * (k as f64 + 0.25) / deg as f64 + 0.4;
                Complex64::from_polar(radius * 0.5 + 0.1, angle)
            })
            .collect();

        for _ in 0..500 {
            let mut max_step = 0.0_f64;
            for i in 0..deg {
                let p = monic.eval_complex(z[i]);
                if p == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let ratio = p / dp.eval_complex(z[i]);
                let repulsion: Complex64 = (0..deg)
                    .filter(|&j| j != i)
                    .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                    .sum();
                let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
                if step.re.is_finite() && step.im.is_finite() {
                    z[i] -= step;
                    max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
                }
            }
            if max_step < 1e-16 {
                break;
            }
        }
        z
    }

    /// Real parts of the roots, sorted ascending. Only meaningful when every
    /// root is real (characteristic polynomials of Hermitian matrices).
    pub fn real_roots(&self) -> Vec<f64> {
        let mut r: Vec<f64> = self.roots().into_iter().map(|z| z.re).collect();
        r.sort_by(f64::total_cmp);
        r
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0.0 && self.degree() > 0 {
                continue;
            }
            if !first {
                f.write_str(if c < 0.0 { " - " } else { " + " })?;
            } else if c < 0.0 {
                f.write_str("-")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                1 if a == 1.0 => f.write_str("E")?,
                1 => write!(f, "{a}E")?,
                _ if a == 1.0 => write!(f, "E^{k}")?,
                _ => write!(f, "{a}E^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_eval_examples() {
        let p = Polynomial::linear(1.0).mul(&Polynomial::linear(1.0));
        assert_eq!(p.coeffs(), &[1.0, 2.0, 1.0]);
        assert_eq!(p.eval(-1.0), 0.0);
        let q = Polynomial::new(vec![0.25, 2.25, 3.0, 1.0]);
        assert_eq!(p.mul(&q).degree(), p.degree() + q.degree());
        assert_eq!(p.to_string(), "E^2 + 2E + 1");
    }

    #[test]
    fn roots_of_cubic() {
        // (E+1)^3 - (3/4)(E+1): roots -1, -1 ± √3/2
        let p = Polynomial::new(vec![0.25, 2.25, 3.0, 1.0]);
        let r = p.real_roots();
        let h = 3f64.sqrt() / 2.0;
        for (got, want) in r.iter().zip([-1.0 - h, -1.0, -1.0 + h]) {
            assert!((got - want).abs() < 1e-13, "{got} vs {want}");
        }
    }

    #[test]
    fn derivative_and_add() {
        let p = Polynomial::new(vec![1.0, 2.0, 3.0]);
        assert_eq!(p.derivative().coeffs(), &[2.0, 6.0]);
        assert_eq!(p.add(&Polynomial::constant(-1.0)).coeffs(), &[0.0, 2.0, 3.0]);
        assert_eq!(Polynomial::constant(4.0).derivative().coeffs(), &[0.0]);
        assert_eq!(p.max_coeff_diff(&Polynomial::new(vec![1.0, 2.0])), 3.0);
    }
}
