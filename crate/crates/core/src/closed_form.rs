//! Closed-form characteristic polynomials of the cyclic tridiagonal
//! Hamiltonian.
//!
//! With `c_j = cos(beta q_j + delta)`, the parity-split cyclic-run formula is
//!
//! ```text
//! det(E - H) = sum_{p ≡ n (mod 2)} (i/2)^{n-p} sum_{runs of length p} prod_k (c_{l_k} + E)
//! ```
//!
//! where a run of length `p < n` is `(j, j+1, ..., j+p-1)` taken cyclically
//! and `p = n` contributes the single full tuple. [`charpoly_closed`]
//! evaluates exactly this, and [`verify_charpoly`] compares it with the
//! Faddeev–LeVerrier oracle, reporting disagreement as data.
//!
//! The run formula reproduces the determinant for `n <= 5`. From `n = 6` on,
//! the determinant also contains index sets whose complement splits into
//! two or more separated adjacent pairs (e.g. `{1, 4}` at `n = 6`), and
//! those are not runs. [`charpoly_matching`] sums over every matching of
//! the cycle and is exact for all `n`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::moduli::ModuliPoint;
use crate::numerics::{charpoly_oracle, Polynomial};
use crate::operators::build_hamiltonian;

/// Relative tolerance of [`verify_charpoly`].
pub const VERIFY_TOL: f64 = 1e-8;

/// The cyclic runs of length `p` over indices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicTupleSet {
    pub n: usize,
    pub p: usize,
    /// 1-based index tuples, starting at `j = 1`.
    pub tuples: Vec<Vec<usize>>,
}

pub fn cyclic_tuples(n: usize, p: usize) -> Result<CyclicTupleSet> {
    if p < 1 || p > n {
        return Err(domain(format!("tuple length p = {p} must lie in 1..={n}")));
    }
    let tuples = if p == n {
        vec![(1..=n).collect()]
    } else {
        (0..n)
            .map(|j| (0..p).map(|k| (j + k) % n + 1).collect())
            .collect()
    };
    Ok(CyclicTupleSet { n, p, tuples })
}

/// `cos(beta q_j + delta)` for `j = 1..n`.
pub fn potential_cosines(m: &ModuliPoint) -> Vec<f64> {
    m.potential_phases().into_iter().map(f64::cos).collect()
}

/// The cyclic-run closed form, evaluated literally.
pub fn charpoly_closed(m: &ModuliPoint) -> Polynomial {
    closed_from_cosines(&potential_cosines(m))
}

pub(crate) fn closed_from_cosines(cosines: &[f64]) -> Polynomial {
    let n = cosines.len();
    let mut total = Polynomial::constant(0.0);
    let start = if n % 2 == 0 { 2 } else { 1 };
    for p in (start..=n).step_by(2) {
        let set = cyclic_tuples(n, p).expect("1 <= p <= n");
        let mut sum = Polynomial::constant(0.0);
        for tuple in &set.tuples {
            let prod = tuple
                .iter()
                .fold(Polynomial::constant(1.0), |acc, &l| {
                    acc.mul(&Polynomial::linear(cosines[l - 1]))
                });
            sum = sum.add(&prod);
        }
        // (i/2)^{n-p} with n-p even is (-1/4)^{(n-p)/2}
        let scale = (-0.25_f64).powi(((n - p) / 2) as i32);
        total = total.add(&sum.scale(scale));
    }
    total
}

/// Exact `det(E - H)` as a sum over all matchings of the `n`-cycle.
///
/// Each matched adjacent pair `{j, j+1}` contributes `-1/4`, each unmatched
/// site `(c_j + E)`. Matchings that avoid the wrap edge `{n, 1}` are summed
/// by the path continuant `K_k = (c_k + E) K_{k-1} - K_{k-2}/4`, the ones
/// using it by `-1/4` times the continuant of sites `2..n-1`. For even `n`
/// the two n-cycle permutations add `-2 (i/2)^n`, which cancels the two
/// perfect matchings. For `n <= 2` the kinetic term vanishes identically.
pub fn charpoly_matching(m: &ModuliPoint) -> Polynomial {
    matching_from_cosines(&potential_cosines(m))
}

pub(crate) fn matching_from_cosines(c: &[f64]) -> Polynomial {
    let n = c.len();
    if n <= 2 {
        return c
            .iter()
            .fold(Polynomial::constant(1.0), |acc, &cj| acc.mul(&Polynomial::linear(cj)));
    }
    let mut det = path_continuant(c).add(&path_continuant(&c[1..n - 1]).scale(-0.25));
    if n % 2 == 0 {
        let loops = -2.0 * (-0.25_f64).powi((n / 2) as i32);
        det = det.add(&Polynomial::constant(loops));
    }
    det
}

fn path_continuant(c: &[f64]) -> Polynomial {
    let mut prev = Polynomial::constant(1.0);
    let mut cur = match c.first() {
        Some(&c0) => Polynomial::linear(c0),
        None => return prev,
    };
    for &ck in &c[1..] {
        let next = cur.mul(&Polynomial::linear(ck)).add(&prev.scale(-0.25));
        prev = cur;
        cur = next;
    }
    cur
}

/// Outcome of comparing the closed form with the oracle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub n: usize,
    pub closed: Polynomial,
    pub oracle: Polynomial,
    pub max_coeff_diff: f64,
    /// Absolute threshold used: `VERIFY_TOL * max(1, max |oracle coeff|)`.
    pub threshold: f64,
    pub pass: bool,
}

/// Compare [`charpoly_closed`] against Faddeev–LeVerrier on the Hamiltonian.
pub fn verify_charpoly(m: &ModuliPoint) -> Result<VerificationReport> {
    let closed = charpoly_closed(m);
    let oracle = charpoly_oracle(build_hamiltonian(m).as_matrix())?;
    Ok(compare(closed, oracle))
}

/// Same comparison for the matching expansion.
pub fn verify_charpoly_matching(m: &ModuliPoint) -> Result<VerificationReport> {
    let candidate = charpoly_matching(m);
    let oracle = charpoly_oracle(build_hamiltonian(m).as_matrix())?;
    Ok(compare(candidate, oracle))
}

fn compare(closed: Polynomial, oracle: Polynomial) -> VerificationReport {
    let max_coeff_diff = closed.max_coeff_diff(&oracle);
    let threshold = VERIFY_TOL * oracle.max_abs_coeff().max(1.0);
    VerificationReport {
        n: oracle.degree(),
        pass: max_coeff_diff <= threshold,
        closed,
        oracle,
        max_coeff_diff,
        threshold,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point(beta: f64, delta: f64, dim: Option<usize>) -> ModuliPoint {
        ModuliPoint::new(beta, delta, dim).unwrap()
    }

    #[test]
    fn tuple_examples() {
        let t = cyclic_tuples(4, 2).unwrap();
        assert_eq!(t.tuples, vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 1]]);
        let t = cyclic_tuples(5, 3).unwrap();
        assert_eq!(
            t.tuples,
            vec![vec![1, 2, 3], vec![2, 3, 4], vec![3, 4, 5], vec![4, 5, 1], vec![5, 1, 2]]
        );
        assert_eq!(cyclic_tuples(3, 3).unwrap().tuples, vec![vec![1, 2, 3]]);
        assert!(cyclic_tuples(3, 4).is_err());
        assert!(cyclic_tuples(3, 0).is_err());
    }

    #[test]
    fn closed_form_examples() {
        // n=2: only the full tuple, (E + 1)(E + cos 2.5π)
        let p = charpoly_closed(&point(2.5, 0.0, None));
        assert!(p.max_coeff_diff(&Polynomial::new(vec![0.0, 1.0, 1.0])) < 1e-15);

        let p = charpoly_closed(&point(3.0, 0.0, None));
        assert!(p.max_coeff_diff(&Polynomial::new(vec![0.25, 2.25, 3.0, 1.0])) < 1e-14);

        // (E+1)^4 - (E+1)^2 = E^4 + 4E^3 + 5E^2 + 2E
        let p = charpoly_closed(&point(4.0, 0.0, None));
        assert!(p.max_coeff_diff(&Polynomial::new(vec![0.0, 2.0, 5.0, 4.0, 1.0])) < 1e-14);
        let roots = p.real_roots();
        for (r, want) in roots.iter().zip([-2.0, -1.0, -1.0, 0.0]) {
            assert!((r - want).abs() < 1e-7);
        }
    }

    #[test]
    fn verification_examples() {
        let r = verify_charpoly(&point(3.0, 0.0, None)).unwrap();
        assert!(r.pass && r.max_coeff_diff <= 1e-12);
        assert!(verify_charpoly(&point(4.0, 0.0, None)).unwrap().pass);
        let r = verify_charpoly(&point(1.0, 1.1, None)).unwrap();
        assert!(r.pass);
        assert_eq!(r.closed.coeffs(), &[1.1f64.cos(), 1.0]);
    }

    #[test]
    fn run_formula_breaks_at_six() {
        let r = verify_charpoly(&point(1.0, 0.0, Some(6))).unwrap();
        assert!(!r.pass);
        // the missing kept sets {1,4},{2,5},{3,6} each enter with (i/2)^4
        let c = potential_cosines(&point(1.0, 0.0, Some(6)));
        let missing = [(0, 3), (1, 4), (2, 5)]
            .iter()
            .fold(Polynomial::constant(0.0), |acc, &(a, b)| {
                acc.add(&Polynomial::linear(c[a]).mul(&Polynomial::linear(c[b])))
            })
            .scale(1.0 / 16.0);
        let corrected = r.closed.add(&missing);
        assert!(corrected.max_coeff_diff(&r.oracle) < 1e-12);
    }

    #[test]
    fn matching_expansion_matches_oracle() {
        for n in 1..=16 {
            let m = point(n as f64 + 0.37, 0.9, None);
            let r = verify_charpoly_matching(&m).unwrap();
            assert!(r.pass, "n={n}: diff {}", r.max_coeff_diff);
        }
    }
}
