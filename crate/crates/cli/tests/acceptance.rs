//! Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fail.

use std::f64::consts::{PI, TAU};
use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use torusq_cli::report::{CertifyBody, Envelope, SpectrumBody};
use torusq_core::operators::momentum_operator;
use torusq_core::operators::position_operator_n;
use torusq_core::vacuum::DEGENERACY_TOL;
use torusq_core::*;

type Check = fn() -> Verdict;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn point(beta: f64, delta: f64, dim: Option<usize>) -> ModuliPoint {
    ModuliPoint::new(beta, delta, dim).unwrap()
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn closed_form() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(20_260_611);
    let mut failing = Vec::new();
    let mut worst = Vec::new();
    for n in 1..=10usize {
        let mut n_worst: f64 = 0.0;
        let mut n_fail = 0;
        for _ in 0..20 {
            let beta = n as f64 + rng.gen::<f64>();
            let delta = rng.gen::<f64>() * TAU;
            let r = verify_charpoly(&point(beta, delta, None)).unwrap();
            let normalized = r.max_coeff_diff / r.oracle.max_abs_coeff().max(1.0);
            n_worst = n_worst.max(normalized);
            if !r.pass {
                n_fail += 1;
            }
        }
        worst.push(format!("n={n}:{n_worst:.1e}"));
        if n_fail > 0 {
            failing.push(format!("n={n} ({n_fail}/20)"));
        }
    }

    // hand anchors
    let mut anchor: f64 = 0.0;
    for (beta, delta) in [(3.0, 0.0), (3.4, 1.1), (4.0, 0.0), (4.8, 2.6)] {
        let r = verify_charpoly(&point(beta, delta, None)).unwrap();
        anchor = anchor.max(r.max_coeff_diff);
    }
    let four = charpoly_closed(&point(4.0, 0.0, None));
    anchor = anchor.max(four.max_coeff_diff(&Polynomial::new(vec![0.0, 2.0, 5.0, 4.0, 1.0])));
    let anchors_ok = anchor <= 1e-12;

    let pass = failing.is_empty() && anchors_ok;
    let mut detail = format!(
        "normalized max coeff diff per n [{}]; n=3/n=4 anchors {:.1e} (<= 1e-12: {})",
        worst.join(" "),
        anchor,
        anchors_ok
    );
    if !failing.is_empty() {
        detail.push_str(&format!(
            "; exceeds 1e-8 at {}: the cyclic-run sum omits non-adjacent edge pairs from n = 6 on",
            failing.join(", ")
        ));
    }
    verdict(pass, detail)
}

fn fourier_family() -> Verdict {
    let mut worst: f64 = 0.0;
    for n in 2..=12usize {
        for delta in [0.0, 0.7, PI] {
            let got = eigvalsh(&build_hamiltonian(&point(n as f64, delta, None))).unwrap();
            let mut want: Vec<f64> = (0..n)
                .map(|k| -delta.cos() - (TAU * k as f64 / n as f64).sin())
                .collect();
            want.sort_by(f64::total_cmp);
            worst = worst.max(max_diff(&got, &want));
        }
    }
    verdict(worst <= 1e-9, format!("max elementwise deviation {worst:.2e} over 33 cases"))
}

fn operator_algebra() -> Verdict {
    let i = Complex64::new(0.0, 1.0);
    let mut unitary: f64 = 0.0;
    let mut comm: f64 = 0.0;
    let mut min_margin = f64::INFINITY;
    let mut trace: f64 = 0.0;
    for n in 1..=64usize {
        let u = shift_operator(n).unwrap();
        unitary = unitary.max(u.unitarity_defect());
        let q = position_operator_n(n).unwrap();
        if n <= 32 {
            let c = commutator(q.as_matrix(), &u).unwrap();
            let grid = position_grid(n).unwrap();
            let want = ComplexMatrix::from_fn(n, |r, col| {
                if r == (col + 1) % n {
                    -i * (grid.points()[r] - grid.points()[col])
                } else {
                    Complex64::new(0.0, 0.0)
                }
            });
            comm = comm.max((&c - &want).max_abs());
        }
        let defect = heisenberg_defect(n).unwrap();
        min_margin = min_margin.min(defect - (n as f64).sqrt());
        let p = momentum_operator(n).unwrap();
        let qp = commutator(q.as_matrix(), p.as_matrix()).unwrap();
        trace = trace.max(qp.trace().norm());
    }
    let pass = unitary <= 1e-14 && comm <= 1e-12 && min_margin >= 0.0 && trace <= 1e-12;
    verdict(
        pass,
        format!(
            "U unitarity {unitary:.1e}; [Q,U] entrywise {comm:.1e} (n<=32); min(defect - sqrt n) {min_margin:.3} (n<=64); |tr [Q,P]| {trace:.1e}"
        ),
    )
}

fn vacuum() -> Verdict {
    let mut bad = Vec::new();
    let mut cases = 0;
    for n in 4..=24usize {
        for delta in [0.0, 0.3, 1.7] {
            for m in [point(1.0, delta, Some(n)), point(n as f64 + 0.5, delta, None)] {
                let r = vacuum_report(&m).unwrap();
                let gap = r.gap.unwrap();
                cases += 1;
                if !(r.nondegenerate && gap > DEGENERACY_TOL * r.spectral_range.max(1.0)) {
                    bad.push(format!("beta={} delta={delta} n={n}", m.beta()));
                }
            }
        }
    }
    let m = point(4.0, 0.0, None);
    let r = vacuum_report(&m).unwrap();
    let pairing = degeneracy_pairing(&m, false).unwrap();
    let example = (r.vacuum_energy + 2.0).abs() < 1e-12
        && (r.gap.unwrap() - 1.0).abs() < 1e-12
        && pairing.pairs == vec![(2, 3)]
        && pairing.singletons == vec![1, 4]
        && pairing.higher_multiplets.is_empty();
    verdict(
        bad.is_empty() && example,
        format!(
            "{}/{cases} grid points nondegenerate; n=4 beta=4: E0={} gap={} pairs={:?} singletons={:?}",
            cases - bad.len(),
            r.vacuum_energy,
            r.gap.unwrap(),
            pairing.pairs,
            pairing.singletons
        ),
    )
}

/// Regression fixtures measured once against a 50-digit oracle.
const FACTORIZATION_FIXTURES: [(usize, f64, f64, f64); 4] = [
    (8, 0.328125, -1.5756659922051874, -1.645328776016073),
    (12, 0.19784752386136914, -1.6432853946713948, -1.7550208042349635),
    (16, 0.2160018256925781, -1.6700701083485912, -1.8131480714547417),
    (24, 0.20735764499567466, -1.6902749110128867, -1.8733405070354137),
];

fn factorization() -> Verdict {
    let mut zeroed: f64 = 0.0;
    for &(n, ..) in &FACTORIZATION_FIXTURES {
        let r = factorization_defect_without_boxes(&point(1.0, 0.0, Some(n))).unwrap();
        zeroed = zeroed.max(r.defect);
    }
    let dims: Vec<usize> = FACTORIZATION_FIXTURES.iter().map(|f| f.0).collect();
    let reports = factorization_study(1.0, 0.0, &dims).unwrap();
    let mut fixtures_ok = true;
    let mut rows = Vec::new();
    for (r, &(n, defect, corner, e0)) in reports.iter().zip(&FACTORIZATION_FIXTURES) {
        fixtures_ok &= r.n == n
            && (r.defect - defect).abs() <= 1e-9 * defect
            && (r.corner_energy - corner).abs() <= 1e-10
            && (r.vacuum_energy - e0).abs() <= 1e-10;
        rows.push(format!("n={n}: defect {:.4} |E0c-E0| {:.4}", r.defect, r.corner_vs_full));
    }
    verdict(
        zeroed <= 1e-12 && fixtures_ok,
        format!(
            "zeroed-box defect {zeroed:.1e}; fixtures reproduced: {fixtures_ok}; {} (no monotone decrease)",
            rows.join(", ")
        ),
    )
}

fn classical() -> Verdict {
    let unit = point(1.0, 0.0, None);

    let fixed = flow(&ClassicalState::new(0.0, 0.0), &unit, 10.0, 1e-3).unwrap();
    let stationary = fixed.samples.iter().all(|s| s.q == 0.0 && s.p == 0.0);

    let small = flow(&ClassicalState::new(0.01, 0.0), &unit, 60.0, 1e-3).unwrap();
    let period = oscillation_period(&small).unwrap();
    let period_err = (period - TAU).abs() / TAU;

    let long = flow(&ClassicalState::new(1.0, 0.5), &unit, 100.0, 1e-3).unwrap();
    let drift = long.energy_drift();

    let s0 = ClassicalState::new(0.8, -0.4);
    let forward = flow(&s0, &unit, 10.0, 1e-3).unwrap().final_state();
    let back = flow(&forward.time_reversed(), &unit, 10.0, 1e-3).unwrap().final_state().time_reversed();
    let reversal = moduli::angular_distance(back.q(), s0.q()).max(moduli::angular_distance(back.p(), s0.p()));

    // every point of a 21 x 21 grid on the box |q|, |p| <= 0.1
    let (mut all_pairs, mut chain): (f64, f64) = (0.0, 0.0);
    for a in -10..=10 {
        for b in -10..=10 {
            let e = limit_energies(&ClassicalState::new(a as f64 / 100.0, b as f64 / 100.0));
            let [full, sg, harmonic] = e.offset();
            all_pairs = all_pairs.max(e.max_pairwise_difference());
            chain = chain.max((full - sg).abs()).max((sg - harmonic).abs());
        }
    }
    let limits_ok = all_pairs <= 5e-6;

    let pass = stationary && period_err <= 1e-3 && drift <= 1e-5 && reversal <= 1e-8 && limits_ok;
    let mut detail = format!(
        "fixed point stationary: {stationary}; period rel err {period_err:.1e}; drift {drift:.1e} (T=100); reversibility {reversal:.1e}; limit energies max pairwise {all_pairs:.2e} (full/SG and SG/harmonic {chain:.2e})"
    );
    if !limits_ok {
        detail.push_str(
            "; full vs harmonic differs by (q^4 + p^4)/24 = 8.3e-6 at the corners |q| = |p| = 0.1, above 5e-6",
        );
    }
    verdict(pass, detail)
}

// 1.5708 is the literal value to test, not an approximation of pi/2
#[allow(clippy::approx_constant)]
fn duality() -> Verdict {
    let deltas = [0.0, 0.5, 1.5708, 3.0];
    let s0 = ClassicalState::new(0.5, 0.2);
    let mut problems = Vec::new();
    let mut min_n1_diff = f64::INFINITY;
    let mut min_diff = f64::INFINITY;
    let mut count = 0;
    for n in [1usize, 4, 8] {
        for (i, &d1) in deltas.iter().enumerate() {
            for &d2 in &deltas[i + 1..] {
                let (a, b) = (point(1.0, d1, Some(n)), point(1.0, d2, Some(n)));
                count += 1;
                if !classical_equivalence_check(&a, &b, &s0, 10.0, 1e-3).unwrap() {
                    problems.push(format!("classical n={n} {d1}/{d2}"));
                }
                let c = duality_certificate(&a, &b).unwrap();
                if !c.is_duality {
                    problems.push(format!("certificate n={n} {d1}/{d2}"));
                }
                min_diff = min_diff.min(c.max_spectral_difference);
                if n == 1 {
                    min_n1_diff = min_n1_diff.min(c.max_spectral_difference);
                }
            }
        }
    }
    let pass = problems.is_empty() && min_n1_diff > 1e-3;
    verdict(
        pass,
        format!(
            "{count} pairs; classically equivalent and is_duality for {}; min spectral difference {min_n1_diff:.3} (n=1), {min_diff:.2e} (all n){}",
            count - problems.len(),
            if problems.is_empty() { String::new() } else { format!("; failures {problems:?}") }
        ),
    )
}

fn run_cli(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_torusq"))
        .args(args)
        .output()
        .expect("torusq runs");
    assert_eq!(out.status.code(), Some(0), "{args:?}");
    out.stdout
}

fn determinism() -> Verdict {
    let runs: [&[&str]; 4] = [
        &["scan", "--beta", "1", "--dim", "8", "--delta-steps", "64"],
        &["spectrum", "--beta", "7.3", "--delta", "0.9", "--format", "json"],
        &["certify", "--beta", "1", "--dim", "4", "--delta", "0", "--delta2", "1.5708"],
        &["classical", "--beta", "1", "--q0", "0.5", "--t", "5"],
    ];
    let mut identical = true;
    for args in runs {
        identical &= run_cli(args) == run_cli(args);
    }
    let round_trip = |text: &[u8], check: &dyn Fn(&str) -> Option<String>| {
        let s = std::str::from_utf8(text).unwrap();
        check(s).map(|again| again == s).unwrap_or(false)
    };
    let spectrum = run_cli(runs[1]);
    let certify = run_cli(runs[2]);
    let ok_spectrum = round_trip(&spectrum, &|s| {
        let v: Envelope<SpectrumBody> = serde_json::from_str(s).ok()?;
        Some(serde_json::to_string_pretty(&v).ok()? + "\n")
    });
    let ok_certify = round_trip(&certify, &|s| {
        let v: Envelope<CertifyBody> = serde_json::from_str(s).ok()?;
        Some(serde_json::to_string_pretty(&v).ok()? + "\n")
    });
    verdict(
        identical && ok_spectrum && ok_certify,
        format!("repeated runs byte-identical: {identical}; JSON round-trip spectrum: {ok_spectrum}, certify: {ok_certify}"),
    )
}

fn main() {
    let criteria: [(&str, Check); 8] = [
        ("closed-form characteristic polynomial", closed_form),
        ("Fourier oracle family", fourier_family),
        ("operator algebra", operator_algebra),
        ("vacuum", vacuum),
        ("factorization", factorization),
        ("classical", classical),
        ("duality end-to-end", duality),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        if !v.pass {
            failed += 1;
        }
        println!(
            "[criterion {}] {} {name}: {}",
            k + 1,
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
