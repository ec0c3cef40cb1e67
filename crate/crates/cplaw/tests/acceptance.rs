//! Release acceptance gate. Each test checks one release-blocking
//! criterion end to end at its pinned tolerance and prints a single
//! verdict line (shown with --nocapture, or automatically on failure).
//!
//! Every tolerance here is part of the library's published contract;
//! none of them is a tuning knob. A red criterion means the contract
//! is not met and must never be silenced by loosening the number.

use cplaw::specfun;
use cplaw::{
    coefficients, coulomb_plus_power_eigenvalue_with, eigenvalue, energy_at, energy_from_p,
    evaluate, optimal_x, p_from_energy, p_gaussian_upper, p_general, parametric_curve, params_for,
    power_eigenvalue, reduce, semiclassical_energy, upper_bound, BoundKind, PTable, PointTask,
    PotentialParams, QuantumNumbers, RadialGrid, ShootingConfig, SolverSettings, ValueKind,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn verdict(number: u32, name: &str, pass: bool, detail: &str) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("criterion {number} {name}: {tag} - {detail}");
}

fn qn(n: u32, ell: u32) -> QuantumNumbers {
    QuantumNumbers::new(n, ell).unwrap()
}

fn eval_kind(quantum: QuantumNumbers, q: f64, beta: f64, kind: ValueKind) -> f64 {
    evaluate(
        &PointTask {
            quantum,
            q,
            beta,
            kind,
        },
        &SolverSettings::default(),
    )
    .unwrap_or_else(|e| {
        panic!(
            "{kind:?} failed at (n={}, l={}) q={q} beta={beta}: {e}",
            quantum.n, quantum.ell
        )
    })
    .value
}

/// The exponent/coupling grid of the bound-sandwich criterion; the gap
/// regression runs on the same grid.
const SANDWICH_Q: [f64; 3] = [0.5, 1.0, 2.0];
const SANDWICH_BETA: [f64; 5] = [0.01, 0.1, 1.0, 10.0, 100.0];

// 1. Every embedded reference value regenerated by solver inversion
//    within relative 1e-4 (the values carry six figures), under 60 s.

#[test]
fn criterion_1_table_reproduction() {
    const TOLERANCE: f64 = 1e-4;
    const BUDGET_SECONDS: f64 = 60.0;

    let start = Instant::now();
    let table = PTable::embedded();
    let mut max_rel = 0.0f64;
    let mut failures = 0usize;
    for entry in table.entries() {
        let p = p_general(entry.quantum, entry.q).unwrap();
        let rel = ((p.value - entry.value) / entry.value).abs();
        max_rel = max_rel.max(rel);
        if rel > TOLERANCE {
            failures += 1;
        }
    }
    let elapsed = start.elapsed().as_secs_f64();

    let pass = failures == 0 && elapsed < BUDGET_SECONDS;
    verdict(
        1,
        "table-reproduction",
        pass,
        &format!(
            "{}/{} rows within {TOLERANCE:.0e} (max rel {max_rel:.2e}) in {elapsed:.1} s",
            table.entries().len() - failures,
            table.entries().len()
        ),
    );
    assert_eq!(failures, 0, "worst relative deviation {max_rel:.3e}");
    assert!(elapsed < BUDGET_SECONDS, "took {elapsed:.1} s");
}

// 2. Closed-form anchors: the shooting solver reproduces the Coulomb
//    levels -A^2/(4 omega (n+l)^2) and the oscillator levels
//    sqrt(omega B)(4n + 2l - 1) to 1e-6 absolute for n <= 3, l <= 2;
//    the envelope minimum formula with the exact P-numbers matches
//    both families to 1e-12 relative.

#[test]
fn criterion_2_closed_form_anchors() {
    const SOLVER_TOLERANCE: f64 = 1e-6;
    const FORMULA_TOLERANCE: f64 = 1e-12;

    let config = ShootingConfig::default();
    let mut max_solver = 0.0f64;
    let mut max_formula = 0.0f64;

    for n in 1..=3u32 {
        for ell in 0..=2u32 {
            let quantum = qn(n, ell);
            let big_n = f64::from(n + ell);

            for &(omega, a) in &[(1.0f64, 1.0f64), (1.7, 2.3)] {
                let exact = -a * a / (4.0 * omega * big_n * big_n);
                // Divide the eigenproblem through by omega: the solver
                // works on -u'' + (c/r)... with c = A/omega, and the
                // energy lifts back by the factor omega.
                let c = a / omega;
                let grid = RadialGrid::new(1e-6, 60.0 * big_n * big_n / c, 20_000).unwrap();
                let got = omega * eigenvalue(|r| -c / r, quantum, &grid, &config).unwrap();
                max_solver = max_solver.max((got - exact).abs());
            }

            for &(omega, b) in &[(1.0f64, 1.0f64), (0.9, 1.8)] {
                let exact = (omega * b).sqrt() * f64::from(4 * n + 2 * ell - 1);
                let bq = b / omega;
                let scaled = exact / omega;
                let r_max = 3.0 * (scaled / bq.sqrt()).sqrt() + 6.0;
                let grid = RadialGrid::new(1e-6, r_max, 20_000).unwrap();
                let got = omega * eigenvalue(|r| bq * r * r, quantum, &grid, &config).unwrap();
                max_solver = max_solver.max((got - exact).abs());
            }

            // Envelope minimum formula at the exact P-numbers.
            let coulomb = energy_from_p(big_n, -1.0);
            let coulomb_exact = -1.0 / (4.0 * big_n * big_n);
            max_formula = max_formula.max(((coulomb - coulomb_exact) / coulomb_exact).abs());

            let p_osc = f64::from(2 * n + ell) - 0.5;
            let osc = energy_from_p(p_osc, 2.0);
            let osc_exact = f64::from(4 * n + 2 * ell - 1);
            max_formula = max_formula.max(((osc - osc_exact) / osc_exact).abs());
        }
    }

    let pass = max_solver <= SOLVER_TOLERANCE && max_formula <= FORMULA_TOLERANCE;
    verdict(
        2,
        "closed-form-anchors",
        pass,
        &format!(
            "solver max abs {max_solver:.2e} (tol {SOLVER_TOLERANCE:.0e}), \
             formula max rel {max_formula:.2e} (tol {FORMULA_TOLERANCE:.0e})"
        ),
    );
    assert!(max_solver <= SOLVER_TOLERANCE);
    assert!(max_formula <= FORMULA_TOLERANCE);
}

// 3. Linear-potential anchor: E_n0 at q = 1 matches the Airy-zero
//    magnitudes to 1e-6 for n <= 5, and inverting the ground-state
//    energy recovers the tabulated P = 1.37608 to 1e-4.

#[test]
fn criterion_3_linear_anchor() {
    const ENERGY_TOLERANCE: f64 = 1e-6;
    const P_TOLERANCE: f64 = 1e-4;

    let mut max_abs = 0.0f64;
    let mut e10 = f64::NAN;
    for n in 1..=5u32 {
        let exact = specfun::linear_eigen_l0(n).unwrap();
        let got = power_eigenvalue(1.0, qn(n, 0)).unwrap();
        if n == 1 {
            e10 = got;
        }
        max_abs = max_abs.max((got - exact).abs());
    }
    let p_inverted = p_from_energy(e10, 1.0).unwrap();
    let p_dev = (p_inverted - 1.37608).abs();

    let pass = max_abs <= ENERGY_TOLERANCE && p_dev <= P_TOLERANCE;
    verdict(
        3,
        "linear-anchor",
        pass,
        &format!(
            "max |E - |a_n|| = {max_abs:.2e} (tol {ENERGY_TOLERANCE:.0e}), \
             P inversion off by {p_dev:.2e} (tol {P_TOLERANCE:.0e})"
        ),
    );
    assert!(max_abs <= ENERGY_TOLERANCE);
    assert!(p_dev <= P_TOLERANCE);
}

// 4. Bound sandwich, the central ordering claim. For each exponent and
//    coupling on the published grid, the bottom of every subspace
//    satisfies EL <= ELS <= EX <= min(EU, EC), with EX <= EGU at l = 0;
//    excited states satisfy EL <= EX <= EU. Zero violations, 1e-9 slack.

#[test]
fn criterion_4_bound_sandwich() {
    const SLACK: f64 = 1e-9;

    let mut checks = 0usize;
    let mut violations = Vec::new();
    let mut check = |label: String, lhs: f64, rhs: f64| {
        checks += 1;
        if lhs > rhs + SLACK {
            violations.push(format!("{label}: {lhs:.12e} > {rhs:.12e}"));
        }
    };

    for &q in &SANDWICH_Q {
        for &beta in &SANDWICH_BETA {
            for ell in 0..=2u32 {
                let quantum = qn(1, ell);
                let tag = format!("q={q} beta={beta} l={ell}");
                let el = eval_kind(quantum, q, beta, ValueKind::EL);
                let els = eval_kind(quantum, q, beta, ValueKind::ELS);
                let eu = eval_kind(quantum, q, beta, ValueKind::EU);
                let ec = eval_kind(quantum, q, beta, ValueKind::EC);
                let ex = eval_kind(quantum, q, beta, ValueKind::EX);
                check(format!("EL<=ELS {tag}"), el, els);
                check(format!("ELS<=EX {tag}"), els, ex);
                check(format!("EX<=EU {tag}"), ex, eu);
                check(format!("EX<=EC {tag}"), ex, ec);
                if ell == 0 {
                    let egu = eval_kind(quantum, q, beta, ValueKind::EGU);
                    check(format!("EX<=EGU {tag}"), ex, egu);
                }
            }
            for n in 2..=3u32 {
                for ell in 0..=2u32 {
                    let quantum = qn(n, ell);
                    let tag = format!("q={q} beta={beta} n={n} l={ell}");
                    let el = eval_kind(quantum, q, beta, ValueKind::EL);
                    let eu = eval_kind(quantum, q, beta, ValueKind::EU);
                    let ex = eval_kind(quantum, q, beta, ValueKind::EX);
                    check(format!("EL<=EX {tag}"), el, ex);
                    check(format!("EX<=EU {tag}"), ex, eu);
                }
            }
        }
    }

    let pass = violations.is_empty();
    verdict(
        4,
        "bound-sandwich",
        pass,
        &format!(
            "{checks} orderings checked, {} violations",
            violations.len()
        ),
    );
    assert!(pass, "violations:\n{}", violations.join("\n"));
}

// 5. Exactness degeneracies at q = 2. The Gaussian-trial P equals 3/2
//    to 1e-12 (the trial is the true oscillator ground state). The
//    envelope upper bound, however, is required here to coincide with
//    the shooting eigenvalue to 1e-6 across the coupling grid; the
//    envelope construction does not degenerate that way for the mixed
//    potential at any finite coupling (both of its channels are
//    tangent approximations of the other term), so the measured gap
//    stays order one and this criterion fails honestly. The verdict
//    line reports the measured minimum gap rather than hiding it.

#[test]
fn criterion_5_exactness_degeneracies() {
    const GAP_TOLERANCE: f64 = 1e-6;
    const P_TOLERANCE: f64 = 1e-12;

    let p_dev = (p_gaussian_upper(2.0).unwrap() - 1.5).abs();

    let mut min_gap = f64::INFINITY;
    let mut max_gap = 0.0f64;
    for &beta in &SANDWICH_BETA {
        for ell in 0..=2u32 {
            let quantum = qn(1, ell);
            let eu = eval_kind(quantum, 2.0, beta, ValueKind::EU);
            let ex = eval_kind(quantum, 2.0, beta, ValueKind::EX);
            let gap = (eu - ex).abs();
            min_gap = min_gap.min(gap);
            max_gap = max_gap.max(gap);
        }
    }

    let pass = p_dev <= P_TOLERANCE && max_gap <= GAP_TOLERANCE;
    verdict(
        5,
        "exactness-degeneracies",
        pass,
        &format!(
            "Gaussian P off by {p_dev:.2e} (tol {P_TOLERANCE:.0e}); \
             |EU - EX| in [{min_gap:.3e}, {max_gap:.3e}] against tol {GAP_TOLERANCE:.0e}"
        ),
    );
    assert!(p_dev <= P_TOLERANCE);
    assert!(
        max_gap <= GAP_TOLERANCE,
        "EU is a strict upper bound for the mixed potential at every tested \
         coupling; the smallest measured gap is {min_gap:.3e}, so the stated \
         1e-6 coincidence is unattainable as specified"
    );
}

// 6. Scaling identity: for 20 seeded parameter tuples the direct solve
//    of -omega Delta - A/r + B sgn(q) r^q equals (A^2/omega) times the
//    reduced solve at beta = (B/omega)(omega/A)^(q+2), relative 1e-6.

#[test]
fn criterion_6_scaling_identity() {
    const TOLERANCE: f64 = 1e-6;
    const SEED: u64 = 0x00c0_ffee;

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut log_uniform = move |lo: f64, hi: f64| {
        let t: f64 = rng.random_range(lo.ln()..hi.ln());
        t.exp()
    };

    // 18 draws across the positive exponent range plus two fixed
    // negative exponents; couplings vary a factor of four.
    let mut cases: Vec<(f64, f64, f64, f64)> = (0..18)
        .map(|_| {
            let q = log_uniform(0.3, 2.5);
            (
                q,
                log_uniform(0.5, 2.0),
                log_uniform(0.5, 2.0),
                log_uniform(0.5, 2.0),
            )
        })
        .collect();
    cases.push((
        -0.5,
        log_uniform(0.5, 2.0),
        log_uniform(0.5, 2.0),
        log_uniform(0.5, 2.0),
    ));
    cases.push((
        -0.75,
        log_uniform(0.5, 2.0),
        log_uniform(0.5, 2.0),
        log_uniform(0.5, 2.0),
    ));

    let states = [qn(1, 0), qn(1, 1), qn(2, 0)];
    let config = ShootingConfig::default();
    let mut max_rel = 0.0f64;
    let mut min_energy = f64::INFINITY;

    for (i, &(q, omega, a, b)) in cases.iter().enumerate() {
        let quantum = states[i % states.len()];
        let params = PotentialParams::new(omega, a, b, q).unwrap();
        let (reduced, scale) = reduce(&params);

        let solution =
            coulomb_plus_power_eigenvalue_with(&reduced, quantum, &SolverSettings::default())
                .unwrap();
        let via_scaling = scale * solution.energy;

        // Independent route: divide the operator by omega and solve the
        // resulting potential directly on a grid covering the same
        // physical decay radius (reduced lengths carry omega/A).
        let c = a / omega;
        let bq = b / omega * q.signum();
        let r_max = solution.r_max * omega / a;
        let grid = RadialGrid::new(1e-6, r_max, 20_000).unwrap();
        let direct =
            omega * eigenvalue(|r| -c / r + bq * r.powf(q), quantum, &grid, &config).unwrap();

        let rel = ((direct - via_scaling) / via_scaling).abs();
        max_rel = max_rel.max(rel);
        min_energy = min_energy.min(via_scaling.abs());
        assert!(
            rel <= TOLERANCE,
            "case {i}: q={q:.4} omega={omega:.4} A={a:.4} B={b:.4} \
             (n={}, l={}): direct {direct:.12e} vs scaled {via_scaling:.12e}",
            quantum.n,
            quantum.ell
        );
    }

    verdict(
        6,
        "scaling-identity",
        max_rel <= TOLERANCE,
        &format!(
            "20 tuples, max rel {max_rel:.2e} (tol {TOLERANCE:.0e}), \
             smallest |E| = {min_energy:.2e}"
        ),
    );
    assert!(max_rel <= TOLERANCE);
}

// 7. Parametric-curve consistency: every emitted (beta, E) point of the
//    envelope curves matches the direct minimization of the envelope
//    at that beta to 1e-8.

#[test]
fn criterion_7_parametric_consistency() {
    const TOLERANCE: f64 = 1e-8;
    const POINTS: usize = 100;

    let combos = [
        (qn(1, 0), BoundKind::EnvelopeLower),
        (qn(1, 0), BoundKind::EnvelopeUpper),
        (qn(1, 1), BoundKind::EnvelopeLower),
    ];

    let mut max_abs = 0.0f64;
    let mut compared = 0usize;
    for &q in &SANDWICH_Q {
        for &(quantum, kind) in &combos {
            let env = params_for(kind, quantum, q).unwrap();
            let r_lo = 2.0 * env.mu * 1e-3;
            let r_hi = 2.0 * env.mu * (1.0 - 1e-6);
            let ratio = (r_hi / r_lo).powf(1.0 / (POINTS - 1) as f64);
            let radii: Vec<f64> = (0..POINTS).map(|i| r_lo * ratio.powi(i as i32)).collect();
            for point in parametric_curve(q, &env, &radii).unwrap() {
                let params = PotentialParams::new(1.0, 1.0, point.beta, q).unwrap();
                let direct = semiclassical_energy(&params, &env).unwrap();
                max_abs = max_abs.max((point.energy - direct).abs());
                compared += 1;
            }
        }
    }

    let pass = max_abs <= TOLERANCE;
    verdict(
        7,
        "parametric-consistency",
        pass,
        &format!("{compared} curve points, max |E_curve - E_min| = {max_abs:.2e}"),
    );
    assert!(pass, "max deviation {max_abs:.3e}");
}

// 8. Variational stationarity: at the returned (d*, x*) the critical
//    point equation has relative residual <= 1e-10 and the shape
//    derivative dE/dd vanishes to 1e-6 relative at l = 0.

#[test]
fn criterion_8_variational_stationarity() {
    const X_RESIDUAL_TOLERANCE: f64 = 1e-10;
    const D_DERIVATIVE_TOLERANCE: f64 = 1e-6;

    let mut max_x_residual = 0.0f64;
    let mut max_d_derivative = 0.0f64;

    for &q in &[0.5, 1.0, 2.0, -0.5] {
        for &beta in &[0.1, 1.0, 10.0] {
            let vb = upper_bound(0, q, beta).unwrap();
            let coeffs = coefficients(0, q, vb.d_used, beta).unwrap();

            let c = coeffs.a2 / (2.0 * coeffs.a1);
            let k = q * coeffs.a3 / (2.0 * coeffs.a1);
            let x = vb.x_used;
            let residual = (x.powf(q + 2.0) - c * x.powf(q + 1.0) - k).abs() / x.powf(q + 2.0);
            max_x_residual = max_x_residual.max(residual);

            let energy_of = |d: f64| {
                let cf = coefficients(0, q, d, beta).unwrap();
                let xd = optimal_x(&cf, q).unwrap();
                energy_at(&cf, xd, q)
            };
            let h = 1e-6 * vb.d_used;
            let derivative = (energy_of(vb.d_used + h) - energy_of(vb.d_used - h)) / (2.0 * h);
            let rel = (derivative * vb.d_used).abs() / vb.energy.abs().max(1.0);
            max_d_derivative = max_d_derivative.max(rel);
        }
    }

    let pass = max_x_residual <= X_RESIDUAL_TOLERANCE && max_d_derivative <= D_DERIVATIVE_TOLERANCE;
    verdict(
        8,
        "variational-stationarity",
        pass,
        &format!(
            "max x-residual {max_x_residual:.2e} (tol {X_RESIDUAL_TOLERANCE:.0e}), \
             max |dE/dd| {max_d_derivative:.2e} (tol {D_DERIVATIVE_TOLERANCE:.0e})"
        ),
    );
    assert!(max_x_residual <= X_RESIDUAL_TOLERANCE);
    assert!(max_d_derivative <= D_DERIVATIVE_TOLERANCE);
}

// 9. Variational-gap regression: the relative gap (EC - EX)/|EX| over
//    the sandwich grid must never exceed the maxima frozen from the
//    first oracle run of this suite. A regression here means the trial
//    family or its optimizer got worse.

#[test]
fn criterion_9_variational_gap_regression() {
    // Frozen per-exponent maxima (first oracle run of this gate:
    // 9.136e-3, 7.706e-2, 3.887e-2), padded by 10 percent so last-ulp
    // jitter cannot flip the verdict. The q = 1 gap peaks at beta = 0.1
    // where |EX| passes near zero and inflates the relative measure.
    const GAP_CEILING: [(f64, f64); 3] = [(0.5, 1.01e-2), (1.0, 8.48e-2), (2.0, 4.28e-2)];

    let mut worst: Vec<(f64, f64, String)> = Vec::new();
    let mut regressions = Vec::new();
    for &(q, ceiling) in &GAP_CEILING {
        let mut max_gap = 0.0f64;
        let mut where_max = String::new();
        for &beta in &SANDWICH_BETA {
            for ell in 0..=2u32 {
                let quantum = qn(1, ell);
                let ec = eval_kind(quantum, q, beta, ValueKind::EC);
                let ex = eval_kind(quantum, q, beta, ValueKind::EX);
                let gap = (ec - ex) / ex.abs();
                if gap > max_gap {
                    max_gap = gap;
                    where_max = format!("beta={beta} l={ell}");
                }
            }
        }
        if max_gap > ceiling {
            regressions.push(format!(
                "q={q}: gap {max_gap:.6e} exceeds frozen ceiling {ceiling:.6e} ({where_max})"
            ));
        }
        worst.push((q, max_gap, where_max));
    }

    let pass = regressions.is_empty();
    let summary: Vec<String> = worst
        .iter()
        .map(|(q, gap, at)| format!("q={q}: max {gap:.3e} at {at}"))
        .collect();
    verdict(9, "variational-gap-regression", pass, &summary.join("; "));
    assert!(pass, "{}", regressions.join("\n"));
}
