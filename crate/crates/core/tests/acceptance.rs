//! Acceptance criteria, one line each. Runs without the libtest harness so
//! every line is printed; exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use locus_core::algebra::{
    adjoint, normal_form, GaussianRational, Mode, ModeRelations, NCPolynomial,
};
use locus_core::classical::{
    dynamic_translation_experiment, jacobiator, modified_bracket, random_points, Coordinate,
    Velocity,
};
use locus_core::momentum::{
    commutator_residual_study, eigenfunction_residual, expectation_tensor, halving_ladder,
    make_gaussian, position_space_transform, radial_convergence, radial_eigenfunction_check,
    uncertainty_report, EigenConfig, GaussianSpec, GridSpec, LeakTolerance, ResidualTarget,
    TransformConfig, TransformSamples,
};
use locus_core::poincare::{
    foldy_j, foldy_k, jacobi_scan, q_pnw, run_massive_suite, run_massless_suite, CheckStatus,
    VerificationReport, DEFAULT_DEGREE_CUTOFF,
};

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

fn status_of(r: &VerificationReport, id: &str) -> CheckStatus {
    r.check(id).map_or(CheckStatus::Fail, |c| c.status)
}

fn all_pass(r: &VerificationReport, ids: &[&str]) -> (bool, String) {
    let bad: Vec<String> = ids
        .iter()
        .filter(|id| status_of(r, id) != CheckStatus::Pass)
        .map(|id| format!("{id}={}", status_of(r, id)))
        .collect();
    (
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} pass", ids.join(", "))
        } else {
            bad.join(", ")
        },
    )
}

fn jacobi_scan_is_zero() -> Verdict {
    let start = Instant::now();
    let reports = [jacobi_scan(Mode::Massive), jacobi_scan(Mode::Massless)];
    let elapsed = start.elapsed();
    let triples: usize = reports.iter().map(|r| r.checks.len()).sum();
    let ok = reports.iter().all(|r| r.overall() == CheckStatus::Pass)
        && elapsed < Duration::from_secs(60);
    verdict(
        ok,
        format!("{triples} triples, {:.2} s", elapsed.as_secs_f64()),
    )
}

fn casimir_and_spin(massive: &VerificationReport) -> Verdict {
    let (ok, d) = all_pass(massive, &["casimir", "spin-algebra"]);
    verdict(ok, d)
}

fn pnw_identity_and_hermiticity(massive: &VerificationReport) -> Verdict {
    let (ok, d) = all_pass(massive, &["pnw-identity", "hermiticity"]);
    // Without the −(i/2)H⁻²P term the operator must stop being hermitian.
    let rel = ModeRelations::massive();
    let q = q_pnw(&foldy_j(), &foldy_k());
    let p1 = NCPolynomial::generator(locus_core::algebra::Generator::P1);
    let term = NCPolynomial::h_pow(-2) * &p1;
    let stripped = &q[0] + &term.scale(&GaussianRational::imag_ratio(1, 2));
    let sharp = normal_form(&(adjoint(&stripped) - &stripped), &rel)
        .map(|r| !r.is_zero())
        .unwrap_or(false);
    verdict(
        ok && sharp,
        format!("{d}; dropping the H⁻²P term breaks hermiticity: {sharp}"),
    )
}

fn derived_relations(massive: &VerificationReport, massless: &VerificationReport) -> Verdict {
    let (ok_m, d_m) = all_pass(
        massive,
        &["velocity", "vector", "parity", "boost", "time-reversal"],
    );
    let ccr = status_of(massless, "new-ccr") == CheckStatus::Pass;
    let agree = !massless.flags.iter().any(|f| f.starts_with("new-ccr"));
    verdict(
        ok_m && ccr && agree,
        format!(
            "massive: {d_m}; massless new-ccr {}, with/without ideal agree: {agree}",
            status_of(massless, "new-ccr")
        ),
    )
}

fn commuting_components(massless: &VerificationReport) -> Verdict {
    let status = status_of(massless, "commuting-components");
    let symbolic = status == CheckStatus::Pass && massless.degree_cutoff <= 10;
    // Numerical fallback, reported always and required only if the symbolic check is inconclusive.
    let start = Instant::now();
    let spec = GaussianSpec {
        alpha: 0.25,
        k0: [0.0; 3],
        norm_const: 1.0,
    };
    let tol = LeakTolerance {
        outside: 1e-6,
        ball: 0.5,
    };
    let fallback = halving_ladder(6.0, 1.5, 4).and_then(|g| {
        commutator_residual_study(ResidualTarget::PositionCommutator(0, 1), &spec, &g, &tol)
    });
    let elapsed = start.elapsed();
    let (order, numeric) = match &fallback {
        Ok(r) => (
            r.fitted_order,
            (r.fitted_order - 2.0).abs() <= 0.3 && elapsed < Duration::from_secs(300),
        ),
        Err(_) => (f64::NAN, false),
    };
    let ok = symbolic || (status == CheckStatus::Inconclusive && numeric);
    verdict(
        ok,
        format!(
            "symbolic {status} at cutoff {}; grid order {order:.3} in {:.1} s",
            massless.degree_cutoff,
            elapsed.as_secs_f64()
        ),
    )
}

fn isotropic_packet() -> Verdict {
    let run = || {
        let g = GridSpec::new(4.5, 97)?;
        let p = make_gaussian(1.0, [0.0; 3], &g)?;
        Ok::<_, locus_core::momentum::MomentumError>((
            expectation_tensor(&p),
            uncertainty_report(&p)?,
        ))
    };
    match run() {
        Ok((t, u)) => {
            let diag = (0..3)
                .map(|i| (t[i][i] - 1.0 / 3.0).abs())
                .fold(0.0, f64::max);
            let off = (0..3)
                .flat_map(|i| (0..3).filter(move |&j| j != i).map(move |j| t[i][j].abs()))
                .fold(0.0, f64::max);
            let bound = (0..3)
                .map(|i| u.dq[i] * u.dp[i] - 1.0 / 6.0)
                .fold(f64::INFINITY, f64::min);
            verdict(
                diag <= 1e-6 && off <= 1e-8 && bound >= -1e-6,
                format!("diagonal {diag:.2e}, off-diagonal {off:.2e}, min ΔQΔP − 1/6 = {bound:.4}"),
            )
        }
        Err(e) => verdict(false, e.to_string()),
    }
}

fn trace_identity() -> Verdict {
    let packets = [
        (1.0, [0.0; 3]),
        (1.0, [0.0, 0.0, 0.5]),
        (1.0, [0.3, -0.4, 0.2]),
        (2.0, [0.7, 0.0, -0.5]),
        (0.8, [-0.2, 0.6, 0.1]),
    ];
    let mut worst = 0.0f64;
    for (alpha, k0) in packets {
        let r = GridSpec::new(4.5, 97)
            .and_then(|g| make_gaussian(alpha, k0, &g))
            .and_then(|p| uncertainty_report(&p));
        match r {
            Ok(u) => worst = worst.max((u.trace_check - 0.5).abs()),
            Err(e) => return verdict(false, e.to_string()),
        }
    }
    verdict(
        worst <= 1e-6,
        format!(
            "max |tr − 1/2| = {worst:.2e} over {} packets",
            packets.len()
        ),
    )
}

fn kappa_ladder() -> Verdict {
    let alpha = 1.0f64;
    let grid = match GridSpec::new(4.5, 97) {
        Ok(g) => g,
        Err(e) => return verdict(false, e.to_string()),
    };
    let mut rungs = Vec::new();
    for k in [0.5, 0.25, 0.125] {
        let kappa = k / alpha.sqrt();
        match make_gaussian(alpha, [0.0, 0.0, kappa], &grid).and_then(|p| uncertainty_report(&p)) {
            Ok(u) => rungs.push((kappa, u.a, u.b * kappa * kappa)),
            Err(e) => return verdict(false, e.to_string()),
        }
    }
    let monotone = rungs
        .windows(2)
        .all(|w| w[1].1 > w[0].1 && w[1].2.abs() < w[0].2.abs());
    let [_, (ka, aa, ba), (kb, ab, bb)] = rungs[..] else {
        unreachable!()
    };
    let r2 = (ka / kb).powi(2);
    let a_lim = (r2 * ab - aa) / (r2 - 1.0);
    let b_lim = (r2 * bb - ba) / (r2 - 1.0);
    let ok = monotone && (a_lim - 1.0 / 6.0).abs() <= 1e-3 && b_lim.abs() <= 1e-3;
    verdict(ok, format!("A → {a_lim:.6}, Bκ² → {b_lim:.2e}, monotone {monotone}; last rung A = {ab:.6}, Bκ² = {bb:.2e}"))
}

fn radial_integration() -> Verdict {
    let q = 2.0;
    match (
        radial_eigenfunction_check(q, (0.1, 10.0), 4000),
        radial_convergence(q, (0.1, 10.0), &[2000, 4000]),
    ) {
        (Ok(c), Ok(l)) => {
            let ratio = l.residuals[0] / l.residuals[1];
            verdict(
                c.max_rel_error <= 1e-8 && (12.0..=20.0).contains(&ratio),
                format!(
                    "max relative error {:.2e}, halving ratio {ratio:.2}",
                    c.max_rel_error
                ),
            )
        }
        (Err(e), _) | (_, Err(e)) => verdict(false, e.to_string()),
    }
}

fn eigenfunction_order() -> Verdict {
    match eigenfunction_residual(
        [0.0, 0.0, 2.0],
        &[0.2, 0.1, 0.05, 0.02],
        &EigenConfig::default(),
    ) {
        Ok(r) => verdict(
            (r.report.fitted_order - 1.0).abs() <= 0.2,
            format!(
                "fitted order {:.4} over σ ∈ [0.02, 0.2]",
                r.report.fitted_order
            ),
        ),
        Err(e) => verdict(false, e.to_string()),
    }
}

fn transverse_profile() -> Verdict {
    let spacing = 0.05;
    let samples = TransformSamples::around(2.0, spacing);
    match position_space_transform([0.0, 0.0, 2.0], 0.05, &samples, &TransformConfig::default()) {
        Ok(p) => {
            let off = (p.peak_position - 2.0).abs();
            verdict(
                p.transverse_variation <= 0.05 && off <= spacing + 1e-12,
                format!(
                    "transverse variation {:.2}%, peak at {:.3} for |q| = 2",
                    100.0 * p.transverse_variation,
                    p.peak_position
                ),
            )
        }
        Err(e) => verdict(false, e.to_string()),
    }
}

fn frame_translation_and_bracket() -> Verdict {
    let mut shift = 0.0f64;
    for a in 0..10 {
        for b in 0..10 {
            let u1 = -0.95 + 0.19 * (a as f64 + 0.5);
            let phi = std::f64::consts::TAU * b as f64 / 10.0;
            let s = (1.0 - u1 * u1).sqrt();
            let u = [u1, s * phi.cos(), s * phi.sin()];
            match Velocity::massless(u).and_then(|v| dynamic_translation_experiment(&v, 1.0)) {
                Ok(r) => shift = shift.max((r.delta_q[1] + u[0] * u[1] * r.epsilon).abs()),
                Err(e) => return verdict(false, e.to_string()),
            }
        }
    }
    let mut jac = 0.0f64;
    let mut vel = 0.0f64;
    let points = random_points(100, 2024, (0.5, 5.0)).expect("valid range");
    for x in &points {
        let n = x.momentum_norm();
        for i in 0..3 {
            vel = vel.max(
                (modified_bracket(&Coordinate::Q(i), &Coordinate::Hamiltonian, x).unwrap()
                    - x.p[i] / n)
                    .abs(),
            );
            for j in 0..3 {
                for k in 0..3 {
                    jac = jac.max(
                        jacobiator(&Coordinate::Q(i), &Coordinate::Q(j), &Coordinate::P(k), x)
                            .unwrap()
                            .abs(),
                    );
                }
            }
        }
    }
    verdict(
        shift <= 1e-12 && jac <= 1e-6 && vel <= 1e-10,
        format!("ΔQ₂ error {shift:.1e} over 100 velocities, jacobiator {jac:.1e}, velocity error {vel:.1e}"),
    )
}

fn main() {
    let massive = run_massive_suite(DEFAULT_DEGREE_CUTOFF);
    let massless = run_massless_suite(DEFAULT_DEGREE_CUTOFF);
    let criteria: Vec<(&str, Box<dyn Fn() -> Verdict>)> = vec![
        ("Jacobi scan in both modes", Box::new(jacobi_scan_is_zero)),
        (
            "Casimir C2 = -m²S² and spin algebra",
            Box::new(|| casimir_and_spin(&massive)),
        ),
        (
            "PNW operator equals Q and is hermitian",
            Box::new(|| pnw_identity_and_hermiticity(&massive)),
        ),
        (
            "derived relations (massive) and new CCR (massless)",
            Box::new(|| derived_relations(&massive, &massless)),
        ),
        (
            "commuting position components",
            Box::new(|| commuting_components(&massless)),
        ),
        (
            "isotropic packet tensor and 1/6 bound",
            Box::new(isotropic_packet),
        ),
        ("trace of the bound tensor is 1/2", Box::new(trace_identity)),
        ("bound coefficients as kappa -> 0", Box::new(kappa_ladder)),
        (
            "radial RK4 against closed form",
            Box::new(radial_integration),
        ),
        (
            "eigenfunction residual order in width",
            Box::new(eigenfunction_order),
        ),
        ("position-space profile", Box::new(transverse_profile)),
        (
            "frame translation and projected bracket",
            Box::new(frame_translation_and_bracket),
        ),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let v = run();
        failed += usize::from(!v.pass);
        println!(
            "criterion {:>2} {} {name}: {}",
            n + 1,
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
