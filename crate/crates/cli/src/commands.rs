//! Subcommand bodies. Each returns an [`Outcome`] with its full configuration.

use locus_core::algebra::Mode;
use locus_core::classical::{
    dynamic_translation_experiment, jacobiator, modified_bracket, random_points, Coordinate,
    Velocity,
};
use locus_core::momentum::{
    eigenfunction_residual, expectation_tensor, make_gaussian, position_space_transform,
    radial_convergence, radial_eigenfunction_check, uncertainty_report, EigenConfig, GridSpec,
    TransformConfig, TransformSamples, UncertaintyReport,
};
use locus_core::poincare::{
    jacobi_scan, run_massive_suite, run_massless_suite, VerificationReport,
};
use serde_json::{json, Value};

use crate::output::{Outcome, Table, Verdict};

const TRACE_TOL: f64 = 1e-6;
const ROBERTSON_TOL: f64 = 1e-6;
const ISOTROPY_DIAG_TOL: f64 = 1e-6;
const ISOTROPY_OFF_TOL: f64 = 1e-8;
const KAPPA_LIMIT_TOL: f64 = 1e-3;
const ORDER_TOL: f64 = 0.2;
const RADIAL_TOL: f64 = 1e-8;
const RADIAL_RATIO: (f64, f64) = (12.0, 20.0);
const RADIAL_RANGE: (f64, f64) = (0.1, 10.0);
const RADIAL_STEPS: [usize; 2] = [2000, 4000];
const TRANSVERSE_TOL: f64 = 0.05;
const CLASSICAL_TOL: f64 = 1e-12;
const JACOBIATOR_TOL: f64 = 1e-6;
const VELOCITY_TOL: f64 = 1e-10;
const MOMENTUM_RANGE: (f64, f64) = (0.5, 5.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Massive,
    Massless,
    Jacobi,
}

fn from_reports(reports: &[VerificationReport]) -> Vec<Verdict> {
    reports
        .iter()
        .flat_map(|r| {
            let checks = r.checks.iter().map(move |c| {
                let residual = c.residual.to_string();
                let detail = match &c.note {
                    Some(n) => format!("{n}; residual {residual}"),
                    None => format!("residual {residual}"),
                };
                Verdict::with_status(format!("{}/{}", r.suite, c.check_id), c.status, detail)
            });
            let flags = r
                .flags
                .iter()
                .map(move |f| Verdict::new(format!("{}/flag", r.suite), false, f.clone()));
            checks.chain(flags)
        })
        .collect()
}

pub fn algebra(suite: Suite, cutoff: u32) -> Outcome {
    let reports = match suite {
        Suite::Massive => vec![run_massive_suite(cutoff)],
        Suite::Massless => vec![run_massless_suite(cutoff)],
        Suite::Jacobi => vec![jacobi_scan(Mode::Massive), jacobi_scan(Mode::Massless)],
    };
    let name = match suite {
        Suite::Massive => "algebra-massive",
        Suite::Massless => "algebra-massless",
        Suite::Jacobi => "algebra-jacobi",
    };
    Outcome {
        command: name.into(),
        config: json!({ "suite": suite, "degree_cutoff": cutoff }),
        verdicts: from_reports(&reports),
        result: json!(reports),
        tables: Vec::new(),
    }
}

fn uncertainty_row(alpha: f64, k0: [f64; 3], u: &UncertaintyReport) -> Vec<f64> {
    let mut row = vec![alpha, k0[0], k0[1], k0[2], u.a, u.b, u.trace_check];
    row.extend(u.dq);
    row.extend(u.dp);
    row.extend(u.bound_tensor.iter().flatten());
    row
}

/// Limit at κ → 0 from the last two rungs, assuming a κ² leading correction.
fn richardson(k_a: f64, x_a: f64, k_b: f64, x_b: f64) -> f64 {
    let r2 = (k_a / k_b).powi(2);
    (r2 * x_b - x_a) / (r2 - 1.0)
}

pub fn uncertainty(alpha: f64, k0s: &[[f64; 3]], n: usize, kmax: f64) -> Outcome {
    let mut verdicts = Vec::new();
    let mut results = Vec::new();
    let mut table = Table::new(
        "table",
        &[
            "alpha",
            "k0x",
            "k0y",
            "k0z",
            "A",
            "B",
            "trace_check",
            "dq1",
            "dq2",
            "dq3",
            "dp1",
            "dp2",
            "dp3",
            "bound_11",
            "bound_12",
            "bound_13",
            "bound_21",
            "bound_22",
            "bound_23",
            "bound_31",
            "bound_32",
            "bound_33",
        ],
    );
    let mut ladder = Vec::new();
    let grid = GridSpec::new(kmax, n);
    for &k0 in k0s {
        let tag = format!("k0=({},{},{})", k0[0], k0[1], k0[2]);
        let report = grid.clone().and_then(|g| {
            let p = make_gaussian(alpha, k0, &g)?;
            Ok((expectation_tensor(&p), uncertainty_report(&p)?))
        });
        let (tensor, u) = match report {
            Ok(r) => r,
            Err(e) => {
                verdicts.push(Verdict::error(format!("packet {tag}"), e));
                continue;
            }
        };
        let trace_err = (u.trace_check - 0.5).abs();
        verdicts.push(Verdict::new(
            format!("trace {tag}"),
            trace_err <= TRACE_TOL,
            format!("|tr − 1/2| = {trace_err:.3e}"),
        ));
        let diag_margin = (0..3)
            .map(|i| u.dq[i] * u.dp[i] - u.bound_tensor[i][i])
            .fold(f64::INFINITY, f64::min);
        verdicts.push(Verdict::new(
            format!("robertson-diagonal {tag}"),
            diag_margin >= -ROBERTSON_TOL,
            format!("min ΔQᵢΔPᵢ − bound = {diag_margin:.6e}"),
        ));
        verdicts.push(Verdict::new(
            format!("robertson-all-pairs {tag}"),
            u.robertson_margin >= -ROBERTSON_TOL,
            format!("min ΔQᵢΔPⱼ − |bound| = {:.6e}", u.robertson_margin),
        ));
        if k0 == [0.0; 3] {
            let diag = (0..3)
                .map(|i| (tensor[i][i] - 1.0 / 3.0).abs())
                .fold(0.0, f64::max);
            let off = (0..3)
                .flat_map(|i| (0..3).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| tensor[i][j].abs())
                .fold(0.0, f64::max);
            verdicts.push(Verdict::new(
                "isotropic-tensor",
                diag <= ISOTROPY_DIAG_TOL && off <= ISOTROPY_OFF_TOL,
                format!("diagonal off by {diag:.3e}, off-diagonal {off:.3e}"),
            ));
            let bound = (0..3)
                .map(|i| u.dq[i] * u.dp[i] - 1.0 / 6.0)
                .fold(f64::INFINITY, f64::min);
            verdicts.push(Verdict::new(
                "one-sixth-bound",
                bound >= -ROBERTSON_TOL,
                format!("min ΔQᵢΔPᵢ − 1/6 = {bound:.6e}"),
            ));
        } else {
            let kappa = k0.iter().map(|c| c * c).sum::<f64>().sqrt();
            ladder.push((kappa, u.a, u.b * kappa * kappa));
        }
        table.push(uncertainty_row(alpha, k0, &u));
        results.push(json!({ "k0": k0, "expectation_tensor": tensor, "report": u }));
    }
    let mut limits = Value::Null;
    if ladder.len() >= 2 {
        let [.., (ka, aa, ba), (kb, ab, bb)] = ladder[..] else {
            unreachable!()
        };
        let a_lim = richardson(ka, aa, kb, ab);
        let b_lim = richardson(ka, ba, kb, bb);
        let monotone = ladder
            .windows(2)
            .all(|w| w[1].0 < w[0].0 && w[1].1 > w[0].1 && w[1].2.abs() < w[0].2.abs());
        verdicts.push(Verdict::new(
            "kappa-limit",
            (a_lim - 1.0 / 6.0).abs() <= KAPPA_LIMIT_TOL && b_lim.abs() <= KAPPA_LIMIT_TOL,
            format!("A → {a_lim:.6}, Bκ² → {b_lim:.3e}"),
        ));
        verdicts.push(Verdict::new(
            "kappa-monotone",
            monotone,
            "A rises and |Bκ²| falls as κ shrinks",
        ));
        limits = json!({ "A": a_lim, "B_kappa2": b_lim, "last_rungs": [ka, kb] });
    }
    Outcome {
        command: "uncertainty".into(),
        config: json!({
            "alpha": alpha, "k0": k0s, "grid": n, "kmax": kmax, "eps_min": "2h",
            "tolerances": { "trace": TRACE_TOL, "robertson": ROBERTSON_TOL, "isotropy_diagonal": ISOTROPY_DIAG_TOL,
                "isotropy_off_diagonal": ISOTROPY_OFF_TOL, "kappa_limit": KAPPA_LIMIT_TOL },
        }),
        verdicts,
        result: json!({ "packets": results, "kappa_limit": limits }),
        tables: vec![table],
    }
}

pub fn eigen(q: [f64; 3], sigmas: &[f64]) -> Outcome {
    let cfg = EigenConfig::default();
    let mut verdicts = Vec::new();
    let mut tables = Vec::new();
    let mut result = json!({});
    match eigenfunction_residual(q, sigmas, &cfg) {
        Ok(r) => {
            let order = r.report.fitted_order;
            verdicts.push(Verdict::new(
                "angular-order",
                (order - 1.0).abs() <= ORDER_TOL,
                format!("fitted order {order:.4}"),
            ));
            let mut t = Table::new("sigma-ladder", &["parameter", "residual", "fitted_order"]);
            for (p, v) in r.report.parameters.iter().zip(&r.report.residuals) {
                t.push([*p, *v, order]);
            }
            tables.push(t);
            result["eigenfunction"] = json!(r);
        }
        Err(e) => verdicts.push(Verdict::error("angular-order", e)),
    }
    let qn = q.iter().map(|c| c * c).sum::<f64>().sqrt();
    let fine = radial_eigenfunction_check(qn, RADIAL_RANGE, RADIAL_STEPS[1]);
    let ladder = radial_convergence(qn, RADIAL_RANGE, &RADIAL_STEPS);
    match (fine, ladder) {
        (Ok(c), Ok(l)) => {
            verdicts.push(Verdict::new(
                "radial-accuracy",
                c.max_rel_error <= RADIAL_TOL,
                format!("max relative error {:.3e}", c.max_rel_error),
            ));
            let ratio = l.residuals[0] / l.residuals[1];
            verdicts.push(Verdict::new(
                "radial-step-halving",
                (RADIAL_RATIO.0..=RADIAL_RATIO.1).contains(&ratio),
                format!("error ratio {ratio:.3}"),
            ));
            let mut t = Table::new("radial-ladder", &["parameter", "residual", "fitted_order"]);
            for (p, v) in l.parameters.iter().zip(&l.residuals) {
                t.push([*p, *v, l.fitted_order]);
            }
            tables.push(t);
            result["radial"] = json!({ "check": c, "ladder": l });
        }
        (Err(e), _) | (_, Err(e)) => verdicts.push(Verdict::error("radial-accuracy", e)),
    }
    Outcome {
        command: "eigen".into(),
        config: json!({
            "q": q, "sigma_ladder": sigmas, "quadrature": cfg,
            "radial": { "range": RADIAL_RANGE, "steps": RADIAL_STEPS },
            "tolerances": { "order": ORDER_TOL, "radial": RADIAL_TOL, "halving_ratio": RADIAL_RATIO },
        }),
        verdicts,
        result,
        tables,
    }
}

pub fn fourier(q: [f64; 3], sigma: f64, spacing: f64) -> Outcome {
    let cfg = TransformConfig::default();
    let qn = q.iter().map(|c| c * c).sum::<f64>().sqrt();
    let samples = TransformSamples::around(qn, spacing);
    let mut verdicts = Vec::new();
    let mut tables = Vec::new();
    let mut result = Value::Null;
    match position_space_transform(q, sigma, &samples, &cfg) {
        Ok(p) => {
            verdicts.push(Verdict::new(
                "transverse-variation",
                p.transverse_variation <= TRANSVERSE_TOL,
                format!("{:.2}% of the peak", 100.0 * p.transverse_variation),
            ));
            let off = (p.peak_position - qn).abs();
            verdicts.push(Verdict::new(
                "peak-position",
                off <= spacing + 1e-12,
                format!("peak at {:.4}, |q| = {qn:.4}", p.peak_position),
            ));
            let mut t = Table::new("profile", &["x_along_q", "magnitude"]);
            for (x, m) in p.longitudinal.iter().zip(&p.magnitude) {
                t.push([*x, *m]);
            }
            tables.push(t);
            result = json!(p);
        }
        Err(e) => verdicts.push(Verdict::error("transform", e)),
    }
    Outcome {
        command: "fourier".into(),
        config: json!({ "q": q, "sigma": sigma, "spacing": spacing, "samples": samples, "quadrature": cfg,
            "tolerances": { "transverse": TRANSVERSE_TOL } }),
        verdicts,
        result,
        tables,
    }
}

/// Deterministic unit velocities with `u₁` away from zero.
pub fn velocity_grid(count: usize) -> Vec<[f64; 3]> {
    let side = (count as f64).sqrt().ceil().max(1.0) as usize;
    (0..count)
        .map(|k| {
            let (a, b) = (k / side, k % side);
            let u1 = -0.95 + 1.9 * (a as f64 + 0.5) / side as f64;
            let u1 = if u1.abs() < 0.05 {
                0.05f64.copysign(u1)
            } else {
                u1
            };
            let phi = std::f64::consts::TAU * b as f64 / side as f64;
            let s = (1.0 - u1 * u1).sqrt();
            [u1, s * phi.cos(), s * phi.sin()]
        })
        .collect()
}

pub fn classical(u: [f64; 3], t: f64, massive: bool, sweep: usize) -> Outcome {
    let mut verdicts = Vec::new();
    let run = |u: [f64; 3]| {
        let v = if massive {
            Velocity::massive(u)
        } else {
            Velocity::massless(u)
        }?;
        let r = dynamic_translation_experiment(&v, t)?;
        let oracle = -u[0] * u[0] * u[1] * t;
        Ok::<_, locus_core::classical::ClassicalError>((r, (r.delta_q[1] - oracle).abs()))
    };
    let mut result = json!({});
    match run(u) {
        Ok((r, err)) => {
            verdicts.push(Verdict::new(
                "transverse-shift",
                err <= CLASSICAL_TOL,
                format!("abs_error {err:.3e}"),
            ));
            result["experiment"] = json!(r);
            result["abs_error"] = json!(err);
        }
        Err(e) => verdicts.push(Verdict::error("transverse-shift", e)),
    }
    if sweep > 0 {
        let mut worst = 0.0f64;
        let mut failure = None;
        for w in velocity_grid(sweep) {
            match run(w) {
                Ok((r, _)) => {
                    worst =
                        worst.max((r.bracket_estimate * r.epsilon + w[0] * w[1] * r.epsilon).abs())
                }
                Err(e) => failure = Some(e),
            }
        }
        match failure {
            Some(e) => verdicts.push(Verdict::error("velocity-sweep", e)),
            None => verdicts.push(Verdict::new(
                "velocity-sweep",
                worst <= CLASSICAL_TOL,
                format!("max |ΔQ₂ + u₁u₂ε| = {worst:.3e} over {sweep} velocities"),
            )),
        }
        result["sweep_max_error"] = json!(worst);
    }
    Outcome {
        command: "classical".into(),
        config: json!({ "u": u, "t": t, "massive": massive, "sweep": sweep, "tolerances": { "abs": CLASSICAL_TOL } }),
        verdicts,
        result,
        tables: Vec::new(),
    }
}

pub fn jacobi_bracket(samples: usize, seed: u64) -> Outcome {
    let mut verdicts = Vec::new();
    let points = match random_points(samples, seed, MOMENTUM_RANGE) {
        Ok(p) => p,
        Err(e) => {
            verdicts.push(Verdict::error("sampling", e));
            Vec::new()
        }
    };
    let mut coord = 0.0f64;
    let mut with_h = 0.0f64;
    let mut velocity = 0.0f64;
    let mut failure = None;
    for x in &points {
        let mut step = || -> Result<(), locus_core::classical::ClassicalError> {
            let n = x.momentum_norm();
            for i in 0..3 {
                velocity = velocity.max(
                    (modified_bracket(&Coordinate::Q(i), &Coordinate::Hamiltonian, x)?
                        - x.p[i] / n)
                        .abs(),
                );
                for j in 0..3 {
                    with_h = with_h.max(
                        jacobiator(
                            &Coordinate::Q(i),
                            &Coordinate::P(j),
                            &Coordinate::Hamiltonian,
                            x,
                        )?
                        .abs(),
                    );
                    for k in 0..3 {
                        coord = coord.max(
                            jacobiator(&Coordinate::Q(i), &Coordinate::Q(j), &Coordinate::P(k), x)?
                                .abs(),
                        );
                    }
                }
            }
            Ok(())
        };
        if let Err(e) = step() {
            failure = Some(e);
        }
    }
    if let Some(e) = failure {
        verdicts.push(Verdict::error("bracket", e));
    }
    verdicts.push(Verdict::new(
        "jacobiator-coordinates",
        coord <= JACOBIATOR_TOL,
        format!("max {coord:.3e}"),
    ));
    verdicts.push(Verdict::new(
        "jacobiator-hamiltonian",
        with_h <= JACOBIATOR_TOL,
        format!("max {with_h:.3e}"),
    ));
    verdicts.push(Verdict::new(
        "hamiltonian-velocity",
        velocity <= VELOCITY_TOL,
        format!("max {velocity:.3e}"),
    ));
    Outcome {
        command: "jacobi-bracket".into(),
        config: json!({ "samples": samples, "seed": seed, "momentum_range": MOMENTUM_RANGE, "position_box": [-5.0, 5.0],
            "tolerances": { "jacobiator": JACOBIATOR_TOL, "velocity": VELOCITY_TOL } }),
        verdicts,
        result: json!({ "max_jacobiator_coordinates": coord, "max_jacobiator_hamiltonian": with_h, "max_velocity_error": velocity }),
        tables: Vec::new(),
    }
}
