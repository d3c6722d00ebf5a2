//! Symbolic verification suites.

use std::time::Instant;

use rayon::prelude::*;

use super::library::{
    casimir_c2, dot, foldy_j, foldy_k, helicity_relations, q_massless, q_pnw, spin_s, vector_of,
    Vector3,
};
use super::report::{CheckResult, CheckStatus, VerificationReport};
use crate::algebra::{
    adjoint, apply_discrete_symmetry, ideal_reduce, levi_civita, normal_form, AlgebraError,
    DiscreteSymmetry, Family, GaussianRational, Generator, Membership, Mode, ModeRelations,
    NCPolynomial,
};

pub const DEFAULT_DEGREE_CUTOFF: u32 = 10;

type Labelled = Vec<(String, NCPolynomial)>;

struct Outcome {
    status: CheckStatus,
    residual: NCPolynomial,
    note: Option<String>,
}

impl Outcome {
    fn engine_error(e: &AlgebraError) -> Self {
        Outcome {
            status: CheckStatus::Inconclusive,
            residual: NCPolynomial::zero(),
            note: Some(e.to_string()),
        }
    }
}

type Job<'a> = (String, Box<dyn Fn() -> Outcome + Send + Sync + 'a>);

fn run_jobs(jobs: Vec<Job<'_>>) -> Vec<CheckResult> {
    let mut out: Vec<CheckResult> = jobs
        .into_par_iter()
        .map(|(id, f)| {
            let start = Instant::now();
            let o = f();
            CheckResult {
                check_id: id,
                status: o.status,
                residual: o.residual,
                elapsed: start.elapsed(),
                note: o.note,
            }
        })
        .collect();
    out.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    out
}

fn g(x: Generator) -> NCPolynomial {
    NCPolynomial::generator(x)
}

fn gi(re: i64, im: i64) -> GaussianRational {
    GaussianRational::from_int(re) + GaussianRational::imag_ratio(im, 1)
}

fn bracket(a: &NCPolynomial, b: &NCPolynomial) -> NCPolynomial {
    a * b - b * a
}

/// `Σₖ c·εᵢⱼₖ vₖ`.
fn eps_contract(i: usize, j: usize, v: &Vector3, c: &GaussianRational) -> NCPolynomial {
    (0..3)
        .filter(|&k| levi_civita(i, j, k) != 0)
        .map(|k| v[k].scale(&c.scale_int(levi_civita(i, j, k))))
        .sum()
}

fn normalize_all(v: &Vector3, rel: &ModeRelations) -> Result<Vector3, AlgebraError> {
    let mut out: Vector3 = Default::default();
    for (o, c) in out.iter_mut().zip(v) {
        *o = normal_form(c, rel)?;
    }
    Ok(out)
}

/// Evaluates each labelled difference; every residual must vanish exactly.
fn exact(diffs: Result<Labelled, AlgebraError>, rel: &ModeRelations) -> Outcome {
    let diffs = match diffs {
        Ok(d) => d,
        Err(e) => return Outcome::engine_error(&e),
    };
    match exact_residuals(&diffs, rel) {
        Ok(res) => summarize(res.into_iter().map(|(l, r)| {
            let s = if r.is_zero() {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            };
            (l, s, r)
        })),
        Err(e) => Outcome::engine_error(&e),
    }
}

fn exact_residuals(diffs: &Labelled, rel: &ModeRelations) -> Result<Labelled, AlgebraError> {
    diffs
        .iter()
        .map(|(l, d)| Ok((l.clone(), normal_form(d, rel)?)))
        .collect()
}

fn summarize(items: impl Iterator<Item = (String, CheckStatus, NCPolynomial)>) -> Outcome {
    let mut status = CheckStatus::Pass;
    let mut residual = NCPolynomial::zero();
    let mut bad = Vec::new();
    for (label, s, r) in items {
        if s != CheckStatus::Pass {
            if bad.is_empty() {
                residual = r;
            }
            bad.push(format!("{label}: {s}"));
        }
        status = status.worst(s);
    }
    let note = (!bad.is_empty()).then(|| bad.join("; "));
    Outcome {
        status,
        residual,
        note,
    }
}

/// Status of one massless residual: exact zero passes, otherwise membership
/// in the mass-shell ideal decides.
/// The cutoff bounds the expression as written, before any reduction.
fn modulo_ideal(
    expr: &NCPolynomial,
    rel: &ModeRelations,
    cutoff: u32,
) -> (CheckStatus, NCPolynomial, String) {
    let nf = match normal_form(expr, rel) {
        Ok(nf) => nf,
        Err(e) => {
            return (
                CheckStatus::Inconclusive,
                NCPolynomial::zero(),
                e.to_string(),
            )
        }
    };
    let degree = expr.degree();
    if degree > cutoff {
        let e = AlgebraError::CutoffTooSmall { cutoff, degree };
        return (CheckStatus::Inconclusive, nf, e.to_string());
    }
    if nf.is_zero() {
        return (CheckStatus::Pass, nf, String::new());
    }
    match ideal_reduce(&nf, rel, cutoff) {
        Ok(r) => match r.status {
            Membership::Member => (CheckStatus::Pass, r.residual, "ideal member".into()),
            Membership::NotMember => {
                let how = if r.witnessed {
                    "not in ideal (realization witness)"
                } else {
                    "not in ideal"
                };
                (CheckStatus::Fail, r.residual, how.into())
            }
            Membership::Inconclusive => (
                CheckStatus::Inconclusive,
                r.residual,
                format!("undecided at cutoff {cutoff}"),
            ),
        },
        Err(e) => (CheckStatus::Inconclusive, nf, e.to_string()),
    }
}

fn modulo_ideal_all(
    diffs: Result<Labelled, AlgebraError>,
    rel: &ModeRelations,
    cutoff: u32,
) -> Outcome {
    let diffs = match diffs {
        Ok(d) => d,
        Err(e) => return Outcome::engine_error(&e),
    };
    summarize(diffs.into_iter().map(|(l, d)| {
        let (s, r, why) = modulo_ideal(&d, rel, cutoff);
        let label = if why.is_empty() {
            l
        } else {
            format!("{l} ({why})")
        };
        (label, s, r)
    }))
}

fn pair_label(name: &str, i: usize, j: usize) -> String {
    format!("{name}[{},{}]", i + 1, j + 1)
}

fn comp_label(name: &str, i: usize) -> String {
    format!("{name}{}", i + 1)
}

/// `i[H, Qᵢ] − H⁻¹Pᵢ`.
fn velocity_diffs(q: &Vector3) -> Labelled {
    let p = vector_of(Family::P);
    (0..3)
        .map(|i| {
            let d =
                bracket(&g(Generator::H), &q[i]).scale(&gi(0, 1)) - NCPolynomial::h_pow(-1) * &p[i];
            (comp_label("Q", i), d)
        })
        .collect()
}

/// `[Jᵢ, Qⱼ] − iεᵢⱼₖQₖ`.
fn vector_diffs(j: &Vector3, q: &Vector3) -> Labelled {
    let mut out = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            out.push((
                pair_label("J,Q", a, b),
                bracket(&j[a], &q[b]) - eps_contract(a, b, q, &gi(0, 1)),
            ));
        }
    }
    out
}

/// `ΠQΠ + Q`.
fn parity_diffs(q: &Vector3) -> Labelled {
    (0..3)
        .map(|i| {
            (
                comp_label("Q", i),
                apply_discrete_symmetry(&q[i], DiscreteSymmetry::Parity) + &q[i],
            )
        })
        .collect()
}

/// `[Kᵢ, Qⱼ] + iH⁻¹PᵢQⱼ`, operators in the written order.
fn boost_diffs(k: &Vector3, q: &Vector3) -> Labelled {
    let p = vector_of(Family::P);
    let mut out = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            let rhs = (NCPolynomial::h_pow(-1) * &p[a] * &q[b]).scale(&gi(0, -1));
            out.push((pair_label("K,Q", a, b), bracket(&k[a], &q[b]) - rhs));
        }
    }
    out
}

/// `𝒯Q𝒯 − Q`.
fn time_reversal_diffs(q: &Vector3) -> Labelled {
    (0..3)
        .map(|i| {
            (
                comp_label("Q", i),
                apply_discrete_symmetry(&q[i], DiscreteSymmetry::TimeReversal) - &q[i],
            )
        })
        .collect()
}

/// `Q† − Q`.
fn hermiticity_diffs(q: &Vector3) -> Labelled {
    (0..3)
        .map(|i| (comp_label("Q", i), adjoint(&q[i]) - &q[i]))
        .collect()
}

/// All brackets of the Poincaré algebra for the given `J`, `K`.
fn closure_diffs(j: &Vector3, k: &Vector3) -> Labelled {
    let p = vector_of(Family::P);
    let h = g(Generator::H);
    let i1 = gi(0, 1);
    let mut out = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            out.push((pair_label("P,P", a, b), bracket(&p[a], &p[b])));
            out.push((
                pair_label("J,J", a, b),
                bracket(&j[a], &j[b]) - eps_contract(a, b, j, &i1),
            ));
            out.push((
                pair_label("K,K", a, b),
                bracket(&k[a], &k[b]) + eps_contract(a, b, j, &i1),
            ));
            out.push((
                pair_label("J,P", a, b),
                bracket(&j[a], &p[b]) - eps_contract(a, b, &p, &i1),
            ));
            out.push((
                pair_label("J,K", a, b),
                bracket(&j[a], &k[b]) - eps_contract(a, b, k, &i1),
            ));
            let delta = if a == b {
                h.scale(&i1)
            } else {
                NCPolynomial::zero()
            };
            out.push((pair_label("K,P", a, b), bracket(&k[a], &p[b]) - delta));
        }
        out.push((comp_label("[P,H] ", a), bracket(&p[a], &h)));
        out.push((comp_label("[J,H] ", a), bracket(&j[a], &h)));
        out.push((
            comp_label("[K,H] ", a),
            bracket(&k[a], &h) - p[a].scale(&i1),
        ));
    }
    out
}

fn with_ok<F: FnOnce(&Vector3) -> Labelled>(
    v: &Result<Vector3, AlgebraError>,
    f: F,
) -> Result<Labelled, AlgebraError> {
    v.as_ref().map(f).map_err(Clone::clone)
}

/// Massive checks whose truth follows from the position-operator identity.
const RELATION_CHECKS: [&str; 5] = ["boost", "parity", "time-reversal", "vector", "velocity"];

fn derived_massive_diffs(id: &str, j: &Vector3, k: &Vector3, q: &Vector3) -> Labelled {
    match id {
        "velocity" => velocity_diffs(q),
        "vector" => vector_diffs(j, q),
        "parity" => parity_diffs(q),
        "boost" => boost_diffs(k, q),
        "time-reversal" => time_reversal_diffs(q),
        _ => unreachable!("not a derived massive check"),
    }
}

/// Foldy realization checks. `degree_cutoff` is recorded only: massive
/// normal forms are already canonical modulo the mass shell.
pub fn run_massive_suite(degree_cutoff: u32) -> VerificationReport {
    let rel = ModeRelations::massive();
    let j = foldy_j();
    let k = foldy_k();
    let q_printed = q_pnw(&j, &k);
    let j_nf = normalize_all(&j, &rel);
    let k_nf = normalize_all(&k, &rel);
    let q_nf = normalize_all(&q_printed, &rel);
    let q_prim = vector_of(Family::Q);

    let mut jobs: Vec<Job<'_>> = Vec::new();
    let (rel_ref, j_ref, k_ref) = (&rel, &j_nf, &k_nf);
    jobs.push((
        "poincare-closure".into(),
        Box::new(move || {
            exact(
                j_ref.as_ref().map_err(Clone::clone).and_then(|j| {
                    k_ref
                        .as_ref()
                        .map(|k| closure_diffs(j, k))
                        .map_err(Clone::clone)
                }),
                rel_ref,
            )
        }),
    ));
    jobs.push((
        "casimir".into(),
        Box::new(move || {
            let diffs = j_ref.as_ref().map_err(Clone::clone).and_then(|j| {
                k_ref.as_ref().map_err(Clone::clone).map(|k| {
                    let s = vector_of(Family::S);
                    vec![(
                        "C2 + m^2 S^2".to_string(),
                        casimir_c2(j, k) + NCPolynomial::mass(2) * dot(&s, &s),
                    )]
                })
            });
            exact(diffs, rel_ref)
        }),
    ));
    jobs.push((
        "spin-algebra".into(),
        Box::new(move || {
            let diffs = with_ok(j_ref, |j| {
                let s = spin_s(j);
                let mut out = Vec::new();
                for a in 0..3 {
                    for b in 0..3 {
                        out.push((
                            pair_label("S,S", a, b),
                            bracket(&s[a], &s[b]) - eps_contract(a, b, &s, &gi(0, 1)),
                        ));
                    }
                }
                out
            });
            exact(diffs, rel_ref)
        }),
    ));
    let (qp_ref, qprim_ref) = (&q_printed, &q_prim);
    jobs.push((
        "pnw-identity".into(),
        Box::new(move || {
            exact(
                Ok((0..3)
                    .map(|i| (comp_label("Q", i), &qp_ref[i] - &qprim_ref[i]))
                    .collect()),
                rel_ref,
            )
        }),
    ));
    jobs.push((
        "hermiticity".into(),
        Box::new(move || exact(Ok(hermiticity_diffs(qp_ref)), rel_ref)),
    ));
    let q_ref = &q_nf;
    for id in RELATION_CHECKS {
        jobs.push((
            id.into(),
            Box::new(move || {
                let diffs = j_ref.as_ref().map_err(Clone::clone).and_then(|j| {
                    k_ref.as_ref().map_err(Clone::clone).and_then(|k| {
                        q_ref
                            .as_ref()
                            .map_err(Clone::clone)
                            .map(|q| derived_massive_diffs(id, j, k, q))
                    })
                });
                exact(diffs, rel_ref)
            }),
        ));
    }
    let checks = run_jobs(jobs);

    // If the identity holds, every derived check must behave exactly as it
    // does for the primitive Q; anything else is an engine inconsistency.
    let mut flags = Vec::new();
    let pnw_ok = checks
        .iter()
        .any(|c| c.check_id == "pnw-identity" && c.status == CheckStatus::Pass);
    if let (true, Ok(j), Ok(k), Ok(q)) = (pnw_ok, &j_nf, &k_nf, &q_nf) {
        let consistency: Vec<Option<String>> = RELATION_CHECKS
            .par_iter()
            .map(|id| {
                let lhs = exact_residuals(&derived_massive_diffs(id, j, k, q), &rel);
                let rhs = exact_residuals(&derived_massive_diffs(id, j, k, &q_prim), &rel);
                match (lhs, rhs) {
                    (Ok(a), Ok(b)) if a == b => None,
                    _ => Some(format!(
                        "engine inconsistency: `{id}` differs between Q_PNW and primitive Q"
                    )),
                }
            })
            .collect();
        flags.extend(consistency.into_iter().flatten());
    }
    VerificationReport {
        suite: "massive".into(),
        mode: Mode::Massive,
        degree_cutoff,
        checks,
        flags,
    }
}

/// Checks for the massless position operator, reduced modulo the mass-shell ideal.
pub fn run_massless_suite(degree_cutoff: u32) -> VerificationReport {
    let rel = ModeRelations::massless();
    let q = normalize_all(&q_massless(), &rel);
    let q_printed = q_massless();
    let j = vector_of(Family::J);
    let k = vector_of(Family::K);
    let p = vector_of(Family::P);
    let (rel_ref, q_ref, j_ref, k_ref, p_ref) = (&rel, &q, &j, &k, &p);
    let cutoff = degree_cutoff;

    let ccr = with_ok(q_ref, |q| {
        let mut out = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                let rhs = (NCPolynomial::h_pow(-2) * &p_ref[a] * &p_ref[b]).scale(&gi(0, 1));
                out.push((pair_label("Q,P", a, b), bracket(&q[a], &p_ref[b]) - rhs));
            }
        }
        out
    });
    let ccr_ref = &ccr;

    let mut jobs: Vec<Job<'_>> = Vec::new();
    jobs.push((
        "new-ccr".into(),
        Box::new(move || modulo_ideal_all(ccr_ref.clone(), rel_ref, cutoff)),
    ));
    jobs.push((
        "commuting-components".into(),
        Box::new(move || {
            let diffs = with_ok(q_ref, |q| {
                [(0, 1), (0, 2), (1, 2)]
                    .iter()
                    .map(|&(a, b)| (pair_label("Q,Q", a, b), bracket(&q[a], &q[b])))
                    .collect()
            });
            modulo_ideal_all(diffs, rel_ref, cutoff)
        }),
    ));
    jobs.push((
        "velocity".into(),
        Box::new(move || modulo_ideal_all(with_ok(q_ref, velocity_diffs), rel_ref, cutoff)),
    ));
    jobs.push((
        "vector".into(),
        Box::new(move || {
            modulo_ideal_all(with_ok(q_ref, |q| vector_diffs(j_ref, q)), rel_ref, cutoff)
        }),
    ));
    jobs.push((
        "parity".into(),
        Box::new(move || modulo_ideal_all(with_ok(q_ref, parity_diffs), rel_ref, cutoff)),
    ));
    jobs.push((
        "boost".into(),
        Box::new(move || {
            modulo_ideal_all(with_ok(q_ref, |q| boost_diffs(k_ref, q)), rel_ref, cutoff)
        }),
    ));
    jobs.push((
        "time-reversal".into(),
        Box::new(move || modulo_ideal_all(with_ok(q_ref, time_reversal_diffs), rel_ref, cutoff)),
    ));
    let qp_ref = &q_printed;
    jobs.push((
        "hermiticity".into(),
        Box::new(move || exact(Ok(hermiticity_diffs(qp_ref)), rel_ref)),
    ));
    jobs.push((
        "ideal-consistency".into(),
        Box::new(move || {
            // P·(HJ + P×K − P H⁻¹(P·J)) vanishes using only H² = P².
            let shell_only = ModeRelations::massless_shell_only();
            let rels = helicity_relations();
            let e: NCPolynomial = (0..3).map(|a| &p_ref[a] * &rels[a]).sum();
            modulo_ideal_all(Ok(vec![("P.R".into(), e)]), &shell_only, cutoff.max(4))
        }),
    ));
    let checks = run_jobs(jobs);

    // The new commutator must vanish by the Poincaré brackets alone.
    let mut flags = Vec::new();
    let with_ideal = checks.iter().find(|c| c.check_id == "new-ccr");
    let without = ccr.as_ref().ok().map(|d| exact_residuals(d, &rel));
    match (with_ideal, without) {
        (Some(c), Some(Ok(res))) => {
            let plain_zero = res.iter().all(|(_, r)| r.is_zero());
            let ideal_zero = c.status == CheckStatus::Pass && c.residual.is_zero();
            if c.status != CheckStatus::Inconclusive && plain_zero != ideal_zero {
                flags.push("new-ccr: reduction with and without the ideal disagree".into());
            }
        }
        _ => flags.push("new-ccr: could not be evaluated without the ideal".into()),
    }
    VerificationReport {
        suite: "massless".into(),
        mode: Mode::Massless,
        degree_cutoff,
        checks,
        flags,
    }
}

/// Jacobi sum for every unordered triple of distinct primitive generators.
pub fn jacobi_scan(mode: Mode) -> VerificationReport {
    let rel = ModeRelations::for_mode(mode);
    let prims = Generator::primitives(mode);
    let mut triples = Vec::new();
    for a in 0..prims.len() {
        for b in a + 1..prims.len() {
            for c in b + 1..prims.len() {
                triples.push((prims[a], prims[b], prims[c]));
            }
        }
    }
    let rel_ref = &rel;
    let jobs: Vec<Job<'_>> = triples
        .into_iter()
        .map(|(x, y, z)| -> Job<'_> {
            let id = format!("jacobi({x},{y},{z})");
            (
                id,
                Box::new(move || {
                    let (x, y, z) = (g(x), g(y), g(z));
                    let sum = bracket(&bracket(&x, &y), &z)
                        + bracket(&bracket(&y, &z), &x)
                        + bracket(&bracket(&z, &x), &y);
                    exact(Ok(vec![("jacobi".into(), sum)]), rel_ref)
                }),
            )
        })
        .collect();
    let checks = run_jobs(jobs);
    VerificationReport {
        suite: format!("jacobi-{mode}"),
        mode,
        degree_cutoff: 0,
        checks,
        flags: Vec::new(),
    }
}
