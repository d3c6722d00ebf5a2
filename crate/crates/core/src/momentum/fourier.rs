//! Position-space profile of the regularized eigenfunction.
//!
//! `Ψ(x) = ∫ d³P/P · Φ(P) e^{+iP·x}` with `Φ = e^{−iP|q|}/P · g_σ(θ)` and an
//! `e^{−ηP}` regulator on the radial integral. The `1/P` factors cancel the
//! `P²` of the measure, leaving `∫dP e^{−ηP} ∫dΩ g_σ e^{iP(k̂·x − |q|)}`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::eigen::{bump, bump_nodes, perpendicular_basis};
use super::quadrature::composite_gauss_legendre;
use super::MomentumError;

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct TransformConfig {
    /// Radial regulator `e^{−ηP}`.
    pub eta: f64,
    pub angular_nodes: usize,
    pub azimuthal_nodes: usize,
    pub nodes_per_panel: usize,
    pub initial_panels: usize,
    /// Budget on radial panels; exceeding it is an error.
    pub max_panels: usize,
    /// Accept once doubling the panels changes no sample by more than this
    /// fraction of the largest magnitude.
    pub rel_tol: f64,
}

impl Default for TransformConfig {
    fn default() -> Self {
        Self {
            eta: 0.5,
            angular_nodes: 32,
            azimuthal_nodes: 24,
            nodes_per_panel: 16,
            initial_panels: 16,
            max_panels: 1024,
            rel_tol: 1e-8,
        }
    }
}

/// Where to sample: offsets along `q̂` and perpendicular distances.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TransformSamples {
    pub longitudinal: Vec<f64>,
    pub transverse: Vec<f64>,
}

impl TransformSamples {
    /// `x·q̂ ∈ [0, 2|q|]` at the given spacing, transverse offsets 0.5, 1, 2.
    pub fn around(q_norm: f64, spacing: f64) -> Self {
        let n = (2.0 * q_norm / spacing).round() as usize;
        Self {
            longitudinal: (0..=n).map(|i| i as f64 * spacing).collect(),
            transverse: vec![0.5, 1.0, 2.0],
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TransformProfile {
    pub longitudinal: Vec<f64>,
    pub magnitude: Vec<f64>,
    pub peak_position: f64,
    pub peak_magnitude: f64,
    /// Full width at half maximum of `|Ψ|` along `q̂` (NaN if not bracketed).
    pub fwhm: f64,
    /// `max |Ψ(x_peak + ρe) − Ψ(x_peak)| / |Ψ(x_peak)|` over perpendicular offsets.
    pub transverse_variation: f64,
    pub radial_panels: usize,
}

struct Angular {
    dirs: Vec<[f64; 3]>,
    weights: Vec<f64>,
}

fn angular(q_hat: [f64; 3], sigma: f64, cfg: &TransformConfig) -> Angular {
    let (e1, e2) = perpendicular_basis(q_hat);
    let nphi = cfg.azimuthal_nodes.max(4);
    let two_pi = 2.0 * std::f64::consts::PI;
    let norm = two_pi * sigma * sigma * (1.0 - (-2.0 / (sigma * sigma)).exp());
    let mut dirs = Vec::new();
    let mut weights = Vec::new();
    for (u, wu) in bump_nodes(sigma, cfg.angular_nodes) {
        let (cos_t, sin_t) = (1.0 - u, (u * (2.0 - u)).max(0.0).sqrt());
        for p in 0..nphi {
            let phi = two_pi * p as f64 / nphi as f64;
            dirs.push(std::array::from_fn(|a| {
                sin_t * (phi.cos() * e1[a] + phi.sin() * e2[a]) + cos_t * q_hat[a]
            }));
            weights.push(wu * two_pi / nphi as f64 * bump(u, sigma) / norm);
        }
    }
    Angular { dirs, weights }
}

fn evaluate(
    points: &[[f64; 3]],
    q_norm: f64,
    ang: &Angular,
    radial: &[(f64, f64)],
    eta: f64,
) -> Vec<Complex64> {
    points
        .par_iter()
        .map(|x| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (d, &w) in ang.dirs.iter().zip(&ang.weights) {
                let a = d[0] * x[0] + d[1] * x[1] + d[2] * x[2] - q_norm;
                let s: Complex64 = radial
                    .iter()
                    .map(|&(p, wp)| wp * (-eta * p).exp() * Complex64::from_polar(1.0, p * a))
                    .sum();
                acc += w * s;
            }
            acc
        })
        .collect()
}

fn converged(
    points: &[[f64; 3]],
    q_norm: f64,
    ang: &Angular,
    cfg: &TransformConfig,
) -> Result<(Vec<Complex64>, usize), MomentumError> {
    let p_max = 36.0 / cfg.eta;
    let mut panels = cfg.initial_panels.max(1);
    let mut prev = evaluate(
        points,
        q_norm,
        ang,
        &composite_gauss_legendre(panels, cfg.nodes_per_panel, 0.0, p_max),
        cfg.eta,
    );
    loop {
        panels *= 2;
        if panels > cfg.max_panels {
            return Err(MomentumError::QuadratureBudgetExceeded {
                panels: cfg.max_panels,
            });
        }
        let next = evaluate(
            points,
            q_norm,
            ang,
            &composite_gauss_legendre(panels, cfg.nodes_per_panel, 0.0, p_max),
            cfg.eta,
        );
        let scale = next.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let diff = next
            .iter()
            .zip(&prev)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        if diff <= cfg.rel_tol * scale {
            return Ok((next, panels));
        }
        prev = next;
    }
}

fn half_width(xs: &[f64], ys: &[f64], peak: usize) -> f64 {
    let half = 0.5 * ys[peak];
    let cross = |range: &mut dyn Iterator<Item = usize>| -> Option<f64> {
        let mut last = peak;
        for i in range {
            if ys[i] < half {
                let t = (ys[last] - half) / (ys[last] - ys[i]);
                return Some(xs[last] + t * (xs[i] - xs[last]));
            }
            last = i;
        }
        None
    };
    match (
        cross(&mut (0..peak).rev()),
        cross(&mut (peak + 1..xs.len())),
    ) {
        (Some(l), Some(r)) => r - l,
        _ => f64::NAN,
    }
}

pub fn position_space_transform(
    q: [f64; 3],
    sigma: f64,
    samples: &TransformSamples,
    cfg: &TransformConfig,
) -> Result<TransformProfile, MomentumError> {
    let q_norm = (q[0] * q[0] + q[1] * q[1] + q[2] * q[2]).sqrt();
    if !(q_norm > 0.0 && sigma > 0.0 && cfg.eta > 0.0) {
        return Err(MomentumError::InvalidParameter(
            "need |q| > 0, sigma > 0, eta > 0".into(),
        ));
    }
    if samples.longitudinal.is_empty()
        || samples
            .longitudinal
            .iter()
            .chain(&samples.transverse)
            .any(|v| !v.is_finite())
    {
        return Err(MomentumError::InvalidParameter(
            "sample positions must be finite and nonempty".into(),
        ));
    }
    let q_hat = q.map(|c| c / q_norm);
    let ang = angular(q_hat, sigma, cfg);
    let along: Vec<[f64; 3]> = samples
        .longitudinal
        .iter()
        .map(|&s| q_hat.map(|c| c * s))
        .collect();
    let (vals, panels) = converged(&along, q_norm, &ang, cfg)?;
    let magnitude: Vec<f64> = vals.iter().map(|v| v.norm()).collect();
    let peak = (0..magnitude.len()).fold(0, |b, i| if magnitude[i] > magnitude[b] { i } else { b });
    let x0 = samples.longitudinal[peak];

    let (e1, e2) = perpendicular_basis(q_hat);
    let mut pts = vec![q_hat.map(|c| c * x0)];
    for &rho in &samples.transverse {
        for e in [e1, e2] {
            pts.push(std::array::from_fn(|a| q_hat[a] * x0 + rho * e[a]));
        }
    }
    let (tv, tpanels) = converged(&pts, q_norm, &ang, cfg)?;
    let variation = tv[1..]
        .iter()
        .map(|v| (v - tv[0]).norm())
        .fold(0.0, f64::max)
        / tv[0].norm();

    Ok(TransformProfile {
        fwhm: half_width(&samples.longitudinal, &magnitude, peak),
        longitudinal: samples.longitudinal.clone(),
        peak_position: x0,
        peak_magnitude: magnitude[peak],
        magnitude,
        transverse_variation: variation,
        radial_panels: panels.max(tpanels),
    })
}
