use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use super::grid::{norm, GridSpec};
use super::quadrature::par_sum;
use super::MomentumError;

pub type Field = Vec<Complex64>;

/// `S(k) = N·exp(−α|k − k0|²)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussianSpec {
    pub alpha: f64,
    pub k0: [f64; 3],
    pub norm_const: f64,
}

#[derive(Clone, Debug)]
pub struct Wavepacket {
    pub grid: GridSpec,
    /// One value per grid node; masked nodes hold zero.
    pub samples: Field,
    pub spec: Option<GaussianSpec>,
}

/// Leakage limits for [`make_gaussian_with`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeakTolerance {
    /// Largest probability allowed outside the cube.
    pub outside: f64,
    /// Largest probability fraction allowed inside the exclusion ball.
    pub ball: f64,
}

impl Default for LeakTolerance {
    fn default() -> Self {
        Self {
            outside: 1e-6,
            ball: 0.1,
        }
    }
}

pub fn make_gaussian(
    alpha: f64,
    k0: [f64; 3],
    grid: &GridSpec,
) -> Result<Wavepacket, MomentumError> {
    make_gaussian_with(alpha, k0, grid, &LeakTolerance::default())
}

/// Probability of `exp(−2α|k−k0|²)` outside `[−kmax, kmax]³`.
pub fn gaussian_mass_outside(alpha: f64, k0: [f64; 3], kmax: f64) -> f64 {
    let s = (2.0 * alpha).sqrt();
    let inside: f64 = k0
        .iter()
        .map(|&c| 1.0 - 0.5 * (erfc(s * (kmax - c)) + erfc(s * (kmax + c))))
        .product();
    1.0 - inside
}

pub fn make_gaussian_with(
    alpha: f64,
    k0: [f64; 3],
    grid: &GridSpec,
    tol: &LeakTolerance,
) -> Result<Wavepacket, MomentumError> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(MomentumError::InvalidParameter(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    let outside = gaussian_mass_outside(alpha, k0, grid.kmax);
    if outside > tol.outside {
        return Err(MomentumError::GridTooSmall(format!(
            "packet mass outside the cube is {outside:.3e} (limit {:.1e})",
            tol.outside
        )));
    }
    let raw = |idx: usize| {
        let k = grid.momentum(idx);
        let d2 = (0..3).map(|a| (k[a] - k0[a]).powi(2)).sum::<f64>();
        (-alpha * d2).exp()
    };
    let total = par_sum(grid.len(), |i| raw(i).powi(2));
    let in_ball = par_sum(grid.len(), |i| {
        if grid.is_masked(i) {
            raw(i).powi(2)
        } else {
            0.0
        }
    });
    let fraction = in_ball / total;
    if fraction > tol.ball {
        return Err(MomentumError::GridTooSmall(format!(
            "{:.2}% of the packet lies inside the exclusion ball (limit {:.2}%)",
            100.0 * fraction,
            100.0 * tol.ball
        )));
    }
    let norm_const = 1.0 / ((total - in_ball) * grid.cell_volume()).sqrt();
    let samples = (0..grid.len())
        .into_par_iter()
        .map(|i| {
            if grid.is_masked(i) {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new(norm_const * raw(i), 0.0)
            }
        })
        .collect();
    Ok(Wavepacket {
        grid: *grid,
        samples,
        spec: Some(GaussianSpec {
            alpha,
            k0,
            norm_const,
        }),
    })
}

impl Wavepacket {
    /// Normalizes arbitrary samples; masked nodes are zeroed.
    pub fn from_samples(grid: &GridSpec, mut samples: Field) -> Result<Self, MomentumError> {
        if samples.len() != grid.len() {
            return Err(MomentumError::InvalidParameter(
                "sample count does not match grid".into(),
            ));
        }
        for (i, s) in samples.iter_mut().enumerate() {
            if grid.is_masked(i) {
                *s = Complex64::new(0.0, 0.0);
            }
        }
        let n = inner(grid, &samples, &samples).re.sqrt();
        if !(n.is_finite() && n > 0.0) {
            return Err(MomentumError::InvalidParameter(
                "packet has zero norm".into(),
            ));
        }
        samples.iter_mut().for_each(|s| *s /= n);
        Ok(Wavepacket {
            grid: *grid,
            samples,
            spec: None,
        })
    }

    pub fn norm_sqr(&self) -> f64 {
        inner(&self.grid, &self.samples, &self.samples).re
    }
}

/// `Σ conj(a)·b·h³` over unmasked nodes.
pub fn inner(grid: &GridSpec, a: &[Complex64], b: &[Complex64]) -> Complex64 {
    let dv = grid.cell_volume();
    par_sum(grid.len(), |i| {
        if grid.is_masked(i) {
            Complex64::new(0.0, 0.0)
        } else {
            a[i].conj() * b[i]
        }
    }) * dv
}

pub fn field_norm(grid: &GridSpec, a: &[Complex64]) -> f64 {
    inner(grid, a, a).re.max(0.0).sqrt()
}

/// `∫|S|² kᵢkⱼ/k² d³k`; symmetric by construction.
pub fn expectation_tensor(psi: &Wavepacket) -> [[f64; 3]; 3] {
    let grid = &psi.grid;
    let dv = grid.cell_volume();
    let mut t = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in i..3 {
            let v = par_sum(grid.len(), |idx| {
                if grid.is_masked(idx) {
                    return 0.0;
                }
                let k = grid.momentum(idx);
                let k2 = norm(k).powi(2);
                psi.samples[idx].norm_sqr() * k[i] * k[j] / k2
            }) * dv;
            t[i][j] = v;
            t[j][i] = v;
        }
    }
    t
}
