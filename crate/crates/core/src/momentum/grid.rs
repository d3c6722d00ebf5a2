use serde::{Deserialize, Serialize};

use super::MomentumError;

/// Uniform Cartesian momentum grid on `[−kmax, kmax]³` with the ball
/// `|k| < eps_min` excluded from every stencil and quadrature.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub kmax: f64,
    pub n: usize,
    pub eps_min: f64,
}

impl GridSpec {
    /// Grid with the default exclusion radius `2h`.
    pub fn new(kmax: f64, n: usize) -> Result<Self, MomentumError> {
        let h = 2.0 * kmax / (n.max(2) - 1) as f64;
        Self::with_exclusion(kmax, n, 2.0 * h)
    }

    pub fn with_exclusion(kmax: f64, n: usize, eps_min: f64) -> Result<Self, MomentumError> {
        if !(kmax.is_finite() && kmax > 0.0) {
            return Err(MomentumError::InvalidParameter(format!(
                "kmax must be positive, got {kmax}"
            )));
        }
        if n < 16 {
            return Err(MomentumError::InvalidParameter(format!(
                "need at least 16 points per axis, got {n}"
            )));
        }
        let g = GridSpec { kmax, n, eps_min };
        // Small slack so that `2h` computed two ways is accepted.
        if !(eps_min >= 2.0 * g.spacing() * (1.0 - 1e-12)) {
            return Err(MomentumError::InvalidParameter(format!(
                "exclusion radius {eps_min} is below 2h = {}",
                2.0 * g.spacing()
            )));
        }
        Ok(g)
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.kmax / (self.n - 1) as f64
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(3)
    }

    pub fn len(&self) -> usize {
        self.n * self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn coord(&self, i: usize) -> f64 {
        -self.kmax + i as f64 * self.spacing()
    }

    pub fn index(&self, ix: usize, iy: usize, iz: usize) -> usize {
        (ix * self.n + iy) * self.n + iz
    }

    pub fn axes(&self, idx: usize) -> [usize; 3] {
        [
            idx / (self.n * self.n),
            (idx / self.n) % self.n,
            idx % self.n,
        ]
    }

    /// Index stride along `axis`.
    pub fn stride(&self, axis: usize) -> usize {
        match axis {
            0 => self.n * self.n,
            1 => self.n,
            _ => 1,
        }
    }

    pub fn momentum(&self, idx: usize) -> [f64; 3] {
        self.axes(idx).map(|i| self.coord(i))
    }

    pub fn is_masked(&self, idx: usize) -> bool {
        norm(self.momentum(idx)) < self.eps_min
    }
}

pub(crate) fn norm(k: [f64; 3]) -> f64 {
    (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt()
}
