//! Generators acting on momentum-space samples.
//!
//! `H` and `Pᵢ` multiply by `|k|` and `kᵢ`; `Kᵢ = i(|k|∂ᵢ + ½kᵢ/|k|)` is the
//! helicity-zero boost and `Qᵢ = i·kᵢ|k|⁻²(k·∇ + 1)` the massless position
//! operator. Derivatives are second-order central differences, switching to
//! second-order one-sided stencils at the cube boundary and next to the
//! exclusion ball.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::grid::{norm, GridSpec};
use super::packet::Field;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OperatorId {
    H,
    P(usize),
    K(usize),
    Q(usize),
}

fn map_nodes<F: Fn(usize) -> Complex64 + Sync>(grid: &GridSpec, f: F) -> Field {
    (0..grid.len())
        .into_par_iter()
        .map(|i| if grid.is_masked(i) { ZERO } else { f(i) })
        .collect()
}

/// `∂f/∂kₐ` at every unmasked node.
pub fn derivative(field: &[Complex64], axis: usize, grid: &GridSpec) -> Field {
    let h = grid.spacing();
    let stride = grid.stride(axis);
    map_nodes(grid, |idx| {
        let pos = grid.axes(idx)[axis] as isize;
        let ok = |d: isize| {
            let p = pos + d;
            p >= 0
                && p < grid.n as isize
                && !grid.is_masked((idx as isize + d * stride as isize) as usize)
        };
        let at = |d: isize| field[(idx as isize + d * stride as isize) as usize];
        if ok(1) && ok(-1) {
            (at(1) - at(-1)) / (2.0 * h)
        } else if ok(1) && ok(2) {
            (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * h)
        } else if ok(-1) && ok(-2) {
            (3.0 * at(0) - 4.0 * at(-1) + at(-2)) / (2.0 * h)
        } else if ok(1) {
            (at(1) - at(0)) / h
        } else if ok(-1) {
            (at(0) - at(-1)) / h
        } else {
            ZERO
        }
    })
}

/// Pointwise multiplication by `f(k)`.
pub fn multiply<F: Fn([f64; 3]) -> f64 + Sync>(
    field: &[Complex64],
    grid: &GridSpec,
    f: F,
) -> Field {
    map_nodes(grid, |idx| field[idx] * f(grid.momentum(idx)))
}

pub fn apply_operator(op: OperatorId, field: &[Complex64], grid: &GridSpec) -> Field {
    match op {
        OperatorId::H => multiply(field, grid, norm),
        OperatorId::P(a) => multiply(field, grid, |k| k[a]),
        OperatorId::K(a) => {
            let d = derivative(field, a, grid);
            map_nodes(grid, |idx| {
                let k = grid.momentum(idx);
                let r = norm(k);
                I * (r * d[idx] + 0.5 * k[a] / r * field[idx])
            })
        }
        OperatorId::Q(a) => {
            let d: Vec<Field> = (0..3).map(|b| derivative(field, b, grid)).collect();
            map_nodes(grid, |idx| {
                let k = grid.momentum(idx);
                let k2 = norm(k).powi(2);
                let radial = k[0] * d[0][idx] + k[1] * d[1][idx] + k[2] * d[2][idx];
                I * (k[a] / k2) * (radial + field[idx])
            })
        }
    }
}

/// `Qᵢ` assembled from `H`, `P`, `K` as `½(H⁻³Pᵢ(P·K) + (K·P)PᵢH⁻³)` at `t = 0`.
pub fn composed_position(axis: usize, field: &[Complex64], grid: &GridSpec) -> Field {
    let hinv3 = |f: &[Complex64]| multiply(f, grid, |k| norm(k).powi(-3));
    let pa = |f: &[Complex64], b: usize| apply_operator(OperatorId::P(b), f, grid);
    let ka = |f: &[Complex64], b: usize| apply_operator(OperatorId::K(b), f, grid);
    let add = |acc: &mut Field, f: Field| acc.iter_mut().zip(f).for_each(|(x, y)| *x += y);

    let mut p_dot_k = vec![ZERO; grid.len()];
    for b in 0..3 {
        add(&mut p_dot_k, pa(&ka(field, b), b));
    }
    let first = hinv3(&pa(&p_dot_k, axis));

    let inner = pa(&hinv3(field), axis);
    let mut k_dot_p = vec![ZERO; grid.len()];
    for b in 0..3 {
        add(&mut k_dot_p, ka(&pa(&inner, b), b));
    }
    first
        .iter()
        .zip(&k_dot_p)
        .map(|(x, y)| 0.5 * (x + y))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_multiplies_by_modulus() {
        let g = GridSpec::new(3.0, 17).unwrap();
        let f: Field = vec![Complex64::new(1.0, 0.0); g.len()];
        let hf = apply_operator(OperatorId::H, &f, &g);
        let idx = g.index(0, 4, 16);
        assert!((hf[idx].re - norm(g.momentum(idx))).abs() < 1e-15);
    }

    #[test]
    fn derivative_of_quadratic_is_exact() {
        let g = GridSpec::new(2.0, 17).unwrap();
        let f: Field = (0..g.len())
            .map(|i| Complex64::new(g.momentum(i)[1].powi(2), 0.0))
            .collect();
        let d = derivative(&f, 1, &g);
        for idx in [g.index(3, 0, 5), g.index(3, 7, 5), g.index(3, 16, 5)] {
            assert!((d[idx].re - 2.0 * g.momentum(idx)[1]).abs() < 1e-12);
        }
    }

    fn errors_at(
        n: usize,
        k: [f64; 3],
        op: OperatorId,
        exact: impl Fn([f64; 3]) -> f64,
        f: impl Fn([f64; 3]) -> f64,
    ) -> f64 {
        let g = GridSpec::new(4.0, n).unwrap();
        let field: Field = (0..g.len())
            .map(|i| Complex64::new(f(g.momentum(i)), 0.0))
            .collect();
        let out = apply_operator(op, &field, &g);
        let at = |c: f64| ((c + 4.0) / g.spacing()).round() as usize;
        let idx = g.index(at(k[0]), at(k[1]), at(k[2]));
        assert!(out[idx].re.abs() < 1e-14);
        (out[idx].im - exact(g.momentum(idx))).abs()
    }

    #[test]
    fn position_on_radial_gaussian_is_second_order() {
        // Qᵢ e^{−r²} = i k̂ᵢ (1/r − 2r) e^{−r²}
        let f = |k: [f64; 3]| (-norm(k).powi(2)).exp();
        let exact = |k: [f64; 3]| {
            let r = norm(k);
            k[2] / r * (1.0 / r - 2.0 * r) * (-r * r).exp()
        };
        let k = [1.0, 0.5, 1.5];
        let coarse = errors_at(33, k, OperatorId::Q(2), exact, f);
        let fine = errors_at(65, k, OperatorId::Q(2), exact, f);
        let ratio = coarse / fine;
        assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
        assert!(fine < 5e-3 * exact(k).abs());
    }

    #[test]
    fn boost_is_second_order_away_from_origin() {
        // K₃ ψ = i(|k| ∂₃ψ + ½ k₃/|k| ψ) for ψ = e^{−|k − ẑ|²}
        let f = |k: [f64; 3]| (-(k[0] * k[0] + k[1] * k[1] + (k[2] - 1.0).powi(2))).exp();
        let exact = |k: [f64; 3]| {
            let r = norm(k);
            let s = f(k);
            r * (-2.0 * (k[2] - 1.0) * s) + 0.5 * k[2] / r * s
        };
        let k = [0.25, -0.5, 1.5];
        let coarse = errors_at(33, k, OperatorId::K(2), exact, f);
        let fine = errors_at(65, k, OperatorId::K(2), exact, f);
        let ratio = coarse / fine;
        assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
        assert!(fine < 2e-2 * exact(k).abs());
    }
}
