use serde::{Deserialize, Serialize};

use super::operators::{apply_operator, OperatorId};
use super::packet::{expectation_tensor, inner, Wavepacket};
use super::MomentumError;

/// Uncertainties of one packet against the bound `½⟨H⁻²PᵢPⱼ⟩` (ħ = 1).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct UncertaintyReport {
    pub dq: [f64; 3],
    pub dp: [f64; 3],
    pub bound_tensor: [[f64; 3]; 3],
    /// Coefficient of `δᵢⱼ` in the bound.
    pub a: f64,
    /// Coefficient of `k0ᵢk0ⱼ`; zero when `k0 = 0`.
    pub b: f64,
    pub trace_check: f64,
    /// `min over i, j of ΔQᵢΔPⱼ − |bound_ij|`.
    pub robertson_margin: f64,
}

fn spread(psi: &Wavepacket, op: OperatorId) -> Result<f64, MomentumError> {
    let g = &psi.grid;
    let once = apply_operator(op, &psi.samples, g);
    let twice = apply_operator(op, &once, g);
    let mean = inner(g, &psi.samples, &once).re;
    let second = inner(g, &psi.samples, &twice).re;
    let var = second - mean * mean;
    let scale = second.abs().max(1.0);
    if !var.is_finite() || var < -1e-9 * scale {
        return Err(MomentumError::MomentDivergence(format!(
            "{op:?}: variance {var:e}"
        )));
    }
    Ok(var.max(0.0).sqrt())
}

/// Splits a symmetric tensor as `A·δᵢⱼ + B·k0ᵢk0ⱼ` by projecting on `δ` and
/// `k̂0 k̂0`. Returns `(A, B)` with `B = 0` for `k0 = 0`.
pub fn decompose_bound(t: &[[f64; 3]; 3], k0: [f64; 3]) -> (f64, f64) {
    let tr = t[0][0] + t[1][1] + t[2][2];
    let kappa2 = k0.iter().map(|c| c * c).sum::<f64>();
    if kappa2 == 0.0 {
        return (tr / 3.0, 0.0);
    }
    let n = k0.map(|c| c / kappa2.sqrt());
    let along: f64 = (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .map(|(i, j)| n[i] * t[i][j] * n[j])
        .sum();
    let a = (tr - along) / 2.0;
    let b_k2 = (3.0 * along - tr) / 2.0;
    (a, b_k2 / kappa2)
}

pub fn uncertainty_report(psi: &Wavepacket) -> Result<UncertaintyReport, MomentumError> {
    let mut dq = [0.0; 3];
    let mut dp = [0.0; 3];
    for a in 0..3 {
        dq[a] = spread(psi, OperatorId::Q(a))?;
        dp[a] = spread(psi, OperatorId::P(a))?;
    }
    let e = expectation_tensor(psi);
    let bound_tensor = e.map(|row| row.map(|v| 0.5 * v));
    let k0 = psi.spec.map(|s| s.k0).unwrap_or([0.0; 3]);
    let (a, b) = decompose_bound(&bound_tensor, k0);
    let trace_check = bound_tensor[0][0] + bound_tensor[1][1] + bound_tensor[2][2];
    let mut margin = f64::INFINITY;
    for i in 0..3 {
        for j in 0..3 {
            margin = margin.min(dq[i] * dp[j] - bound_tensor[i][j].abs());
        }
    }
    Ok(UncertaintyReport {
        dq,
        dp,
        bound_tensor,
        a,
        b,
        trace_check,
        robertson_margin: margin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::momentum::grid::GridSpec;
    use crate::momentum::packet::make_gaussian;

    #[test]
    fn decomposition_recovers_coefficients() {
        let k0 = [0.0, 0.6, 0.8];
        let (a, b) = (0.2, 0.7);
        let t: [[f64; 3]; 3] = std::array::from_fn(|i| {
            std::array::from_fn(|j| a * f64::from(u8::from(i == j)) + b * k0[i] * k0[j])
        });
        let (ra, rb) = decompose_bound(&t, k0);
        assert!((ra - a).abs() < 1e-14 && (rb - b).abs() < 1e-14);
    }

    #[test]
    fn isotropic_packet_meets_one_sixth() {
        let g = GridSpec::new(4.0, 49).unwrap();
        let p = make_gaussian(1.0, [0.0; 3], &g).unwrap();
        let r = uncertainty_report(&p).unwrap();
        assert!((r.trace_check - 0.5).abs() < 1e-6);
        assert!((r.a - 1.0 / 6.0).abs() < 1e-6);
        assert_eq!(r.b, 0.0);
        for i in 0..3 {
            assert!(r.dq[i] * r.dp[i] - 1.0 / 6.0 >= -1e-6);
        }
        assert!(r.robertson_margin > 0.0);
    }
}
