use super::poly::{Monomial, NCPolynomial};
use super::relations::DiscreteSymmetry;

/// Hermitian adjoint: reverse every word and conjugate every coefficient.
/// All generators, `m` and `t` are self-adjoint. The result is not normalized.
pub fn adjoint(expr: &NCPolynomial) -> NCPolynomial {
    expr.map_terms(|m, c| {
        (
            Monomial::new(m.word.reversed(), m.m_power, m.t_power),
            c.conj(),
        )
    })
}

/// Conjugation by Π (linear) or 𝒯 (antilinear, also sends `t → −t`).
pub fn apply_discrete_symmetry(expr: &NCPolynomial, which: DiscreteSymmetry) -> NCPolynomial {
    expr.map_terms(|m, c| {
        let mut sign: i64 = 1;
        for &(g, p) in m.word.factors() {
            if which.sign(g) < 0 && p.rem_euclid(2) == 1 {
                sign = -sign;
            }
        }
        let mut c = c.clone();
        if which.is_antilinear() {
            c = c.conj();
            if m.t_power.rem_euclid(2) == 1 {
                sign = -sign;
            }
        }
        (m.clone(), c.scale_int(sign))
    })
}
