//! PBW-style normal form by repeated `XY → YX + [X,Y]`.

use std::collections::HashMap;

use super::generator::Generator;
use super::poly::{Monomial, NCPolynomial, Word};
use super::relations::{
    bracket_letters, prefix_letters, reduce_prefix, split_prefix, ModeRelations,
};
use super::scalar::GaussianRational;
use super::{AlgebraError, Mode};

type Key = (i32, i32, Vec<(Generator, i32)>);

fn mul_small(c: &GaussianRational, (re, im): (i64, i64)) -> GaussianRational {
    match (re, im) {
        (1, 0) => c.clone(),
        (_, 0) => c.scale_int(re),
        _ => c * &(GaussianRational::from_int(re) + GaussianRational::imag_ratio(im, 1)),
    }
}

fn merge_h(letters: &mut Vec<(Generator, i32)>) {
    let mut i = 0;
    while i + 1 < letters.len() {
        if letters[i].0 == Generator::H && letters[i + 1].0 == Generator::H {
            letters[i].1 += letters[i + 1].1;
            letters.remove(i + 1);
            if letters[i].1 == 0 {
                letters.remove(i);
                i = i.saturating_sub(1);
            }
        } else {
            i += 1;
        }
    }
}

pub(crate) fn check_primitives(expr: &NCPolynomial, mode: Mode) -> Result<(), AlgebraError> {
    for g in expr.generators() {
        if !g.is_primitive_in(mode) {
            return Err(AlgebraError::UnknownGenerator { generator: g, mode });
        }
    }
    Ok(())
}

/// Canonical sorted-word form of `expr` under `rel`.
///
/// In massive mode the result is also reduced modulo the mass shell
/// (those relations are central in the Foldy realization). In massless mode
/// only the Poincaré commutators are used; see [`ideal_reduce`](super::ideal_reduce)
/// for reduction modulo the massless ideal.
pub fn normal_form(expr: &NCPolynomial, rel: &ModeRelations) -> Result<NCPolynomial, AlgebraError> {
    let mode = rel.mode();
    check_primitives(expr, mode)?;
    let budget = rel.budget();
    let mut steps: u64 = 0;

    let mut work: HashMap<Key, GaussianRational> = HashMap::new();
    for (m, c) in expr.terms() {
        *work
            .entry((m.m_power, m.t_power, m.word.letters()))
            .or_default() += c;
    }

    let mut result = NCPolynomial::zero();
    while !work.is_empty() {
        let mut next: HashMap<Key, GaussianRational> = HashMap::new();
        for ((mp, tp, mut letters), c) in work.drain() {
            if c.is_zero() {
                continue;
            }
            loop {
                merge_h(&mut letters);
                let Some(i) = letters.windows(2).position(|w| w[0].0 > w[1].0) else {
                    break;
                };
                steps += 1;
                if steps > budget {
                    return Err(AlgebraError::BudgetExceeded { budget });
                }
                for r in bracket_letters(mode, letters[i], letters[i + 1]) {
                    let mut nl = Vec::with_capacity(letters.len() + r.letters.len());
                    nl.extend_from_slice(&letters[..i]);
                    nl.extend(r.letters.iter().copied().filter(|l| l.1 != 0));
                    nl.extend_from_slice(&letters[i + 2..]);
                    *next.entry((mp + r.m_delta, tp, nl)).or_default() += &mul_small(&c, r.coeff);
                }
                letters.swap(i, i + 1);
            }
            finalize(mode, mp, tp, letters, &c, &mut result);
        }
        work = next;
    }
    Ok(result)
}

fn finalize(
    mode: Mode,
    mp: i32,
    tp: i32,
    letters: Vec<(Generator, i32)>,
    c: &GaussianRational,
    out: &mut NCPolynomial,
) {
    let word = Word::from_letters(letters);
    match mode {
        Mode::Massless => out.add_term(Monomial::new(word, mp, tp), c),
        Mode::Massive => add_shell_reduced(&word, mp, tp, c, true, out),
    }
}

/// Adds `c · m^mp t^tp · word` after rewriting its `H W P` prefix modulo the
/// mass shell. `word` must already be sorted.
pub(crate) fn add_shell_reduced(
    word: &Word,
    mp: i32,
    tp: i32,
    c: &GaussianRational,
    massive: bool,
    out: &mut NCPolynomial,
) {
    let (exps, rest) = split_prefix(word.factors());
    for ((dm, e), k) in reduce_prefix(exps, massive) {
        let w = Word::from_letters(prefix_letters(e).into_iter().chain(rest.iter().copied()));
        out.add_term(Monomial::new(w, mp + dm, tp), &c.scale_int(k));
    }
}

/// Reduces a massless normal form modulo the central relation `H² = P²`.
pub(crate) fn shell_reduce_massless(expr: &NCPolynomial) -> NCPolynomial {
    let mut out = NCPolynomial::zero();
    for (m, c) in expr.terms() {
        add_shell_reduced(&m.word, m.m_power, m.t_power, c, false, &mut out);
    }
    out
}

/// `normal_form(ab − ba)`.
pub fn commutator(
    a: &NCPolynomial,
    b: &NCPolynomial,
    rel: &ModeRelations,
) -> Result<NCPolynomial, AlgebraError> {
    normal_form(&(a * b - b * a), rel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GaussianRational as G;
    use Generator::*;

    fn g(x: Generator) -> NCPolynomial {
        NCPolynomial::generator(x)
    }

    #[test]
    fn k_past_p_leaves_ih() {
        let rel = ModeRelations::massless();
        let nf = normal_form(&(g(K1) * g(P1)), &rel).unwrap();
        let expect = g(P1) * g(K1) + g(H).scale(&G::i());
        assert_eq!(nf, expect);
    }

    #[test]
    fn commuting_momenta_reorder_cleanly() {
        let rel = ModeRelations::massless();
        assert_eq!(normal_form(&(g(P2) * g(P1)), &rel).unwrap(), g(P1) * g(P2));
    }

    #[test]
    fn k_past_inverse_h() {
        // K1·H⁻¹ = H⁻¹·K1 − i·P1·H⁻²
        let rel = ModeRelations::massless();
        let nf = normal_form(&(g(K1) * NCPolynomial::h_pow(-1)), &rel).unwrap();
        let expect =
            NCPolynomial::h_pow(-1) * g(K1) - (NCPolynomial::h_pow(-2) * g(P1)).scale(&G::i());
        assert_eq!(nf, expect);
    }

    #[test]
    fn massive_shell_folds_momentum_square() {
        let rel = ModeRelations::massive();
        let p2: NCPolynomial = [P1, P2, P3].iter().map(|&p| g(p) * g(p)).sum();
        let nf = normal_form(&(NCPolynomial::h_pow(2) - p2), &rel).unwrap();
        assert_eq!(nf, NCPolynomial::mass(2));
    }

    #[test]
    fn unknown_generator_rejected() {
        let rel = ModeRelations::massive();
        assert!(matches!(
            normal_form(&g(K1), &rel),
            Err(AlgebraError::UnknownGenerator { .. })
        ));
    }

    #[test]
    fn budget_is_enforced() {
        let rel = ModeRelations::massless().with_budget(3);
        let e = g(K3) * g(K2) * g(K1) * g(P3) * g(P2) * g(P1);
        assert!(matches!(
            normal_form(&e, &rel),
            Err(AlgebraError::BudgetExceeded { budget: 3 })
        ));
    }
}
