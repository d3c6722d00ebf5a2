//! Commutator tables, mass-shell relations and discrete-symmetry actions for
//! the two modes.
//!
//! Massive mode is the Foldy realization: `[Qᵢ,Pⱼ] = iδᵢⱼ`, `[Qᵢ,Qⱼ] = 0`,
//! `[Sᵢ,Sⱼ] = iεᵢⱼₖSₖ`, and `S` commutes with `Q`, `P`, `H`, `W`. Because `H` is
//! a function of `P` there, `[Qᵢ,Hⁿ] = i·n·PᵢHⁿ⁻²` and `[Qᵢ,W] = −iW²H⁻¹Pᵢ`.
//! The spin assumptions are the standard Foldy ones; they are an
//! interpretation, the Casimir identity only follows once they are fixed.
//!
//! Massless mode takes the Poincaré commutators as axioms on `H, P, J, K`.

use std::collections::BTreeMap;

use super::generator::{levi_civita, third_axis, Family, Generator, Mode};
use super::poly::{Monomial, NCPolynomial, Word};
use super::scalar::GaussianRational;
use super::AlgebraError;

/// Default cap on rewrite steps in [`normal_form`](super::normal_form).
pub const DEFAULT_REWRITE_BUDGET: u64 = 10_000_000;

/// A small Gaussian integer coefficient `re + im·i`.
pub(crate) type SmallCoeff = (i64, i64);

/// One term of a commutator remainder.
pub(crate) struct Remainder {
    pub coeff: SmallCoeff,
    pub m_delta: i32,
    pub letters: Vec<(Generator, i32)>,
}

fn rem(coeff: SmallCoeff, letters: Vec<(Generator, i32)>) -> Remainder {
    Remainder {
        coeff,
        m_delta: 0,
        letters,
    }
}

/// `[x, y]` for adjacent letters with `x > y` in canonical order. Non-`H`
/// letters carry power one; `H` may carry any nonzero power.
pub(crate) fn bracket_letters(
    mode: Mode,
    x: (Generator, i32),
    y: (Generator, i32),
) -> Vec<Remainder> {
    debug_assert!(x.0 > y.0);
    let (gx, gy) = (x.0, y.0);
    let fx = gx.family_axis();
    let fy = gy.family_axis();
    match mode {
        Mode::Massive => match (fx, fy) {
            // [Qᵢ, Hⁿ] = i n Pᵢ Hⁿ⁻²
            (Some((Family::Q, i)), None) if gy == Generator::H => {
                let n = y.1;
                vec![rem(
                    (0, n as i64),
                    vec![(Generator::H, n - 2), (Generator::vector(Family::P, i), 1)],
                )]
            }
            // [Qᵢ, W] = −i W² H⁻¹ Pᵢ
            (Some((Family::Q, i)), None) => vec![rem(
                (0, -1),
                vec![
                    (Generator::H, -1),
                    (Generator::W, 2),
                    (Generator::vector(Family::P, i), 1),
                ],
            )],
            (Some((Family::Q, i)), Some((Family::P, j))) if i == j => vec![rem((0, 1), vec![])],
            (Some((Family::S, i)), Some((Family::S, j))) => match third_axis(i, j) {
                Some((k, eps)) => vec![rem((0, eps), vec![(Generator::vector(Family::S, k), 1)])],
                None => vec![],
            },
            _ => vec![],
        },
        Mode::Massless => match (fx, fy) {
            // [Kᵢ, Hⁿ] = i n Pᵢ Hⁿ⁻¹
            (Some((Family::K, i)), None) => {
                let n = y.1;
                vec![rem(
                    (0, n as i64),
                    vec![(Generator::H, n - 1), (Generator::vector(Family::P, i), 1)],
                )]
            }
            (Some((Family::J, i)), Some((Family::P, j))) => match third_axis(i, j) {
                Some((k, eps)) => vec![rem((0, eps), vec![(Generator::vector(Family::P, k), 1)])],
                None => vec![],
            },
            (Some((Family::K, i)), Some((Family::P, j))) if i == j => {
                vec![rem((0, 1), vec![(Generator::H, 1)])]
            }
            (Some((Family::J, i)), Some((Family::J, j))) => match third_axis(i, j) {
                Some((k, eps)) => vec![rem((0, eps), vec![(Generator::vector(Family::J, k), 1)])],
                None => vec![],
            },
            // [Kᵢ, Jⱼ] = −[Jⱼ, Kᵢ] = −iεⱼᵢₖKₖ = iεᵢⱼₖKₖ
            (Some((Family::K, i)), Some((Family::J, j))) => match third_axis(i, j) {
                Some((k, eps)) => vec![rem((0, eps), vec![(Generator::vector(Family::K, k), 1)])],
                None => vec![],
            },
            (Some((Family::K, i)), Some((Family::K, j))) => match third_axis(i, j) {
                Some((k, eps)) => vec![rem((0, -eps), vec![(Generator::vector(Family::J, k), 1)])],
                None => vec![],
            },
            _ => vec![],
        },
    }
}

/// Exponents of the commuting prefix `H^h W^w P1^a P2^b P3^c`.
pub(crate) type PrefixExps = (i32, u32, [u32; 3]);

/// Rewrites a commuting prefix modulo the mass shell.
///
/// Rules, applied until none fires:
/// `P3² → H² − m² − P1² − P2²` (the `m²` term only with `massive`),
/// `WH → 1 − mW`, `WH⁻¹ → m⁻¹(H⁻¹ − W)`.
/// The rule set is confluent, so the result is the unique representative
/// with `P3`-degree ≤ 1 and never both `W` and `H` present.
pub(crate) fn reduce_prefix(exps: PrefixExps, massive: bool) -> BTreeMap<(i32, PrefixExps), i64> {
    let mut out = BTreeMap::new();
    reduce_prefix_into(exps, 0, 1, massive, &mut out);
    out.retain(|_, c| *c != 0);
    out
}

fn reduce_prefix_into(
    exps: PrefixExps,
    m_power: i32,
    coeff: i64,
    massive: bool,
    out: &mut BTreeMap<(i32, PrefixExps), i64>,
) {
    let (h, w, p) = exps;
    if p[2] >= 2 {
        let mut q = p;
        q[2] -= 2;
        reduce_prefix_into((h + 2, w, q), m_power, coeff, massive, out);
        if massive {
            reduce_prefix_into((h, w, q), m_power + 2, -coeff, massive, out);
        }
        let mut q1 = q;
        q1[0] += 2;
        reduce_prefix_into((h, w, q1), m_power, -coeff, massive, out);
        let mut q2 = q;
        q2[1] += 2;
        reduce_prefix_into((h, w, q2), m_power, -coeff, massive, out);
        return;
    }
    if w > 0 && h > 0 {
        // W^w H^h = W^{w-1} H^{h-1} (1 − mW)
        reduce_prefix_into((h - 1, w - 1, p), m_power, coeff, massive, out);
        reduce_prefix_into((h - 1, w, p), m_power + 1, -coeff, massive, out);
        return;
    }
    if w > 0 && h < 0 {
        // W^w H^h = m⁻¹ (W^{w-1} H^h − W^w H^{h+1})
        reduce_prefix_into((h, w - 1, p), m_power - 1, coeff, massive, out);
        reduce_prefix_into((h + 1, w, p), m_power - 1, -coeff, massive, out);
        return;
    }
    *out.entry((m_power, exps)).or_insert(0) += coeff;
}

pub(crate) fn prefix_letters(exps: PrefixExps) -> Vec<(Generator, i32)> {
    let (h, w, p) = exps;
    let mut v = Vec::with_capacity(5);
    if h != 0 {
        v.push((Generator::H, h));
    }
    if w > 0 {
        v.push((Generator::W, w as i32));
    }
    for (axis, &e) in p.iter().enumerate() {
        if e > 0 {
            v.push((Generator::vector(Family::P, axis), e as i32));
        }
    }
    v
}

/// Splits a sorted, merged word into its commuting `H W P` prefix and the rest.
pub(crate) fn split_prefix(factors: &[(Generator, i32)]) -> (PrefixExps, &[(Generator, i32)]) {
    let mut h = 0;
    let mut w = 0u32;
    let mut p = [0u32; 3];
    let mut n = 0;
    for &(g, e) in factors {
        match g {
            Generator::H => h += e,
            Generator::W => w += e as u32,
            Generator::P1 => p[0] += e as u32,
            Generator::P2 => p[1] += e as u32,
            Generator::P3 => p[2] += e as u32,
            _ => break,
        }
        n += 1;
    }
    ((h, w, p), &factors[n..])
}

/// Parity and time-reversal, the two discrete symmetries of the Poincaré group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum DiscreteSymmetry {
    Parity,
    TimeReversal,
}

impl DiscreteSymmetry {
    /// Sign picked up by a single generator.
    pub fn sign(self, g: Generator) -> i64 {
        let fam = g.family_axis().map(|(f, _)| f);
        match self {
            DiscreteSymmetry::Parity => match fam {
                Some(Family::P) | Some(Family::K) | Some(Family::Q) => -1,
                _ => 1,
            },
            DiscreteSymmetry::TimeReversal => match fam {
                Some(Family::P) | Some(Family::J) | Some(Family::S) => -1,
                _ => 1,
            },
        }
    }

    pub fn is_antilinear(self) -> bool {
        matches!(self, DiscreteSymmetry::TimeReversal)
    }
}

/// Relation data for one mode: commutator table, ideal generators and
/// symmetry actions.
#[derive(Clone, Debug)]
pub struct ModeRelations {
    mode: Mode,
    /// Central mass-shell relation, handled by prefix rewriting.
    shell: NCPolynomial,
    /// Remaining (non-central) ideal generators.
    extra: Vec<NCPolynomial>,
    budget: u64,
}

impl ModeRelations {
    /// Foldy realization with ideal `{H² − P² − m², W(H+m) − 1, (H+m)W − 1}`.
    pub fn massive() -> Self {
        use Generator::*;
        let g = NCPolynomial::generator;
        let p2: NCPolynomial = [P1, P2, P3].iter().map(|&p| g(p) * g(p)).sum();
        let shell = NCPolynomial::h_pow(2) - p2 - NCPolynomial::mass(2);
        let h_plus_m = g(H) + NCPolynomial::mass(1);
        let extra = vec![
            g(W) * &h_plus_m - NCPolynomial::one(),
            &h_plus_m * g(W) - NCPolynomial::one(),
        ];
        Self {
            mode: Mode::Massive,
            shell,
            extra,
            budget: DEFAULT_REWRITE_BUDGET,
        }
    }

    /// Abstract algebra with ideal `{H² − P², HJᵢ + (P×K)ᵢ − PᵢH⁻¹(P·J)}`.
    pub fn massless() -> Self {
        let mut rel = Self::massless_shell_only();
        rel.extra = (0..3).map(helicity_relation).collect();
        rel
    }

    /// Massless mode with only the central relation `H² = P²`.
    pub fn massless_shell_only() -> Self {
        use Generator::*;
        let g = NCPolynomial::generator;
        let p2: NCPolynomial = [P1, P2, P3].iter().map(|&p| g(p) * g(p)).sum();
        Self {
            mode: Mode::Massless,
            shell: NCPolynomial::h_pow(2) - p2,
            extra: Vec::new(),
            budget: DEFAULT_REWRITE_BUDGET,
        }
    }

    pub fn for_mode(mode: Mode) -> Self {
        match mode {
            Mode::Massive => Self::massive(),
            Mode::Massless => Self::massless(),
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn shell_relation(&self) -> &NCPolynomial {
        &self.shell
    }

    /// Ideal generators handled by linear algebra rather than rewriting.
    pub(crate) fn noncentral_generators(&self) -> &[NCPolynomial] {
        match self.mode {
            // W relations are folded into the massive normal form.
            Mode::Massive => &[],
            Mode::Massless => &self.extra,
        }
    }

    pub fn ideal_generators(&self) -> Vec<NCPolynomial> {
        std::iter::once(self.shell.clone())
            .chain(self.extra.iter().cloned())
            .collect()
    }

    /// `[x, y]` for two primitive generators, already in normal form.
    pub fn commutator_table_entry(
        &self,
        x: Generator,
        y: Generator,
    ) -> Result<NCPolynomial, AlgebraError> {
        for g in [x, y] {
            if !g.is_primitive_in(self.mode) {
                return Err(AlgebraError::UnknownGenerator {
                    generator: g,
                    mode: self.mode,
                });
            }
        }
        if x == y {
            return Ok(NCPolynomial::zero());
        }
        let (hi, lo, sign) = if x > y { (x, y, 1) } else { (y, x, -1) };
        let mut out = NCPolynomial::zero();
        for r in bracket_letters(self.mode, (hi, 1), (lo, 1)) {
            let c = GaussianRational::from_int(sign * r.coeff.0)
                + GaussianRational::imag_ratio(sign * r.coeff.1, 1);
            out.add_term(
                Monomial::new(Word::from_letters(r.letters), r.m_delta, 0),
                &c,
            );
        }
        super::normal_form(&out, self)
    }

    pub fn symmetry_action(&self, which: DiscreteSymmetry, g: Generator) -> i64 {
        which.sign(g)
    }
}

/// `HJᵢ + (P×K)ᵢ − PᵢH⁻¹(P·J)`, i.e. helicity eliminated through `Σ = H⁻¹(P·J)`.
pub fn helicity_relation(i: usize) -> NCPolynomial {
    let g = NCPolynomial::generator;
    let p = |a| g(Generator::vector(Family::P, a));
    let j = |a| g(Generator::vector(Family::J, a));
    let k = |a| g(Generator::vector(Family::K, a));
    let mut out = NCPolynomial::generator(Generator::H) * j(i);
    for a in 0..3 {
        for b in 0..3 {
            let e = levi_civita(i, a, b);
            if e != 0 {
                out = out + (p(a) * k(b)).scale(&GaussianRational::from_int(e));
            }
        }
    }
    let p_dot_j: NCPolynomial = (0..3).map(|a| p(a) * j(a)).sum();
    out - p(i) * NCPolynomial::h_pow(-1) * p_dot_j
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefix_rewrite_eliminates_w_h_pairs() {
        // W·H = 1 − m·W
        let r = reduce_prefix((1, 1, [0, 0, 0]), true);
        assert_eq!(r.get(&(0, (0, 0, [0, 0, 0]))), Some(&1));
        assert_eq!(r.get(&(1, (0, 1, [0, 0, 0]))), Some(&-1));
        assert_eq!(r.len(), 2);
    }

    #[test]
    fn w_times_p_squared_is_h_minus_m() {
        // W(P1² + P2² + P3²) = H − m
        let mut acc: BTreeMap<(i32, PrefixExps), i64> = BTreeMap::new();
        for p in [[2, 0, 0], [0, 2, 0], [0, 0, 2]] {
            for (k, v) in reduce_prefix((0, 1, p), true) {
                *acc.entry(k).or_insert(0) += v;
            }
        }
        acc.retain(|_, v| *v != 0);
        let expect: BTreeMap<_, _> = [((0, (1, 0, [0, 0, 0])), 1), ((1, (0, 0, [0, 0, 0])), -1)]
            .into_iter()
            .collect();
        assert_eq!(acc, expect);
    }

    #[test]
    fn table_is_antisymmetric() {
        for rel in [ModeRelations::massive(), ModeRelations::massless()] {
            let prims = Generator::primitives(rel.mode());
            for &x in &prims {
                for &y in &prims {
                    let a = rel.commutator_table_entry(x, y).unwrap();
                    let b = rel.commutator_table_entry(y, x).unwrap();
                    assert_eq!(a, -b, "[{x},{y}]");
                }
            }
        }
    }

    #[test]
    fn table_rejects_foreign_generators() {
        let rel = ModeRelations::massive();
        assert!(rel
            .commutator_table_entry(Generator::J1, Generator::P1)
            .is_err());
    }
}
