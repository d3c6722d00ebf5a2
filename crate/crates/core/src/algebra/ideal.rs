//! Membership in the two-sided mass-shell ideal.
//!
//! Massless reduction runs in three stages:
//!
//! 1. The central relation `H² = P²` is applied by rewriting the commuting
//!    `H P` prefix of each normal-form word. Because the relation is central
//!    this is exact.
//! 2. If anything survives, it is evaluated in the helicity-zero momentum
//!    realization (`H = |p|`, `J = −i p×∇`, `K = i(|p|∇ + p/2|p|)`), which
//!    annihilates every ideal generator. A nonzero action there is a proof of
//!    non-membership.
//! 3. Otherwise products `u·g·v` of the remaining generators with PBW
//!    monomials are enumerated by increasing multiplier degree, restricted to
//!    the graded pieces that can reach the target, and the target is tested
//!    for membership in their span by exact elimination.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::generator::{levi_civita, Family, Generator, Mode};
use super::normal::{check_primitives, normal_form, shell_reduce_massless};
use super::poly::{Monomial, NCPolynomial, Word};
use super::relations::{reduce_prefix, ModeRelations};
use super::scalar::GaussianRational;
use super::AlgebraError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Membership {
    Member,
    NotMember,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct IdealConfig {
    /// `NotMember` without a witness requires `cutoff ≥ degree + margin`.
    pub confidence_margin: u32,
    /// Upper bound on candidate products per graded component.
    pub max_candidates: usize,
    /// Multipliers carry `H^h` with `|h| ≤ h_window`.
    pub h_window: i32,
}

impl Default for IdealConfig {
    fn default() -> Self {
        Self {
            confidence_margin: 2,
            max_candidates: 4000,
            h_window: 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct IdealReduction {
    pub residual: NCPolynomial,
    pub status: Membership,
    /// Set when non-membership was certified by the momentum realization.
    pub witnessed: bool,
    pub candidates: usize,
}

pub fn ideal_reduce(
    expr: &NCPolynomial,
    rel: &ModeRelations,
    degree_cutoff: u32,
) -> Result<IdealReduction, AlgebraError> {
    ideal_reduce_with(expr, rel, degree_cutoff, &IdealConfig::default())
}

pub fn ideal_reduce_with(
    expr: &NCPolynomial,
    rel: &ModeRelations,
    degree_cutoff: u32,
    config: &IdealConfig,
) -> Result<IdealReduction, AlgebraError> {
    check_primitives(expr, rel.mode())?;
    let degree = expr.degree();
    if degree_cutoff < degree {
        return Err(AlgebraError::CutoffTooSmall {
            cutoff: degree_cutoff,
            degree,
        });
    }
    let nf = normal_form(expr, rel)?;
    let done = |residual: NCPolynomial, status, witnessed, candidates| {
        Ok(IdealReduction {
            residual,
            status,
            witnessed,
            candidates,
        })
    };
    if rel.mode() == Mode::Massive {
        // The massive normal form is already canonical modulo the shell.
        return if nf.is_zero() {
            done(nf, Membership::Member, false, 0)
        } else {
            done(nf, Membership::NotMember, false, 0)
        };
    }
    let reduced = shell_reduce_massless(&nf);
    if reduced.is_zero() {
        return done(reduced, Membership::Member, false, 0);
    }
    let extra = rel.noncentral_generators();
    if extra.is_empty() {
        return done(reduced, Membership::NotMember, false, 0);
    }
    if acts_nonzero_on_scalar_realization(&reduced) {
        return done(reduced, Membership::NotMember, true, 0);
    }

    // `m` and `t` are central scalars, so each power of them is decided separately.
    let mut components: BTreeMap<(i32, i32, Grade), NCPolynomial> = BTreeMap::new();
    for (m, c) in reduced.terms() {
        components
            .entry((m.m_power, m.t_power, grade_of(&m.word)))
            .or_default()
            .add_term(Monomial::new(m.word.clone(), 0, 0), c);
    }
    let mut all_member = true;
    let mut complete = true;
    let mut candidates = 0;
    for ((_, _, grade), target) in &components {
        let outcome = search_component(target, *grade, extra, rel, degree_cutoff, config)?;
        candidates += outcome.candidates;
        complete &= outcome.complete;
        if !outcome.member {
            all_member = false;
            break;
        }
    }
    if all_member {
        return done(NCPolynomial::zero(), Membership::Member, false, candidates);
    }
    let status = if complete && degree_cutoff >= degree + config.confidence_margin {
        Membership::NotMember
    } else {
        Membership::Inconclusive
    };
    done(reduced, status, false, candidates)
}

/// Momentum weight (`H`, `P` count +1 per power) and the three axis-reflection
/// parities. The Poincaré brackets and all ideal generators are homogeneous.
type Grade = (i32, [u8; 3]);

fn letter_grade(g: Generator, p: i32) -> Grade {
    let mut refl = [0u8; 3];
    let weight = match g.family_axis() {
        None => p,
        Some((fam, axis)) => {
            for (a, r) in refl.iter_mut().enumerate() {
                let flips = match fam {
                    Family::P | Family::K | Family::Q => a == axis,
                    Family::J | Family::S => a != axis,
                };
                if flips && p.rem_euclid(2) == 1 {
                    *r = 1;
                }
            }
            if fam == Family::P {
                p
            } else {
                0
            }
        }
    };
    (weight, refl)
}

fn add_grade(a: Grade, b: Grade) -> Grade {
    (
        a.0 + b.0,
        [a.1[0] ^ b.1[0], a.1[1] ^ b.1[1], a.1[2] ^ b.1[2]],
    )
}

fn grade_of(word: &Word) -> Grade {
    word.factors().iter().fold((0, [0; 3]), |acc, &(g, p)| {
        add_grade(acc, letter_grade(g, p))
    })
}

struct SearchOutcome {
    member: bool,
    complete: bool,
    candidates: usize,
}

/// Sorted multisets of size `d` over the non-`H` massless letters.
fn pbw_monomials(d: u32) -> Vec<Vec<(Generator, i32)>> {
    use Generator::*;
    const LETTERS: [Generator; 9] = [P1, P2, P3, J1, J2, J3, K1, K2, K3];
    fn rec(
        start: usize,
        left: u32,
        cur: &mut Vec<(Generator, i32)>,
        out: &mut Vec<Vec<(Generator, i32)>>,
    ) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..LETTERS.len() {
            cur.push((LETTERS[i], 1));
            rec(i, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, d, &mut Vec::new(), &mut out);
    out
}

struct Echelon {
    rows: HashMap<Monomial, BTreeMap<Monomial, GaussianRational>>,
}

impl Echelon {
    fn reduce(
        &self,
        mut v: BTreeMap<Monomial, GaussianRational>,
    ) -> BTreeMap<Monomial, GaussianRational> {
        let mut bound: Option<Monomial> = None;
        loop {
            let next = match &bound {
                None => v.keys().next_back().cloned(),
                Some(b) => v.range(..b.clone()).next_back().map(|(k, _)| k.clone()),
            };
            let Some(key) = next else { break };
            if let Some(row) = self.rows.get(&key) {
                let c = v[&key].clone();
                for (k, rv) in row {
                    let e = v.entry(k.clone()).or_default();
                    *e = &*e - &(&c * rv);
                    if e.is_zero() {
                        v.remove(k);
                    }
                }
            }
            bound = Some(key);
        }
        v
    }

    fn insert(&mut self, v: BTreeMap<Monomial, GaussianRational>) {
        let v = self.reduce(v);
        let Some((pivot, lead)) = v.iter().next_back() else {
            return;
        };
        let inv = lead.inv().expect("nonzero lead");
        let pivot = pivot.clone();
        let row = v.into_iter().map(|(k, c)| (k, &c * &inv)).collect();
        self.rows.insert(pivot, row);
    }
}

fn to_map(p: NCPolynomial) -> BTreeMap<Monomial, GaussianRational> {
    p.into_terms().collect()
}

fn search_component(
    target: &NCPolynomial,
    grade: Grade,
    generators: &[NCPolynomial],
    rel: &ModeRelations,
    cutoff: u32,
    config: &IdealConfig,
) -> Result<SearchOutcome, AlgebraError> {
    let mut echelon = Echelon {
        rows: HashMap::new(),
    };
    let target_map = to_map(target.clone());
    let mut candidates = 0usize;
    let gen_info: Vec<(Grade, u32)> = generators
        .iter()
        .map(|g| {
            let first = g
                .terms()
                .next()
                .map(|(m, _)| grade_of(&m.word))
                .unwrap_or((0, [0; 3]));
            (first, g.degree())
        })
        .collect();
    let max_level = gen_info
        .iter()
        .map(|&(_, d)| cutoff.saturating_sub(d))
        .max()
        .unwrap_or(0);
    let mut monos: Vec<Vec<(Word, Grade)>> = Vec::new();
    for level in 0..=max_level {
        let d = level as usize;
        let mut list = Vec::new();
        for base in pbw_monomials(level) {
            for h in -config.h_window..=config.h_window {
                let w = Word::from_letters(
                    std::iter::once((Generator::H, h)).chain(base.iter().copied()),
                );
                let gr = grade_of(&w);
                list.push((w, gr));
            }
        }
        monos.push(list);
        debug_assert_eq!(monos.len(), d + 1);

        for (g, &(g_grade, g_deg)) in generators.iter().zip(&gen_info) {
            if g_deg + level > cutoff {
                continue;
            }
            for du in 0..=d {
                let dv = d - du;
                for (u, ug) in &monos[du] {
                    for (v, vg) in &monos[dv] {
                        if add_grade(add_grade(*ug, g_grade), *vg) != grade {
                            continue;
                        }
                        candidates += 1;
                        if candidates > config.max_candidates {
                            return Ok(SearchOutcome {
                                member: echelon.reduce(target_map.clone()).is_empty(),
                                complete: false,
                                candidates,
                            });
                        }
                        let lhs = NCPolynomial::term(
                            GaussianRational::one(),
                            Monomial::new(u.clone(), 0, 0),
                        );
                        let rhs = NCPolynomial::term(
                            GaussianRational::one(),
                            Monomial::new(v.clone(), 0, 0),
                        );
                        let prod = normal_form(&(&(&lhs * g) * &rhs), rel)?;
                        let prod = shell_reduce_massless(&prod);
                        if !prod.is_zero() {
                            echelon.insert(to_map(prod));
                        }
                    }
                }
            }
        }
        if echelon.reduce(target_map.clone()).is_empty() {
            return Ok(SearchOutcome {
                member: true,
                complete: true,
                candidates,
            });
        }
    }
    Ok(SearchOutcome {
        member: false,
        complete: true,
        candidates,
    })
}

/// Functions of momentum: `m^a t^b H^h p1^e1 p2^e2 p3^e3`, reduced by `H² = p²`.
type FnKey = (i32, i32, i32, [u32; 3]);

#[derive(Clone, Default)]
struct MomentumFunction(BTreeMap<FnKey, GaussianRational>);

impl MomentumFunction {
    fn add(&mut self, key: FnKey, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let (m, t, h, p) = key;
        for ((dm, (h2, _, p2)), k) in reduce_prefix((h, 0, p), false) {
            let e = self.0.entry((m + dm, t, h2, p2)).or_default();
            *e += &c.scale_int(k);
            if e.is_zero() {
                self.0.remove(&(m + dm, t, h2, p2));
            }
        }
    }

    fn map_keys<F: Fn(FnKey, &GaussianRational, &mut MomentumFunction)>(&self, f: F) -> Self {
        let mut out = MomentumFunction::default();
        for (k, c) in &self.0 {
            f(*k, c, &mut out);
        }
        out
    }

    fn times_h(&self, n: i32) -> Self {
        self.map_keys(|(m, t, h, p), c, out| out.add((m, t, h + n, p), c))
    }

    fn times_p(&self, axis: usize) -> Self {
        self.map_keys(|(m, t, h, mut p), c, out| {
            p[axis] += 1;
            out.add((m, t, h, p), c)
        })
    }

    fn derivative(&self, axis: usize) -> Self {
        self.map_keys(|(m, t, h, p), c, out| {
            if h != 0 {
                let mut q = p;
                q[axis] += 1;
                out.add((m, t, h - 2, q), &c.scale_int(h as i64));
            }
            if p[axis] > 0 {
                let mut q = p;
                q[axis] -= 1;
                out.add((m, t, h, q), &c.scale_int(p[axis] as i64));
            }
        })
    }

    fn scaled(&self, c: &GaussianRational) -> Self {
        self.map_keys(|k, v, out| out.add(k, &(v * c)))
    }

    fn plus(mut self, other: &Self) -> Self {
        for (k, c) in &other.0 {
            self.add(*k, c);
        }
        self
    }

    fn apply_letter(&self, g: Generator, power: i32) -> Self {
        if g == Generator::H {
            return self.times_h(power);
        }
        let (fam, a) = g.family_axis().expect("vector generator");
        let mut f = self.clone();
        for _ in 0..power {
            f = match fam {
                Family::P => f.times_p(a),
                Family::J => {
                    // −i (p × ∇)_a
                    let mut acc = MomentumFunction::default();
                    for b in 0..3 {
                        for c in 0..3 {
                            let e = levi_civita(a, b, c);
                            if e != 0 {
                                acc = acc.plus(
                                    &f.derivative(c)
                                        .times_p(b)
                                        .scaled(&GaussianRational::imag_ratio(-e, 1)),
                                );
                            }
                        }
                    }
                    acc
                }
                Family::K => {
                    // i (H ∂_a + ½ p_a H⁻¹)
                    let d = f.derivative(a).times_h(1);
                    let s = f
                        .times_p(a)
                        .times_h(-1)
                        .scaled(&GaussianRational::ratio(1, 2));
                    d.plus(&s).scaled(&GaussianRational::i())
                }
                Family::S | Family::Q => unreachable!("not a massless primitive"),
            };
        }
        f
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

fn test_functions() -> Vec<MomentumFunction> {
    let mk = |h: i32, p: [u32; 3]| {
        let mut f = MomentumFunction::default();
        f.add((0, 0, h, p), &GaussianRational::one());
        f
    };
    vec![
        mk(0, [0, 0, 0]),
        mk(0, [1, 0, 0]),
        mk(0, [0, 1, 0]),
        mk(0, [0, 0, 1]),
        mk(0, [1, 1, 0]),
        mk(0, [0, 1, 1]),
        mk(0, [1, 0, 1]),
        mk(0, [2, 0, 0]),
        mk(-1, [0, 0, 1]),
        mk(1, [1, 1, 1]),
    ]
}

fn act(expr: &NCPolynomial, f: &MomentumFunction) -> MomentumFunction {
    let mut out = MomentumFunction::default();
    for (m, c) in expr.terms() {
        let mut g =
            f.map_keys(|(mm, tt, h, p), v, o| o.add((mm + m.m_power, tt + m.t_power, h, p), v));
        for &(gen, p) in m.word.factors().iter().rev() {
            g = g.apply_letter(gen, p);
        }
        out = out.plus(&g.scaled(c));
    }
    out
}

/// Whether `expr` acts nonzero on some test function in the helicity-zero
/// massless realization. A `true` certifies non-membership in the massless ideal.
pub fn acts_nonzero_on_scalar_realization(expr: &NCPolynomial) -> bool {
    test_functions().iter().any(|f| !act(expr, f).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::relations::helicity_relation;
    use Generator::*;

    fn g(x: Generator) -> NCPolynomial {
        NCPolynomial::generator(x)
    }

    fn p_squared() -> NCPolynomial {
        [P1, P2, P3].iter().map(|&p| g(p) * g(p)).sum()
    }

    #[test]
    fn factorable_through_shell_is_member() {
        let rel = ModeRelations::massless();
        let e = NCPolynomial::h_pow(3) - g(H) * p_squared();
        let r = ideal_reduce(&normal_form(&e, &rel).unwrap(), &rel, 10).unwrap();
        assert_eq!(r.status, Membership::Member);
        assert!(r.residual.is_zero());
    }

    #[test]
    fn shell_itself_is_member() {
        let rel = ModeRelations::massless();
        let e = NCPolynomial::h_pow(2) - p_squared();
        assert_eq!(
            ideal_reduce(&e, &rel, 10).unwrap().status,
            Membership::Member
        );
    }

    #[test]
    fn single_generator_is_not_member() {
        let rel = ModeRelations::massless();
        let r = ideal_reduce(&g(J1), &rel, 10).unwrap();
        assert_eq!(r.status, Membership::NotMember);
        assert_eq!(r.residual, g(J1));
        assert!(r.witnessed);
    }

    #[test]
    fn cutoff_below_degree_is_an_error() {
        let rel = ModeRelations::massless();
        let e = g(P1) * g(P2) * g(K3);
        assert!(matches!(
            ideal_reduce(&e, &rel, 2),
            Err(AlgebraError::CutoffTooSmall {
                cutoff: 2,
                degree: 3
            })
        ));
    }

    #[test]
    fn realization_satisfies_poincare_table() {
        let rel = ModeRelations::massless();
        let prims = Generator::primitives(Mode::Massless);
        for &x in &prims {
            for &y in &prims {
                let lhs = g(x) * g(y) - g(y) * g(x);
                let rhs = rel.commutator_table_entry(x, y).unwrap();
                assert!(
                    !acts_nonzero_on_scalar_realization(&(lhs - rhs)),
                    "[{x},{y}]"
                );
            }
        }
    }

    #[test]
    fn realization_annihilates_helicity_relations() {
        for i in 0..3 {
            assert!(!acts_nonzero_on_scalar_realization(&helicity_relation(i)));
        }
    }

    #[test]
    fn search_finds_sandwiched_generator() {
        let rel = ModeRelations::massless();
        let e = normal_form(&(g(P1) * helicity_relation(1) * g(K3)), &rel).unwrap();
        let r = ideal_reduce(&e, &rel, 10).unwrap();
        assert_eq!(r.status, Membership::Member);
        assert!(r.candidates > 0);
    }

    #[test]
    fn helicity_is_invisible_to_the_witness_but_not_in_the_ideal() {
        // P·J kills every helicity-zero state yet is not an ideal element.
        let rel = ModeRelations::massless();
        let pj: NCPolynomial = [(P1, J1), (P2, J2), (P3, J3)]
            .iter()
            .map(|&(p, j)| g(p) * g(j))
            .sum();
        assert!(!acts_nonzero_on_scalar_realization(&pj));
        let small = ideal_reduce(&pj, &rel, 4).unwrap();
        assert_eq!(small.status, Membership::NotMember);
        let config = IdealConfig {
            max_candidates: 50,
            ..IdealConfig::default()
        };
        let capped = ideal_reduce_with(&pj, &rel, 10, &config).unwrap();
        assert_eq!(capped.status, Membership::Inconclusive);
    }

    #[test]
    fn massive_membership_is_exact() {
        let rel = ModeRelations::massive();
        let e = NCPolynomial::h_pow(2) - p_squared() - NCPolynomial::mass(2);
        assert_eq!(
            ideal_reduce(&e, &rel, 4).unwrap().status,
            Membership::Member
        );
        let e = g(Q1);
        assert_eq!(
            ideal_reduce(&e, &rel, 4).unwrap().status,
            Membership::NotMember
        );
    }

    #[test]
    fn reduction_is_deterministic() {
        let rel = ModeRelations::massless();
        let e = g(K1) * g(P2) * NCPolynomial::h_pow(-1) + g(J3);
        let a = ideal_reduce(&e, &rel, 10).unwrap();
        let b = ideal_reduce(&e, &rel, 10).unwrap();
        assert_eq!(a.residual, b.residual);
        assert_eq!(a.status, b.status);
    }
}
