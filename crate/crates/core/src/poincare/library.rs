//! Named operator expressions built from the primitive generators.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{levi_civita, Family, GaussianRational, Generator, Mode, NCPolynomial};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PoincareError {
    #[error("unknown expression name `{0}`")]
    UnknownName(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ExpressionName {
    C1,
    C2,
    FoldyJ,
    FoldyK,
    QPnw,
    QMassless,
    SpinS,
}

impl ExpressionName {
    pub const ALL: [ExpressionName; 7] = [
        ExpressionName::C1,
        ExpressionName::C2,
        ExpressionName::FoldyJ,
        ExpressionName::FoldyK,
        ExpressionName::QPnw,
        ExpressionName::QMassless,
        ExpressionName::SpinS,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ExpressionName::C1 => "C1",
            ExpressionName::C2 => "C2",
            ExpressionName::FoldyJ => "FoldyJ",
            ExpressionName::FoldyK => "FoldyK",
            ExpressionName::QPnw => "Q_PNW",
            ExpressionName::QMassless => "Q_MASSLESS",
            ExpressionName::SpinS => "SPIN_S",
        }
    }
}

impl fmt::Display for ExpressionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExpressionName {
    type Err = PoincareError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ExpressionName::ALL
            .into_iter()
            .find(|n| n.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| PoincareError::UnknownName(s.to_string()))
    }
}

/// A scalar (one component) or vector (three components) expression.
#[derive(Clone, Debug, PartialEq)]
pub struct NamedExpression {
    pub name: ExpressionName,
    pub components: Vec<NCPolynomial>,
    pub mode: Mode,
}

impl NamedExpression {
    pub fn scalar(&self) -> &NCPolynomial {
        &self.components[0]
    }
}

pub type Vector3 = [NCPolynomial; 3];

fn g(x: Generator) -> NCPolynomial {
    NCPolynomial::generator(x)
}

fn c(re: i64, den: i64) -> GaussianRational {
    GaussianRational::ratio(re, den)
}

pub fn vector_of(family: Family) -> Vector3 {
    std::array::from_fn(|a| g(Generator::vector(family, a)))
}

pub fn dot(a: &Vector3, b: &Vector3) -> NCPolynomial {
    (0..3).map(|i| &a[i] * &b[i]).sum()
}

pub fn cross(a: &Vector3, b: &Vector3) -> Vector3 {
    std::array::from_fn(|i| {
        let mut out = NCPolynomial::zero();
        for j in 0..3 {
            for k in 0..3 {
                let e = levi_civita(i, j, k);
                if e != 0 {
                    out = out + (&a[j] * &b[k]).scale(&GaussianRational::from_int(e));
                }
            }
        }
        out
    })
}

fn add(a: &Vector3, b: &Vector3) -> Vector3 {
    std::array::from_fn(|i| &a[i] + &b[i])
}

fn sub(a: &Vector3, b: &Vector3) -> Vector3 {
    std::array::from_fn(|i| &a[i] - &b[i])
}

fn left(s: &NCPolynomial, v: &Vector3) -> Vector3 {
    std::array::from_fn(|i| s * &v[i])
}

fn right(v: &Vector3, s: &NCPolynomial) -> Vector3 {
    std::array::from_fn(|i| &v[i] * s)
}

fn scale(v: &Vector3, k: &GaussianRational) -> Vector3 {
    std::array::from_fn(|i| v[i].scale(k))
}

/// `Q × P + S`.
pub fn foldy_j() -> Vector3 {
    add(
        &cross(&vector_of(Family::Q), &vector_of(Family::P)),
        &vector_of(Family::S),
    )
}

/// `½(HQ + QH) + (H+m)⁻¹ P×S − tP`.
pub fn foldy_k() -> Vector3 {
    foldy_k_with_spin_factor(&g(Generator::W))
}

/// The boost with `H⁻¹ P×S` as its spin term. It violates the Casimir and
/// position-operator identities and is kept for regression tests.
pub fn foldy_k_with_inverse_h() -> Vector3 {
    foldy_k_with_spin_factor(&NCPolynomial::h_pow(-1))
}

fn foldy_k_with_spin_factor(factor: &NCPolynomial) -> Vector3 {
    let h = g(Generator::H);
    let q = vector_of(Family::Q);
    let p = vector_of(Family::P);
    let sym = scale(&add(&left(&h, &q), &right(&q, &h)), &c(1, 2));
    let spin = left(factor, &cross(&p, &vector_of(Family::S)));
    sub(&add(&sym, &spin), &left(&NCPolynomial::time(1), &p))
}

/// `H² − P·P`.
pub fn casimir_c1() -> NCPolynomial {
    let p = vector_of(Family::P);
    NCPolynomial::h_pow(2) - dot(&p, &p)
}

/// `(P·J)² − (HJ + P×K)²` for given `J`, `K`.
pub fn casimir_c2(j: &Vector3, k: &Vector3) -> NCPolynomial {
    let p = vector_of(Family::P);
    let pj = dot(&p, j);
    let w = pauli_lubanski_vector(j, k);
    &pj * &pj - dot(&w, &w)
}

/// `HJ + P×K`.
pub fn pauli_lubanski_vector(j: &Vector3, k: &Vector3) -> Vector3 {
    add(&left(&g(Generator::H), j), &cross(&vector_of(Family::P), k))
}

/// `H⁻¹(K + tP − (i/2)H⁻¹P) − m⁻¹H⁻¹(H+m)⁻¹ P×(HJ + P×K)`.
pub fn q_pnw(j: &Vector3, k: &Vector3) -> Vector3 {
    let p = vector_of(Family::P);
    let hinv = NCPolynomial::h_pow(-1);
    let half_i = GaussianRational::imag_ratio(1, 2);
    let inner = sub(
        &add(k, &left(&NCPolynomial::time(1), &p)),
        &scale(&left(&hinv, &p), &half_i),
    );
    let prefactor = NCPolynomial::mass(-1) * &hinv * g(Generator::W);
    let spin = left(&prefactor, &cross(&p, &pauli_lubanski_vector(j, k)));
    sub(&left(&hinv, &inner), &spin)
}

/// `½(H⁻³P(P·K) + (K·P)PH⁻³) + tH⁻¹P`.
pub fn q_massless() -> Vector3 {
    let p = vector_of(Family::P);
    let k = vector_of(Family::K);
    let h3 = NCPolynomial::h_pow(-3);
    let pk = dot(&p, &k);
    let kp = dot(&k, &p);
    std::array::from_fn(|i| {
        let sym = (&h3 * &p[i] * &pk + &kp * &p[i] * &h3).scale(&c(1, 2));
        sym + NCPolynomial::time(1) * NCPolynomial::h_pow(-1) * &p[i]
    })
}

/// `HJᵢ + (P×K)ᵢ − PᵢH⁻¹(P·J)` for `i = 1, 2, 3`.
pub fn helicity_relations() -> Vector3 {
    std::array::from_fn(crate::algebra::helicity_relation)
}

/// `J − Q×P`.
pub fn spin_s(j: &Vector3) -> Vector3 {
    sub(j, &cross(&vector_of(Family::Q), &vector_of(Family::P)))
}

/// Expressions exactly as written, before normalization. Massive-mode
/// entries are in terms of the Foldy primitives with `J`, `K` substituted.
pub fn build_named(name: &str) -> Result<NamedExpression, PoincareError> {
    let name: ExpressionName = name.parse()?;
    Ok(build(name))
}

pub fn build(name: ExpressionName) -> NamedExpression {
    let (components, mode) = match name {
        ExpressionName::C1 => (vec![casimir_c1()], Mode::Massless),
        ExpressionName::C2 => (vec![casimir_c2(&foldy_j(), &foldy_k())], Mode::Massive),
        ExpressionName::FoldyJ => (foldy_j().to_vec(), Mode::Massive),
        ExpressionName::FoldyK => (foldy_k().to_vec(), Mode::Massive),
        ExpressionName::QPnw => (q_pnw(&foldy_j(), &foldy_k()).to_vec(), Mode::Massive),
        ExpressionName::QMassless => (q_massless().to_vec(), Mode::Massless),
        ExpressionName::SpinS => (spin_s(&foldy_j()).to_vec(), Mode::Massive),
    };
    NamedExpression {
        name,
        components,
        mode,
    }
}
