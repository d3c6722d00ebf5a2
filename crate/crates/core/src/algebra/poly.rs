//! Words, monomials and noncommutative polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::generator::Generator;
use super::scalar::GaussianRational;
use super::AlgebraError;

/// An ordered product of generator powers.
///
/// Adjacent factors always carry distinct generators and `H^0` is never
/// stored. Only `H` may carry a negative power.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    factors: Vec<(Generator, i32)>,
}

impl Word {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a word, merging adjacent repeats. Rejects non-positive powers on
    /// anything other than `H`.
    pub fn new<I>(factors: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (Generator, i32)>,
    {
        let factors: Vec<_> = factors.into_iter().collect();
        for &(g, p) in &factors {
            if g != Generator::H && p < 1 {
                return Err(AlgebraError::InvalidPower {
                    generator: g,
                    power: p,
                });
            }
        }
        Ok(Self::from_letters(factors))
    }

    /// Merges adjacent repeats without validating powers.
    pub(crate) fn from_letters<I>(letters: I) -> Self
    where
        I: IntoIterator<Item = (Generator, i32)>,
    {
        let mut factors: Vec<(Generator, i32)> = Vec::new();
        for (g, p) in letters {
            if p == 0 {
                continue;
            }
            match factors.last_mut() {
                Some(last) if last.0 == g => {
                    last.1 += p;
                    if last.1 == 0 {
                        factors.pop();
                    }
                }
                _ => factors.push((g, p)),
            }
        }
        Self { factors }
    }

    pub fn generator(g: Generator) -> Self {
        Self {
            factors: vec![(g, 1)],
        }
    }

    pub fn factors(&self) -> &[(Generator, i32)] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Sum of powers of every generator except `H`.
    pub fn degree(&self) -> u32 {
        self.factors
            .iter()
            .filter(|(g, _)| *g != Generator::H)
            .map(|&(_, p)| p.unsigned_abs())
            .sum()
    }

    /// Net power of `H` in the word.
    pub fn h_power(&self) -> i32 {
        self.factors
            .iter()
            .filter(|(g, _)| *g == Generator::H)
            .map(|&(_, p)| p)
            .sum()
    }

    pub fn is_sorted(&self) -> bool {
        self.factors.windows(2).all(|w| w[0].0 < w[1].0)
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::from_letters(self.factors.iter().chain(other.factors.iter()).copied())
    }

    pub fn reversed(&self) -> Word {
        Word::from_letters(self.factors.iter().rev().copied())
    }

    /// Letters with non-`H` powers expanded to repeated single letters.
    pub(crate) fn letters(&self) -> Vec<(Generator, i32)> {
        let mut out = Vec::with_capacity(self.factors.len());
        for &(g, p) in &self.factors {
            if g == Generator::H {
                out.push((g, p));
            } else {
                out.extend(std::iter::repeat_n((g, 1), p as usize));
            }
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (n, (g, p)) in self.factors.iter().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            if *p == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{p}")?;
            }
        }
        Ok(())
    }
}

/// A basis element: word times `m^m_power · t^t_power`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub word: Word,
    pub m_power: i32,
    pub t_power: i32,
}

impl Monomial {
    pub fn new(word: Word, m_power: i32, t_power: i32) -> Self {
        Self {
            word,
            m_power,
            t_power,
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            word: self.word.concat(&other.word),
            m_power: self.m_power + other.m_power,
            t_power: self.t_power + other.t_power,
        }
    }
}

/// Exact noncommutative polynomial: a finite map from monomials to nonzero
/// Gaussian-rational coefficients.
///
/// Words need not be sorted; [`normal_form`](super::normal_form) produces the
/// canonical representative.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NCPolynomial {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl NCPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::term(c, Monomial::default())
    }

    pub fn term(c: GaussianRational, monomial: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(monomial, &c);
        p
    }

    pub fn generator(g: Generator) -> Self {
        Self::term(
            GaussianRational::one(),
            Monomial::new(Word::generator(g), 0, 0),
        )
    }

    /// `g^power`; negative powers only for `H`.
    pub fn power(g: Generator, power: i32) -> Result<Self, AlgebraError> {
        let word = Word::new([(g, power)])?;
        Ok(Self::term(
            GaussianRational::one(),
            Monomial::new(word, 0, 0),
        ))
    }

    /// `H^power`, any integer.
    pub fn h_pow(power: i32) -> Self {
        Self::term(
            GaussianRational::one(),
            Monomial::new(Word::from_letters([(Generator::H, power)]), 0, 0),
        )
    }

    /// The scalar symbol `m^power`.
    pub fn mass(power: i32) -> Self {
        Self::term(
            GaussianRational::one(),
            Monomial::new(Word::empty(), power, 0),
        )
    }

    /// The scalar symbol `t^power`.
    pub fn time(power: i32) -> Self {
        Self::term(
            GaussianRational::one(),
            Monomial::new(Word::empty(), 0, power),
        )
    }

    pub fn add_term(&mut self, monomial: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(monomial) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, GaussianRational)> {
        self.terms.into_iter()
    }

    /// Maximum word degree over all terms (0 for the zero polynomial).
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.word.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), &(v * c));
        }
        out
    }

    pub fn map_terms<F>(&self, mut f: F) -> Self
    where
        F: FnMut(&Monomial, &GaussianRational) -> (Monomial, GaussianRational),
    {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            let (m2, v2) = f(m, v);
            out.add_term(m2, &v2);
        }
        out
    }

    /// Drops every term carrying a positive power of `t`.
    pub fn at_time_zero(&self) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            if m.t_power == 0 {
                out.add_term(m.clone(), v);
            }
        }
        out
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.terms
            .keys()
            .flat_map(|m| m.word.factors().iter().map(|&(g, _)| g))
    }
}

impl Add for &NCPolynomial {
    type Output = NCPolynomial;
    fn add(self, rhs: &NCPolynomial) -> NCPolynomial {
        let mut out = self.clone();
        for (m, v) in &rhs.terms {
            out.add_term(m.clone(), v);
        }
        out
    }
}

impl Sub for &NCPolynomial {
    type Output = NCPolynomial;
    fn sub(self, rhs: &NCPolynomial) -> NCPolynomial {
        let mut out = self.clone();
        for (m, v) in &rhs.terms {
            out.add_term(m.clone(), &-v);
        }
        out
    }
}

impl Mul for &NCPolynomial {
    type Output = NCPolynomial;
    fn mul(self, rhs: &NCPolynomial) -> NCPolynomial {
        let mut out = NCPolynomial::zero();
        for (ma, va) in &self.terms {
            for (mb, vb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(va * vb));
            }
        }
        out
    }
}

impl Neg for &NCPolynomial {
    type Output = NCPolynomial;
    fn neg(self) -> NCPolynomial {
        self.scale(&GaussianRational::from_int(-1))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for NCPolynomial {
            type Output = NCPolynomial;
            fn $f(self, rhs: NCPolynomial) -> NCPolynomial {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&NCPolynomial> for NCPolynomial {
            type Output = NCPolynomial;
            fn $f(self, rhs: &NCPolynomial) -> NCPolynomial {
                (&self).$f(rhs)
            }
        }
        impl $tr<NCPolynomial> for &NCPolynomial {
            type Output = NCPolynomial;
            fn $f(self, rhs: NCPolynomial) -> NCPolynomial {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for NCPolynomial {
    type Output = NCPolynomial;
    fn neg(self) -> NCPolynomial {
        -&self
    }
}

impl Mul<&GaussianRational> for &NCPolynomial {
    type Output = NCPolynomial;
    fn mul(self, rhs: &GaussianRational) -> NCPolynomial {
        self.scale(rhs)
    }
}

impl Mul<GaussianRational> for NCPolynomial {
    type Output = NCPolynomial;
    fn mul(self, rhs: GaussianRational) -> NCPolynomial {
        self.scale(&rhs)
    }
}

impl From<Generator> for NCPolynomial {
    fn from(g: Generator) -> Self {
        NCPolynomial::generator(g)
    }
}

impl std::iter::Sum for NCPolynomial {
    fn sum<I: Iterator<Item = NCPolynomial>>(iter: I) -> Self {
        let mut out = NCPolynomial::zero();
        for p in iter {
            for (m, v) in p.terms {
                out.add_term(m, &v);
            }
        }
        out
    }
}
