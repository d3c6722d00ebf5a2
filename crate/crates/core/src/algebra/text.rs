//! Canonical text form, e.g. `(3/2 + 1i) m^-1 t^0 : H^-3 P1 K1`.
//!
//! A polynomial is `0` or its terms joined by ` + `, in monomial order.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::generator::Generator;
use super::poly::{Monomial, NCPolynomial, Word};
use super::scalar::GaussianRational;
use super::AlgebraError;

impl fmt::Display for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c} m^{} t^{} : {}", m.m_power, m.t_power, m.word)?;
        }
        Ok(())
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> AlgebraError {
        AlgebraError::Parse(format!("expected {what} at byte {}", self.pos))
    }

    fn expect(&mut self, c: u8) -> Result<(), AlgebraError> {
        self.ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("`{}`", c as char)))
        }
    }

    fn integer(&mut self) -> Result<BigInt, AlgebraError> {
        self.ws();
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(self.err("integer"));
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
        text.parse().map_err(|_| self.err("integer"))
    }

    fn small_int(&mut self) -> Result<i32, AlgebraError> {
        let n = self.integer()?;
        i32::try_from(n).map_err(|_| self.err("32-bit exponent"))
    }

    fn rational(&mut self) -> Result<BigRational, AlgebraError> {
        let num = self.integer()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let den = self.integer()?;
            if den == BigInt::from(0) {
                return Err(self.err("nonzero denominator"));
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    fn coeff(&mut self) -> Result<GaussianRational, AlgebraError> {
        self.expect(b'(')?;
        let re = self.rational()?;
        self.ws();
        let sign = match self.peek() {
            Some(b'+') => 1,
            Some(b'-') => -1,
            _ => return Err(self.err("`+` or `-`")),
        };
        self.pos += 1;
        let im = self.rational()?;
        self.expect(b'i')?;
        self.expect(b')')?;
        let im = if sign < 0 { -im } else { im };
        Ok(GaussianRational::new(re, im))
    }

    fn keyword_power(&mut self, key: u8) -> Result<i32, AlgebraError> {
        self.expect(key)?;
        self.expect(b'^')?;
        self.small_int()
    }

    fn word(&mut self) -> Result<Word, AlgebraError> {
        self.ws();
        if self.peek() == Some(b'1') {
            self.pos += 1;
            return Ok(Word::empty());
        }
        let mut factors = Vec::new();
        loop {
            self.ws();
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
                self.pos += 1;
            }
            if self.pos == start {
                break;
            }
            let name = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
            let g: Generator = name.parse()?;
            let p = if self.peek() == Some(b'^') {
                self.pos += 1;
                self.small_int()?
            } else {
                1
            };
            factors.push((g, p));
        }
        if factors.is_empty() {
            return Err(self.err("word"));
        }
        Word::new(factors)
    }
}

impl FromStr for NCPolynomial {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor {
            s: s.as_bytes(),
            pos: 0,
        };
        cur.ws();
        let mut out = NCPolynomial::zero();
        if cur.peek() == Some(b'0') {
            cur.pos += 1;
            cur.ws();
            return if cur.pos == cur.s.len() {
                Ok(out)
            } else {
                Err(cur.err("end of input"))
            };
        }
        loop {
            let c = cur.coeff()?;
            let m = cur.keyword_power(b'm')?;
            let t = cur.keyword_power(b't')?;
            cur.expect(b':')?;
            let w = cur.word()?;
            out.add_term(Monomial::new(w, m, t), &c);
            cur.ws();
            match cur.peek() {
                None => break,
                Some(b'+') => cur.pos += 1,
                Some(_) => return Err(cur.err("` + ` or end of input")),
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    #[test]
    fn formats_example_term() {
        let w = Word::new([(H, -3), (P1, 1), (K1, 1)]).unwrap();
        let c = GaussianRational::ratio(3, 2) + GaussianRational::imag_ratio(1, 1);
        let p = NCPolynomial::term(c, Monomial::new(w, -1, 0));
        assert_eq!(p.to_string(), "(3/2 + 1i) m^-1 t^0 : H^-3 P1 K1");
        assert_eq!(p.to_string().parse::<NCPolynomial>().unwrap(), p);
    }

    #[test]
    fn parses_sums_and_constants() {
        let p: NCPolynomial = "(1 + 0i) m^0 t^0 : 1 + (0 - 1/2i) m^0 t^1 : P2^2 J3"
            .parse()
            .unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!("0".parse::<NCPolynomial>().unwrap(), NCPolynomial::zero());
    }

    #[test]
    fn rejects_garbage() {
        assert!("(1 + 0i) m^0 : P1".parse::<NCPolynomial>().is_err());
        assert!("(1 + 0i) m^0 t^0 : X9".parse::<NCPolynomial>().is_err());
        assert!("(1 + 0i) m^0 t^0 : K1^-1".parse::<NCPolynomial>().is_err());
        assert!("(1/0 + 0i) m^0 t^0 : 1".parse::<NCPolynomial>().is_err());
    }
}
