use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::AlgebraError;

/// Which representation family an expression lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Mode {
    /// Foldy realization: primitives H, W, P, S, Q.
    Massive,
    /// Abstract Poincaré algebra: primitives H, P, J, K.
    Massless,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Massive => write!(f, "massive"),
            Mode::Massless => write!(f, "massless"),
        }
    }
}

/// Operator generators. The declaration order is the canonical word order.
///
/// `W` stands for `(H + m)⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    H,
    W,
    P1,
    P2,
    P3,
    S1,
    S2,
    S3,
    Q1,
    Q2,
    Q3,
    J1,
    J2,
    J3,
    K1,
    K2,
    K3,
}

/// The vector families, each with three Cartesian components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    P,
    S,
    Q,
    J,
    K,
}

impl Generator {
    pub const ALL: [Generator; 17] = [
        Generator::H,
        Generator::W,
        Generator::P1,
        Generator::P2,
        Generator::P3,
        Generator::S1,
        Generator::S2,
        Generator::S3,
        Generator::Q1,
        Generator::Q2,
        Generator::Q3,
        Generator::J1,
        Generator::J2,
        Generator::J3,
        Generator::K1,
        Generator::K2,
        Generator::K3,
    ];

    /// Component `axis ∈ {0,1,2}` of a vector family.
    pub fn vector(family: Family, axis: usize) -> Generator {
        use Generator::*;
        let row = match family {
            Family::P => [P1, P2, P3],
            Family::S => [S1, S2, S3],
            Family::Q => [Q1, Q2, Q3],
            Family::J => [J1, J2, J3],
            Family::K => [K1, K2, K3],
        };
        row[axis]
    }

    /// Family and axis for vector components; `None` for `H` and `W`.
    pub fn family_axis(self) -> Option<(Family, usize)> {
        use Generator::*;
        Some(match self {
            H | W => return None,
            P1 => (Family::P, 0),
            P2 => (Family::P, 1),
            P3 => (Family::P, 2),
            S1 => (Family::S, 0),
            S2 => (Family::S, 1),
            S3 => (Family::S, 2),
            Q1 => (Family::Q, 0),
            Q2 => (Family::Q, 1),
            Q3 => (Family::Q, 2),
            J1 => (Family::J, 0),
            J2 => (Family::J, 1),
            J3 => (Family::J, 2),
            K1 => (Family::K, 0),
            K2 => (Family::K, 1),
            K3 => (Family::K, 2),
        })
    }

    pub fn is_primitive_in(self, mode: Mode) -> bool {
        match self.family_axis() {
            None => self == Generator::H || mode == Mode::Massive,
            Some((fam, _)) => match mode {
                Mode::Massive => matches!(fam, Family::P | Family::S | Family::Q),
                Mode::Massless => matches!(fam, Family::P | Family::J | Family::K),
            },
        }
    }

    pub fn primitives(mode: Mode) -> Vec<Generator> {
        Self::ALL
            .iter()
            .copied()
            .filter(|g| g.is_primitive_in(mode))
            .collect()
    }

    pub fn name(self) -> &'static str {
        use Generator::*;
        match self {
            H => "H",
            W => "W",
            P1 => "P1",
            P2 => "P2",
            P3 => "P3",
            S1 => "S1",
            S2 => "S2",
            S3 => "S3",
            Q1 => "Q1",
            Q2 => "Q2",
            Q3 => "Q3",
            J1 => "J1",
            J2 => "J2",
            J3 => "J3",
            K1 => "K1",
            K2 => "K2",
            K3 => "K3",
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Generator {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Generator::ALL
            .iter()
            .copied()
            .find(|g| g.name() == s)
            .ok_or_else(|| AlgebraError::Parse(format!("unknown generator `{s}`")))
    }
}

/// Levi-Civita symbol on axes `0..3`.
pub fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

/// The axis completing `(i, j)` to a permutation, with the sign `ε_ijk`.
pub fn third_axis(i: usize, j: usize) -> Option<(usize, i64)> {
    if i == j {
        return None;
    }
    let k = 3 - i - j;
    Some((k, levi_civita(i, j, k)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_puts_momentum_functions_first() {
        assert!(Generator::H < Generator::W);
        assert!(Generator::W < Generator::P1);
        assert!(Generator::P3 < Generator::S1);
        assert!(Generator::S3 < Generator::Q1);
        assert!(Generator::Q3 < Generator::J1);
        assert!(Generator::J3 < Generator::K1);
    }

    #[test]
    fn primitive_sets() {
        assert_eq!(Generator::primitives(Mode::Massive).len(), 11);
        assert_eq!(Generator::primitives(Mode::Massless).len(), 10);
        assert!(!Generator::J1.is_primitive_in(Mode::Massive));
        assert!(!Generator::W.is_primitive_in(Mode::Massless));
    }

    #[test]
    fn names_parse_back() {
        for g in Generator::ALL {
            assert_eq!(g.name().parse::<Generator>().unwrap(), g);
        }
    }
}
