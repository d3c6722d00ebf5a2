//! Poisson bracket with the position–momentum block projected on `p̂`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::ClassicalError;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseSpacePoint {
    pub q: [f64; 3],
    pub p: [f64; 3],
}

impl PhaseSpacePoint {
    pub fn new(q: [f64; 3], p: [f64; 3]) -> Result<Self, ClassicalError> {
        let x = Self { q, p };
        if x.momentum_norm() == 0.0 {
            return Err(ClassicalError::SingularMomentum);
        }
        Ok(x)
    }

    pub fn momentum_norm(&self) -> f64 {
        (self.p[0] * self.p[0] + self.p[1] * self.p[1] + self.p[2] * self.p[2]).sqrt()
    }
}

/// `{qᵢ, pⱼ} = pᵢpⱼ/p²`.
pub fn bivector(p: [f64; 3]) -> Result<[[f64; 3]; 3], ClassicalError> {
    let p2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
    if p2 == 0.0 {
        return Err(ClassicalError::SingularMomentum);
    }
    Ok(std::array::from_fn(|i| {
        std::array::from_fn(|j| p[i] * p[j] / p2)
    }))
}

/// A scalar on phase space. Gradients default to central differences with a
/// step scaled to `|p|`.
pub trait PhaseSpaceFunction {
    fn value(&self, x: &PhaseSpacePoint) -> Result<f64, ClassicalError>;

    /// `(∂/∂q, ∂/∂p)` when known in closed form.
    fn analytic_gradient(&self, _x: &PhaseSpacePoint) -> Option<([f64; 3], [f64; 3])> {
        None
    }

    fn gradient(&self, x: &PhaseSpacePoint) -> Result<([f64; 3], [f64; 3]), ClassicalError> {
        if let Some(g) = self.analytic_gradient(x) {
            return Ok(g);
        }
        let h = 1e-4 * x.momentum_norm();
        let mut dq = [0.0; 3];
        let mut dp = [0.0; 3];
        for a in 0..3 {
            let shift = |dq_a: f64, dp_a: f64| {
                let mut y = *x;
                y.q[a] += dq_a;
                y.p[a] += dp_a;
                y
            };
            dq[a] = (self.value(&shift(h, 0.0))? - self.value(&shift(-h, 0.0))?) / (2.0 * h);
            dp[a] = (self.value(&shift(0.0, h))? - self.value(&shift(0.0, -h))?) / (2.0 * h);
        }
        Ok((dq, dp))
    }
}

/// Canonical coordinates and the massless Hamiltonian `|p|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Coordinate {
    Q(usize),
    P(usize),
    Hamiltonian,
}

impl PhaseSpaceFunction for Coordinate {
    fn value(&self, x: &PhaseSpacePoint) -> Result<f64, ClassicalError> {
        Ok(match *self {
            Coordinate::Q(i) => x.q[i],
            Coordinate::P(i) => x.p[i],
            Coordinate::Hamiltonian => x.momentum_norm(),
        })
    }

    fn analytic_gradient(&self, x: &PhaseSpacePoint) -> Option<([f64; 3], [f64; 3])> {
        let unit = |i: usize| std::array::from_fn(|a| if a == i { 1.0 } else { 0.0 });
        Some(match *self {
            Coordinate::Q(i) => (unit(i), [0.0; 3]),
            Coordinate::P(i) => ([0.0; 3], unit(i)),
            Coordinate::Hamiltonian => {
                let n = x.momentum_norm();
                ([0.0; 3], x.p.map(|c| c / n))
            }
        })
    }
}

/// Wraps a closure; gradients by finite differences.
pub struct FnPhase<F>(pub F);

impl<F: Fn(&PhaseSpacePoint) -> f64> PhaseSpaceFunction for FnPhase<F> {
    fn value(&self, x: &PhaseSpacePoint) -> Result<f64, ClassicalError> {
        Ok((self.0)(x))
    }
}

struct Bracket<'a> {
    f: &'a dyn PhaseSpaceFunction,
    g: &'a dyn PhaseSpaceFunction,
}

impl PhaseSpaceFunction for Bracket<'_> {
    fn value(&self, x: &PhaseSpacePoint) -> Result<f64, ClassicalError> {
        modified_bracket(self.f, self.g, x)
    }
}

/// `Σᵢⱼ Πᵢⱼ(p)(∂f/∂qᵢ ∂g/∂pⱼ − ∂g/∂qᵢ ∂f/∂pⱼ)`.
pub fn modified_bracket(
    f: &dyn PhaseSpaceFunction,
    g: &dyn PhaseSpaceFunction,
    x: &PhaseSpacePoint,
) -> Result<f64, ClassicalError> {
    let pi = bivector(x.p)?;
    let (fq, fp) = f.gradient(x)?;
    let (gq, gp) = g.gradient(x)?;
    let mut s = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            s += pi[i][j] * (fq[i] * gp[j] - gq[i] * fp[j]);
        }
    }
    Ok(s)
}

/// `{f,{g,h}} + {g,{h,f}} + {h,{f,g}}`; the outer gradients are finite differences.
pub fn jacobiator(
    f: &dyn PhaseSpaceFunction,
    g: &dyn PhaseSpaceFunction,
    h: &dyn PhaseSpaceFunction,
    x: &PhaseSpacePoint,
) -> Result<f64, ClassicalError> {
    let gh = Bracket { f: g, g: h };
    let hf = Bracket { f: h, g: f };
    let fg = Bracket { f, g };
    Ok(modified_bracket(f, &gh, x)? + modified_bracket(g, &hf, x)? + modified_bracket(h, &fg, x)?)
}

/// Seeded points with `q ∈ [−5, 5]³`, `p̂` uniform on the sphere and `|p|`
/// uniform in `p_range`.
pub fn random_points(
    n: usize,
    seed: u64,
    p_range: (f64, f64),
) -> Result<Vec<PhaseSpacePoint>, ClassicalError> {
    let (lo, hi) = p_range;
    if !(lo > 0.0 && hi >= lo && hi.is_finite()) {
        return Err(ClassicalError::InvalidParameter(format!(
            "momentum range must satisfy 0 < lo ≤ hi, got {p_range:?}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n)
        .map(|_| {
            let q = std::array::from_fn(|_| rng.gen_range(-5.0..=5.0));
            let c: f64 = rng.gen_range(-1.0..=1.0);
            let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let r = rng.gen_range(lo..=hi);
            let s = (1.0 - c * c).sqrt();
            PhaseSpacePoint {
                q,
                p: [r * s * phi.cos(), r * s * phi.sin(), r * c],
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(p: [f64; 3]) -> PhaseSpacePoint {
        PhaseSpacePoint::new([0.3, -1.0, 2.0], p).unwrap()
    }

    #[test]
    fn position_momentum_block_is_the_projector() {
        let x = at([1.2, 1.6, 0.0]);
        let v = modified_bracket(&Coordinate::Q(0), &Coordinate::P(1), &x).unwrap();
        assert!((v - 0.48).abs() < 1e-15);
        let pi = bivector(x.p).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let sq: f64 = (0..3).map(|k| pi[i][k] * pi[k][j]).sum();
                assert!((sq - pi[i][j]).abs() < 1e-15 && pi[i][j] == pi[j][i]);
            }
        }
    }

    #[test]
    fn hamiltonian_velocity_is_unit_direction() {
        let x = at([0.5, -2.0, 1.0]);
        let n = x.momentum_norm();
        for i in 0..3 {
            let v = modified_bracket(&Coordinate::Q(i), &Coordinate::Hamiltonian, &x).unwrap();
            assert!((v - x.p[i] / n).abs() < 1e-15);
        }
    }

    #[test]
    fn momenta_and_positions_commute_among_themselves() {
        let x = at([0.5, -2.0, 1.0]);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(
                    modified_bracket(&Coordinate::P(i), &Coordinate::P(j), &x).unwrap(),
                    0.0
                );
                assert_eq!(
                    modified_bracket(&Coordinate::Q(i), &Coordinate::Q(j), &x).unwrap(),
                    0.0
                );
            }
        }
        let ps = [Coordinate::P(0), Coordinate::P(1), Coordinate::P(2)];
        assert_eq!(jacobiator(&ps[0], &ps[1], &ps[2], &x).unwrap(), 0.0);
    }

    #[test]
    fn finite_difference_gradient_agrees_with_closed_form() {
        let x = at([0.5, -2.0, 1.0]);
        let fd = FnPhase(|y: &PhaseSpacePoint| y.momentum_norm());
        let (_, a) = Coordinate::Hamiltonian.gradient(&x).unwrap();
        let (_, b) = fd.gradient(&x).unwrap();
        assert!((0..3).all(|k| (a[k] - b[k]).abs() < 1e-7));
    }

    #[test]
    fn zero_momentum_is_singular() {
        assert!(matches!(
            PhaseSpacePoint::new([0.0; 3], [0.0; 3]),
            Err(ClassicalError::SingularMomentum)
        ));
        let x = PhaseSpacePoint {
            q: [0.0; 3],
            p: [0.0; 3],
        };
        assert!(matches!(
            modified_bracket(&Coordinate::Q(0), &Coordinate::P(0), &x),
            Err(ClassicalError::SingularMomentum)
        ));
    }

    #[test]
    fn seeded_points_are_reproducible_and_in_range() {
        let a = random_points(20, 7, (0.5, 5.0)).unwrap();
        assert_eq!(a, random_points(20, 7, (0.5, 5.0)).unwrap());
        assert!(a
            .iter()
            .all(|x| (0.5 - 1e-12..=5.0 + 1e-12).contains(&x.momentum_norm())));
    }
}
