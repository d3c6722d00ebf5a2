//! The frame-translation experiment carried out with explicit Lorentz event
//! transforms (c = 1).

use serde::{Deserialize, Serialize};

use super::ClassicalError;

const UNIT_SPEED_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Velocity {
    pub u: [f64; 3],
    pub massless: bool,
}

impl Velocity {
    /// A massive particle, `|u| < 1`.
    pub fn massive(u: [f64; 3]) -> Result<Self, ClassicalError> {
        let s = speed(u);
        if !(s < 1.0) {
            return Err(ClassicalError::InvalidVelocity(format!(
                "massive particle needs |u| < 1, got {s}"
            )));
        }
        Ok(Self { u, massless: false })
    }

    /// A massless particle, `|u| = 1` to 1e-12.
    pub fn massless(u: [f64; 3]) -> Result<Self, ClassicalError> {
        let s = speed(u);
        if !((s - 1.0).abs() <= UNIT_SPEED_TOL) {
            return Err(ClassicalError::InvalidVelocity(format!(
                "massless particle needs |u| = 1, got {s}"
            )));
        }
        Ok(Self { u, massless: true })
    }

    pub fn speed(&self) -> f64 {
        speed(self.u)
    }

    /// Lorentz factor of a boost along axis 1 with the particle's `u₁`.
    fn gamma(&self) -> Option<f64> {
        let v = self.u[0];
        (v.abs() < 1.0).then(|| 1.0 / (1.0 - v * v).sqrt())
    }
}

fn speed(u: [f64; 3]) -> f64 {
    (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub t: f64,
    pub x: [f64; 3],
}

impl Event {
    /// Boost to the frame moving with velocity `v` along axis 1.
    fn boost(self, v: f64, gamma: f64) -> Self {
        Self {
            t: gamma * (self.t - v * self.x[0]),
            x: [gamma * (self.x[0] - v * self.t), self.x[1], self.x[2]],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    /// Where the particle is found minus where the rigid translation puts it.
    pub delta_q: [f64; 3],
    /// Translation along axis 1, `u₁t`.
    pub epsilon: f64,
    /// `ΔQ₂/ε`.
    pub bracket_estimate: f64,
    /// The initial observer's clock reading simultaneous, in the comoving
    /// frame, with the particle event at time `t`.
    pub observer_time: f64,
}

/// Boosts along axis 1 so the particle has no axis-1 motion, reads off the
/// initial observer's clock at the event the moving frame calls simultaneous
/// with the particle at time `t`, propagates the particle in the moving
/// frame to that event, transforms back and subtracts the rigid translation
/// `u·t`.
pub fn dynamic_translation_experiment(
    u: &Velocity,
    t: f64,
) -> Result<ExperimentResult, ClassicalError> {
    if !t.is_finite() {
        return Err(ClassicalError::InvalidParameter(format!(
            "duration must be finite, got {t}"
        )));
    }
    let v = u.u[0];
    if v == 0.0 {
        return Err(ClassicalError::InvalidParameter(
            "the boost needs u₁ ≠ 0".into(),
        ));
    }
    let epsilon = v * t;
    let found = match u.gamma() {
        Some(gamma) => {
            let particle = Event {
                t,
                x: u.u.map(|c| c * t),
            };
            let primed = particle.boost(v, gamma);
            let observer_tick = Event {
                t: 1.0,
                x: [0.0; 3],
            }
            .boost(v, gamma);
            let observer_time = primed.t / observer_tick.t;

            // The particle's worldline in the moving frame, per unit primed time.
            let unit = Event { t: 1.0, x: u.u }.boost(v, gamma);
            let u_primed = unit.x.map(|c| c / unit.t);
            let back_tick = Event {
                t: 1.0,
                x: u_primed,
            }
            .boost(-v, gamma);
            let s = observer_time / back_tick.t;
            let b = Event {
                t: s,
                x: u_primed.map(|c| c * s),
            }
            .boost(-v, gamma);
            (b, observer_time)
        }
        None if u.massless => {
            // A boost to the light-like frame is singular; its limit puts the
            // simultaneous observer reading at 0, where the particle starts.
            (
                Event {
                    t: 0.0,
                    x: [0.0; 3],
                },
                0.0,
            )
        }
        None => return Err(ClassicalError::InvalidBoost { speed: v.abs() }),
    };
    let (b, observer_time) = found;
    let delta_q: [f64; 3] = std::array::from_fn(|a| b.x[a] - u.u[a] * t);
    Ok(ExperimentResult {
        delta_q,
        epsilon,
        bracket_estimate: delta_q[1] / epsilon,
        observer_time,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_the_worked_example() {
        let u = Velocity::massless([0.6, 0.8, 0.0]).unwrap();
        let r = dynamic_translation_experiment(&u, 1.0).unwrap();
        assert!((r.epsilon - 0.6).abs() < 1e-15);
        assert!((r.delta_q[1] + 0.288).abs() <= 1e-12, "{r:?}");
        assert!((r.bracket_estimate + 0.48).abs() <= 1e-12);
        assert!((r.observer_time - 0.64).abs() <= 1e-12);
    }

    #[test]
    fn motion_along_the_boost_axis_has_no_transverse_shift() {
        let u = Velocity::massless([1.0, 0.0, 0.0]).unwrap();
        let r = dynamic_translation_experiment(&u, 2.0).unwrap();
        assert_eq!(r.delta_q[1], 0.0);
        assert_eq!(r.delta_q[2], 0.0);
    }

    #[test]
    fn constructors_validate_speed() {
        assert!(Velocity::massless([0.6, 0.8, 2e-6]).is_err());
        assert!(Velocity::massless([0.6, 0.8, 1e-7]).is_ok());
        assert!(Velocity::massive([0.6, 0.8, 0.0]).is_err());
    }

    #[test]
    fn boost_axis_must_carry_motion() {
        let u = Velocity::massless([0.0, 1.0, 0.0]).unwrap();
        assert!(matches!(
            dynamic_translation_experiment(&u, 1.0),
            Err(ClassicalError::InvalidParameter(_))
        ));
    }

    #[test]
    fn massive_run_rejects_superluminal_boost() {
        let u = Velocity {
            u: [1.0, 0.0, 0.0],
            massless: false,
        };
        assert!(matches!(
            dynamic_translation_experiment(&u, 1.0),
            Err(ClassicalError::InvalidBoost { .. })
        ));
    }

    #[test]
    fn massive_particle_shifts_by_the_same_simultaneity_factor() {
        let u = Velocity::massive([0.3, 0.4, 0.2]).unwrap();
        let r = dynamic_translation_experiment(&u, 1.5).unwrap();
        assert!((r.delta_q[1] + 0.09 * 0.4 * 1.5).abs() < 1e-14);
    }

    #[test]
    fn boost_round_trips() {
        let e = Event {
            t: 0.7,
            x: [0.2, -1.0, 3.0],
        };
        let g = 1.0 / (1.0f64 - 0.36).sqrt();
        let back = e.boost(0.6, g).boost(-0.6, g);
        assert!((back.t - e.t).abs() < 1e-15 && (0..3).all(|a| (back.x[a] - e.x[a]).abs() < 1e-15));
    }
}
