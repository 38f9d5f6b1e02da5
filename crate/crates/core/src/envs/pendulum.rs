use std::f64::consts::PI;

use super::{Dynamics, EnvState, Transition};
use crate::env::{Action, Observation};
use crate::error::{Error, Result};
use crate::rng::Rng;
use crate::spaces::{BoxSpace, Space};

const MAX_SPEED: f64 = 8.0;
pub(crate) const MAX_TORQUE: f64 = 2.0;
const DT: f64 = 0.05;
const GRAVITY: f64 = 10.0;
const MASS: f64 = 1.0;
pub(crate) const LENGTH: f64 = 1.0;

/// Inverted pendulum; `theta == 0` is upright. The angle is kept unwrapped.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PendulumState {
    pub theta: f64,
    pub theta_dot: f64,
}

/// Maps an angle to `[-pi, pi)`.
pub fn normalize_angle(theta: f64) -> f64 {
    (theta + PI).rem_euclid(2.0 * PI) - PI
}

impl PendulumState {
    pub const fn new(theta: f64, theta_dot: f64) -> Self {
        Self { theta, theta_dot }
    }

    /// Cost of the current state under `torque`, before the update.
    pub fn cost(&self, torque: f64) -> f64 {
        let th = normalize_angle(self.theta);
        th * th + 0.1 * self.theta_dot * self.theta_dot + 0.001 * torque * torque
    }

    /// Semi-implicit Euler: velocity first, then the angle with the new velocity.
    pub fn advance(&self, torque: f64) -> Self {
        let u = torque.clamp(-MAX_TORQUE, MAX_TORQUE);
        let accel =
            3.0 * GRAVITY / (2.0 * LENGTH) * self.theta.sin() + 3.0 / (MASS * LENGTH * LENGTH) * u;
        let theta_dot = (self.theta_dot + accel * DT).clamp(-MAX_SPEED, MAX_SPEED);
        Self {
            theta: self.theta + theta_dot * DT,
            theta_dot,
        }
    }

    /// Rod energy per unit mass: rotational kinetic plus potential of the centre of mass.
    pub fn energy(&self) -> f64 {
        let inertia = MASS * LENGTH * LENGTH / 3.0;
        0.5 * inertia * self.theta_dot * self.theta_dot
            + MASS * GRAVITY * LENGTH / 2.0 * self.theta.cos()
    }
}

impl Dynamics for PendulumState {
    const NAME: &'static str = "Pendulum";

    fn action_space() -> Space {
        Space::Box(BoxSpace::vector(vec![-MAX_TORQUE], vec![MAX_TORQUE]).expect("valid bounds"))
    }

    fn observation_space() -> Space {
        Space::Box(
            BoxSpace::vector(vec![-1.0, -1.0, -MAX_SPEED], vec![1.0, 1.0, MAX_SPEED])
                .expect("valid bounds"),
        )
    }

    fn sample_initial(rng: &mut Rng) -> Self {
        let theta = rng.uniform_unchecked(-PI, PI);
        let theta_dot = rng.uniform_unchecked(-1.0, 1.0);
        Self::new(theta, theta_dot)
    }

    fn transition(&self, action: &Action) -> Result<Transition<Self>> {
        let torque = match action {
            Action::Continuous(v) if v.len() == 1 => v[0],
            _ => {
                return Err(Error::InvalidAction {
                    action: format!("{action:?}"),
                    space: "Box(1,)".into(),
                })
            }
        };
        if !torque.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "torque must be finite, got {torque}"
            )));
        }
        let u = torque.clamp(-MAX_TORQUE, MAX_TORQUE);
        Ok(Transition {
            reward: -self.cost(u),
            next: self.advance(u),
            terminal: false,
        })
    }

    fn observe(&self) -> Observation {
        let (sin, cos) = self.theta.sin_cos();
        Observation::vector(vec![cos, sin, self.theta_dot])
    }

    fn snapshot(&self) -> EnvState {
        EnvState::Pendulum(*self)
    }
}
