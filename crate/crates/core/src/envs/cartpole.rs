use super::{discrete_action, Dynamics, EnvState, Transition};
use crate::env::{Action, Observation};
use crate::error::Result;
use crate::rng::Rng;
use crate::spaces::{BoxSpace, Space};

const GRAVITY: f64 = 9.8;
const CART_MASS: f64 = 1.0;
const POLE_MASS: f64 = 0.1;
const TOTAL_MASS: f64 = CART_MASS + POLE_MASS;
/// Half the pole length.
pub(crate) const POLE_HALF_LENGTH: f64 = 0.5;
const POLE_MASS_LENGTH: f64 = POLE_MASS * POLE_HALF_LENGTH;
const FORCE_MAG: f64 = 10.0;
const TAU: f64 = 0.02;
pub(crate) const X_THRESHOLD: f64 = 2.4;
const THETA_THRESHOLD: f64 = 12.0 * 2.0 * std::f64::consts::PI / 360.0;

/// Cart position (m), cart velocity (m/s), pole angle from vertical (rad)
/// and pole angular velocity (rad/s).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CartPoleState {
    pub x: f64,
    pub x_dot: f64,
    pub theta: f64,
    pub theta_dot: f64,
}

impl CartPoleState {
    pub const fn new(x: f64, x_dot: f64, theta: f64, theta_dot: f64) -> Self {
        Self {
            x,
            x_dot,
            theta,
            theta_dot,
        }
    }

    pub fn is_terminal(&self) -> bool {
        self.x.abs() > X_THRESHOLD || self.theta.abs() > THETA_THRESHOLD
    }

    /// One explicit-Euler step under a push of `force` newtons.
    pub fn advance(&self, force: f64) -> Self {
        let (sin, cos) = self.theta.sin_cos();
        let temp = (force + POLE_MASS_LENGTH * self.theta_dot * self.theta_dot * sin) / TOTAL_MASS;
        let theta_acc = (GRAVITY * sin - cos * temp)
            / (POLE_HALF_LENGTH * (4.0 / 3.0 - POLE_MASS * cos * cos / TOTAL_MASS));
        let x_acc = temp - POLE_MASS_LENGTH * theta_acc * cos / TOTAL_MASS;
        Self {
            x: self.x + TAU * self.x_dot,
            x_dot: self.x_dot + TAU * x_acc,
            theta: self.theta + TAU * self.theta_dot,
            theta_dot: self.theta_dot + TAU * theta_acc,
        }
    }
}

impl Dynamics for CartPoleState {
    const NAME: &'static str = "CartPole";

    fn action_space() -> Space {
        Space::discrete(2).expect("n > 0")
    }

    fn observation_space() -> Space {
        let high = vec![
            X_THRESHOLD * 2.0,
            f64::INFINITY,
            THETA_THRESHOLD * 2.0,
            f64::INFINITY,
        ];
        let low = high.iter().map(|h| -h).collect();
        Space::Box(BoxSpace::vector(low, high).expect("valid bounds"))
    }

    fn sample_initial(rng: &mut Rng) -> Self {
        let mut draw = || rng.uniform_unchecked(-0.05, 0.05);
        let x = draw();
        let x_dot = draw();
        let theta = draw();
        let theta_dot = draw();
        Self::new(x, x_dot, theta, theta_dot)
    }

    fn transition(&self, action: &Action) -> Result<Transition<Self>> {
        let force = if discrete_action(action, 2)? == 1 {
            FORCE_MAG
        } else {
            -FORCE_MAG
        };
        let next = self.advance(force);
        Ok(Transition {
            terminal: next.is_terminal(),
            next,
            reward: 1.0,
        })
    }

    fn observe(&self) -> Observation {
        Observation::vector(vec![self.x, self.x_dot, self.theta, self.theta_dot])
    }

    fn snapshot(&self) -> EnvState {
        EnvState::CartPole(*self)
    }
}
