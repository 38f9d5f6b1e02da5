use std::f64::consts::PI;

use super::{discrete_action, Dynamics, EnvState, Transition};
use crate::env::{Action, Observation};
use crate::error::Result;
use crate::rng::Rng;
use crate::spaces::{BoxSpace, Space};

const DT: f64 = 0.2;
pub(crate) const LINK_LENGTH_1: f64 = 1.0;
pub(crate) const LINK_LENGTH_2: f64 = 1.0;
const LINK_MASS_1: f64 = 1.0;
const LINK_MASS_2: f64 = 1.0;
const LINK_COM_1: f64 = 0.5;
const LINK_COM_2: f64 = 0.5;
const LINK_MOI: f64 = 1.0;
const GRAVITY: f64 = 9.8;
const MAX_VEL_1: f64 = 4.0 * PI;
const MAX_VEL_2: f64 = 9.0 * PI;

/// Two-link underactuated pendulum, torque applied at the middle joint.
/// `theta1` is measured from straight down, `theta2` relative to link one.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AcrobotState {
    pub theta1: f64,
    pub theta2: f64,
    pub dtheta1: f64,
    pub dtheta2: f64,
}

impl AcrobotState {
    pub const fn new(theta1: f64, theta2: f64, dtheta1: f64, dtheta2: f64) -> Self {
        Self {
            theta1,
            theta2,
            dtheta1,
            dtheta2,
        }
    }

    pub fn is_terminal(&self) -> bool {
        -self.theta1.cos() - (self.theta2 + self.theta1).cos() > 1.0
    }

    /// One RK4 step of length `DT` under constant `torque`, then angle
    /// wrapping and velocity clamping.
    pub fn advance(&self, torque: f64) -> Self {
        let s = [self.theta1, self.theta2, self.dtheta1, self.dtheta2];
        let k1 = derivatives(&s, torque);
        let k2 = derivatives(&axpy(&s, DT / 2.0, &k1), torque);
        let k3 = derivatives(&axpy(&s, DT / 2.0, &k2), torque);
        let k4 = derivatives(&axpy(&s, DT, &k3), torque);
        let mut n = [0.0; 4];
        for i in 0..4 {
            n[i] = s[i] + DT / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        Self {
            theta1: wrap(n[0], -PI, PI),
            theta2: wrap(n[1], -PI, PI),
            dtheta1: n[2].clamp(-MAX_VEL_1, MAX_VEL_1),
            dtheta2: n[3].clamp(-MAX_VEL_2, MAX_VEL_2),
        }
    }
}

fn axpy(s: &[f64; 4], h: f64, k: &[f64; 4]) -> [f64; 4] {
    [
        s[0] + h * k[0],
        s[1] + h * k[1],
        s[2] + h * k[2],
        s[3] + h * k[3],
    ]
}

fn derivatives(s: &[f64; 4], torque: f64) -> [f64; 4] {
    let (m1, m2) = (LINK_MASS_1, LINK_MASS_2);
    let l1 = LINK_LENGTH_1;
    let (lc1, lc2) = (LINK_COM_1, LINK_COM_2);
    let (i1, i2) = (LINK_MOI, LINK_MOI);
    let g = GRAVITY;
    let [theta1, theta2, dtheta1, dtheta2] = *s;

    let d1 = m1 * lc1 * lc1 + m2 * (l1 * l1 + lc2 * lc2 + 2.0 * l1 * lc2 * theta2.cos()) + i1 + i2;
    let d2 = m2 * (lc2 * lc2 + l1 * lc2 * theta2.cos()) + i2;
    let phi2 = m2 * lc2 * g * (theta1 + theta2 - PI / 2.0).cos();
    let phi1 = -m2 * l1 * lc2 * dtheta2 * dtheta2 * theta2.sin()
        - 2.0 * m2 * l1 * lc2 * dtheta2 * dtheta1 * theta2.sin()
        + (m1 * lc1 + m2 * l1) * g * (theta1 - PI / 2.0).cos()
        + phi2;
    let ddtheta2 =
        (torque + d2 / d1 * phi1 - m2 * l1 * lc2 * dtheta1 * dtheta1 * theta2.sin() - phi2)
            / (m2 * lc2 * lc2 + i2 - d2 * d2 / d1);
    let ddtheta1 = -(d2 * ddtheta2 + phi1) / d1;
    [dtheta1, dtheta2, ddtheta1, ddtheta2]
}

/// Shifts `x` by whole periods into `[lo, hi]`.
fn wrap(mut x: f64, lo: f64, hi: f64) -> f64 {
    let period = hi - lo;
    while x > hi {
        x -= period;
    }
    while x < lo {
        x += period;
    }
    x
}

impl Dynamics for AcrobotState {
    const NAME: &'static str = "Acrobot";

    fn action_space() -> Space {
        Space::discrete(3).expect("n > 0")
    }

    fn observation_space() -> Space {
        let high = vec![1.0, 1.0, 1.0, 1.0, MAX_VEL_1, MAX_VEL_2];
        let low = high.iter().map(|h| -h).collect();
        Space::Box(BoxSpace::vector(low, high).expect("valid bounds"))
    }

    fn sample_initial(rng: &mut Rng) -> Self {
        let mut draw = || rng.uniform_unchecked(-0.1, 0.1);
        let theta1 = draw();
        let theta2 = draw();
        let dtheta1 = draw();
        let dtheta2 = draw();
        Self::new(theta1, theta2, dtheta1, dtheta2)
    }

    fn transition(&self, action: &Action) -> Result<Transition<Self>> {
        let torque = (discrete_action(action, 3)? - 1) as f64;
        let next = self.advance(torque);
        Ok(Transition {
            terminal: next.is_terminal(),
            next,
            reward: -1.0,
        })
    }

    fn observe(&self) -> Observation {
        let (s1, c1) = self.theta1.sin_cos();
        let (s2, c2) = self.theta2.sin_cos();
        Observation::vector(vec![c1, s1, c2, s2, self.dtheta1, self.dtheta2])
    }

    fn snapshot(&self) -> EnvState {
        EnvState::Acrobot(*self)
    }
}
