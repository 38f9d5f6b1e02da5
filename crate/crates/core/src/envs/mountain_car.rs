use super::{discrete_action, Dynamics, EnvState, Transition};
use crate::env::{Action, Observation};
use crate::error::Result;
use crate::rng::Rng;
use crate::spaces::{BoxSpace, Space};

pub(crate) const MIN_POSITION: f64 = -1.2;
pub(crate) const MAX_POSITION: f64 = 0.6;
const MAX_SPEED: f64 = 0.07;
pub(crate) const GOAL_POSITION: f64 = 0.5;
const FORCE: f64 = 0.001;
const GRAVITY: f64 = 0.0025;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MountainCarState {
    pub position: f64,
    pub velocity: f64,
}

impl MountainCarState {
    pub const fn new(position: f64, velocity: f64) -> Self {
        Self { position, velocity }
    }

    /// Pushes with `direction` in {-1, 0, 1}.
    pub fn advance(&self, direction: f64) -> Self {
        let velocity = (self.velocity + direction * FORCE - GRAVITY * (3.0 * self.position).cos())
            .clamp(-MAX_SPEED, MAX_SPEED);
        let position = (self.position + velocity).clamp(MIN_POSITION, MAX_POSITION);
        let velocity = if position == MIN_POSITION && velocity < 0.0 {
            0.0
        } else {
            velocity
        };
        Self { position, velocity }
    }
}

impl Dynamics for MountainCarState {
    const NAME: &'static str = "MountainCar";

    fn action_space() -> Space {
        Space::discrete(3).expect("n > 0")
    }

    fn observation_space() -> Space {
        Space::Box(
            BoxSpace::vector(
                vec![MIN_POSITION, -MAX_SPEED],
                vec![MAX_POSITION, MAX_SPEED],
            )
            .expect("valid bounds"),
        )
    }

    fn sample_initial(rng: &mut Rng) -> Self {
        Self::new(rng.uniform_unchecked(-0.6, -0.4), 0.0)
    }

    fn transition(&self, action: &Action) -> Result<Transition<Self>> {
        let a = discrete_action(action, 3)?;
        let next = self.advance((a - 1) as f64);
        Ok(Transition {
            terminal: next.position >= GOAL_POSITION,
            next,
            reward: -1.0,
        })
    }

    fn observe(&self) -> Observation {
        Observation::vector(vec![self.position, self.velocity])
    }

    fn snapshot(&self) -> EnvState {
        EnvState::MountainCar(*self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn step(s: MountainCarState, a: i64) -> Transition<MountainCarState> {
        s.transition(&Action::Discrete(a)).unwrap()
    }

    #[test]
    fn push_right_from_valley_side() {
        let t = step(MountainCarState::new(-0.5, 0.0), 2).next;
        assert!((t.velocity - 0.0008231569958307428).abs() <= 1e-9);
        assert!((t.position + 0.49917684300416926).abs() <= 1e-9);
    }

    #[test]
    fn coasting_is_gravity_only() {
        let t = step(MountainCarState::new(-0.5, 0.0), 1).next;
        assert_eq!(t.velocity, -0.0025 * (-1.5f64).cos());
    }

    #[test]
    fn goal_is_terminal() {
        let t = step(MountainCarState::new(0.5, 0.01), 1);
        assert!(t.terminal);
        assert_eq!(t.reward, -1.0);
    }

    #[test]
    fn left_wall_stops_the_car() {
        let t = step(MountainCarState::new(-1.19, -0.07), 0).next;
        assert_eq!(t.position, MIN_POSITION);
        assert_eq!(t.velocity, 0.0);
    }

    #[test]
    fn observation_order() {
        assert_eq!(
            MountainCarState::new(-0.3, 0.02).observe().data(),
            &[-0.3, 0.02]
        );
    }
}
