//! Classic-control simulators.
//!
//! Each simulator is a plain state type implementing [`Dynamics`]; the
//! generic [`ClassicEnv`] driver adds seeding, episode bookkeeping and the
//! reset/step contract. Step limits are not enforced here: compose a
//! [`TimeLimit`](crate::wrappers::TimeLimit) for that.

pub(crate) mod acrobot;
pub(crate) mod cartpole;
pub(crate) mod mountain_car;
pub(crate) mod pendulum;

pub use acrobot::AcrobotState;
pub use cartpole::CartPoleState;
pub use mountain_car::MountainCarState;
pub use pendulum::{normalize_angle, PendulumState};

use crate::env::{Action, Env, Observation, StepResult};
use crate::error::{Error, Result};
use crate::rng::Rng;
use crate::spaces::Space;

pub type CartPoleEnv = ClassicEnv<CartPoleState>;
pub type MountainCarEnv = ClassicEnv<MountainCarState>;
pub type AcrobotEnv = ClassicEnv<AcrobotState>;
pub type PendulumEnv = ClassicEnv<PendulumState>;

/// Outcome of one transition of a [`Dynamics`] state.
#[derive(Debug, Clone, PartialEq)]
pub struct Transition<S> {
    pub next: S,
    pub reward: f64,
    pub terminal: bool,
}

pub trait Dynamics: Clone + std::fmt::Debug + Send + 'static {
    /// Environment family name, e.g. `"CartPole"`.
    const NAME: &'static str;

    fn action_space() -> Space;
    fn observation_space() -> Space;
    fn sample_initial(rng: &mut Rng) -> Self;
    fn transition(&self, action: &Action) -> Result<Transition<Self>>;
    fn observe(&self) -> Observation;
    fn snapshot(&self) -> EnvState;
}

/// Physical state of any built-in simulator.
#[derive(Debug, Clone, PartialEq)]
pub enum EnvState {
    CartPole(CartPoleState),
    MountainCar(MountainCarState),
    Acrobot(AcrobotState),
    Pendulum(PendulumState),
}

impl EnvState {
    pub fn family(&self) -> &'static str {
        match self {
            EnvState::CartPole(_) => CartPoleState::NAME,
            EnvState::MountainCar(_) => MountainCarState::NAME,
            EnvState::Acrobot(_) => AcrobotState::NAME,
            EnvState::Pendulum(_) => PendulumState::NAME,
        }
    }

    pub fn observe(&self) -> Observation {
        match self {
            EnvState::CartPole(s) => s.observe(),
            EnvState::MountainCar(s) => s.observe(),
            EnvState::Acrobot(s) => s.observe(),
            EnvState::Pendulum(s) => s.observe(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ClassicEnv<S: Dynamics> {
    state: Option<S>,
    rng: Rng,
    steps: u64,
    done: bool,
    action_space: Space,
    observation_space: Space,
}

impl<S: Dynamics> Default for ClassicEnv<S> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: Dynamics> ClassicEnv<S> {
    /// A fresh environment whose generator is seeded with 0 until reset says otherwise.
    pub fn new() -> Self {
        Self {
            state: None,
            rng: Rng::new(0),
            steps: 0,
            done: false,
            action_space: S::action_space(),
            observation_space: S::observation_space(),
        }
    }

    pub fn dynamics(&self) -> Option<&S> {
        self.state.as_ref()
    }

    /// Starts a new episode from an explicit state.
    pub fn set_state(&mut self, state: S) {
        self.state = Some(state);
        self.steps = 0;
        self.done = false;
    }
}

impl<S: Dynamics> Env for ClassicEnv<S> {
    fn action_space(&self) -> &Space {
        &self.action_space
    }

    fn observation_space(&self) -> &Space {
        &self.observation_space
    }

    fn reset(&mut self, seed: Option<u64>) -> Observation {
        if let Some(seed) = seed {
            self.rng = Rng::new(seed);
        }
        let state = S::sample_initial(&mut self.rng);
        let obs = state.observe();
        self.set_state(state);
        obs
    }

    fn step(&mut self, action: &Action) -> Result<StepResult> {
        let state = self.state.as_ref().ok_or(Error::NotReset)?;
        if self.done {
            return Err(Error::StepAfterTerminal);
        }
        let Transition {
            next,
            reward,
            terminal,
        } = state.transition(action)?;
        let observation = next.observe();
        self.state = Some(next);
        self.steps += 1;
        self.done = terminal;
        Ok(StepResult {
            observation,
            reward,
            terminal,
            info: Default::default(),
        })
    }

    fn state(&self) -> Option<EnvState> {
        self.state.as_ref().map(Dynamics::snapshot)
    }

    fn episode_steps(&self) -> u64 {
        self.steps
    }

    fn is_done(&self) -> bool {
        self.done
    }
}

/// Validates a discrete action against `n` choices.
pub(crate) fn discrete_action(action: &Action, n: i64) -> Result<i64> {
    match action {
        Action::Discrete(a) if (0..n).contains(a) => Ok(*a),
        _ => Err(Error::InvalidAction {
            action: format!("{action:?}"),
            space: format!("Discrete({n})"),
        }),
    }
}
