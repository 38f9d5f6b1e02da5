//! Gym-style reinforcement-learning environments with deterministic
//! seeding and a pure-software renderer.
//!
//! ```
//! use gymkit::{make, Env};
//!
//! let mut env = make("CartPole-v1").unwrap();
//! let mut rng = gymkit::Rng::new(0);
//! env.reset(Some(42));
//! loop {
//!     let action = env.action_space().sample(&mut rng).unwrap();
//!     let step = env.step(&action).unwrap();
//!     let _frame = env.render().unwrap();
//!     if step.terminal {
//!         break;
//!     }
//! }
//! ```

pub mod env;
pub mod envs;
pub mod error;
pub mod registry;
pub mod render;
pub mod rng;
pub mod spaces;
pub mod wrappers;

pub use env::{Action, Env, Info, InfoValue, Observation, StepResult, TRUNCATED_KEY};
pub use envs::EnvState;
pub use error::{Error, Result};
pub use registry::{default_registry, list_envs, make, EnvSpec, Registry};
pub use render::{Color, FrameBuffer};
pub use rng::Rng;
pub use spaces::{BoxSpace, DiscreteSpace, Space};
pub use wrappers::{Flatten, TimeLimit};
