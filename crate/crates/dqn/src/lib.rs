//! Deep Q-network baseline for gymkit environments.
//!
//! ```
//! use gymkit::Rng;
//! use gymkit_dqn::{train_cartpole, TrainConfig};
//!
//! let mut env = gymkit::make("CartPole-v0").unwrap();
//! let mut rng = Rng::new(0);
//! let history = train_cartpole(&TrainConfig::default(), env.as_mut(), 2_000, &mut rng).unwrap();
//! assert!(!history.episodes.is_empty());
//! ```

mod adam;
mod agent;
mod error;
mod mlp;
mod pixels;
mod replay;
mod schedule;
mod train;

pub use adam::{Adam, AdamState};
pub use agent::{argmax, select_action, target_sync, Dqn, TrainConfig};
pub use error::{DqnError, Result};
pub use mlp::{huber_grad, huber_loss, Activation, Mlp, Sample, Workspace};
pub use pixels::grayscale_downsample;
pub use replay::{ReplayBuffer, Transition};
pub use schedule::EpsilonSchedule;
pub use train::{
    train, train_cartpole, EpisodeRecord, ObservationMode, SolvedCriterion, TrainHistory,
    TrainOptions,
};
