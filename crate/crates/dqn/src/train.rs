use std::io::{self, Write};
use std::time::Instant;

use gymkit::{Action, Env, FrameBuffer, Rng};

use crate::agent::{Dqn, TrainConfig};
use crate::error::{DqnError, Result};
use crate::pixels::grayscale_downsample;
use crate::replay::Transition;
use crate::schedule::EpsilonSchedule;

/// What the network sees at each step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ObservationMode {
    /// The environment's observation vector.
    #[default]
    State,
    /// A grayscale downsample of the rendered frame.
    Pixels { width: usize, height: usize },
}

impl ObservationMode {
    pub const PIXELS_84: ObservationMode = ObservationMode::Pixels {
        width: 84,
        height: 84,
    };
}

/// Mean return over the trailing `window` episodes must reach `threshold`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolvedCriterion {
    pub window: usize,
    pub threshold: f64,
}

impl SolvedCriterion {
    pub const CARTPOLE_V0: SolvedCriterion = SolvedCriterion {
        window: 100,
        threshold: 195.0,
    };
    pub const CARTPOLE_V1: SolvedCriterion = SolvedCriterion {
        window: 100,
        threshold: 475.0,
    };

    pub fn is_met(&self, episodes: &[EpisodeRecord]) -> bool {
        mean_tail_return(episodes, self.window).is_some_and(|m| m >= self.threshold)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct TrainOptions {
    pub observation: ObservationMode,
    /// Stop as soon as the criterion holds.
    pub stop_when: Option<SolvedCriterion>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpisodeRecord {
    /// 1-based episode number.
    pub episode: u64,
    /// Environment steps taken so far in the run, counted at the episode's end.
    pub steps: u64,
    pub ret: f64,
    /// Exploration rate used on the episode's last step.
    pub epsilon: f64,
    pub wall_time_ms: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct TrainHistory {
    pub episodes: Vec<EpisodeRecord>,
    pub env_steps: u64,
    pub train_steps: u64,
    pub target_syncs: u64,
    /// Environment step at which the stop criterion first held.
    pub solved_at: Option<u64>,
}

impl TrainHistory {
    pub fn returns(&self) -> Vec<f64> {
        self.episodes.iter().map(|e| e.ret).collect()
    }

    /// Mean return of the last `n` episodes, if at least `n` finished.
    pub fn mean_last(&self, n: usize) -> Option<f64> {
        mean_tail_return(&self.episodes, n)
    }

    /// Best trailing-window mean seen at any point of the run.
    pub fn best_window_mean(&self, n: usize) -> Option<f64> {
        if n == 0 || self.episodes.len() < n {
            return None;
        }
        let mut sum: f64 = self.episodes[..n].iter().map(|e| e.ret).sum();
        let mut best = sum;
        for i in n..self.episodes.len() {
            sum += self.episodes[i].ret - self.episodes[i - n].ret;
            best = best.max(sum);
        }
        Some(best / n as f64)
    }

    /// CSV with header `episode,steps,return,epsilon,wall_time_ms`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "episode,steps,return,epsilon,wall_time_ms")?;
        for e in &self.episodes {
            writeln!(
                w,
                "{},{},{:?},{:?},{:.3}",
                e.episode, e.steps, e.ret, e.epsilon, e.wall_time_ms
            )?;
        }
        Ok(())
    }
}

fn mean_tail_return(episodes: &[EpisodeRecord], n: usize) -> Option<f64> {
    if n == 0 || episodes.len() < n {
        return None;
    }
    let tail = &episodes[episodes.len() - n..];
    Some(tail.iter().map(|e| e.ret).sum::<f64>() / n as f64)
}

struct Observer {
    mode: ObservationMode,
    frame: Option<FrameBuffer>,
}

impl Observer {
    fn new(mode: ObservationMode, env: &dyn Env) -> Self {
        let frame = match mode {
            ObservationMode::State => None,
            ObservationMode::Pixels { .. } => {
                let (w, h) = env.render_size();
                Some(FrameBuffer::new(w, h))
            }
        };
        Self { mode, frame }
    }

    fn input_dim(&self, env: &dyn Env) -> Result<usize> {
        match self.mode {
            ObservationMode::State => env
                .observation_space()
                .as_box()
                .map(|b| b.size())
                .ok_or_else(|| DqnError::Config("observation space must be a box".into())),
            ObservationMode::Pixels { width, height } => Ok(width * height),
        }
    }

    fn observe(&mut self, env: &dyn Env, state_obs: Vec<f64>) -> Result<Vec<f64>> {
        match (self.mode, self.frame.as_mut()) {
            (ObservationMode::Pixels { width, height }, Some(fb)) => {
                env.render_into(fb)?;
                Ok(grayscale_downsample(fb, width, height))
            }
            _ => Ok(state_obs),
        }
    }
}

/// Runs the DQN loop for `total_steps` environment steps: act, store, train
/// once per step after warm-up, and sync the target every
/// `target_update_freq` steps. Episodes that end by truncation are stored as
/// non-terminal so their value is still bootstrapped.
pub fn train(
    config: &TrainConfig,
    env: &mut dyn Env,
    total_steps: u64,
    rng: &mut Rng,
    options: &TrainOptions,
) -> Result<TrainHistory> {
    config.validate()?;
    let n_actions = env
        .action_space()
        .as_discrete()
        .map(|d| d.n())
        .ok_or_else(|| DqnError::Config("action space must be discrete".into()))?;
    let mut observer = Observer::new(options.observation, env);
    let input_dim = observer.input_dim(env)?;

    let mut history = TrainHistory::default();
    if total_steps == 0 {
        return Ok(history);
    }
    let mut agent = Dqn::new(config.clone(), input_dim, n_actions as usize, rng)?;
    let schedule = EpsilonSchedule {
        start: config.epsilon_start,
        end: config.epsilon_final,
        anneal_steps: (config.exploration_fraction * total_steps as f64).round() as u64,
    };
    let learn_after = config.learning_starts.max(config.batch_size);
    let started = Instant::now();

    let first = env.reset(Some(rng.next_u64())).into_data();
    let mut obs = observer.observe(env, first)?;
    let mut episode_return = 0.0;

    for step in 0..total_steps {
        let epsilon = schedule.value_at(step);
        let action = agent.act(&obs, epsilon, rng)?;
        let result = env.step(&Action::Discrete(action as i64))?;
        let truncated = result.truncated();
        let terminal = result.terminal;
        episode_return += result.reward;

        let next = observer.observe(env, result.observation.into_data())?;
        agent.remember(Transition {
            obs: std::mem::take(&mut obs),
            action,
            reward: result.reward,
            next_obs: next.clone(),
            done: terminal && !truncated,
        });
        history.env_steps = step + 1;

        if agent.buffer().len() >= learn_after {
            agent.train_step(rng)?;
            history.train_steps += 1;
        }
        if (step + 1) % config.target_update_freq == 0 {
            agent.sync_target();
            history.target_syncs += 1;
        }

        if terminal {
            history.episodes.push(EpisodeRecord {
                episode: history.episodes.len() as u64 + 1,
                steps: step + 1,
                ret: episode_return,
                epsilon,
                wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
            });
            episode_return = 0.0;
            if let Some(criterion) = options.stop_when {
                if history.solved_at.is_none() && criterion.is_met(&history.episodes) {
                    history.solved_at = Some(step + 1);
                    break;
                }
            }
            let fresh = env.reset(None).into_data();
            obs = observer.observe(env, fresh)?;
        } else {
            obs = next;
        }
    }
    Ok(history)
}

/// [`train`] on the state vector without early stopping.
pub fn train_cartpole(
    config: &TrainConfig,
    env: &mut dyn Env,
    total_steps: u64,
    rng: &mut Rng,
) -> Result<TrainHistory> {
    train(config, env, total_steps, rng, &TrainOptions::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(ret: f64) -> EpisodeRecord {
        EpisodeRecord {
            episode: 0,
            steps: 0,
            ret,
            epsilon: 0.0,
            wall_time_ms: 0.0,
        }
    }

    #[test]
    fn window_means() {
        let h = TrainHistory {
            episodes: [1.0, 2.0, 9.0, 3.0].map(record).to_vec(),
            ..TrainHistory::default()
        };
        assert_eq!(h.mean_last(2), Some(6.0));
        assert_eq!(h.mean_last(5), None);
        assert_eq!(h.best_window_mean(2), Some(6.0));
        assert_eq!(h.best_window_mean(1), Some(9.0));
        let c = SolvedCriterion {
            window: 2,
            threshold: 6.0,
        };
        assert!(c.is_met(&h.episodes));
        assert!(!c.is_met(&h.episodes[..3]));
    }

    #[test]
    fn csv_layout() {
        let mut h = TrainHistory::default();
        h.episodes.push(EpisodeRecord {
            episode: 1,
            steps: 17,
            ret: 17.0,
            epsilon: 0.5,
            wall_time_ms: 1.25,
        });
        let mut out = Vec::new();
        h.write_csv(&mut out).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "episode,steps,return,epsilon,wall_time_ms\n1,17,17.0,0.5,1.250\n"
        );
    }
}
