//! Environment decorators.

use crate::env::{Action, Env, InfoValue, Observation, StepResult, TRUNCATED_KEY};
use crate::envs::EnvState;
use crate::error::{Error, Result};
use crate::render::FrameBuffer;
use crate::spaces::Space;

/// Ends every episode after `max_steps` calls to `step`.
///
/// A forced ending is reported as `terminal = true` with the info flag
/// `"TimeLimit.truncated" = true`; episodes that end on their own pass
/// through unflagged. Only `step` calls count, not the reset observation.
#[derive(Debug, Clone)]
pub struct TimeLimit<E> {
    inner: E,
    max_steps: u64,
    elapsed: u64,
    done: bool,
}

impl<E: Env> TimeLimit<E> {
    pub fn new(inner: E, max_steps: u64) -> Result<Self> {
        if max_steps == 0 {
            return Err(Error::InvalidArgument(
                "max_steps must be at least 1".into(),
            ));
        }
        Ok(Self {
            inner,
            max_steps,
            elapsed: 0,
            done: false,
        })
    }

    pub fn max_steps(&self) -> u64 {
        self.max_steps
    }

    pub fn elapsed(&self) -> u64 {
        self.elapsed
    }

    pub fn inner(&self) -> &E {
        &self.inner
    }

    pub fn into_inner(self) -> E {
        self.inner
    }
}

impl<E: Env> Env for TimeLimit<E> {
    fn action_space(&self) -> &Space {
        self.inner.action_space()
    }

    fn observation_space(&self) -> &Space {
        self.inner.observation_space()
    }

    fn reset(&mut self, seed: Option<u64>) -> Observation {
        self.elapsed = 0;
        self.done = false;
        self.inner.reset(seed)
    }

    fn step(&mut self, action: &Action) -> Result<StepResult> {
        if self.done {
            return Err(Error::StepAfterTerminal);
        }
        let mut result = self.inner.step(action)?;
        self.elapsed += 1;
        if self.elapsed >= self.max_steps && !result.terminal {
            result.terminal = true;
            result
                .info
                .insert(TRUNCATED_KEY.to_string(), InfoValue::Bool(true));
        }
        self.done = result.terminal;
        Ok(result)
    }

    fn state(&self) -> Option<EnvState> {
        self.inner.state()
    }

    fn episode_steps(&self) -> u64 {
        self.elapsed
    }

    fn is_done(&self) -> bool {
        self.done
    }

    fn render_size(&self) -> (usize, usize) {
        self.inner.render_size()
    }

    fn render_into(&self, fb: &mut FrameBuffer) -> Result<()> {
        self.inner.render_into(fb)
    }
}

/// Reshapes observations to rank 1, row-major order preserved.
#[derive(Debug, Clone)]
pub struct Flatten<E> {
    inner: E,
    observation_space: Space,
}

impl<E: Env> Flatten<E> {
    pub fn new(inner: E) -> Self {
        let observation_space = match inner.observation_space() {
            Space::Box(b) => Space::Box(b.flattened()),
            other => other.clone(),
        };
        Self {
            inner,
            observation_space,
        }
    }

    pub fn inner(&self) -> &E {
        &self.inner
    }

    pub fn into_inner(self) -> E {
        self.inner
    }
}

impl<E: Env> Env for Flatten<E> {
    fn action_space(&self) -> &Space {
        self.inner.action_space()
    }

    fn observation_space(&self) -> &Space {
        &self.observation_space
    }

    fn reset(&mut self, seed: Option<u64>) -> Observation {
        self.inner.reset(seed).flatten()
    }

    fn step(&mut self, action: &Action) -> Result<StepResult> {
        let mut result = self.inner.step(action)?;
        result.observation = result.observation.flatten();
        Ok(result)
    }

    fn state(&self) -> Option<EnvState> {
        self.inner.state()
    }

    fn episode_steps(&self) -> u64 {
        self.inner.episode_steps()
    }

    fn is_done(&self) -> bool {
        self.inner.is_done()
    }

    fn render_size(&self) -> (usize, usize) {
        self.inner.render_size()
    }

    fn render_into(&self, fb: &mut FrameBuffer) -> Result<()> {
        self.inner.render_into(fb)
    }
}
