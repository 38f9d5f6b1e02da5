//! The environment contract shared by every simulator and wrapper.

use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::envs::EnvState;
use crate::error::{Error, Result};
use crate::render::FrameBuffer;
use crate::spaces::Space;

/// A flat row-major array of `f64` with a shape.
#[derive(Debug, Clone, PartialEq)]
pub struct Observation {
    data: Vec<f64>,
    shape: SmallVec<[usize; 2]>,
}

impl Observation {
    pub fn new(data: Vec<f64>, shape: &[usize]) -> Result<Self> {
        let size: usize = shape.iter().product();
        if shape.is_empty() || size != data.len() {
            return Err(Error::InvalidArgument(format!(
                "observation of {} values does not fit shape {shape:?}",
                data.len()
            )));
        }
        Ok(Self {
            data,
            shape: SmallVec::from_slice(shape),
        })
    }

    /// Rank-1 observation.
    pub fn vector(data: Vec<f64>) -> Self {
        let n = data.len();
        Self {
            data,
            shape: smallvec::smallvec![n],
        }
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// Same values, rank 1.
    pub fn flatten(mut self) -> Self {
        let n = self.data.len();
        self.shape = smallvec::smallvec![n];
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Action {
    Discrete(i64),
    Continuous(Vec<f64>),
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::Discrete(a) => write!(f, "{a}"),
            Action::Continuous(v) => {
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{x:?}")?;
                }
                Ok(())
            }
        }
    }
}

impl From<i64> for Action {
    fn from(a: i64) -> Self {
        Action::Discrete(a)
    }
}

impl From<f64> for Action {
    fn from(u: f64) -> Self {
        Action::Continuous(vec![u])
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InfoValue {
    Bool(bool),
    Int(i64),
    Float(f64),
}

/// Flat pass-through metadata attached to a transition.
pub type Info = BTreeMap<String, InfoValue>;

/// Info key set by the time-limit wrapper when it ends an episode.
pub const TRUNCATED_KEY: &str = "TimeLimit.truncated";

#[derive(Debug, Clone, PartialEq)]
pub struct StepResult {
    pub observation: Observation,
    pub reward: f64,
    pub terminal: bool,
    pub info: Info,
}

impl StepResult {
    /// True when the episode ended because of a step limit rather than the dynamics.
    pub fn truncated(&self) -> bool {
        matches!(self.info.get(TRUNCATED_KEY), Some(InfoValue::Bool(true)))
    }
}

/// A simulated environment.
///
/// `reset` must precede the first `step`, and `step` after a terminal
/// transition fails with [`Error::StepAfterTerminal`] until the next reset.
/// Passing `Some(seed)` to `reset` reseeds the environment's generator;
/// `None` continues the current stream.
pub trait Env: Send {
    fn action_space(&self) -> &Space;
    fn observation_space(&self) -> &Space;
    fn reset(&mut self, seed: Option<u64>) -> Observation;
    fn step(&mut self, action: &Action) -> Result<StepResult>;

    /// Physical state of the underlying simulator, `None` before the first reset.
    fn state(&self) -> Option<EnvState>;

    /// Steps taken since the last reset.
    fn episode_steps(&self) -> u64;

    fn is_done(&self) -> bool;

    fn render_size(&self) -> (usize, usize) {
        crate::render::DEFAULT_SIZE
    }

    /// Draws the current scene into `fb`, which must already have the
    /// desired size.
    fn render_into(&self, fb: &mut FrameBuffer) -> Result<()> {
        let state = self.state().ok_or(Error::NotReset)?;
        crate::render::draw_scene(&state, fb);
        Ok(())
    }

    fn render(&self) -> Result<FrameBuffer> {
        let (w, h) = self.render_size();
        let mut fb = FrameBuffer::new(w, h);
        self.render_into(&mut fb)?;
        Ok(fb)
    }
}

impl<E: Env + ?Sized> Env for Box<E> {
    fn action_space(&self) -> &Space {
        (**self).action_space()
    }
    fn observation_space(&self) -> &Space {
        (**self).observation_space()
    }
    fn reset(&mut self, seed: Option<u64>) -> Observation {
        (**self).reset(seed)
    }
    fn step(&mut self, action: &Action) -> Result<StepResult> {
        (**self).step(action)
    }
    fn state(&self) -> Option<EnvState> {
        (**self).state()
    }
    fn episode_steps(&self) -> u64 {
        (**self).episode_steps()
    }
    fn is_done(&self) -> bool {
        (**self).is_done()
    }
    fn render_size(&self) -> (usize, usize) {
        (**self).render_size()
    }
    fn render_into(&self, fb: &mut FrameBuffer) -> Result<()> {
        (**self).render_into(fb)
    }
    fn render(&self) -> Result<FrameBuffer> {
        (**self).render()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn observation_shape_must_match() {
        assert!(Observation::new(vec![0.0; 6], &[2, 3]).is_ok());
        assert!(Observation::new(vec![0.0; 5], &[2, 3]).is_err());
        assert!(Observation::new(vec![], &[]).is_err());
    }

    #[test]
    fn flatten_preserves_order() {
        let obs = Observation::new((0..6).map(f64::from).collect(), &[2, 3]).unwrap();
        let flat = obs.clone().flatten();
        assert_eq!(flat.shape(), &[6]);
        assert_eq!(flat.data(), obs.data());
    }

    #[test]
    fn action_display() {
        assert_eq!(Action::Discrete(3).to_string(), "3");
        assert_eq!(Action::from(0.5).to_string(), "0.5");
        assert_eq!(Action::Continuous(vec![1.0, -2.0]).to_string(), "1.0 -2.0");
    }
}
