//! Action and observation space descriptors.

use std::fmt;

use crate::env::{Action, Observation};
use crate::error::{Error, Result};
use crate::rng::Rng;

/// A finite set of actions `{0, 1, ..., n - 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiscreteSpace {
    n: u64,
}

impl DiscreteSpace {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("Discrete space needs n >= 1".into()));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn sample(&self, rng: &mut Rng) -> i64 {
        rng.below(self.n) as i64
    }

    pub fn contains(&self, value: i64) -> bool {
        value >= 0 && (value as u64) < self.n
    }
}

/// An axis-aligned box of real vectors. Infinite bounds mark unbounded dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxSpace {
    low: Vec<f64>,
    high: Vec<f64>,
    shape: Vec<usize>,
}

impl BoxSpace {
    pub fn new(low: Vec<f64>, high: Vec<f64>, shape: Vec<usize>) -> Result<Self> {
        let size: usize = shape.iter().product();
        if shape.is_empty() || shape.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "box shape must be non-empty with positive extents, got {shape:?}"
            )));
        }
        if low.len() != size || high.len() != size {
            return Err(Error::InvalidArgument(format!(
                "box bounds have lengths {} and {} but shape {shape:?} holds {size}",
                low.len(),
                high.len()
            )));
        }
        for (i, (lo, hi)) in low.iter().zip(&high).enumerate() {
            if lo.is_nan() || hi.is_nan() || lo > hi {
                return Err(Error::InvalidArgument(format!(
                    "box bound {i} is invalid: [{lo}, {hi}]"
                )));
            }
        }
        Ok(Self { low, high, shape })
    }

    /// Rank-1 box from bound vectors.
    pub fn vector(low: Vec<f64>, high: Vec<f64>) -> Result<Self> {
        let n = low.len();
        Self::new(low, high, vec![n])
    }

    pub fn low(&self) -> &[f64] {
        &self.low
    }

    pub fn high(&self) -> &[f64] {
        &self.high
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn size(&self) -> usize {
        self.low.len()
    }

    pub fn is_bounded(&self) -> bool {
        self.low.iter().chain(&self.high).all(|v| v.is_finite())
    }

    /// Elementwise uniform draw in `[low, high)`, one raw draw per element.
    pub fn sample(&self, rng: &mut Rng) -> Result<Observation> {
        if !self.is_bounded() {
            return Err(Error::Unsupported(
                "cannot sample a box with unbounded dimensions".into(),
            ));
        }
        let data = self
            .low
            .iter()
            .zip(&self.high)
            .map(|(&lo, &hi)| rng.uniform_unchecked(lo, hi))
            .collect();
        Observation::new(data, &self.shape)
    }

    pub fn contains(&self, obs: &Observation) -> bool {
        obs.shape() == self.shape.as_slice() && self.contains_slice(obs.data())
    }

    pub(crate) fn contains_slice(&self, values: &[f64]) -> bool {
        values.len() == self.low.len()
            && values
                .iter()
                .zip(self.low.iter().zip(&self.high))
                .all(|(v, (lo, hi))| lo <= v && v <= hi)
    }

    /// The same bounds reshaped to rank 1.
    pub fn flattened(&self) -> BoxSpace {
        BoxSpace {
            low: self.low.clone(),
            high: self.high.clone(),
            shape: vec![self.low.len()],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Space {
    Discrete(DiscreteSpace),
    Box(BoxSpace),
}

impl Space {
    pub fn discrete(n: u64) -> Result<Self> {
        DiscreteSpace::new(n).map(Space::Discrete)
    }

    /// Draws a random action from this space.
    pub fn sample(&self, rng: &mut Rng) -> Result<Action> {
        match self {
            Space::Discrete(d) => Ok(Action::Discrete(d.sample(rng))),
            Space::Box(b) => b.sample(rng).map(|o| Action::Continuous(o.into_data())),
        }
    }

    pub fn contains_action(&self, action: &Action) -> bool {
        match (self, action) {
            (Space::Discrete(d), Action::Discrete(a)) => d.contains(*a),
            (Space::Box(b), Action::Continuous(v)) => b.contains_slice(v),
            _ => false,
        }
    }

    pub fn as_discrete(&self) -> Option<&DiscreteSpace> {
        match self {
            Space::Discrete(d) => Some(d),
            Space::Box(_) => None,
        }
    }

    pub fn as_box(&self) -> Option<&BoxSpace> {
        match self {
            Space::Box(b) => Some(b),
            Space::Discrete(_) => None,
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Discrete(d) => write!(f, "Discrete({})", d.n),
            Space::Box(b) => {
                write!(f, "Box(")?;
                for dim in &b.shape {
                    write!(f, "{dim},")?;
                }
                write!(f, ")")
            }
        }
    }
}
