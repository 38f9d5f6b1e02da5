use std::time::Instant;

use gymkit::{Action, Env, FrameBuffer, Rng, Space, StepResult};

use crate::config::{BenchConfig, Mode};
use crate::error::Result;

/// 64-bit FNV-1a, used to fingerprint trajectories and frames.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Checksum(u64);

impl Default for Checksum {
    fn default() -> Self {
        Checksum(0xcbf2_9ce4_8422_2325)
    }
}

impl Checksum {
    pub fn value(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn add_u64(&mut self, v: u64) {
        for b in v.to_le_bytes() {
            self.0 = (self.0 ^ b as u64).wrapping_mul(0x0100_0000_01b3);
        }
    }

    #[inline]
    pub fn add_f64(&mut self, v: f64) {
        self.add_u64(v.to_bits());
    }

    fn add_action(&mut self, a: &Action) {
        match a {
            Action::Discrete(i) => self.add_u64(*i as u64),
            Action::Continuous(v) => v.iter().for_each(|&x| self.add_f64(x)),
        }
    }

    fn add_step(&mut self, a: &Action, r: &StepResult) {
        self.add_action(a);
        r.observation.data().iter().for_each(|&x| self.add_f64(x));
        self.add_f64(r.reward);
        self.add_u64(r.terminal as u64);
    }
}

/// Cheap whole-frame digest: wrapping sum of 8-byte words plus the tail.
pub fn frame_digest(fb: &FrameBuffer) -> u64 {
    let pixels = fb.pixels();
    let chunks = pixels.chunks_exact(8);
    let tail = chunks.remainder();
    let mut sum = chunks.fold(0u64, |acc, c| {
        acc.wrapping_add(u64::from_le_bytes(c.try_into().expect("8-byte chunk")))
    });
    for (i, &b) in tail.iter().enumerate() {
        sum = sum.wrapping_add((b as u64) << (8 * i));
    }
    sum
}

/// Random actions for a space, drawn from a dedicated stream.
pub struct ActionSampler {
    rng: Rng,
    space: Space,
}

impl ActionSampler {
    pub fn new(space: &Space, seed: u64) -> Self {
        Self {
            rng: Rng::new(seed),
            space: space.clone(),
        }
    }

    #[inline]
    pub fn sample(&mut self) -> Result<Action> {
        Ok(self.space.sample(&mut self.rng)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialOutcome {
    pub seconds: f64,
    pub episodes: u64,
    pub checksum: u64,
}

/// Fresh environment, `steps_per_trial` random actions, reset on terminal.
/// Render mode rasterises after every step and folds the frame into the
/// checksum so the work cannot be skipped. Only the step loop is timed.
pub fn run_trial(config: &BenchConfig) -> Result<TrialOutcome> {
    let mut env = gymkit::make(&config.env_id)?;
    let mut actions = ActionSampler::new(env.action_space(), config.seed);
    let mut frame = match config.mode {
        Mode::Console => None,
        Mode::Render => {
            let (w, h) = env.render_size();
            Some(FrameBuffer::new(w, h))
        }
    };
    let mut sum = Checksum::default();
    let mut episodes = 0;

    let start = Instant::now();
    env.reset(Some(config.seed));
    for _ in 0..config.steps_per_trial {
        let action = actions.sample()?;
        let result = env.step(&action)?;
        sum.add_step(&action, &result);
        if let Some(fb) = frame.as_mut() {
            env.render_into(fb)?;
            sum.add_u64(frame_digest(fb));
        }
        if result.terminal {
            episodes += 1;
            env.reset(None);
        }
    }
    let seconds = start.elapsed().as_secs_f64();
    Ok(TrialOutcome {
        seconds,
        episodes,
        checksum: sum.value(),
    })
}

/// The console trajectory checksum recomputed without any timing, from a
/// plain loop over the same seed.
pub fn replay_checksum(env_id: &str, seed: u64, steps: u64) -> Result<u64> {
    let mut env: Box<dyn Env> = gymkit::make(env_id)?;
    let mut actions = ActionSampler::new(env.action_space(), seed);
    let mut sum = Checksum::default();
    env.reset(Some(seed));
    for _ in 0..steps {
        let action = actions.sample()?;
        let result = env.step(&action)?;
        sum.add_step(&action, &result);
        if result.terminal {
            env.reset(None);
        }
    }
    Ok(sum.value())
}
