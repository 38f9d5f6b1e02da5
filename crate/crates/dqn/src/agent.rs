use gymkit::Rng;

use crate::adam::{Adam, AdamState};
use crate::error::{DqnError, Result};
use crate::mlp::{Activation, Mlp, Sample, Workspace};
use crate::replay::{ReplayBuffer, Transition};

/// DQN hyperparameters. The defaults are the reference values for the
/// classic-control experiments; the last two fields control the exploration
/// schedule length and the replay warm-up.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub gamma: f64,
    pub hidden_units: Vec<usize>,
    pub activation: Activation,
    pub batch_size: usize,
    pub learning_rate: f64,
    pub target_update_freq: u64,
    pub memory_size: usize,
    pub epsilon_start: f64,
    pub epsilon_final: f64,
    /// Fraction of the run over which epsilon decays linearly.
    pub exploration_fraction: f64,
    /// Transitions collected before the first gradient step.
    pub learning_starts: usize,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            gamma: 0.99,
            hidden_units: vec![32, 32],
            activation: Activation::Elu,
            batch_size: 32,
            learning_rate: 3e-4,
            target_update_freq: 150,
            memory_size: 50_000,
            epsilon_start: 1.0,
            epsilon_final: 0.01,
            exploration_fraction: 0.1,
            learning_starts: 1000,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(DqnError::Config(msg.to_string()));
        if !(0.0..=1.0).contains(&self.gamma) {
            return bad("gamma must lie in [0, 1]");
        }
        if self.hidden_units.contains(&0) {
            return bad("hidden layer widths must be positive");
        }
        if self.batch_size == 0 || self.memory_size == 0 || self.target_update_freq == 0 {
            return bad("batch size, memory size and target update frequency must be positive");
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return bad("learning rate must be positive");
        }
        if !(0.0..=1.0).contains(&self.epsilon_final)
            || !(0.0..=1.0).contains(&self.epsilon_start)
            || self.epsilon_final > self.epsilon_start
        {
            return bad("need 0 <= epsilon_final <= epsilon_start <= 1");
        }
        if !(0.0..=1.0).contains(&self.exploration_fraction) {
            return bad("exploration fraction must lie in [0, 1]");
        }
        Ok(())
    }

    /// Layer widths for a network mapping `input_dim` to `n_actions`.
    pub fn layer_sizes(&self, input_dim: usize, n_actions: usize) -> Vec<usize> {
        let mut sizes = Vec::with_capacity(self.hidden_units.len() + 2);
        sizes.push(input_dim);
        sizes.extend_from_slice(&self.hidden_units);
        sizes.push(n_actions);
        sizes
    }
}

/// Index of the largest value; ties go to the lowest index.
pub fn argmax(q: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in q.iter().enumerate().skip(1) {
        if v > q[best] {
            best = i;
        }
    }
    best
}

/// Epsilon-greedy choice. One uniform draw decides whether to explore; an
/// exploring step draws one more value for the action.
pub fn select_action(
    net: &Mlp,
    obs: &[f64],
    epsilon: f64,
    rng: &mut Rng,
    ws: &mut Workspace,
) -> Result<usize> {
    if rng.next_f64() < epsilon {
        return Ok(rng.below(net.output_dim() as u64) as usize);
    }
    Ok(argmax(net.q_values(obs, ws)?))
}

/// Overwrites `target` with an exact copy of `online`.
pub fn target_sync(online: &Mlp, target: &mut Mlp) {
    target.copy_from(online);
}

/// Online and target networks, optimiser state and replay memory.
#[derive(Debug, Clone)]
pub struct Dqn {
    config: TrainConfig,
    online: Mlp,
    target: Mlp,
    optimizer: Adam,
    adam_state: AdamState,
    buffer: ReplayBuffer,
    ws: Workspace,
    grad: Vec<f64>,
    indices: Vec<usize>,
    targets: Vec<f64>,
}

impl Dqn {
    /// Fresh agent with Glorot-initialised networks drawn from `rng`.
    pub fn new(
        config: TrainConfig,
        input_dim: usize,
        n_actions: usize,
        rng: &mut Rng,
    ) -> Result<Self> {
        config.validate()?;
        if input_dim == 0 || n_actions == 0 {
            return Err(DqnError::Config(
                "input and action dimensions must be positive".into(),
            ));
        }
        let sizes = config.layer_sizes(input_dim, n_actions);
        let online = Mlp::glorot(&sizes, config.activation, rng);
        Ok(Self::from_network(config, online))
    }

    /// Agent around a given network; the target starts as a copy.
    pub fn from_network(config: TrainConfig, online: Mlp) -> Self {
        let n = online.params().len();
        Self {
            optimizer: Adam::new(config.learning_rate),
            adam_state: AdamState::new(n),
            buffer: ReplayBuffer::new(config.memory_size),
            target: online.clone(),
            online,
            ws: Workspace::default(),
            grad: vec![0.0; n],
            indices: Vec::with_capacity(config.batch_size),
            targets: Vec::with_capacity(config.batch_size),
            config,
        }
    }

    pub fn config(&self) -> &TrainConfig {
        &self.config
    }

    pub fn online(&self) -> &Mlp {
        &self.online
    }

    pub fn online_mut(&mut self) -> &mut Mlp {
        &mut self.online
    }

    pub fn target(&self) -> &Mlp {
        &self.target
    }

    pub fn buffer(&self) -> &ReplayBuffer {
        &self.buffer
    }

    pub fn adam_state(&self) -> &AdamState {
        &self.adam_state
    }

    pub fn act(&mut self, obs: &[f64], epsilon: f64, rng: &mut Rng) -> Result<usize> {
        select_action(&self.online, obs, epsilon, rng, &mut self.ws)
    }

    pub fn remember(&mut self, t: Transition) {
        self.buffer.push(t);
    }

    pub fn sync_target(&mut self) {
        target_sync(&self.online, &mut self.target);
    }

    /// Samples a batch, regresses Q(s, a) toward `r + gamma * max Q_target(s')`
    /// and applies one Adam step. Returns the batch loss before the update.
    pub fn train_step(&mut self, rng: &mut Rng) -> Result<f64> {
        let need = self.config.batch_size;
        if self.buffer.len() < need {
            return Err(DqnError::NotEnoughSamples {
                have: self.buffer.len(),
                need,
            });
        }
        self.buffer.sample_indices(need, rng, &mut self.indices);

        self.targets.clear();
        for &i in &self.indices {
            let t = self.buffer.get(i);
            let bootstrap = if t.done {
                0.0
            } else {
                let q = self.target.q_values(&t.next_obs, &mut self.ws)?;
                self.config.gamma * q.iter().copied().fold(f64::NEG_INFINITY, f64::max)
            };
            self.targets.push(t.reward + bootstrap);
        }

        let batch: Vec<Sample<'_>> = self
            .indices
            .iter()
            .zip(&self.targets)
            .map(|(&i, &target)| {
                let t = self.buffer.get(i);
                Sample {
                    obs: &t.obs,
                    action: t.action,
                    target,
                }
            })
            .collect();
        let loss = self
            .online
            .accumulate_gradient(&batch, &mut self.grad, &mut self.ws)?;
        drop(batch);
        self.optimizer
            .step(self.online.params_mut(), &self.grad, &mut self.adam_state);
        Ok(loss)
    }
}
