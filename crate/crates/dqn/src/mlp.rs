//! A small fully connected Q-network with hand-written backpropagation.
//!
//! All weights and biases live in one flat vector so that the optimiser,
//! target copies and finite-difference checks can treat the network as a
//! plain parameter array. Layer `l` occupies `out * in` weights (row-major,
//! one row per output unit) followed by `out` biases.

use gymkit::Rng;

use crate::error::{DqnError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Activation {
    #[default]
    Elu,
    Relu,
}

impl Activation {
    #[inline]
    pub fn apply(self, x: f64) -> f64 {
        match self {
            Activation::Elu => {
                if x > 0.0 {
                    x
                } else {
                    x.exp_m1()
                }
            }
            Activation::Relu => x.max(0.0),
        }
    }

    /// Derivative with respect to the pre-activation `x`.
    #[inline]
    pub fn derivative(self, x: f64) -> f64 {
        match self {
            Activation::Elu => {
                if x > 0.0 {
                    1.0
                } else {
                    x.exp()
                }
            }
            Activation::Relu => {
                if x > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }
}

/// Huber loss with threshold 1 on the error `pred - target`.
pub fn huber_loss(pred: f64, target: f64) -> f64 {
    let e = pred - target;
    if e.abs() <= 1.0 {
        0.5 * e * e
    } else {
        e.abs() - 0.5
    }
}

/// d huber / d pred.
pub fn huber_grad(pred: f64, target: f64) -> f64 {
    (pred - target).clamp(-1.0, 1.0)
}

/// One regression target: the Q-value of `action` at `obs` should be `target`.
#[derive(Debug, Clone, Copy)]
pub struct Sample<'a> {
    pub obs: &'a [f64],
    pub action: usize,
    pub target: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mlp {
    sizes: Vec<usize>,
    activation: Activation,
    params: Vec<f64>,
}

impl Mlp {
    /// All-zero network with layer widths `sizes` (input first, output last).
    pub fn zeros(sizes: &[usize], activation: Activation) -> Self {
        assert!(
            sizes.len() >= 2,
            "a network needs an input and an output layer"
        );
        assert!(
            sizes.iter().all(|&s| s > 0),
            "layer widths must be positive"
        );
        let n = sizes.windows(2).map(|w| w[0] * w[1] + w[1]).sum();
        Self {
            sizes: sizes.to_vec(),
            activation,
            params: vec![0.0; n],
        }
    }

    /// Weights uniform in `±sqrt(6 / (fan_in + fan_out))`, biases zero.
    pub fn glorot(sizes: &[usize], activation: Activation, rng: &mut Rng) -> Self {
        let mut net = Self::zeros(sizes, activation);
        let mut offset = 0;
        for w in sizes.windows(2) {
            let (fan_in, fan_out) = (w[0], w[1]);
            let limit = (6.0 / (fan_in + fan_out) as f64).sqrt();
            for p in &mut net.params[offset..offset + fan_in * fan_out] {
                *p = rng.uniform(-limit, limit).expect("finite bounds");
            }
            offset += fan_in * fan_out + fan_out;
        }
        net
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn input_dim(&self) -> usize {
        self.sizes[0]
    }

    pub fn output_dim(&self) -> usize {
        *self.sizes.last().expect("at least two layers")
    }

    pub fn activation(&self) -> Activation {
        self.activation
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn params_mut(&mut self) -> &mut [f64] {
        &mut self.params
    }

    pub fn num_layers(&self) -> usize {
        self.sizes.len() - 1
    }

    /// `(weights, biases)` of layer `l`.
    pub fn layer(&self, l: usize) -> (&[f64], &[f64]) {
        let (w, b) = self.layer_ranges(l);
        (&self.params[w], &self.params[b])
    }

    pub fn layer_mut(&mut self, l: usize) -> (&mut [f64], &mut [f64]) {
        let (w, b) = self.layer_ranges(l);
        let (head, tail) = self.params.split_at_mut(b.start);
        (&mut head[w], &mut tail[..b.len()])
    }

    fn layer_ranges(&self, l: usize) -> (std::ops::Range<usize>, std::ops::Range<usize>) {
        let offset: usize = self.sizes[..l + 1]
            .windows(2)
            .map(|w| w[0] * w[1] + w[1])
            .sum();
        let (fan_in, fan_out) = (self.sizes[l], self.sizes[l + 1]);
        let w = offset..offset + fan_in * fan_out;
        let b = w.end..w.end + fan_out;
        (w, b)
    }

    fn check_input(&self, obs: &[f64]) -> Result<()> {
        if obs.len() != self.input_dim() {
            return Err(DqnError::Dimension {
                expected: self.input_dim(),
                got: obs.len(),
            });
        }
        Ok(())
    }

    /// Q-values for every action.
    pub fn forward(&self, obs: &[f64]) -> Result<Vec<f64>> {
        self.check_input(obs)?;
        let mut cache = ForwardCache::default();
        self.forward_cached(obs, &mut cache);
        Ok(cache.output().to_vec())
    }

    /// Q-values computed into reusable scratch space.
    pub fn q_values<'w>(&self, obs: &[f64], ws: &'w mut Workspace) -> Result<&'w [f64]> {
        self.check_input(obs)?;
        self.forward_cached(obs, &mut ws.cache);
        Ok(ws.cache.output())
    }

    /// Runs the network keeping every layer's pre- and post-activation values.
    fn forward_cached(&self, obs: &[f64], cache: &mut ForwardCache) {
        let layers = self.num_layers();
        cache.pre.resize_with(layers, Vec::new);
        cache.post.resize_with(layers, Vec::new);
        let mut offset = 0;
        for l in 0..layers {
            let (fan_in, fan_out) = (self.sizes[l], self.sizes[l + 1]);
            let weights = &self.params[offset..offset + fan_in * fan_out];
            let biases =
                &self.params[offset + fan_in * fan_out..offset + fan_in * fan_out + fan_out];
            offset += fan_in * fan_out + fan_out;

            let input: &[f64] = if l == 0 { obs } else { &cache.post[l - 1] };
            let mut pre = std::mem::take(&mut cache.pre[l]);
            pre.clear();
            pre.extend(
                weights
                    .chunks_exact(fan_in)
                    .zip(biases)
                    .map(|(row, b)| row.iter().zip(input).map(|(w, x)| w * x).sum::<f64>() + b),
            );
            let post = &mut cache.post[l];
            post.clear();
            if l + 1 == layers {
                post.extend_from_slice(&pre);
            } else {
                post.extend(pre.iter().map(|&z| self.activation.apply(z)));
            }
            cache.pre[l] = pre;
        }
    }

    /// Mean Huber loss over the batch and its gradient with respect to every
    /// parameter. Only the output of each sample's `action` contributes.
    pub fn loss_and_gradient(&self, batch: &[Sample<'_>]) -> Result<(f64, Vec<f64>)> {
        let mut grad = vec![0.0; self.params.len()];
        let loss = self.accumulate_gradient(batch, &mut grad, &mut Workspace::default())?;
        Ok((loss, grad))
    }

    /// As [`loss_and_gradient`](Self::loss_and_gradient), writing into `grad`
    /// (overwritten) and reusing scratch buffers.
    pub fn accumulate_gradient(
        &self,
        batch: &[Sample<'_>],
        grad: &mut [f64],
        ws: &mut Workspace,
    ) -> Result<f64> {
        if batch.is_empty() {
            return Err(DqnError::EmptyBatch);
        }
        if grad.len() != self.params.len() {
            return Err(DqnError::Dimension {
                expected: self.params.len(),
                got: grad.len(),
            });
        }
        let out_dim = self.output_dim();
        for s in batch {
            self.check_input(s.obs)?;
            if s.action >= out_dim {
                return Err(DqnError::Dimension {
                    expected: out_dim,
                    got: s.action + 1,
                });
            }
        }
        grad.fill(0.0);
        let scale = 1.0 / batch.len() as f64;
        let layers = self.num_layers();
        let mut loss = 0.0;

        for s in batch {
            self.forward_cached(s.obs, &mut ws.cache);
            let q = ws.cache.output()[s.action];
            loss += huber_loss(q, s.target);

            // delta holds dL/d(pre-activation) of the current layer
            ws.delta.clear();
            ws.delta.resize(out_dim, 0.0);
            ws.delta[s.action] = huber_grad(q, s.target) * scale;

            for l in (0..layers).rev() {
                let fan_in = self.sizes[l];
                let (w_range, b_range) = self.layer_ranges(l);
                let input: &[f64] = if l == 0 { s.obs } else { &ws.cache.post[l - 1] };

                for (o, &d) in ws.delta.iter().enumerate() {
                    if d == 0.0 {
                        continue;
                    }
                    grad[b_range.start + o] += d;
                    let row =
                        &mut grad[w_range.start + o * fan_in..w_range.start + (o + 1) * fan_in];
                    for (g, x) in row.iter_mut().zip(input) {
                        *g += d * x;
                    }
                }
                if l == 0 {
                    break;
                }
                let weights = &self.params[w_range];
                ws.next_delta.clear();
                ws.next_delta.resize(fan_in, 0.0);
                for (o, &d) in ws.delta.iter().enumerate() {
                    if d == 0.0 {
                        continue;
                    }
                    let row = &weights[o * fan_in..(o + 1) * fan_in];
                    for (nd, w) in ws.next_delta.iter_mut().zip(row) {
                        *nd += d * w;
                    }
                }
                let pre = &ws.cache.pre[l - 1];
                for (nd, &z) in ws.next_delta.iter_mut().zip(pre) {
                    *nd *= self.activation.derivative(z);
                }
                std::mem::swap(&mut ws.delta, &mut ws.next_delta);
            }
        }
        Ok(loss * scale)
    }

    /// Mean Huber loss only, for finite-difference checks.
    pub fn loss(&self, batch: &[Sample<'_>]) -> Result<f64> {
        if batch.is_empty() {
            return Err(DqnError::EmptyBatch);
        }
        let mut total = 0.0;
        for s in batch {
            let q = self.forward(s.obs)?;
            total += huber_loss(q[s.action], s.target);
        }
        Ok(total / batch.len() as f64)
    }

    /// Makes `self` an exact copy of `source`.
    pub fn copy_from(&mut self, source: &Mlp) {
        self.sizes.clone_from(&source.sizes);
        self.activation = source.activation;
        self.params.clone_from(&source.params);
    }
}

#[derive(Debug, Clone, Default)]
struct ForwardCache {
    pre: Vec<Vec<f64>>,
    post: Vec<Vec<f64>>,
}

impl ForwardCache {
    fn output(&self) -> &[f64] {
        self.post.last().map(Vec::as_slice).unwrap_or(&[])
    }
}

/// Scratch buffers reused across gradient evaluations.
#[derive(Debug, Clone, Default)]
pub struct Workspace {
    cache: ForwardCache,
    delta: Vec<f64>,
    next_delta: Vec<f64>,
}
