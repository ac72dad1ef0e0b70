//! Loss, exact reverse-mode gradients through the unrolled decoder, and the
//! Adam training loop.
//!
//! Training uses only the all-zero codeword: the decoders satisfy the
//! message-passing symmetry conditions, so their error probability does not
//! depend on the transmitted codeword.

use rayon::prelude::*;

use crate::channel::{stream_rng, zero_codeword_llr};
use crate::decoder::{forward_traced, Variant, WeightBank};
use crate::error::{Error, Result};
use crate::tanner::TannerGraph;

/// Numerically stable ln(1 + e^x).
fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// Mean binary cross-entropy between P(bit = 1) = sigmoid(−o_j) and the
/// target bits.
pub fn loss(output: &[f64], target: &[u8]) -> f64 {
    assert_eq!(output.len(), target.len());
    let total: f64 = output
        .iter()
        .zip(target)
        .map(|(&o, &t)| if t == 0 { softplus(-o) } else { softplus(o) })
        .sum();
    total / output.len() as f64
}

fn loss_grad(output: &[f64], target: &[u8]) -> Vec<f64> {
    let n = output.len() as f64;
    output
        .iter()
        .zip(target)
        .map(|(&o, &t)| if t == 0 { -sigmoid(-o) / n } else { sigmoid(o) / n })
        .collect()
}

/// Loss and its gradient with respect to every weight of `bank`, for one
/// input. Shared weights accumulate contributions from every position.
pub fn backward(
    graph: &TannerGraph,
    bank: &WeightBank,
    llr: &[f64],
    target: &[u8],
) -> Result<(f64, WeightBank)> {
    bank.check_graph(graph)?;
    if llr.len() != graph.n_vars() || target.len() != graph.n_vars() {
        return Err(Error::Shape(format!(
            "expected {} LLRs and target bits",
            graph.n_vars()
        )));
    }
    let tr = forward_traced(graph, bank, llr);
    let value = loss(&tr.output, target);
    let g_out = loss_grad(&tr.output, target);

    let w = bank.params();
    let mut grad = bank.zeros_like();
    let gp = grad.params_mut();
    let ne = graph.n_edges();
    let t = bank.t();

    // Output layer.
    let last = &tr.layers[2 * t];
    let mut gx = vec![0.0; ne];
    for (j, &go) in g_out.iter().enumerate() {
        for (b, &e) in graph.var_edges(j).iter().enumerate() {
            let idx = bank.out_index(j, b);
            gp[idx] += go * last[e];
            gx[e] += go * w[idx];
        }
    }

    let mut g_odd = vec![0.0; ne];
    let mut g_prev = vec![0.0; ne];
    let mut g_prefix = Vec::new();
    let mut g_suffix = Vec::new();
    let mut prefix = Vec::new();
    let mut suffix = Vec::new();
    for layer in (0..t).rev() {
        let odd = &tr.layers[2 * layer + 1];
        let prev = &tr.layers[2 * layer];
        let deriv = &tr.even_deriv[layer];

        // Even layer: through atanh and the prefix/suffix products.
        g_odd.iter_mut().for_each(|v| *v = 0.0);
        for i in 0..graph.n_checks() {
            let list = graph.check_edges(i);
            let d = list.len();
            prefix.clear();
            prefix.push(1.0);
            for &e in list {
                let p = *prefix.last().unwrap();
                prefix.push(p * odd[e]);
            }
            suffix.clear();
            suffix.resize(d + 1, 1.0);
            for a in (0..d).rev() {
                suffix[a] = suffix[a + 1] * odd[list[a]];
            }
            g_prefix.clear();
            g_prefix.resize(d + 1, 0.0);
            g_suffix.clear();
            g_suffix.resize(d + 1, 0.0);
            for (a, &e) in list.iter().enumerate() {
                let g_p = gx[e] * deriv[e];
                g_prefix[a] += g_p * suffix[a + 1];
                g_suffix[a + 1] += g_p * prefix[a];
            }
            for a in (0..d).rev() {
                g_odd[list[a]] += g_prefix[a + 1] * prefix[a];
                g_prefix[a] += g_prefix[a + 1] * odd[list[a]];
            }
            for a in 0..d {
                g_odd[list[a]] += g_suffix[a] * suffix[a + 1];
                g_suffix[a + 1] += g_suffix[a] * odd[list[a]];
            }
        }

        // Odd layer: through tanh(z / 2) and the weighted sums.
        g_prev.iter_mut().for_each(|v| *v = 0.0);
        for (j, &l) in tr.llr.iter().enumerate() {
            let list = graph.var_edges(j);
            let d = list.len();
            let base = bank.odd_index(layer, j, 0, 0);
            for (b, &e) in list.iter().enumerate() {
                let x = odd[e];
                let gz = g_odd[e] * 0.5 * (1.0 - x * x);
                if gz == 0.0 {
                    continue;
                }
                gp[base + b * d + b] += gz * l;
                for (b2, &e2) in list.iter().enumerate() {
                    if b2 != b {
                        let idx = base + b2 * d + b;
                        gp[idx] += gz * prev[e2];
                        g_prev[e2] += gz * w[idx];
                    }
                }
            }
        }
        std::mem::swap(&mut gx, &mut g_prev);
    }
    Ok((value, grad))
}

/// Adam with the usual defaults (β1 = 0.9, β2 = 0.999, ε = 1e−8).
#[derive(Debug, Clone)]
pub struct Adam {
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
    m: Vec<f64>,
    v: Vec<f64>,
    step: i32,
}

impl Adam {
    pub fn new(n_params: usize, learning_rate: f64) -> Self {
        Self {
            learning_rate,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
            m: vec![0.0; n_params],
            v: vec![0.0; n_params],
            step: 0,
        }
    }

    pub fn step(&mut self, params: &mut [f64], grad: &[f64]) {
        assert_eq!(params.len(), self.m.len());
        self.step += 1;
        let bc1 = 1.0 - self.beta1.powi(self.step);
        let bc2 = 1.0 - self.beta2.powi(self.step);
        for (((p, &g), m), v) in params.iter_mut().zip(grad).zip(&mut self.m).zip(&mut self.v) {
            *m = self.beta1 * *m + (1.0 - self.beta1) * g;
            *v = self.beta2 * *v + (1.0 - self.beta2) * g * g;
            let mhat = *m / bc1;
            let vhat = *v / bc2;
            *p -= self.learning_rate * mhat / (vhat.sqrt() + self.epsilon);
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub samples_per_snr: usize,
    pub snr_grid_db: Vec<f64>,
    pub t: usize,
    pub learning_rate: f64,
    pub steps: usize,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            samples_per_snr: 20,
            snr_grid_db: (1..=8).map(f64::from).collect(),
            t: 5,
            learning_rate: 1e-3,
            steps: 2000,
            seed: 0,
        }
    }
}

impl TrainConfig {
    pub fn batch_size(&self) -> usize {
        self.samples_per_snr * self.snr_grid_db.len()
    }
}

#[derive(Debug, Clone)]
pub struct TrainOutcome {
    pub bank: WeightBank,
    /// Mean batch loss before each optimizer step.
    pub loss_trace: Vec<f64>,
}

/// One batch of all-zero-codeword LLRs for step `step`.
pub fn training_batch(config: &TrainConfig, n: usize, rate: f64, step: usize) -> Vec<Vec<f64>> {
    let mut rng = stream_rng(config.seed, step as u64);
    config
        .snr_grid_db
        .iter()
        .flat_map(|&snr| (0..config.samples_per_snr).map(move |_| snr))
        .map(|snr| zero_codeword_llr(n, snr, rate, &mut rng))
        .collect()
}

/// Mean loss and gradient over a batch; the reduction runs in sample order.
pub fn batch_gradient(graph: &TannerGraph, bank: &WeightBank, batch: &[Vec<f64>]) -> Result<(f64, WeightBank)> {
    let target = vec![0u8; graph.n_vars()];
    let parts: Vec<(f64, WeightBank)> = batch
        .par_iter()
        .map(|llr| backward(graph, bank, llr, &target))
        .collect::<Result<_>>()?;
    let scale = 1.0 / batch.len() as f64;
    let mut grad = bank.zeros_like();
    let mut total = 0.0;
    for (l, g) in &parts {
        total += l;
        grad.axpy(scale, g);
    }
    Ok((total * scale, grad))
}

/// Trains a decoder for `graph`, starting from all-ones weights.
///
/// `rate` is the code rate used for the SNR-to-noise conversion.
pub fn train(graph: &TannerGraph, rate: f64, variant: Variant, config: &TrainConfig) -> Result<TrainOutcome> {
    train_with_progress(graph, rate, variant, config, |_, _| {})
}

pub fn train_with_progress(
    graph: &TannerGraph,
    rate: f64,
    variant: Variant,
    config: &TrainConfig,
    mut progress: impl FnMut(usize, f64),
) -> Result<TrainOutcome> {
    if config.batch_size() == 0 {
        return Err(Error::Config("empty training batch".into()));
    }
    let mut bank = WeightBank::ones(graph, variant, config.t)?;
    let mut adam = Adam::new(bank.param_count(), config.learning_rate);
    let mut loss_trace = Vec::with_capacity(config.steps);
    for step in 0..config.steps {
        let batch = training_batch(config, graph.n_vars(), rate, step);
        let (l, grad) = batch_gradient(graph, &bank, &batch)?;
        if !l.is_finite() || grad.params().iter().any(|g| !g.is_finite()) {
            return Err(Error::Diverged { step, loss: l });
        }
        loss_trace.push(l);
        progress(step, l);
        adam.step(bank.params_mut(), grad.params());
    }
    Ok(TrainOutcome { bank, loss_trace })
}

/// Writes `step,loss` rows.
pub fn write_loss_trace<W: std::io::Write>(trace: &[f64], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["step", "loss"])?;
    for (i, l) in trace.iter().enumerate() {
        w.write_record([i.to_string(), format!("{l:e}")])?;
    }
    w.flush()?;
    Ok(())
}
