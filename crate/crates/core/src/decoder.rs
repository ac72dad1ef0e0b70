//! Unrolled belief-propagation decoders.
//!
//! Three decoders share one message layout (one real per Tanner edge):
//!
//! * [`bp_decode`]: plain sum-product.
//! * [`WeightBank`] with [`Variant::FeedForward`]: one weight per edge pair
//!   at every variable node, per odd layer, plus per-edge output weights.
//! * [`WeightBank`] with [`Variant::Cyclic`]: a single u×u block per odd
//!   layer and u output weights, shared by all n variable nodes of a
//!   circulant parity matrix.
//!
//! Sums at a variable run over slots in offset order and products at a check
//! run in the check's offset order, so the cyclic decoder commutes with
//! cyclic shifts bit-for-bit and an all-ones bank reproduces [`bp_decode`]
//! exactly.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tanner::TannerGraph;

/// Input LLRs are clamped to ±LLR_CLIP before every decoding pass.
pub const LLR_CLIP: f64 = 20.0;
/// Check-node products are clamped to [−1 + ε, 1 − ε] before atanh.
pub const PRODUCT_EPS: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// Per-edge weights (the weighted feed-forward neural BP baseline).
    FeedForward,
    /// Shift-shared weights for circulant parity matrices.
    Cyclic,
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Variant::FeedForward => "ff",
            Variant::Cyclic => "cyclic",
        })
    }
}

/// Trainable weights of a neural BP decoder, stored as one flat vector.
///
/// Layout: `t` odd-layer sections followed by the output section. An odd
/// layer holds one d×d block per variable (FF) or a single u×u block
/// (cyclic). Inside a block, entry `[src * d + dst]` multiplies the incoming
/// message at slot `src` when computing the message at slot `dst`; the
/// diagonal entry `[b * d + b]` is the weight on the channel LLR.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightBank {
    variant: Variant,
    t: usize,
    /// Block sizes: `[u]` for cyclic, per-variable degrees for FF.
    degrees: Vec<usize>,
    block_offsets: Vec<usize>,
    out_offsets: Vec<usize>,
    layer_len: usize,
    params: Vec<f64>,
}

impl WeightBank {
    /// All-ones bank (exactly vanilla BP).
    pub fn ones(graph: &TannerGraph, variant: Variant, t: usize) -> Result<Self> {
        let degrees = match variant {
            Variant::Cyclic => vec![graph.column_weight().ok_or_else(|| {
                Error::Shape("cyclic weights need a circulant parity matrix".into())
            })?],
            Variant::FeedForward => graph.var_degrees(),
        };
        Self::with_degrees(variant, t, degrees, 1.0)
    }

    pub(crate) fn with_degrees(
        variant: Variant,
        t: usize,
        degrees: Vec<usize>,
        fill: f64,
    ) -> Result<Self> {
        if t == 0 {
            return Err(Error::Shape("t must be at least 1".into()));
        }
        if variant == Variant::Cyclic && degrees.len() != 1 {
            return Err(Error::Shape("cyclic bank has exactly one block size".into()));
        }
        let mut block_offsets = Vec::with_capacity(degrees.len());
        let mut out_offsets = Vec::with_capacity(degrees.len());
        let (mut bo, mut oo) = (0, 0);
        for &d in &degrees {
            block_offsets.push(bo);
            out_offsets.push(oo);
            bo += d * d;
            oo += d;
        }
        let layer_len = bo;
        let params = vec![fill; layer_len * t + oo];
        Ok(Self {
            variant,
            t,
            degrees,
            block_offsets,
            out_offsets,
            layer_len,
            params,
        })
    }

    /// Bank with every weight drawn uniformly from `[lo, hi)`.
    pub fn random<R: Rng + ?Sized>(
        graph: &TannerGraph,
        variant: Variant,
        t: usize,
        lo: f64,
        hi: f64,
        rng: &mut R,
    ) -> Result<Self> {
        let mut bank = Self::ones(graph, variant, t)?;
        for w in &mut bank.params {
            *w = rng.random_range(lo..hi);
        }
        Ok(bank)
    }

    /// Same shape, all zeros (gradient accumulator).
    pub fn zeros_like(&self) -> Self {
        Self {
            params: vec![0.0; self.params.len()],
            ..self.clone()
        }
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Column weight u of a cyclic bank.
    pub fn u(&self) -> Option<usize> {
        (self.variant == Variant::Cyclic).then(|| self.degrees[0])
    }

    pub fn param_count(&self) -> usize {
        self.params.len()
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn params_mut(&mut self) -> &mut [f64] {
        &mut self.params
    }

    /// Replaces all parameters; the length must match.
    pub fn set_params(&mut self, params: Vec<f64>) -> Result<()> {
        if params.len() != self.params.len() {
            return Err(Error::Shape(format!(
                "expected {} parameters, got {}",
                self.params.len(),
                params.len()
            )));
        }
        self.params = params;
        Ok(())
    }

    fn block_index(&self, var: usize) -> usize {
        match self.variant {
            Variant::Cyclic => 0,
            Variant::FeedForward => var,
        }
    }

    /// Flat index of the odd-layer weight at `layer` (0-based), variable
    /// `var`, from slot `src` into slot `dst`.
    pub fn odd_index(&self, layer: usize, var: usize, src: usize, dst: usize) -> usize {
        let blk = self.block_index(var);
        let d = self.degrees[blk];
        layer * self.layer_len + self.block_offsets[blk] + src * d + dst
    }

    /// Flat index of the output weight at variable `var`, slot `b`.
    pub fn out_index(&self, var: usize, b: usize) -> usize {
        self.t * self.layer_len + self.out_offsets[self.block_index(var)] + b
    }

    fn block(&self, layer: usize, var: usize) -> &[f64] {
        let blk = self.block_index(var);
        let d = self.degrees[blk];
        let start = layer * self.layer_len + self.block_offsets[blk];
        &self.params[start..start + d * d]
    }

    fn out_block(&self, var: usize) -> &[f64] {
        let blk = self.block_index(var);
        let start = self.t * self.layer_len + self.out_offsets[blk];
        &self.params[start..start + self.degrees[blk]]
    }

    /// Verifies that this bank fits `graph`.
    pub fn check_graph(&self, graph: &TannerGraph) -> Result<()> {
        match self.variant {
            Variant::Cyclic => {
                let u = graph.column_weight().ok_or_else(|| {
                    Error::Shape("cyclic weights need a circulant parity matrix".into())
                })?;
                if u != self.degrees[0] {
                    return Err(Error::Shape(format!(
                        "bank has u = {}, graph has u = {u}",
                        self.degrees[0]
                    )));
                }
            }
            Variant::FeedForward => {
                if graph.var_degrees() != self.degrees {
                    return Err(Error::Shape(format!(
                        "bank built for {} variables with different degrees than this graph ({} variables)",
                        self.degrees.len(),
                        graph.n_vars()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Adds `scale * other` into `self`.
    pub fn axpy(&mut self, scale: f64, other: &WeightBank) {
        assert_eq!(self.params.len(), other.params.len());
        for (a, b) in self.params.iter_mut().zip(&other.params) {
            *a += scale * b;
        }
    }
}

fn clip_llr(llr: &[f64]) -> Vec<f64> {
    llr.iter().map(|&l| l.clamp(-LLR_CLIP, LLR_CLIP)).collect()
}

/// Check-node (even) layer: x_next(e) = 2 atanh(∏_{e' ∈ N(c) \ e} x_prev(e')).
///
/// The leave-one-out product is prefix[a] · suffix[a + 1] over the check's
/// offset-ordered edge list. When `deriv` is given it receives
/// d x_next / d product, zero where the product was clipped.
fn check_layer(graph: &TannerGraph, prev: &[f64], next: &mut [f64], mut deriv: Option<&mut [f64]>) {
    let mut prefix = Vec::new();
    let mut suffix = Vec::new();
    for i in 0..graph.n_checks() {
        let list = graph.check_edges(i);
        let d = list.len();
        prefix.clear();
        prefix.push(1.0);
        for &e in list {
            let last = *prefix.last().unwrap();
            prefix.push(last * prev[e]);
        }
        suffix.clear();
        suffix.resize(d + 1, 1.0);
        for a in (0..d).rev() {
            suffix[a] = suffix[a + 1] * prev[list[a]];
        }
        for (a, &e) in list.iter().enumerate() {
            let p = prefix[a] * suffix[a + 1];
            let pc = p.clamp(-1.0 + PRODUCT_EPS, 1.0 - PRODUCT_EPS);
            // std's atanh is not exactly odd; evaluating on |p| keeps the
            // decoder exactly sign-symmetric.
            next[e] = (2.0 * pc.abs().atanh()).copysign(pc);
            if let Some(dv) = deriv.as_deref_mut() {
                dv[e] = if p == pc { 2.0 / (1.0 - p * p) } else { 0.0 };
            }
        }
    }
}

/// Vanilla sum-product decoding over `t` iterations; returns the output LLRs
/// o_j = L_j + Σ_{e ∈ N(v_j)} x^[2t](e).
pub fn bp_decode(graph: &TannerGraph, llr: &[f64], t: usize) -> Vec<f64> {
    assert_eq!(llr.len(), graph.n_vars());
    assert!(t >= 1, "t must be at least 1");
    let llr = clip_llr(llr);
    let mut x = vec![0.0; graph.n_edges()];
    let mut y = vec![0.0; graph.n_edges()];
    for _ in 0..t {
        for (j, &l) in llr.iter().enumerate() {
            let list = graph.var_edges(j);
            for (b, &e) in list.iter().enumerate() {
                let mut z = l;
                for (b2, &e2) in list.iter().enumerate() {
                    if b2 != b {
                        z += x[e2];
                    }
                }
                y[e] = (0.5 * z).tanh();
            }
        }
        check_layer(graph, &y, &mut x, None);
    }
    llr.iter()
        .enumerate()
        .map(|(j, &l)| {
            let mut o = l;
            for &e in graph.var_edges(j) {
                o += x[e];
            }
            o
        })
        .collect()
}

/// Per-layer messages recorded by the forward pass, for backpropagation.
#[derive(Debug, Clone)]
pub(crate) struct Trace {
    /// Clipped input LLRs.
    pub llr: Vec<f64>,
    /// x^[0], x^[1], ..., x^[2t].
    pub layers: Vec<Vec<f64>>,
    /// d x^[s] / d product for even s, indexed by s / 2 − 1.
    pub even_deriv: Vec<Vec<f64>>,
    pub output: Vec<f64>,
}

fn odd_layer(graph: &TannerGraph, bank: &WeightBank, layer: usize, llr: &[f64], prev: &[f64], next: &mut [f64]) {
    for (j, &l) in llr.iter().enumerate() {
        let list = graph.var_edges(j);
        let d = list.len();
        let w = bank.block(layer, j);
        for (b, &e) in list.iter().enumerate() {
            let mut z = w[b * d + b] * l;
            for (b2, &e2) in list.iter().enumerate() {
                if b2 != b {
                    z += w[b2 * d + b] * prev[e2];
                }
            }
            next[e] = (0.5 * z).tanh();
        }
    }
}

fn output_layer(graph: &TannerGraph, bank: &WeightBank, llr: &[f64], last: &[f64]) -> Vec<f64> {
    llr.iter()
        .enumerate()
        .map(|(j, &l)| {
            let w = bank.out_block(j);
            let mut o = l;
            for (b, &e) in graph.var_edges(j).iter().enumerate() {
                o += w[b] * last[e];
            }
            o
        })
        .collect()
}

pub(crate) fn forward_traced(graph: &TannerGraph, bank: &WeightBank, llr: &[f64]) -> Trace {
    let llr = clip_llr(llr);
    let ne = graph.n_edges();
    let mut layers = Vec::with_capacity(2 * bank.t + 1);
    let mut even_deriv = Vec::with_capacity(bank.t);
    layers.push(vec![0.0; ne]);
    for layer in 0..bank.t {
        let mut odd = vec![0.0; ne];
        odd_layer(graph, bank, layer, &llr, layers.last().unwrap(), &mut odd);
        let mut even = vec![0.0; ne];
        let mut deriv = vec![0.0; ne];
        check_layer(graph, &odd, &mut even, Some(&mut deriv));
        layers.push(odd);
        layers.push(even);
        even_deriv.push(deriv);
    }
    let output = output_layer(graph, bank, &llr, layers.last().unwrap());
    Trace {
        llr,
        layers,
        even_deriv,
        output,
    }
}

/// Weighted (FF or cyclic) neural BP decoding. Even layers are unweighted.
pub fn neural_bp_decode(graph: &TannerGraph, bank: &WeightBank, llr: &[f64]) -> Result<Vec<f64>> {
    bank.check_graph(graph)?;
    if llr.len() != graph.n_vars() {
        return Err(Error::Shape(format!(
            "expected {} LLRs, got {}",
            graph.n_vars(),
            llr.len()
        )));
    }
    Ok(neural_unchecked(graph, bank, llr))
}

fn neural_unchecked(graph: &TannerGraph, bank: &WeightBank, llr: &[f64]) -> Vec<f64> {
    let llr = clip_llr(llr);
    let ne = graph.n_edges();
    let mut x = vec![0.0; ne];
    let mut y = vec![0.0; ne];
    for layer in 0..bank.t {
        odd_layer(graph, bank, layer, &llr, &x, &mut y);
        check_layer(graph, &y, &mut x, None);
    }
    output_layer(graph, bank, &llr, &x)
}

/// Runs the neural decoder `boosts + 1` times, feeding each output back in
/// as the next input.
pub fn boost(graph: &TannerGraph, bank: &WeightBank, llr: &[f64], boosts: usize) -> Result<Vec<f64>> {
    let mut out = neural_bp_decode(graph, bank, llr)?;
    for _ in 0..boosts {
        out = neural_unchecked(graph, bank, &out);
    }
    Ok(out)
}

/// bit = 1 iff o < 0; exact zeros decide for 0.
pub fn hard_decision(o: &[f64]) -> Vec<u8> {
    o.iter().map(|&v| u8::from(v < 0.0)).collect()
}

/// A ready-to-run decoder: graph, optional weights, iteration count, boosting.
#[derive(Debug, Clone)]
pub struct Decoder {
    graph: TannerGraph,
    weights: Option<WeightBank>,
    t: usize,
    boosts: usize,
}

impl Decoder {
    pub fn vanilla(graph: TannerGraph, t: usize, boosts: usize) -> Self {
        Self {
            graph,
            weights: None,
            t,
            boosts,
        }
    }

    pub fn neural(graph: TannerGraph, weights: WeightBank, boosts: usize) -> Result<Self> {
        weights.check_graph(&graph)?;
        Ok(Self {
            t: weights.t(),
            graph,
            weights: Some(weights),
            boosts,
        })
    }

    pub fn graph(&self) -> &TannerGraph {
        &self.graph
    }

    pub fn weights(&self) -> Option<&WeightBank> {
        self.weights.as_ref()
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn boosts(&self) -> usize {
        self.boosts
    }

    pub fn with_boosts(mut self, boosts: usize) -> Self {
        self.boosts = boosts;
        self
    }

    /// Output LLRs after all boosting passes.
    pub fn decode(&self, llr: &[f64]) -> Vec<f64> {
        assert_eq!(llr.len(), self.graph.n_vars());
        let pass = |l: &[f64]| match &self.weights {
            Some(w) => neural_unchecked(&self.graph, w, l),
            None => bp_decode(&self.graph, l, self.t),
        };
        let mut out = pass(llr);
        for _ in 0..self.boosts {
            out = pass(&out);
        }
        out
    }
}
