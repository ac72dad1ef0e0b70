//! Monte-Carlo BER/FER measurement, weight files, CSV and SVG output.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::BitMatrix;
use crate::channel::{sample, stream_rng, zero_codeword_llr};
use crate::codes::{CodeId, CyclicCode};
use crate::decoder::{hard_decision, Decoder, Variant, WeightBank};
use crate::error::{Error, Result};
use crate::listdec::{list_decode, AffinePermutationSet, FailedBranch};
use crate::tanner::TannerGraph;

/// Frames per RNG stream. Each chunk of frames draws from its own stream so
/// results do not depend on how work is split across threads.
const CHUNK: usize = 250;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecoderKind {
    Vanilla,
    Ff,
    Cyclic,
}

impl DecoderKind {
    pub fn variant(self) -> Option<Variant> {
        match self {
            DecoderKind::Vanilla => None,
            DecoderKind::Ff => Some(Variant::FeedForward),
            DecoderKind::Cyclic => Some(Variant::Cyclic),
        }
    }
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecoderKind::Vanilla => "vanilla",
            DecoderKind::Ff => "ff",
            DecoderKind::Cyclic => "cyclic",
        })
    }
}

impl FromStr for DecoderKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vanilla" | "bp" => Ok(Self::Vanilla),
            "ff" => Ok(Self::Ff),
            "cyclic" => Ok(Self::Cyclic),
            _ => Err(Error::Config(format!("unknown decoder {s:?} (vanilla|ff|cyclic)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixKind {
    /// The (n−k)×n band parity matrix.
    Std,
    /// All n cyclic shifts of the first parity row.
    Cyclic,
    /// The band matrix plus k random nonzero parity checks.
    RandomExtended,
}

impl MatrixKind {
    pub fn build(self, code: &CyclicCode, seed: u64) -> BitMatrix {
        match self {
            MatrixKind::Std => code.parity_std.clone(),
            MatrixKind::Cyclic => code.parity_cyclic.clone(),
            MatrixKind::RandomExtended => code.random_extended_matrix(seed),
        }
    }
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixKind::Std => "std",
            MatrixKind::Cyclic => "cyclic",
            MatrixKind::RandomExtended => "random-extended",
        })
    }
}

impl FromStr for MatrixKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "std" => Ok(Self::Std),
            "cyclic" => Ok(Self::Cyclic),
            "random-extended" => Ok(Self::RandomExtended),
            _ => Err(Error::Config(format!(
                "unknown matrix {s:?} (std|cyclic|random-extended)"
            ))),
        }
    }
}

fn de_code_id<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<CodeId, D::Error> {
    let s = String::deserialize(d)?;
    s.parse().map_err(serde::de::Error::custom)
}

fn ser_code_id<S: serde::Serializer>(id: &CodeId, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&id.to_string())
}

/// One experiment: a decoder configuration measured over an SNR grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    #[serde(deserialize_with = "de_code_id", serialize_with = "ser_code_id")]
    pub code: CodeId,
    pub decoder: DecoderKind,
    pub matrix: MatrixKind,
    /// Seed of the random rows for `random-extended`.
    pub matrix_seed: u64,
    pub t: usize,
    pub boosts: usize,
    /// 0 for plain decoding, otherwise the list size ℓ.
    pub list_size: usize,
    pub drop_failed_branches: bool,
    pub snr_db: Vec<f64>,
    pub samples: usize,
    pub seed: u64,
    pub weights: Option<PathBuf>,
    /// Transmit only the all-zero codeword instead of random codewords.
    pub all_zero: bool,
    /// Record wall time per point; off gives byte-reproducible CSV.
    pub record_time: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            code: CodeId {
                family: crate::codes::Family::Bch,
                n: 63,
                k: 45,
            },
            decoder: DecoderKind::Vanilla,
            matrix: MatrixKind::Std,
            matrix_seed: 0,
            t: 5,
            boosts: 0,
            list_size: 0,
            drop_failed_branches: false,
            snr_db: vec![4.0, 5.0, 6.0],
            samples: 100_000,
            seed: 0,
            weights: None,
            all_zero: false,
            record_time: true,
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::Config("samples must be at least 1".into()));
        }
        if self.t == 0 {
            return Err(Error::Config("t must be at least 1".into()));
        }
        if self.list_size > self.code.n + 1 {
            return Err(Error::ListSize {
                ell: self.list_size,
                max: self.code.n + 1,
            });
        }
        if self.decoder == DecoderKind::Cyclic && self.matrix != MatrixKind::Cyclic {
            return Err(Error::Config("the cyclic decoder needs matrix = cyclic".into()));
        }
        if self.decoder != DecoderKind::Vanilla && self.weights.is_none() {
            return Err(Error::Config(format!(
                "decoder {} needs a weight file",
                self.decoder
            )));
        }
        Ok(())
    }
}

/// Counts for one SNR point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measurement {
    pub snr_db: f64,
    pub samples: usize,
    pub n: usize,
    pub bit_errors: u64,
    pub frame_errors: u64,
    pub seconds: f64,
}

impl Measurement {
    pub fn ber(&self) -> f64 {
        self.bit_errors as f64 / (self.samples * self.n) as f64
    }

    pub fn fer(&self) -> f64 {
        self.frame_errors as f64 / self.samples as f64
    }

    pub fn neg_ln_ber(&self) -> f64 {
        -self.ber().ln()
    }

    pub fn neg_ln_fer(&self) -> f64 {
        -self.fer().ln()
    }

    /// 95% Wilson interval on the BER.
    pub fn ber_interval(&self) -> (f64, f64) {
        wilson(self.bit_errors, (self.samples * self.n) as u64)
    }

    /// 95% Wilson interval on the FER.
    pub fn fer_interval(&self) -> (f64, f64) {
        wilson(self.frame_errors, self.samples as u64)
    }
}

/// 95% Wilson score interval for `k` successes in `trials`.
pub fn wilson(k: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    const Z: f64 = 1.959_963_984_540_054;
    let n = trials as f64;
    let p = k as f64 / n;
    let z2 = Z * Z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = Z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if k == 0 { 0.0 } else { (centre - half).max(0.0) };
    let hi = if k == trials { 1.0 } else { (centre + half).min(1.0) };
    (lo, hi)
}

/// List-decoding settings for [`measure`].
#[derive(Debug, Clone)]
pub struct ListSettings {
    pub perms: AffinePermutationSet,
    pub ell: usize,
    pub failed: FailedBranch,
}

/// Stream key for an SNR value, so runs with the same seed share noise per
/// SNR regardless of grid order.
fn snr_stream_key(snr_db: f64) -> u64 {
    ((snr_db * 1000.0).round() as i64 as u64) << 24
}

/// Decodes `samples` frames at one SNR and counts errors.
pub fn measure(
    code: &CyclicCode,
    decoder: &Decoder,
    list: Option<&ListSettings>,
    snr_db: f64,
    samples: usize,
    seed: u64,
    all_zero: bool,
) -> Result<Measurement> {
    if let Some(ls) = list {
        if !(1..=code.n + 1).contains(&ls.ell) {
            return Err(Error::ListSize {
                ell: ls.ell,
                max: code.n + 1,
            });
        }
    }
    let start = Instant::now();
    let chunks = samples.div_ceil(CHUNK);
    let key = snr_stream_key(snr_db);
    let rate = code.rate();
    let counts: Vec<(u64, u64)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = stream_rng(seed, key + c as u64);
            let frames = CHUNK.min(samples - c * CHUNK);
            let (mut bits, mut frames_bad) = (0u64, 0u64);
            for _ in 0..frames {
                let (codeword, llr) = if all_zero {
                    (vec![0u8; code.n], zero_codeword_llr(code.n, snr_db, rate, &mut rng))
                } else {
                    let cw = code.random_codeword(&mut rng);
                    let s = sample(&cw, snr_db, rate, &mut rng);
                    (cw, s.llr)
                };
                let decided = match list {
                    None => hard_decision(&decoder.decode(&llr)),
                    Some(ls) => list_decode(code, &ls.perms, &llr, ls.ell, ls.failed, |l| decoder.decode(l))
                        .expect("list size validated"),
                };
                let errs = decided.iter().zip(&codeword).filter(|(a, b)| a != b).count() as u64;
                bits += errs;
                frames_bad += u64::from(errs > 0);
            }
            (bits, frames_bad)
        })
        .collect();
    let (bit_errors, frame_errors) = counts
        .iter()
        .fold((0, 0), |(a, b), &(x, y)| (a + x, b + y));
    Ok(Measurement {
        snr_db,
        samples,
        n: code.n,
        bit_errors,
        frame_errors,
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// One CSV row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub code: String,
    pub decoder: String,
    pub matrix: String,
    pub t: usize,
    #[serde(rename = "B")]
    pub boosts: usize,
    pub ell: usize,
    pub snr_db: f64,
    pub samples: usize,
    pub bit_errors: u64,
    pub frame_errors: u64,
    pub ber: f64,
    pub fer: f64,
    pub neg_ln_ber: f64,
    pub neg_ln_fer: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub seconds: f64,
}

impl ResultRow {
    pub fn new(config: &ExperimentConfig, m: &Measurement) -> Self {
        let (ci_lo, ci_hi) = m.ber_interval();
        Self {
            code: config.code.to_string(),
            decoder: config.decoder.to_string(),
            matrix: config.matrix.to_string(),
            t: config.t,
            boosts: config.boosts,
            ell: config.list_size,
            snr_db: m.snr_db,
            samples: m.samples,
            bit_errors: m.bit_errors,
            frame_errors: m.frame_errors,
            ber: m.ber(),
            fer: m.fer(),
            neg_ln_ber: m.neg_ln_ber(),
            neg_ln_fer: m.neg_ln_fer(),
            ci_lo,
            ci_hi,
            seconds: if config.record_time { m.seconds } else { 0.0 },
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExperimentResult {
    pub rows: Vec<ResultRow>,
}

pub const CSV_HEADER: [&str; 17] = [
    "code", "decoder", "matrix", "t", "B", "ell", "snr_db", "samples", "bit_errors",
    "frame_errors", "ber", "fer", "neg_ln_ber", "neg_ln_fer", "ci_lo", "ci_hi", "seconds",
];

impl ExperimentResult {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
        w.write_record(CSV_HEADER)?;
        for row in &self.rows {
            w.serialize(row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: std::io::Read>(input: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let rows = r.deserialize().collect::<std::result::Result<Vec<ResultRow>, _>>()?;
        Ok(Self { rows })
    }

    pub fn extend(&mut self, other: ExperimentResult) {
        self.rows.extend(other.rows);
    }
}

/// Builds the decoder described by `config`, loading weights if needed.
pub fn build_decoder(config: &ExperimentConfig, code: &CyclicCode) -> Result<Decoder> {
    let h = config.matrix.build(code, config.matrix_seed);
    let graph = TannerGraph::new(&h)?;
    match config.decoder.variant() {
        None => Ok(Decoder::vanilla(graph, config.t, config.boosts)),
        Some(variant) => {
            let path = config
                .weights
                .as_ref()
                .ok_or_else(|| Error::Config("missing weight file".into()))?;
            let file = load_weights(path)?;
            if file.code != config.code.to_string() {
                return Err(Error::Shape(format!(
                    "weights trained for {}, experiment uses {}",
                    file.code, config.code
                )));
            }
            if file.matrix != config.matrix.to_string() {
                return Err(Error::Shape(format!(
                    "weights trained on the {} matrix, experiment uses {}",
                    file.matrix, config.matrix
                )));
            }
            if file.bank.variant() != variant {
                return Err(Error::Shape(format!(
                    "weights are {}, decoder is {}",
                    file.bank.variant(),
                    config.decoder
                )));
            }
            if file.bank.t() != config.t {
                return Err(Error::Shape(format!(
                    "weights have t = {}, experiment uses t = {}",
                    file.bank.t(),
                    config.t
                )));
            }
            Decoder::neural(graph, file.bank, config.boosts)
        }
    }
}

/// Runs every SNR point of `config`.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResult> {
    config.validate()?;
    let code = CyclicCode::from_id(config.code)?;
    let decoder = build_decoder(config, &code)?;
    let list = (config.list_size > 0).then(|| ListSettings {
        perms: AffinePermutationSet::new(&code.field),
        ell: config.list_size,
        failed: if config.drop_failed_branches {
            FailedBranch::Drop
        } else {
            FailedBranch::ZeroFill
        },
    });
    let rows = config
        .snr_db
        .iter()
        .map(|&snr| {
            measure(&code, &decoder, list.as_ref(), snr, config.samples, config.seed, config.all_zero)
                .map(|m| ResultRow::new(config, &m))
        })
        .collect::<Result<_>>()?;
    Ok(ExperimentResult { rows })
}

pub const WEIGHT_FORMAT: &str = "cyclicdec-weights";
pub const WEIGHT_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct WeightFileRepr {
    format: String,
    version: u32,
    code: String,
    variant: Variant,
    matrix: String,
    t: usize,
    u: Option<usize>,
    degrees: Vec<usize>,
    odd_layers: Vec<Vec<f64>>,
    output: Vec<f64>,
}

/// A weight bank with the metadata stored alongside it.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightFile {
    pub code: String,
    pub matrix: String,
    pub bank: WeightBank,
}

pub fn save_weights(path: &Path, code: CodeId, matrix: MatrixKind, bank: &WeightBank) -> Result<()> {
    let t = bank.t();
    let layer_len = (bank.param_count() - bank.degrees().iter().sum::<usize>()) / t;
    let params = bank.params();
    let repr = WeightFileRepr {
        format: WEIGHT_FORMAT.into(),
        version: WEIGHT_VERSION,
        code: code.to_string(),
        variant: bank.variant(),
        matrix: matrix.to_string(),
        t,
        u: bank.u(),
        degrees: bank.degrees().to_vec(),
        odd_layers: params[..t * layer_len].chunks(layer_len).map(<[f64]>::to_vec).collect(),
        output: params[t * layer_len..].to_vec(),
    };
    let text = serde_json::to_string_pretty(&repr)?;
    fs::write(path, text)?;
    Ok(())
}

pub fn load_weights(path: &Path) -> Result<WeightFile> {
    let err = |msg: String| Error::WeightFile {
        path: path.to_path_buf(),
        msg,
    };
    let text = fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
    let repr: WeightFileRepr = serde_json::from_str(&text).map_err(|e| err(format!("corrupt: {e}")))?;
    if repr.format != WEIGHT_FORMAT {
        return Err(err(format!("unknown format {:?}", repr.format)));
    }
    if repr.version != WEIGHT_VERSION {
        return Err(err(format!(
            "version {} unsupported (expected {WEIGHT_VERSION})",
            repr.version
        )));
    }
    if repr.odd_layers.len() != repr.t {
        return Err(err(format!("{} odd layers for t = {}", repr.odd_layers.len(), repr.t)));
    }
    let mut bank = WeightBank::with_degrees(repr.variant, repr.t, repr.degrees, 0.0)
        .map_err(|e| err(e.to_string()))?;
    if bank.u() != repr.u && repr.variant == Variant::Cyclic {
        return Err(err("u does not match block size".into()));
    }
    let params: Vec<f64> = repr.odd_layers.into_iter().flatten().chain(repr.output).collect();
    bank.set_params(params).map_err(|e| err(e.to_string()))?;
    Ok(WeightFile {
        code: repr.code,
        matrix: repr.matrix,
        bank,
    })
}

/// Which error rate to plot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Ber,
    Fer,
}

impl FromStr for Metric {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ber" => Ok(Self::Ber),
            "fer" => Ok(Self::Fer),
            _ => Err(Error::Config(format!("unknown metric {s:?} (ber|fer)"))),
        }
    }
}

/// A plotted series in pixel coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

const PLOT_W: f64 = 640.0;
const PLOT_H: f64 = 480.0;
const MARGIN: f64 = 60.0;

struct Axes {
    x_min: f64,
    x_max: f64,
    decade_min: i32,
    decade_max: i32,
}

impl Axes {
    fn px(&self, x: f64) -> f64 {
        let span = (self.x_max - self.x_min).max(1e-9);
        MARGIN + (x - self.x_min) / span * (PLOT_W - 2.0 * MARGIN)
    }

    fn py(&self, rate: f64) -> f64 {
        let span = f64::from(self.decade_max - self.decade_min).max(1.0);
        let frac = (rate.log10() - f64::from(self.decade_min)) / span;
        PLOT_H - MARGIN - frac * (PLOT_H - 2.0 * MARGIN)
    }
}

fn series_label(r: &ResultRow) -> String {
    let mut s = format!("{} {} {}", r.code, r.decoder, r.matrix);
    if r.boosts > 0 {
        s.push_str(&format!(" B={}", r.boosts));
    }
    if r.ell > 0 {
        s.push_str(&format!(" l={}", r.ell));
    }
    s
}

fn axes_and_series(result: &ExperimentResult, metric: Metric) -> (Axes, Vec<Series>) {
    let value = |r: &ResultRow| match metric {
        Metric::Ber => r.ber,
        Metric::Fer => r.fer,
    };
    let plotted: Vec<&ResultRow> = result.rows.iter().filter(|r| value(r) > 0.0).collect();
    let x_min = plotted.iter().map(|r| r.snr_db).fold(f64::INFINITY, f64::min);
    let x_max = plotted.iter().map(|r| r.snr_db).fold(f64::NEG_INFINITY, f64::max);
    let lo = plotted.iter().map(|r| value(r)).fold(f64::INFINITY, f64::min);
    let hi = plotted.iter().map(|r| value(r)).fold(f64::NEG_INFINITY, f64::max);
    let axes = if plotted.is_empty() {
        Axes { x_min: 0.0, x_max: 1.0, decade_min: -6, decade_max: 0 }
    } else {
        Axes {
            x_min,
            x_max,
            decade_min: lo.log10().floor() as i32,
            decade_max: (hi.log10().ceil() as i32).max(lo.log10().floor() as i32 + 1),
        }
    };
    let mut series: Vec<Series> = Vec::new();
    for r in plotted {
        let label = series_label(r);
        let pt = (axes.px(r.snr_db), axes.py(value(r)));
        match series.iter_mut().find(|s| s.label == label) {
            Some(s) => s.points.push(pt),
            None => series.push(Series { label, points: vec![pt] }),
        }
    }
    for s in &mut series {
        s.points.sort_by(|a, b| a.0.total_cmp(&b.0));
    }
    (axes, series)
}

/// Pixel-space series, one per decoder configuration. Zero error rates are
/// left out (they have no place on a log axis).
pub fn curve_series(result: &ExperimentResult, metric: Metric) -> Vec<Series> {
    axes_and_series(result, metric).1
}

const COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

/// SVG plot of error rate against SNR with a logarithmic y axis.
pub fn render_svg(result: &ExperimentResult, metric: Metric) -> String {
    let (axes, series) = axes_and_series(result, metric);
    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{PLOT_W}\" height=\"{PLOT_H}\" font-family=\"sans-serif\" font-size=\"12\">\n"
    ));
    s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    let (x0, x1) = (MARGIN, PLOT_W - MARGIN);
    let (y0, y1) = (PLOT_H - MARGIN, MARGIN);
    s.push_str(&format!(
        "<rect x=\"{x0}\" y=\"{y1}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
        x1 - x0,
        y0 - y1
    ));
    for d in axes.decade_min..=axes.decade_max {
        let y = axes.py(10f64.powi(d));
        s.push_str(&format!(
            "<line x1=\"{x0}\" y1=\"{y:.2}\" x2=\"{x1}\" y2=\"{y:.2}\" stroke=\"#ddd\"/>\n<text x=\"{}\" y=\"{:.2}\" text-anchor=\"end\">1e{d}</text>\n",
            x0 - 6.0,
            y + 4.0
        ));
    }
    let mut xs: Vec<f64> = result.rows.iter().map(|r| r.snr_db).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    for x in xs {
        let px = axes.px(x);
        s.push_str(&format!(
            "<text x=\"{px:.2}\" y=\"{}\" text-anchor=\"middle\">{x}</text>\n",
            y0 + 16.0
        ));
    }
    let ylabel = match metric {
        Metric::Ber => "BER",
        Metric::Fer => "FER",
    };
    s.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">SNR (dB)</text>\n",
        PLOT_W / 2.0,
        PLOT_H - 16.0
    ));
    s.push_str(&format!(
        "<text x=\"16\" y=\"{}\" transform=\"rotate(-90 16 {})\" text-anchor=\"middle\">{ylabel}</text>\n",
        PLOT_H / 2.0,
        PLOT_H / 2.0
    ));
    for (i, ser) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let pts: Vec<String> = ser.points.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        s.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"2\" points=\"{}\"/>\n",
            pts.join(" ")
        ));
        for (x, y) in &ser.points {
            s.push_str(&format!("<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"{color}\"/>\n"));
        }
        let ly = MARGIN + 16.0 + 16.0 * i as f64;
        s.push_str(&format!(
            "<line x1=\"{}\" y1=\"{ly}\" x2=\"{}\" y2=\"{ly}\" stroke=\"{color}\" stroke-width=\"2\"/>\n<text x=\"{}\" y=\"{}\">{}</text>\n",
            x1 - 200.0,
            x1 - 180.0,
            x1 - 175.0,
            ly + 4.0,
            ser.label
        ));
    }
    s.push_str("</svg>\n");
    s
}

/// Writes the CSV and, when `svg` is given, the plot.
pub fn emit_curve(result: &ExperimentResult, csv_out: &Path, svg: Option<(&Path, Metric)>) -> Result<()> {
    result.write_csv(fs::File::create(csv_out)?)?;
    if let Some((path, metric)) = svg {
        fs::write(path, render_svg(result, metric))?;
    }
    Ok(())
}
