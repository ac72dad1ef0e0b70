use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cyclicdec::codes::{CodeId, CyclicCode};
use cyclicdec::harness::{
    build_decoder, emit_curve, render_svg, run_experiment, save_weights, DecoderKind,
    ExperimentConfig, ExperimentResult, MatrixKind, Metric,
};
use cyclicdec::listdec::{list_decode, AffinePermutationSet, FailedBranch};
use cyclicdec::train::{train_with_progress, write_loss_trace, TrainConfig};
use cyclicdec::{hard_decision, Error, Result, TannerGraph, Variant};

#[derive(Parser)]
#[command(name = "cyclicdec", version, about = "Neural BP decoders for cyclic codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a code's polynomials and parity matrices.
    Construct(ConstructArgs),
    /// Train FF or cyclic decoder weights on the all-zero codeword.
    Train(TrainArgs),
    /// Decode LLR vectors read one per line (whitespace separated).
    Decode(DecodeArgs),
    /// Measure BER/FER over an SNR grid.
    Bench(BenchArgs),
    /// Measure FER for several list sizes with shared noise.
    ListBench(ListBenchArgs),
    /// Train and measure the four matrix/decoder ablation variants.
    Ablation(AblationArgs),
    /// Render a results CSV as an SVG plot.
    Plot(PlotArgs),
}

#[derive(Args)]
struct ConstructArgs {
    /// Code id, e.g. BCH(63,45) or PRM(63,22).
    #[arg(long)]
    code: String,
    /// Also print the generator and parity matrices.
    #[arg(long)]
    matrices: bool,
}

#[derive(Args)]
struct TrainArgs {
    #[arg(long)]
    code: String,
    /// ff or cyclic.
    #[arg(long, default_value = "cyclic")]
    decoder: String,
    /// std, cyclic or random-extended.
    #[arg(long, default_value = "cyclic")]
    matrix: String,
    #[arg(long, default_value_t = 0)]
    matrix_seed: u64,
    #[arg(long, default_value_t = 5)]
    t: usize,
    #[arg(long, default_value_t = 2000)]
    steps: usize,
    #[arg(long, default_value_t = 1e-3)]
    lr: f64,
    #[arg(long, default_value_t = 20)]
    samples_per_snr: usize,
    /// Comma-separated training SNRs in dB.
    #[arg(long, default_value = "1,2,3,4,5,6,7,8")]
    snr: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output weight file.
    #[arg(long)]
    out: PathBuf,
    /// Optional loss trace CSV.
    #[arg(long)]
    loss_csv: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct ExperimentArgs {
    /// TOML experiment config; flags below override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    code: Option<String>,
    #[arg(long)]
    decoder: Option<String>,
    #[arg(long)]
    matrix: Option<String>,
    #[arg(long)]
    matrix_seed: Option<u64>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    boosts: Option<usize>,
    /// List size ℓ (0 = plain decoding).
    #[arg(long)]
    list_size: Option<usize>,
    /// Leave failed list branches out of the ML comparison.
    #[arg(long)]
    drop_failed: bool,
    /// Comma-separated SNRs in dB.
    #[arg(long)]
    snr: Option<String>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    weights: Option<PathBuf>,
    /// Transmit only the all-zero codeword.
    #[arg(long)]
    all_zero: bool,
    /// Write 0 in the seconds column (byte-reproducible output).
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct DecodeArgs {
    #[command(flatten)]
    exp: ExperimentArgs,
    /// Input file; stdin when omitted.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    exp: ExperimentArgs,
    /// CSV output; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Optional SVG plot.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct ListBenchArgs {
    #[command(flatten)]
    exp: ExperimentArgs,
    /// Comma-separated list sizes.
    #[arg(long, default_value = "1,2,4,8")]
    list_sizes: String,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct AblationArgs {
    #[arg(long, default_value = "BCH(63,36)")]
    code: String,
    #[arg(long, default_value_t = 5)]
    t: usize,
    #[arg(long, default_value_t = 2000)]
    steps: usize,
    #[arg(long, default_value_t = 1e-3)]
    lr: f64,
    #[arg(long, default_value = "4,5,6")]
    snr: String,
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory for weight files.
    #[arg(long, default_value = ".")]
    weights_dir: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    /// Results CSV.
    #[arg(long)]
    csv: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// ber or fer.
    #[arg(long, default_value = "ber")]
    metric: String,
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad {what} value {p:?}")))
        })
        .collect()
}

fn parse_code(s: &str) -> Result<CodeId> {
    s.parse()
}

fn experiment_config(a: &ExperimentArgs) -> Result<ExperimentConfig> {
    let mut cfg = match &a.config {
        Some(p) => {
            let mut cfg = ExperimentConfig::from_toml_str(&fs::read_to_string(p)?)?;
            // Weight paths in a config file are relative to that file.
            if let (Some(w), Some(dir)) = (&cfg.weights, p.parent()) {
                if w.is_relative() {
                    cfg.weights = Some(dir.join(w));
                }
            }
            cfg
        }
        None => ExperimentConfig::default(),
    };
    if let Some(c) = &a.code {
        cfg.code = parse_code(c)?;
    }
    if let Some(d) = &a.decoder {
        cfg.decoder = d.parse()?;
        if cfg.decoder == DecoderKind::Cyclic && a.matrix.is_none() {
            cfg.matrix = MatrixKind::Cyclic;
        }
    }
    if let Some(m) = &a.matrix {
        cfg.matrix = m.parse()?;
    }
    if let Some(v) = a.matrix_seed {
        cfg.matrix_seed = v;
    }
    if let Some(v) = a.t {
        cfg.t = v;
    }
    if let Some(v) = a.boosts {
        cfg.boosts = v;
    }
    if let Some(v) = a.list_size {
        cfg.list_size = v;
    }
    if a.drop_failed {
        cfg.drop_failed_branches = true;
    }
    if let Some(s) = &a.snr {
        cfg.snr_db = parse_list(s, "SNR")?;
    }
    if let Some(v) = a.samples {
        cfg.samples = v;
    }
    if let Some(v) = a.seed {
        cfg.seed = v;
    }
    if let Some(p) = &a.weights {
        cfg.weights = Some(p.clone());
    }
    if a.all_zero {
        cfg.all_zero = true;
    }
    if a.no_timing {
        cfg.record_time = false;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn write_result(result: &ExperimentResult, out: Option<&Path>, svg: Option<&Path>, metric: Metric) -> Result<()> {
    match out {
        Some(p) => emit_curve(result, p, svg.map(|s| (s, metric)))?,
        None => {
            result.write_csv(io::stdout().lock())?;
            if let Some(s) = svg {
                fs::write(s, render_svg(result, metric))?;
            }
        }
    }
    Ok(())
}

fn construct(a: &ConstructArgs) -> Result<()> {
    let code = CyclicCode::from_id(parse_code(&a.code)?)?;
    let u = TannerGraph::new(&code.parity_cyclic)?.column_weight().unwrap_or(0);
    let mut out = io::stdout().lock();
    writeln!(out, "code {}", code.id())?;
    writeln!(out, "kind {:?}", code.kind)?;
    writeln!(out, "n {} k {} rate {:.4}", code.n, code.k, code.rate())?;
    writeln!(out, "primitive_poly {}", code.field.primitive_poly())?;
    writeln!(out, "g {}", code.g)?;
    writeln!(out, "h {}", code.h)?;
    writeln!(out, "u {u}")?;
    writeln!(out, "cyclic_weights(t=5) {}", u * u * 5 + u)?;
    if a.matrices {
        writeln!(out, "\ngenerator\n{}", code.generator)?;
        writeln!(out, "parity_std\n{}", code.parity_std)?;
        writeln!(out, "parity_cyclic\n{}", code.parity_cyclic)?;
    }
    Ok(())
}

fn train_cmd(a: &TrainArgs) -> Result<()> {
    let id = parse_code(&a.code)?;
    let code = CyclicCode::from_id(id)?;
    let kind: DecoderKind = a.decoder.parse()?;
    let variant = kind
        .variant()
        .ok_or_else(|| Error::Config("vanilla BP has nothing to train".into()))?;
    let matrix: MatrixKind = a.matrix.parse()?;
    if variant == Variant::Cyclic && matrix != MatrixKind::Cyclic {
        return Err(Error::Config("the cyclic decoder needs --matrix cyclic".into()));
    }
    let graph = TannerGraph::new(&matrix.build(&code, a.matrix_seed))?;
    let cfg = TrainConfig {
        samples_per_snr: a.samples_per_snr,
        snr_grid_db: parse_list(&a.snr, "SNR")?,
        t: a.t,
        learning_rate: a.lr,
        steps: a.steps,
        seed: a.seed,
    };
    let every = (a.steps / 20).max(1);
    let outcome = train_with_progress(&graph, code.rate(), variant, &cfg, |step, loss| {
        if step % every == 0 {
            eprintln!("step {step:>6}  loss {loss:.6}");
        }
    })?;
    save_weights(&a.out, id, matrix, &outcome.bank)?;
    if let Some(p) = &a.loss_csv {
        write_loss_trace(&outcome.loss_trace, fs::File::create(p)?)?;
    }
    eprintln!(
        "wrote {} ({} weights, final loss {:.6})",
        a.out.display(),
        outcome.bank.param_count(),
        outcome.loss_trace.last().copied().unwrap_or(f64::NAN)
    );
    Ok(())
}

fn decode_cmd(a: &DecodeArgs) -> Result<()> {
    let cfg = experiment_config(&a.exp)?;
    let code = CyclicCode::from_id(cfg.code)?;
    let decoder = build_decoder(&cfg, &code)?;
    let perms = AffinePermutationSet::new(&code.field);
    let failed = if cfg.drop_failed_branches { FailedBranch::Drop } else { FailedBranch::ZeroFill };
    let reader: Box<dyn BufRead> = match &a.input {
        Some(p) => Box::new(io::BufReader::new(fs::File::open(p)?)),
        None => Box::new(io::stdin().lock()),
    };
    let mut out = io::stdout().lock();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let llr: Vec<f64> = line
            .split_whitespace()
            .map(|v| v.parse().map_err(|_| Error::Config(format!("line {}: bad LLR {v:?}", lineno + 1))))
            .collect::<Result<_>>()?;
        if llr.len() != code.n {
            return Err(Error::Shape(format!(
                "line {}: expected {} LLRs, got {}",
                lineno + 1,
                code.n,
                llr.len()
            )));
        }
        let bits = if cfg.list_size > 0 {
            list_decode(&code, &perms, &llr, cfg.list_size, failed, |l| decoder.decode(l))?
        } else {
            hard_decision(&decoder.decode(&llr))
        };
        let s: String = bits.iter().map(|b| char::from(b'0' + b)).collect();
        writeln!(out, "{s}")?;
    }
    Ok(())
}

fn bench(a: &BenchArgs) -> Result<()> {
    let cfg = experiment_config(&a.exp)?;
    let result = run_experiment(&cfg)?;
    let metric = if cfg.list_size > 0 { Metric::Fer } else { Metric::Ber };
    write_result(&result, a.out.as_deref(), a.svg.as_deref(), metric)
}

fn list_bench(a: &ListBenchArgs) -> Result<()> {
    let base = experiment_config(&a.exp)?;
    let mut all = ExperimentResult::default();
    for ell in parse_list::<usize>(&a.list_sizes, "list size")? {
        let cfg = ExperimentConfig { list_size: ell, ..base.clone() };
        cfg.validate()?;
        all.extend(run_experiment(&cfg)?);
    }
    write_result(&all, a.out.as_deref(), a.svg.as_deref(), Metric::Fer)
}

fn ablation(a: &AblationArgs) -> Result<()> {
    let id = parse_code(&a.code)?;
    let code = CyclicCode::from_id(id)?;
    fs::create_dir_all(&a.weights_dir)?;
    let snr = parse_list(&a.snr, "SNR")?;
    let mut all = ExperimentResult::default();
    let runs = [
        (DecoderKind::Ff, MatrixKind::Std),
        (DecoderKind::Ff, MatrixKind::RandomExtended),
        (DecoderKind::Ff, MatrixKind::Cyclic),
        (DecoderKind::Cyclic, MatrixKind::Cyclic),
    ];
    for (kind, matrix) in runs {
        let variant = kind.variant().expect("trained decoders only");
        let graph = TannerGraph::new(&matrix.build(&code, a.seed))?;
        let tcfg = TrainConfig {
            t: a.t,
            steps: a.steps,
            learning_rate: a.lr,
            seed: a.seed,
            ..TrainConfig::default()
        };
        eprintln!("training {kind} on {matrix} matrix");
        let outcome = train_with_progress(&graph, code.rate(), variant, &tcfg, |_, _| {})?;
        let path = a.weights_dir.join(format!("{}-{kind}-{matrix}.json", a.code.replace(['(', ')', ','], "_")));
        save_weights(&path, id, matrix, &outcome.bank)?;
        let cfg = ExperimentConfig {
            code: id,
            decoder: kind,
            matrix,
            matrix_seed: a.seed,
            t: a.t,
            snr_db: snr.clone(),
            samples: a.samples,
            seed: a.seed,
            weights: Some(path),
            ..ExperimentConfig::default()
        };
        all.extend(run_experiment(&cfg)?);
    }
    write_result(&all, a.out.as_deref(), None, Metric::Ber)
}

fn plot(a: &PlotArgs) -> Result<()> {
    let result = ExperimentResult::read_csv(fs::File::open(&a.csv)?)?;
    fs::write(&a.out, render_svg(&result, a.metric.parse()?))?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Construct(a) => construct(&a),
        Command::Train(a) => train_cmd(&a),
        Command::Decode(a) => decode_cmd(&a),
        Command::Bench(a) => bench(&a),
        Command::ListBench(a) => list_bench(&a),
        Command::Ablation(a) => ablation(&a),
        Command::Plot(a) => plot(&a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
