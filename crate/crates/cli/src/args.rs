use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use iirofdm::harness::config::{parse_complex_list, parse_real_list};
use iirofdm::harness::{ExperimentConfig, OutputFormat};
use iirofdm::{Error, Modulation};
use serde::Deserialize;

#[derive(Debug, Parser)]
#[command(name = "iirofdm", version, about = "OFDM over IIR channels: experiments and diagnostics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Noiseless modulate -> channel -> demodulate check
    Roundtrip(CommonArgs),
    /// Monte Carlo BER sweep over SNR
    Ber(CommonArgs),
    /// Transmitter coefficient-error sweep
    Sensitivity(CommonArgs),
    /// Subcarrier gains and stability of the channel
    Inspect(CommonArgs),
    /// Conventional CP-OFDM over the same channel
    Baseline(CommonArgs),
}

impl Command {
    pub fn args(&self) -> &CommonArgs {
        match self {
            Command::Roundtrip(a)
            | Command::Ber(a)
            | Command::Sensitivity(a)
            | Command::Inspect(a)
            | Command::Baseline(a) => a,
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// JSON config file; flags override its values
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Subcarrier count N
    #[arg(long)]
    pub n: Option<usize>,
    /// Guard / CP length G
    #[arg(long)]
    pub guard: Option<usize>,
    /// Denominator coefficients a(0..Ga), e.g. "1,-0.8,0.15" or "1,0.2-0.1j"
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Numerator coefficients b(0..Gb)
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Constellation: qpsk or qam16
    #[arg(long = "mod")]
    pub modulation: Option<String>,
    /// SNR points in dB, comma separated ("inf" for noiseless)
    #[arg(long, allow_hyphen_values = true)]
    pub snr_db: Option<String>,
    /// Frames per sweep point
    #[arg(long)]
    pub trials: Option<usize>,
    /// OFDM symbols per frame
    #[arg(long)]
    pub symbols: Option<usize>,
    /// Master seed
    #[arg(long)]
    pub seed: Option<u64>,
    /// Relative coefficient errors for the sensitivity sweep
    #[arg(long)]
    pub epsilon: Option<String>,
    /// Skip the stability check on A(z)
    #[arg(long)]
    pub allow_unstable: bool,
    /// Output file (stdout when absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format: csv or json
    #[arg(long)]
    pub format: Option<String>,
}

/// Either `"1,-0.8"` or `[1, -0.8]` in a config file.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum ListValue {
    Text(String),
    Numbers(Vec<f64>),
}

impl ListValue {
    fn text(&self) -> String {
        match self {
            ListValue::Text(s) => s.clone(),
            ListValue::Numbers(v) => v.iter().map(f64::to_string).collect::<Vec<_>>().join(","),
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct FileConfig {
    n: Option<usize>,
    guard: Option<usize>,
    a: Option<ListValue>,
    b: Option<ListValue>,
    #[serde(rename = "mod", alias = "modulation")]
    modulation: Option<String>,
    #[serde(alias = "snr_db")]
    snr_db: Option<ListValue>,
    trials: Option<usize>,
    symbols: Option<usize>,
    seed: Option<u64>,
    epsilon: Option<ListValue>,
    #[serde(alias = "allow_unstable")]
    allow_unstable: Option<bool>,
    out: Option<PathBuf>,
    format: Option<String>,
}

fn load_file(path: &Path) -> anyhow::Result<FileConfig> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config file {}", path.display()))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Config(format!("config file {}: {e}", path.display())).into())
}

/// Merges defaults, the optional config file, and flags (highest precedence).
pub fn build_config(args: &CommonArgs) -> anyhow::Result<ExperimentConfig> {
    let file = match &args.config {
        Some(path) => load_file(path)?,
        None => FileConfig::default(),
    };
    let mut cfg = ExperimentConfig::default();

    if let Some(n) = args.n.or(file.n) {
        cfg.n = n;
    }
    if let Some(g) = args.guard.or(file.guard) {
        cfg.g = g;
    }
    if let Some(a) = args.a.clone().or(file.a.as_ref().map(ListValue::text)) {
        cfg.a = parse_complex_list(&a)?;
    }
    if let Some(b) = args.b.clone().or(file.b.as_ref().map(ListValue::text)) {
        cfg.b = parse_complex_list(&b)?;
    }
    if let Some(m) = args.modulation.clone().or(file.modulation) {
        cfg.modulation = m.parse::<Modulation>()?;
    }
    if let Some(s) = args.snr_db.clone().or(file.snr_db.as_ref().map(ListValue::text)) {
        cfg.snr_db = Some(parse_real_list(&s)?);
    }
    if let Some(t) = args.trials.or(file.trials) {
        cfg.trials = t;
    }
    if let Some(s) = args.symbols.or(file.symbols) {
        cfg.symbols = s;
    }
    if let Some(s) = args.seed.or(file.seed) {
        cfg.seed = s;
    }
    if let Some(e) = args.epsilon.clone().or(file.epsilon.as_ref().map(ListValue::text)) {
        cfg.epsilon = parse_real_list(&e)?;
    }
    cfg.allow_unstable = args.allow_unstable || file.allow_unstable.unwrap_or(false);
    cfg.out = args.out.clone().or(file.out);
    if let Some(f) = args.format.clone().or(file.format) {
        cfg.format = f.parse::<OutputFormat>()?;
    }
    Ok(cfg)
}
