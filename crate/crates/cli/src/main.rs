mod args;

use std::io::Write;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use iirofdm::harness::{
    inspect, run_baseline, run_ber_sweep, run_roundtrip, run_sensitivity, ExperimentConfig,
    OutputFormat, SimReport, ROUNDTRIP_TOLERANCE,
};
use iirofdm::{Error, RationalChannel};

use args::{build_config, Cli, Command};

const EXIT_IO: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_CHANNEL: u8 = 3;
const EXIT_THRESHOLD: u8 = 4;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(e) if e.is_channel_error() => EXIT_CHANNEL,
        Some(_) => EXIT_CONFIG,
        None => EXIT_IO,
    }
}

fn emit(cfg: &ExperimentConfig, text: &str) -> anyhow::Result<()> {
    match &cfg.out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn emit_report(cfg: &ExperimentConfig, report: &SimReport) -> anyhow::Result<()> {
    let text = match cfg.format {
        OutputFormat::Csv => report.to_csv()?,
        OutputFormat::Json => report.to_json(),
    };
    emit(cfg, &text)
}

fn run(command: &Command) -> anyhow::Result<u8> {
    let cfg = build_config(command.args())?;
    match command {
        Command::Roundtrip(_) => {
            let report = run_roundtrip(&cfg)?;
            emit_report(&cfg, &report)?;
            let err = report.max_abs_error.unwrap_or(f64::INFINITY);
            eprintln!("max_abs_error={err:e} (tolerance {ROUNDTRIP_TOLERANCE:e})");
            if err > ROUNDTRIP_TOLERANCE {
                eprintln!("roundtrip FAILED");
                return Ok(EXIT_THRESHOLD);
            }
        }
        Command::Ber(_) => emit_report(&cfg, &run_ber_sweep(&cfg)?)?,
        Command::Sensitivity(_) => {
            let report = run_sensitivity(&cfg)?;
            for r in &report.records {
                if let Some(e) = &r.error {
                    eprintln!("epsilon={}: {e}", r.param);
                }
            }
            emit_report(&cfg, &report)?;
        }
        Command::Baseline(_) => {
            let report = run_baseline(&cfg)?;
            emit_report(&cfg, &report)?;
            if let Some(err) = report.max_abs_error {
                eprintln!("max_abs_error={err:e}");
            }
        }
        Command::Inspect(_) => {
            let channel = RationalChannel::new(&cfg.a, &cfg.b)?;
            let report = inspect(&channel, cfg.n)?;
            let text = match cfg.format {
                OutputFormat::Csv => report.to_text(),
                OutputFormat::Json => report.to_json(),
            };
            emit(&cfg, &text)?;
        }
    }
    Ok(0)
}
