use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channel::RationalChannel;
use crate::error::{Error, Result};
use crate::mapping::Modulation;
use crate::modem::OfdmConfig;
use crate::stability::DEFAULT_MARGIN;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Config(format!("unknown output format '{other}'"))),
        }
    }
}

/// Everything an experiment run needs.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n: usize,
    pub g: usize,
    pub a: Vec<Complex64>,
    pub b: Vec<Complex64>,
    pub modulation: Modulation,
    /// `None` selects the per-experiment default.
    pub snr_db: Option<Vec<f64>>,
    pub trials: usize,
    pub symbols: usize,
    pub seed: u64,
    pub epsilon: Vec<f64>,
    pub allow_unstable: bool,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let real = |v: &[f64]| v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self {
            n: 64,
            g: 2,
            a: real(&[1.0, -0.8, 0.15]),
            b: real(&[1.0]),
            modulation: Modulation::Qpsk,
            snr_db: None,
            trials: 100,
            symbols: 10,
            seed: 1,
            epsilon: vec![0.0, 1e-4, 1e-3, 1e-2],
            allow_unstable: false,
            out: None,
            format: OutputFormat::Csv,
        }
    }
}

impl ExperimentConfig {
    /// Checks OFDM dimensions and the channel, returning the validated pieces.
    pub fn validate(&self) -> Result<(OfdmConfig, RationalChannel)> {
        let ofdm = OfdmConfig::new(self.n, self.g)?;
        let channel = RationalChannel::new(&self.a, &self.b)?;
        ofdm.check_channel(&channel)?;
        if !self.allow_unstable && !channel.is_stable(DEFAULT_MARGIN) {
            return Err(Error::Unstable(format!(
                "A(z) = {} has a root on or outside the unit circle (pass allow-unstable to override)",
                format_complex_list(channel.a())
            )));
        }
        if self.trials == 0 {
            return Err(Error::Config("trial count must be positive".into()));
        }
        if self.symbols == 0 {
            return Err(Error::Config("symbols per frame must be positive".into()));
        }
        if let Some(snr) = &self.snr_db {
            if snr.iter().any(|s| s.is_nan() || *s == f64::NEG_INFINITY) {
                return Err(Error::Config("SNR values must be finite or +inf".into()));
            }
        }
        if self.epsilon.iter().any(|e| !e.is_finite() || *e < 0.0) {
            return Err(Error::Config("epsilon values must be finite and non-negative".into()));
        }
        Ok((ofdm, channel))
    }
}

/// Parses one complex literal: `1`, `-0.8`, `0.3j`, `-j`, `0.5+0.2j`, `1e-3-2e-1j`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Config(format!("cannot parse complex number '{s}'"));
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix(['j', 'i']) else {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };

    // Split at the last sign that is not leading and not part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re_part, im_part) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("", body),
    };
    let re = if re_part.is_empty() {
        0.0
    } else {
        re_part.parse::<f64>().map_err(|_| bad())?
    };
    let im = match im_part {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re, im))
}

/// Parses a comma-separated list of complex literals.
pub fn parse_complex_list(s: &str) -> Result<Vec<Complex64>> {
    s.split(',').map(parse_complex).collect()
}

/// Parses a comma-separated list of reals; `inf` is accepted.
pub fn parse_real_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("cannot parse number '{v}'")))
        })
        .collect()
}

pub fn format_complex(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else if c.im < 0.0 {
        format!("{}{}j", c.re, c.im)
    } else {
        format!("{}+{}j", c.re, c.im)
    }
}

pub fn format_complex_list(v: &[Complex64]) -> String {
    v.iter().map(|&c| format_complex(c)).collect::<Vec<_>>().join(",")
}
