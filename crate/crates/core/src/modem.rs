//! OFDM transceiver for rational channels.
//!
//! The transmitter chooses each guard interval so that the signal seen after
//! the all-pole part `1/A(z)` of the channel is an ordinary suffix-CP OFDM
//! stream. With period `P = N + G` and symbol `i` starting at `t = iP`:
//!
//! ```text
//! target y:  [ y^i_0 .. y^i_{N-1} | y^i_0 .. y^i_{G-1} ]
//! transmit:  [ guard^i (G)        | c^i_G .. c^i_{N-1} | c^i_0 .. c^i_{G-1} ]
//! ```
//!
//! where `y^i = IDFT(X^i / A_k)`, `c^i = IDFT(X^i)` is the conventional OFDM
//! symbol, and `guard^i_n = sum_{k<=n} a(k) y^i_{n-k} + sum_{k>n} a(k) y^{i-1}_{n+G-k}`.
//! The transmit stream is then exactly `A(z)` applied to the target stream.
//!
//! The receiver reads `N` samples starting at `iP + G`, undoes the rotation by
//! `G`, and equalizes each subcarrier with `A_k / B_k`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channel::{RationalChannel, SubcarrierGains};
use crate::error::{Error, Result};
use crate::spectra::{forward_dft, inverse_dft, unit_circle_eval, ComplexBlock};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Subcarrier count `N` and guard/CP length `G`, with `N > G >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OfdmConfig {
    n: usize,
    g: usize,
}

impl OfdmConfig {
    pub fn new(n: usize, g: usize) -> Result<Self> {
        if g < 1 {
            return Err(Error::Config("guard length G must be at least 1".into()));
        }
        if n <= g {
            return Err(Error::Config(format!(
                "subcarrier count N={n} must exceed guard length G={g}"
            )));
        }
        Ok(Self { n, g })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn g(&self) -> usize {
        self.g
    }

    /// Samples per OFDM symbol, `N + G`.
    pub fn period(&self) -> usize {
        self.n + self.g
    }

    /// Checks that the guard covers the orders of both channel polynomials.
    pub fn check_channel(&self, ch: &RationalChannel) -> Result<()> {
        let need = ch.guard_requirement();
        if self.g < need {
            return Err(Error::Config(format!(
                "guard length G={} is smaller than the channel order {need}",
                self.g
            )));
        }
        Ok(())
    }
}

/// A modulated frame of `M` OFDM symbols.
#[derive(Debug, Clone, PartialEq)]
pub struct TxFrame {
    /// Information spectra `X^i`.
    pub spectra: Vec<ComplexBlock>,
    /// Target receive blocks `y^i = IDFT(X^i / A_k)`.
    pub y_blocks: Vec<ComplexBlock>,
    /// Synthesized guard intervals, `G` samples each.
    pub guards: Vec<ComplexBlock>,
    /// Serialized transmit stream of length `M (N + G)`.
    pub stream: Vec<Complex64>,
}

/// Demodulated spectra and, when a reference was supplied, their EVM.
#[derive(Debug, Clone, PartialEq)]
pub struct RxResult {
    pub spectra_hat: Vec<ComplexBlock>,
    pub evm_rms: Option<f64>,
}

/// Guard samples between the previous and current target blocks.
///
/// `y_prev = None` stands for the all-zero block preceding the first symbol.
pub fn compute_guard(
    y_prev: Option<&[Complex64]>,
    y_curr: &[Complex64],
    a: &[Complex64],
    g: usize,
) -> Result<ComplexBlock> {
    let n = y_curr.len();
    if g >= n {
        return Err(Error::Config(format!(
            "guard length G={g} must be smaller than the block length N={n}"
        )));
    }
    if a.len() > g + 1 {
        return Err(Error::Config(format!(
            "denominator order {} exceeds guard length G={g}",
            a.len() - 1
        )));
    }
    if let Some(prev) = y_prev {
        if prev.len() != n {
            return Err(Error::Size(format!(
                "previous block has length {}, expected {n}",
                prev.len()
            )));
        }
    }

    let coeff = |k: usize| a.get(k).copied().unwrap_or(ZERO);
    Ok((0..g)
        .map(|n_idx| {
            let mut acc = ZERO;
            for k in 0..=n_idx {
                acc += coeff(k) * y_curr[n_idx - k];
            }
            if let Some(prev) = y_prev {
                for k in (n_idx + 1)..=g {
                    acc += coeff(k) * prev[n_idx + g - k];
                }
            }
            acc
        })
        .collect())
}

/// Concatenates `[y^i, y^i_0..y^i_{g-1}]` for every block.
pub fn build_cp_stream(y_blocks: &[ComplexBlock], g: usize) -> Result<Vec<Complex64>> {
    let Some(first) = y_blocks.first() else {
        return Ok(Vec::new());
    };
    let n = first.len();
    if g >= n {
        return Err(Error::Config(format!(
            "CP length {g} must be smaller than the block length {n}"
        )));
    }
    let mut out = Vec::with_capacity(y_blocks.len() * (n + g));
    for block in y_blocks {
        if block.len() != n {
            return Err(Error::Size("blocks must share one length".into()));
        }
        out.extend_from_slice(block);
        out.extend_from_slice(&block[..g]);
    }
    Ok(out)
}

fn check_spectra(cfg: &OfdmConfig, spectra: &[ComplexBlock]) -> Result<()> {
    if let Some(bad) = spectra.iter().find(|x| x.len() != cfg.n) {
        return Err(Error::Config(format!(
            "information spectrum has {} subcarriers, expected N={}",
            bad.len(),
            cfg.n
        )));
    }
    Ok(())
}

fn check_gains(cfg: &OfdmConfig, gains: &SubcarrierGains) -> Result<()> {
    if gains.n != cfg.n || gains.a_k.len() != cfg.n || gains.b_k.len() != cfg.n {
        return Err(Error::Config(format!(
            "subcarrier gains computed for N={}, configuration has N={}",
            gains.n, cfg.n
        )));
    }
    Ok(())
}

/// Builds the transmit frame for spectra `X^0..X^{M-1}`.
///
/// Only `A(z)` enters the transmitter: `gains.a_k` for the target blocks and
/// `a` for the guards. `B(z)` is never read.
pub fn modulate_frame(
    cfg: &OfdmConfig,
    gains: &SubcarrierGains,
    a: &[Complex64],
    spectra: &[ComplexBlock],
) -> Result<TxFrame> {
    check_gains(cfg, gains)?;
    check_spectra(cfg, spectra)?;
    if a.is_empty() || a.len() > cfg.g + 1 {
        return Err(Error::Config(format!(
            "denominator with {} coefficients does not fit guard length G={}",
            a.len(),
            cfg.g
        )));
    }

    let (n, g) = (cfg.n, cfg.g);
    let mut y_blocks = Vec::with_capacity(spectra.len());
    let mut guards = Vec::with_capacity(spectra.len());
    let mut stream = Vec::with_capacity(spectra.len() * cfg.period());

    for x in spectra {
        let y_spec: ComplexBlock = x.iter().zip(&gains.a_k).map(|(x, a)| x / a).collect();
        let y = inverse_dft(&y_spec)?;
        let guard = compute_guard(y_blocks.last().map(Vec::as_slice), &y, a, g)?;
        let payload = inverse_dft(x)?;

        stream.extend_from_slice(&guard);
        stream.extend_from_slice(&payload[g..n]);
        stream.extend_from_slice(&payload[..g]);

        guards.push(guard);
        y_blocks.push(y);
    }

    Ok(TxFrame {
        spectra: spectra.to_vec(),
        y_blocks,
        guards,
        stream,
    })
}

/// Extracts symbol `i`'s receive block: `N` samples from `iP + G`, un-rotated by `G`.
pub fn receive_block(cfg: &OfdmConfig, rx: &[Complex64], i: usize) -> Result<ComplexBlock> {
    let start = i * cfg.period() + cfg.g;
    let end = start + cfg.n;
    if rx.len() < end {
        return Err(Error::Size(format!(
            "receive stream of {} samples is too short for symbol {i} (needs {end})",
            rx.len()
        )));
    }
    let window = &rx[start..end];
    let (n, g) = (cfg.n, cfg.g);
    Ok((0..n).map(|idx| window[(idx + n - g) % n]).collect())
}

/// Recovers `M` spectra with the zero-forcing equalizer `A_k / B_k`.
pub fn demodulate_frame(
    cfg: &OfdmConfig,
    gains: &SubcarrierGains,
    rx: &[Complex64],
    m: usize,
    reference: Option<&[ComplexBlock]>,
) -> Result<RxResult> {
    check_gains(cfg, gains)?;
    check_stream_len(cfg, rx, m)?;
    let eq = gains.equalizer();
    let spectra_hat = (0..m)
        .map(|i| {
            let u = forward_dft(&receive_block(cfg, rx, i)?)?;
            Ok(u.iter().zip(&eq).map(|(u, e)| u * e).collect())
        })
        .collect::<Result<Vec<ComplexBlock>>>()?;
    finish(spectra_hat, reference)
}

fn check_stream_len(cfg: &OfdmConfig, rx: &[Complex64], m: usize) -> Result<()> {
    if rx.len() < m * cfg.period() {
        return Err(Error::Size(format!(
            "receive stream has {} samples, {m} symbols need {}",
            rx.len(),
            m * cfg.period()
        )));
    }
    Ok(())
}

fn finish(spectra_hat: Vec<ComplexBlock>, reference: Option<&[ComplexBlock]>) -> Result<RxResult> {
    let evm_rms = match reference {
        Some(reference) => Some(evm_rms(&spectra_hat, reference)?),
        None => None,
    };
    Ok(RxResult { spectra_hat, evm_rms })
}

/// Conventional prefix-CP OFDM: `[last G of IDFT(X^i)] ++ IDFT(X^i)` per symbol.
pub fn conventional_modulate(cfg: &OfdmConfig, spectra: &[ComplexBlock]) -> Result<Vec<Complex64>> {
    check_spectra(cfg, spectra)?;
    let mut out = Vec::with_capacity(spectra.len() * cfg.period());
    for x in spectra {
        let s = inverse_dft(x)?;
        out.extend_from_slice(&s[cfg.n - cfg.g..]);
        out.extend_from_slice(&s);
    }
    Ok(out)
}

/// Conventional CP-OFDM receiver equalizing with the FIR gains of `taps`.
pub fn conventional_demodulate(
    cfg: &OfdmConfig,
    taps: &[Complex64],
    rx: &[Complex64],
    m: usize,
    reference: Option<&[ComplexBlock]>,
) -> Result<RxResult> {
    if taps.is_empty() || taps.len() > cfg.g + 1 {
        return Err(Error::Config(format!(
            "{} equalizer taps do not fit a CP of length {}",
            taps.len(),
            cfg.g
        )));
    }
    check_stream_len(cfg, rx, m)?;
    let h_k = unit_circle_eval(taps, cfg.n)?;
    let spectra_hat = (0..m)
        .map(|i| {
            let start = i * cfg.period() + cfg.g;
            let u = forward_dft(&rx[start..start + cfg.n])?;
            Ok(u.iter().zip(&h_k).map(|(u, h)| u / h).collect())
        })
        .collect::<Result<Vec<ComplexBlock>>>()?;
    finish(spectra_hat, reference)
}

/// Squared error and reference energies summed over all symbols and subcarriers.
pub fn error_energy(hat: &[ComplexBlock], reference: &[ComplexBlock]) -> Result<(f64, f64)> {
    if hat.len() != reference.len() || hat.iter().zip(reference).any(|(a, b)| a.len() != b.len()) {
        return Err(Error::Size("reference spectra do not match recovered spectra".into()));
    }
    let mut err = 0.0;
    let mut energy = 0.0;
    for (h, r) in hat.iter().zip(reference) {
        for (x, y) in h.iter().zip(r) {
            err += (x - y).norm_sqr();
            energy += y.norm_sqr();
        }
    }
    Ok((err, energy))
}

/// `RMS(X_hat - X) / RMS(X)`.
pub fn evm_rms(hat: &[ComplexBlock], reference: &[ComplexBlock]) -> Result<f64> {
    let (err, energy) = error_energy(hat, reference)?;
    if energy == 0.0 {
        return Ok(if err == 0.0 { 0.0 } else { f64::INFINITY });
    }
    Ok((err / energy).sqrt())
}

/// Largest `|X_hat - X|` over all symbols and subcarriers.
pub fn max_abs_error(hat: &[ComplexBlock], reference: &[ComplexBlock]) -> f64 {
    hat.iter()
        .zip(reference)
        .flat_map(|(h, r)| h.iter().zip(r).map(|(x, y)| (x - y).norm()))
        .fold(0.0, f64::max)
}
