//! Monte Carlo experiment runners.

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use super::analytic;
use super::config::ExperimentConfig;
use super::report::{SimRecord, SimReport, SweepParam};
use super::seeds::{trial_rng, PERTURBATION_STREAM};
use crate::channel::{
    add_noise_with_variance, mean_power, noise_variance, subcarrier_gains, RationalChannel,
    SubcarrierGains, DEFAULT_GAIN_TOL,
};
use crate::error::{Error, Result};
use crate::mapping::{count_bit_errors, demap_hard, map_bits, Constellation, Modulation};
use crate::modem::{
    conventional_demodulate, conventional_modulate, demodulate_frame, error_energy,
    max_abs_error, modulate_frame, OfdmConfig,
};
use crate::spectra::ComplexBlock;
use crate::stability::DEFAULT_MARGIN;

/// Noiseless runs fail when any recovered symbol is further than this from the truth.
pub const ROUNDTRIP_TOLERANCE: f64 = 1e-9;

/// How the transmitter builds the frame.
#[derive(Debug, Clone)]
enum Transmitter {
    /// Guard synthesis with the (possibly mismatched) denominator `a`.
    Proposed { a: Vec<Complex64>, gains: SubcarrierGains },
    /// Prefix-CP OFDM equalized by the FIR gains of `taps`.
    Conventional { taps: Vec<Complex64> },
}

struct Link<'a> {
    ofdm: OfdmConfig,
    channel: &'a RationalChannel,
    rx_gains: SubcarrierGains,
    tx: Transmitter,
    constellation: Constellation,
    symbols: usize,
    seed: u64,
}

#[derive(Debug, Clone, Default)]
struct TrialOutcome {
    bits: u64,
    bit_errors: u64,
    err_energy: f64,
    ref_energy: f64,
    max_abs_error: f64,
    tx_power: f64,
    rx_power: f64,
    analytic_ber: Option<f64>,
}

impl Link<'_> {
    fn trial(&self, index: u64, snr_db: f64) -> Result<TrialOutcome> {
        let mut rng = trial_rng(self.seed, index);
        let n = self.ofdm.n();
        let m = self.symbols;
        let bits: Vec<u8> = (0..m * n * self.constellation.bits_per_symbol())
            .map(|_| rng.random_range(0..2u8))
            .collect();
        let points = map_bits(&self.constellation, &bits)?;
        let spectra: Vec<ComplexBlock> = points.chunks(n).map(<[_]>::to_vec).collect();

        let stream = match &self.tx {
            Transmitter::Proposed { a, gains } => modulate_frame(&self.ofdm, gains, a, &spectra)?.stream,
            Transmitter::Conventional { .. } => conventional_modulate(&self.ofdm, &spectra)?,
        };
        let clean = self.channel.apply(&stream);
        let variance = noise_variance(&clean, snr_db)?;
        let rx = add_noise_with_variance(&clean, variance, &mut rng);

        let result = match &self.tx {
            Transmitter::Proposed { .. } => demodulate_frame(&self.ofdm, &self.rx_gains, &rx, m, None)?,
            Transmitter::Conventional { taps } => conventional_demodulate(&self.ofdm, taps, &rx, m, None)?,
        };
        let hat: Vec<Complex64> = result.spectra_hat.iter().flatten().copied().collect();
        let bits_hat = demap_hard(&self.constellation, &hat);
        let (err_energy, ref_energy) = error_energy(&result.spectra_hat, &spectra)?;

        let analytic_ber = match (&self.tx, self.constellation.kind) {
            (Transmitter::Proposed { .. }, Modulation::Qpsk) => {
                Some(analytic::qpsk_ber(&self.rx_gains.equalizer(), variance))
            }
            _ => None,
        };

        Ok(TrialOutcome {
            bits: bits.len() as u64,
            bit_errors: count_bit_errors(&bits, &bits_hat)?,
            err_energy,
            ref_energy,
            max_abs_error: max_abs_error(&result.spectra_hat, &spectra),
            tx_power: mean_power(&stream),
            rx_power: mean_power(&clean),
            analytic_ber,
        })
    }

    /// Runs every trial (in parallel) and reduces in trial order.
    fn point(&self, param: f64, trials: usize, snr_db: f64) -> Result<(SimRecord, f64)> {
        let outcomes = (0..trials as u64)
            .into_par_iter()
            .map(|i| self.trial(i, snr_db))
            .collect::<Result<Vec<_>>>()?;

        let mut total = TrialOutcome::default();
        let mut analytic_sum = Some(0.0);
        for o in &outcomes {
            total.bits += o.bits;
            total.bit_errors += o.bit_errors;
            total.err_energy += o.err_energy;
            total.ref_energy += o.ref_energy;
            total.max_abs_error = total.max_abs_error.max(o.max_abs_error);
            total.tx_power += o.tx_power;
            total.rx_power += o.rx_power;
            analytic_sum = analytic_sum.zip(o.analytic_ber).map(|(s, b)| s + b);
        }
        let count = outcomes.len() as f64;
        let record = SimRecord {
            param,
            trials: trials as u64,
            bits: total.bits,
            bit_errors: total.bit_errors,
            ber: Some(total.bit_errors as f64 / total.bits as f64),
            evm_rms: Some((total.err_energy / total.ref_energy).sqrt()),
            analytic_ber: analytic_sum.map(|s| s / count),
            avg_tx_power: Some(total.tx_power / count),
            avg_rx_power: Some(total.rx_power / count),
            error: None,
        };
        Ok((record, total.max_abs_error))
    }
}

fn proposed_link<'a>(cfg: &ExperimentConfig, ofdm: OfdmConfig, channel: &'a RationalChannel) -> Result<Link<'a>> {
    let rx_gains = subcarrier_gains(channel, ofdm.n(), DEFAULT_GAIN_TOL)?;
    Ok(Link {
        ofdm,
        channel,
        tx: Transmitter::Proposed {
            a: channel.a().to_vec(),
            gains: rx_gains.clone(),
        },
        rx_gains,
        constellation: Constellation::new(cfg.modulation),
        symbols: cfg.symbols,
        seed: cfg.seed,
    })
}

/// Noiseless end-to-end check of the proposed scheme.
///
/// Returns a report whose single row is the noiseless point; the caller
/// compares `max_abs_error` against [`ROUNDTRIP_TOLERANCE`].
pub fn run_roundtrip(cfg: &ExperimentConfig) -> Result<SimReport> {
    let (ofdm, channel) = cfg.validate()?;
    let link = proposed_link(cfg, ofdm, &channel)?;
    let (record, max_err) = link.point(f64::INFINITY, cfg.trials, f64::INFINITY)?;
    Ok(SimReport {
        sweep: SweepParam::SnrDb,
        records: vec![record],
        max_abs_error: Some(max_err),
    })
}

/// Default SNR grid for BER sweeps, in dB.
pub const DEFAULT_SNR_DB: [f64; 3] = [0.0, 4.0, 8.0];

/// BER / EVM versus SNR for the proposed scheme, with the QPSK analytic reference.
pub fn run_ber_sweep(cfg: &ExperimentConfig) -> Result<SimReport> {
    let (ofdm, channel) = cfg.validate()?;
    let link = proposed_link(cfg, ofdm, &channel)?;
    let snrs = cfg.snr_db.clone().unwrap_or_else(|| DEFAULT_SNR_DB.to_vec());
    sweep(&link, cfg.trials, &snrs)
}

fn sweep(link: &Link<'_>, trials: usize, snrs: &[f64]) -> Result<SimReport> {
    let mut records = Vec::with_capacity(snrs.len());
    let mut max_err: f64 = 0.0;
    for &snr in snrs {
        let (record, err) = link.point(snr, trials, snr)?;
        if snr == f64::INFINITY {
            max_err = max_err.max(err);
        }
        records.push(record);
    }
    Ok(SimReport {
        sweep: SweepParam::SnrDb,
        max_abs_error: snrs.contains(&f64::INFINITY).then_some(max_err),
        records,
    })
}

/// Conventional prefix-CP OFDM over the same channel, equalized with the
/// first `G + 1` taps of the channel impulse response. Noiseless unless an
/// SNR list is given.
pub fn run_baseline(cfg: &ExperimentConfig) -> Result<SimReport> {
    let (ofdm, channel) = cfg.validate()?;
    let taps = channel.impulse_response(ofdm.g() + 1);
    let link = Link {
        ofdm,
        channel: &channel,
        rx_gains: subcarrier_gains(&channel, ofdm.n(), DEFAULT_GAIN_TOL)?,
        tx: Transmitter::Conventional { taps },
        constellation: Constellation::new(cfg.modulation),
        symbols: cfg.symbols,
        seed: cfg.seed,
    };
    let snrs = cfg.snr_db.clone().unwrap_or_else(|| vec![f64::INFINITY]);
    sweep(&link, cfg.trials, &snrs)
}

/// Transmitter-side denominator `a'(k) = a(k) (1 + eps d_k)` with fixed unit phasors `d_k`.
pub fn perturbed_denominator(a: &[Complex64], epsilon: f64, seed: u64) -> Vec<Complex64> {
    let mut rng = trial_rng(seed, PERTURBATION_STREAM);
    a.iter()
        .map(|&ak| {
            let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            ak * (Complex64::new(1.0, 0.0) + epsilon * Complex64::from_polar(1.0, theta))
        })
        .collect()
}

/// Coefficient-error sensitivity: the transmitter designs guards with a
/// perturbed `A(z)`, the channel and receiver use the true one.
///
/// Noiseless unless an SNR list is given, in which case its first value is used.
/// Rows whose perturbed channel fails a check carry an error marker.
pub fn run_sensitivity(cfg: &ExperimentConfig) -> Result<SimReport> {
    let (ofdm, channel) = cfg.validate()?;
    let rx_gains = subcarrier_gains(&channel, ofdm.n(), DEFAULT_GAIN_TOL)?;
    let snr = cfg
        .snr_db
        .as_ref()
        .and_then(|v| v.first().copied())
        .unwrap_or(f64::INFINITY);

    let mut records = Vec::with_capacity(cfg.epsilon.len());
    for &eps in &cfg.epsilon {
        let row = (|| -> Result<SimRecord> {
            let a_tx = perturbed_denominator(channel.a(), eps, cfg.seed);
            let tx_channel = RationalChannel::new(&a_tx, channel.b())?;
            if !cfg.allow_unstable && !tx_channel.is_stable(DEFAULT_MARGIN) {
                return Err(Error::Unstable(format!(
                    "perturbed denominator at epsilon={eps} is unstable"
                )));
            }
            let tx_gains = subcarrier_gains(&tx_channel, ofdm.n(), DEFAULT_GAIN_TOL)?;
            let link = Link {
                ofdm,
                channel: &channel,
                rx_gains: rx_gains.clone(),
                tx: Transmitter::Proposed {
                    a: tx_channel.a().to_vec(),
                    gains: tx_gains,
                },
                constellation: Constellation::new(cfg.modulation),
                symbols: cfg.symbols,
                seed: cfg.seed,
            };
            Ok(link.point(eps, cfg.trials, snr)?.0)
        })();
        records.push(match row {
            Ok(r) => r,
            Err(e) if e.is_channel_error() => SimRecord::failed(eps, &e),
            Err(e) => return Err(e),
        });
    }
    Ok(SimReport {
        sweep: SweepParam::Epsilon,
        records,
        max_abs_error: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> ExperimentConfig {
        ExperimentConfig {
            n: 16,
            trials: 4,
            symbols: 3,
            ..Default::default()
        }
    }

    #[test]
    fn roundtrip_default_channel() {
        let rep = run_roundtrip(&small()).unwrap();
        assert!(rep.max_abs_error.unwrap() <= ROUNDTRIP_TOLERANCE);
        assert_eq!(rep.records[0].bit_errors, 0);
        assert_eq!(rep.records[0].bits, 4 * 3 * 16 * 2);
    }

    #[test]
    fn roundtrip_identity() {
        let one = vec![Complex64::new(1.0, 0.0)];
        let cfg = ExperimentConfig { a: one.clone(), b: one, g: 1, ..small() };
        assert!(run_roundtrip(&cfg).unwrap().max_abs_error.unwrap() <= 1e-12);
    }

    #[test]
    fn roundtrip_rejects_unstable() {
        let cfg = ExperimentConfig {
            a: vec![Complex64::new(1.0, 0.0), Complex64::new(-2.0, 0.0)],
            ..small()
        };
        assert!(matches!(run_roundtrip(&cfg), Err(Error::Unstable(_))));
    }

    #[test]
    fn infinite_snr_has_no_errors() {
        let cfg = ExperimentConfig { snr_db: Some(vec![f64::INFINITY]), ..small() };
        let rep = run_ber_sweep(&cfg).unwrap();
        assert_eq!(rep.records[0].ber, Some(0.0));
        assert_eq!(rep.records[0].analytic_ber, Some(0.0));
    }

    #[test]
    fn sensitivity_zero_matches_roundtrip() {
        let cfg = small();
        let sens = run_sensitivity(&cfg).unwrap();
        let rt = run_roundtrip(&cfg).unwrap();
        assert!(sens.records[0].evm_rms.unwrap() <= 1e-9);
        assert_eq!(sens.records[0].bits, rt.records[0].bits);
        assert_eq!(sens.records[0].avg_tx_power, rt.records[0].avg_tx_power);
    }

    #[test]
    fn perturbation_is_deterministic_and_scaled() {
        let a = small().a;
        assert_eq!(perturbed_denominator(&a, 0.0, 5), a);
        let p1 = perturbed_denominator(&a, 1e-3, 5);
        assert_eq!(p1, perturbed_denominator(&a, 1e-3, 5));
        for (p, q) in p1.iter().zip(&a) {
            assert!(((p - q).norm() / q.norm() - 1e-3).abs() < 1e-15);
        }
    }
}
