//! Rational channel `B(z)/A(z)`: construction, exact time-domain application,
//! subcarrier gains and receiver noise.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectra::{unit_circle_eval, ComplexBlock};
use crate::stability::{self, validate_denominator};

/// Default relative tolerance for declaring a subcarrier gain singular.
pub const DEFAULT_GAIN_TOL: f64 = 1e-9;

/// A causal rational channel `H(z) = B(z) / A(z)` with `a(0) = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalChannel {
    a: Vec<Complex64>,
    b: Vec<Complex64>,
}

impl RationalChannel {
    /// Builds the channel, rescaling both polynomials so that `a(0) = 1`.
    pub fn new(a: &[Complex64], b: &[Complex64]) -> Result<Self> {
        validate_denominator(a)?;
        if b.is_empty() {
            return Err(Error::Channel("numerator B(z) has no coefficients".into()));
        }
        if b.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::Channel("non-finite numerator coefficient".into()));
        }
        let scale = a[0].inv();
        Ok(Self {
            a: a.iter().map(|&c| c * scale).collect(),
            b: b.iter().map(|&c| c * scale).collect(),
        })
    }

    /// The pure IIR channel `1 / A(z)`.
    pub fn pure_iir(a: &[Complex64]) -> Result<Self> {
        Self::new(a, &[Complex64::new(1.0, 0.0)])
    }

    /// The pure FIR channel `B(z)`.
    pub fn fir(b: &[Complex64]) -> Result<Self> {
        Self::new(&[Complex64::new(1.0, 0.0)], b)
    }

    pub fn identity() -> Self {
        let one = vec![Complex64::new(1.0, 0.0)];
        Self { a: one.clone(), b: one }
    }

    pub fn a(&self) -> &[Complex64] {
        &self.a
    }

    pub fn b(&self) -> &[Complex64] {
        &self.b
    }

    /// Order `Ga` of the denominator.
    pub fn order_a(&self) -> usize {
        self.a.len() - 1
    }

    /// Order `Gb` of the numerator.
    pub fn order_b(&self) -> usize {
        self.b.len() - 1
    }

    /// Minimum guard/CP length, `max(Ga, Gb)`.
    pub fn guard_requirement(&self) -> usize {
        self.order_a().max(self.order_b())
    }

    pub fn is_stable(&self, margin: f64) -> bool {
        // `a` was validated on construction, so only the margin can fail here.
        stability::is_stable(&self.a, margin).unwrap_or(false)
    }

    /// Runs the difference equation over `input` from zero initial state.
    pub fn apply(&self, input: &[Complex64]) -> Vec<Complex64> {
        apply_rational(self, input)
    }

    /// First `len` samples of the impulse response.
    pub fn impulse_response(&self, len: usize) -> Vec<Complex64> {
        let mut impulse = vec![Complex64::new(0.0, 0.0); len];
        if let Some(first) = impulse.first_mut() {
            *first = Complex64::new(1.0, 0.0);
        }
        self.apply(&impulse)
    }
}

/// `u_t = sum_k b(k) x_{t-k} - sum_{k>=1} a(k) u_{t-k}`, zero prehistory.
pub fn apply_rational(ch: &RationalChannel, input: &[Complex64]) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = Vec::with_capacity(input.len());
    for t in 0..input.len() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, &bk) in ch.b.iter().enumerate().take(t + 1) {
            acc += bk * input[t - k];
        }
        for (k, &ak) in ch.a.iter().enumerate().take(t + 1).skip(1) {
            acc -= ak * out[t - k];
        }
        out.push(acc);
    }
    out
}

/// Linear convolution with `taps`, truncated to the input length, zero prehistory.
pub fn fir_filter(taps: &[Complex64], input: &[Complex64]) -> Vec<Complex64> {
    (0..input.len())
        .map(|t| {
            taps.iter()
                .enumerate()
                .take(t + 1)
                .map(|(k, &h)| h * input[t - k])
                .sum()
        })
        .collect()
}

/// Unit-circle evaluations `A_k`, `B_k` of a channel at N points.
#[derive(Debug, Clone, PartialEq)]
pub struct SubcarrierGains {
    pub a_k: ComplexBlock,
    pub b_k: ComplexBlock,
    pub n: usize,
}

impl SubcarrierGains {
    /// Per-subcarrier zero-forcing equalizer `A_k / B_k`.
    pub fn equalizer(&self) -> Vec<Complex64> {
        self.a_k.iter().zip(&self.b_k).map(|(a, b)| a / b).collect()
    }
}

/// Computes `A_k` and `B_k`, rejecting any gain below `tol` times the largest.
pub fn subcarrier_gains(ch: &RationalChannel, n: usize, tol: f64) -> Result<SubcarrierGains> {
    let a_k = unit_circle_eval(&ch.a, n)?;
    let b_k = unit_circle_eval(&ch.b, n)?;
    check_singular('A', &a_k, tol)?;
    check_singular('B', &b_k, tol)?;
    Ok(SubcarrierGains { a_k, b_k, n })
}

fn check_singular(polynomial: char, gains: &[Complex64], tol: f64) -> Result<()> {
    let max = gains.iter().map(|g| g.norm()).fold(0.0, f64::max);
    let (index, magnitude) = gains
        .iter()
        .map(|g| g.norm())
        .enumerate()
        .fold((0, f64::INFINITY), |best, (k, m)| if m < best.1 { (k, m) } else { best });
    if magnitude.is_nan() || magnitude < tol * max || max == 0.0 {
        return Err(Error::GainSingular {
            polynomial,
            index,
            magnitude,
        });
    }
    Ok(())
}

/// Per-sample complex noise variance for `snr_db` relative to the stream's mean power.
///
/// An infinite `snr_db` is the no-noise sentinel and yields zero.
pub fn noise_variance(input: &[Complex64], snr_db: f64) -> Result<f64> {
    if input.is_empty() {
        return Err(Error::Size("cannot add noise to an empty stream".into()));
    }
    if snr_db.is_nan() || snr_db == f64::NEG_INFINITY {
        return Err(Error::Config(format!("invalid SNR {snr_db} dB")));
    }
    if snr_db == f64::INFINITY {
        return Ok(0.0);
    }
    Ok(mean_power(input) / 10f64.powf(snr_db / 10.0))
}

/// Adds circularly-symmetric complex Gaussian noise at `snr_db` below the input's mean power.
pub fn add_awgn<R: Rng + ?Sized>(
    input: &[Complex64],
    snr_db: f64,
    rng: &mut R,
) -> Result<Vec<Complex64>> {
    let variance = noise_variance(input, snr_db)?;
    Ok(add_noise_with_variance(input, variance, rng))
}

/// Adds complex Gaussian noise with the given per-sample variance.
pub fn add_noise_with_variance<R: Rng + ?Sized>(
    input: &[Complex64],
    variance: f64,
    rng: &mut R,
) -> Vec<Complex64> {
    if variance == 0.0 {
        return input.to_vec();
    }
    let sigma = (variance / 2.0).sqrt();
    input
        .iter()
        .map(|&x| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            x + Complex64::new(re, im) * sigma
        })
        .collect()
}

pub fn mean_power(samples: &[Complex64]) -> f64 {
    if samples.is_empty() {
        return 0.0;
    }
    samples.iter().map(|x| x.norm_sqr()).sum::<f64>() / samples.len() as f64
}
