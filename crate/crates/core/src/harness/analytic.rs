//! Closed-form BER reference for QPSK through the zero-forcing receiver.
//!
//! White receiver noise of per-sample variance `s2` becomes, after the N-point
//! unnormalized DFT and the equalizer `e_k = A_k / B_k`, independent complex
//! Gaussian noise with per-component variance `|e_k|^2 N s2 / 2` on subcarrier
//! `k`. A QPSK bit flips when its component noise exceeds `1/sqrt(2)`.

use num_complex::Complex64;
use libm::erfc;

/// Gaussian tail probability `Q(x) = P[Z > x]`.
pub fn q_function(x: f64) -> f64 {
    0.5 * erfc(x / std::f64::consts::SQRT_2)
}

/// Equalized noise deviation per real component on each subcarrier.
pub fn equalized_noise_sigma(equalizer: &[Complex64], noise_variance: f64) -> Vec<f64> {
    let n = equalizer.len() as f64;
    equalizer
        .iter()
        .map(|e| (e.norm_sqr() * n * noise_variance / 2.0).sqrt())
        .collect()
}

/// `(1/N) sum_k Q((1/sqrt 2) / sigma_k)`.
pub fn qpsk_ber(equalizer: &[Complex64], noise_variance: f64) -> f64 {
    if noise_variance == 0.0 || equalizer.is_empty() {
        return 0.0;
    }
    let sigmas = equalized_noise_sigma(equalizer, noise_variance);
    sigmas
        .iter()
        .map(|&s| q_function(std::f64::consts::FRAC_1_SQRT_2 / s))
        .sum::<f64>()
        / sigmas.len() as f64
}
