//! Discrete spectral primitives.
//!
//! Conventions used throughout the crate:
//!
//! ```text
//! forward:  X_k = sum_{n=0}^{N-1} x_n W^{nk},          W = exp(-j 2 pi / N)
//! inverse:  x_n = (1/N) sum_{k=0}^{N-1} X_k W^{-nk}
//! ```
//!
//! The forward sum is unnormalized so that evaluating a coefficient list on the
//! unit circle ([`unit_circle_eval`]) is exactly the forward transform of the
//! zero-extended list. Power-of-two lengths use an iterative radix-2 FFT, other
//! lengths fall back to the direct O(N^2) sum.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// An N-sample baseband block or its spectrum.
pub type ComplexBlock = Vec<Complex64>;

/// `exp(-j 2 pi m / n)` with `m` reduced modulo `n` first so large products stay accurate.
#[inline]
pub(crate) fn twiddle(m: usize, n: usize) -> Complex64 {
    let m = m % n;
    let theta = -2.0 * PI * (m as f64) / (n as f64);
    Complex64::new(theta.cos(), theta.sin())
}

fn check_len(len: usize) -> Result<()> {
    if len < 2 {
        return Err(Error::Size(format!(
            "transform length must be at least 2, got {len}"
        )));
    }
    Ok(())
}

/// Unnormalized forward N-point DFT.
pub fn forward_dft(block: &[Complex64]) -> Result<ComplexBlock> {
    check_len(block.len())?;
    let mut out = block.to_vec();
    transform_in_place(&mut out, false);
    Ok(out)
}

/// Inverse N-point DFT, carrying the 1/N factor.
pub fn inverse_dft(spectrum: &[Complex64]) -> Result<ComplexBlock> {
    check_len(spectrum.len())?;
    let mut out = spectrum.to_vec();
    transform_in_place(&mut out, true);
    let scale = 1.0 / out.len() as f64;
    out.iter_mut().for_each(|v| *v *= scale);
    Ok(out)
}

/// Direct O(N^2) evaluation of the forward sum, for any N >= 2.
///
/// [`forward_dft`] only takes this route for non-power-of-two lengths; it is
/// public so callers can cross-check the fast path.
pub fn forward_dft_direct(block: &[Complex64]) -> Result<ComplexBlock> {
    check_len(block.len())?;
    Ok(direct_sum(block, false))
}

fn transform_in_place(data: &mut [Complex64], inverse: bool) {
    if data.len().is_power_of_two() {
        radix2(data, inverse);
    } else {
        let out = direct_sum(data, inverse);
        data.copy_from_slice(&out);
    }
}

fn direct_sum(data: &[Complex64], inverse: bool) -> ComplexBlock {
    let n = data.len();
    (0..n)
        .map(|k| {
            data.iter()
                .enumerate()
                .map(|(i, &x)| {
                    let w = twiddle(i * k, n);
                    x * if inverse { w.conj() } else { w }
                })
                .sum()
        })
        .collect()
}

/// Iterative decimation-in-time radix-2 FFT (unnormalized in both directions).
fn radix2(data: &mut [Complex64], inverse: bool) {
    let n = data.len();
    let bits = n.trailing_zeros();
    if bits == 0 {
        return;
    }

    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            data.swap(i, j);
        }
    }

    // Twiddles for the largest stage; smaller stages stride through this table.
    let half = n / 2;
    let table: Vec<Complex64> = (0..half)
        .map(|m| {
            let w = twiddle(m, n);
            if inverse {
                w.conj()
            } else {
                w
            }
        })
        .collect();

    let mut len = 2;
    while len <= n {
        let stride = n / len;
        let half_len = len / 2;
        for start in (0..n).step_by(len) {
            for j in 0..half_len {
                let w = table[j * stride];
                let lo = data[start + j];
                let hi = data[start + j + half_len] * w;
                data[start + j] = lo + hi;
                data[start + j + half_len] = lo - hi;
            }
        }
        len <<= 1;
    }
}

/// N-point cyclic convolution of `taps` (zero-extended to N) with `block`.
pub fn cyclic_convolve(taps: &[Complex64], block: &[Complex64]) -> Result<ComplexBlock> {
    let n = block.len();
    if taps.len() > n {
        return Err(Error::Size(format!(
            "{} taps do not fit a cyclic convolution of length {n}",
            taps.len()
        )));
    }
    Ok((0..n)
        .map(|i| {
            taps.iter()
                .enumerate()
                .map(|(k, &t)| t * block[(i + n - k) % n])
                .sum()
        })
        .collect())
}

/// Evaluates `sum_n coeffs_n W^{nk}` at the `n_points` roots of unity.
pub fn unit_circle_eval(coeffs: &[Complex64], n_points: usize) -> Result<ComplexBlock> {
    if coeffs.is_empty() {
        return Err(Error::Channel("empty coefficient list".into()));
    }
    check_len(n_points)?;
    Ok((0..n_points)
        .map(|k| {
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| c * twiddle(i * k, n_points))
                .sum()
        })
        .collect())
}
