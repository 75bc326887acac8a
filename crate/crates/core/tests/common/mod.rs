//! Test-only oracles and random fixtures, independent of the library's code paths.
#![allow(dead_code)]

use iirofdm::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn real(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&x| c(x, 0.0)).collect()
}

/// Expands `prod (1 - r z^-1)` into coefficients `a(0..=deg)` with `a(0) = 1`.
pub fn poly_from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut poly = vec![c(1.0, 0.0)];
    for &r in roots {
        let mut next = poly.clone();
        next.push(c(0.0, 0.0));
        for k in 0..poly.len() {
            next[k + 1] -= r * poly[k];
        }
        poly = next;
    }
    poly
}

/// `count` roots drawn uniformly over the disk of the given radius.
pub fn roots_in_disk(rng: &mut ChaCha8Rng, count: usize, radius: f64) -> Vec<Complex64> {
    (0..count)
        .map(|_| {
            let r = radius * rng.random::<f64>().sqrt();
            Complex64::from_polar(r, rng.random_range(0.0..std::f64::consts::TAU))
        })
        .collect()
}

pub fn random_stable_denominator(rng: &mut ChaCha8Rng, min_order: usize, max_order: usize) -> Vec<Complex64> {
    let order = rng.random_range(min_order..=max_order);
    poly_from_roots(&roots_in_disk(rng, order, 0.9))
}

pub fn random_qpsk_spectra(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Vec<Vec<Complex64>> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    (0..m)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let re = if rng.random::<bool>() { s } else { -s };
                    let im = if rng.random::<bool>() { s } else { -s };
                    c(re, im)
                })
                .collect()
        })
        .collect()
}

pub fn random_gaussian_spectra(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Vec<Vec<Complex64>> {
    (0..m)
        .map(|_| (0..n).map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect())
        .collect()
}

/// All roots of `sum_k coeffs[k] z^{deg-k}` (leading coefficient first) by
/// Durand-Kerner iteration.
pub fn durand_kerner(coeffs: &[Complex64]) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    let monic: Vec<Complex64> = coeffs.iter().map(|&v| v / coeffs[0]).collect();
    let eval = |z: Complex64| monic.iter().fold(c(0.0, 0.0), |acc, &v| acc * z + v);

    // Cauchy bound for the initial circle.
    let bound = 1.0 + monic[1..].iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut roots: Vec<Complex64> = (0..deg)
        .map(|i| Complex64::from_polar(0.5 * bound + 0.1, 0.4 + std::f64::consts::TAU * i as f64 / deg as f64))
        .collect();

    for _ in 0..2000 {
        let mut max_step: f64 = 0.0;
        for i in 0..deg {
            let zi = roots[i];
            let denom = (0..deg)
                .filter(|&j| j != i)
                .fold(c(1.0, 0.0), |acc, j| acc * (zi - roots[j]));
            let step = eval(zi) / denom;
            if step.re.is_finite() && step.im.is_finite() {
                roots[i] = zi - step;
                max_step = max_step.max(step.norm());
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    // Newton polish against the original polynomial.
    let deriv: Vec<Complex64> = monic[..deg]
        .iter()
        .enumerate()
        .map(|(k, &v)| v * (deg - k) as f64)
        .collect();
    let eval_d = |z: Complex64| deriv.iter().fold(c(0.0, 0.0), |acc, &v| acc * z + v);
    for r in roots.iter_mut() {
        for _ in 0..3 {
            let d = eval_d(*r);
            if d.norm() > 0.0 {
                let s = eval(*r) / d;
                if s.re.is_finite() && s.im.is_finite() {
                    *r -= s;
                }
            }
        }
    }
    roots
}

/// Receiver samples dropped at the start of a period, computed directly from
/// the suffix-CP target blocks: `u_bar_n = sum_{k<=n} b(k) y2_{n-k} + sum_{k>n} b(k) y1_{n+G-k}`.
pub fn discarded_samples(b: &[Complex64], y_prev: &[Complex64], y_curr: &[Complex64], g: usize) -> Vec<Complex64> {
    let coeff = |k: usize| if k < b.len() { b[k] } else { c(0.0, 0.0) };
    let mut out = Vec::with_capacity(g);
    for n in 0..g {
        let mut acc = c(0.0, 0.0);
        for k in 0..=n {
            acc += coeff(k) * y_curr[n - k];
        }
        for k in n + 1..=g {
            acc += coeff(k) * y_prev[n + g - k];
        }
        out.push(acc);
    }
    out
}

/// `max |x - y|` over two equal-shape lists of blocks.
pub fn max_diff(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .flat_map(|(x, y)| x.iter().zip(y).map(|(p, q)| (p - q).norm()))
        .fold(0.0, f64::max)
}

pub fn max_diff_flat(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max)
}
