//! Shared fixtures for the criterion benchmarks.

use iirofdm::mapping::{map_bits, Constellation, Modulation};
use iirofdm::{Complex64, ComplexBlock};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `m` random QPSK spectra of `n` subcarriers, fixed by `seed`.
pub fn qpsk_spectra(n: usize, m: usize, seed: u64) -> Vec<ComplexBlock> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bits: Vec<u8> = (0..2 * n * m).map(|_| rng.random_range(0..2u8)).collect();
    let points = map_bits(&Constellation::new(Modulation::Qpsk), &bits).expect("even bit count");
    points.chunks(n).map(<[_]>::to_vec).collect()
}

/// A random complex block of length `n`.
pub fn random_block(n: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect()
}
