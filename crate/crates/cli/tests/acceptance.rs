//! Acceptance suite: one test per exit criterion, each printing a PASS/FAIL line.
//!
//! Run with `cargo test -p iirofdm-cli --test acceptance -- --nocapture` to see the lines.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use iirofdm::channel::{fir_filter, subcarrier_gains, RationalChannel, DEFAULT_GAIN_TOL};
use iirofdm::harness::analytic::q_function;
use iirofdm::harness::{run_ber_sweep, ExperimentConfig};
use iirofdm::mapping::{count_bit_errors, demap_hard, map_bits, Constellation, Modulation};
use iirofdm::modem::{
    build_cp_stream, conventional_demodulate, conventional_modulate, demodulate_frame,
    modulate_frame, OfdmConfig, TxFrame,
};
use iirofdm::stability::{is_stable, DEFAULT_MARGIN};
use iirofdm::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict(id: u32, name: &str, pass: bool, detail: String) {
    println!(
        "criterion {id} [{}] {name}: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {id} ({name}) failed: {detail}");
}

fn within(elapsed: Duration, limit_s: f64) -> bool {
    elapsed.as_secs_f64() < limit_s
}

#[test]
fn criterion_1_construction_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    let cases = 240;
    for _ in 0..cases {
        let a = random_stable_denominator(&mut rng, 1, 6);
        let n = [8usize, 64][rng.random_range(0..2)];
        let g = (a.len() - 1 + rng.random_range(0..=2)).min(n - 1);
        let m = [1usize, 2, 5][rng.random_range(0..3)];
        let cfg = OfdmConfig::new(n, g).unwrap();
        let ch = RationalChannel::pure_iir(&a).unwrap();
        let gains = subcarrier_gains(&ch, n, DEFAULT_GAIN_TOL).unwrap();
        let spectra = random_gaussian_spectra(&mut rng, n, m);
        let frame = modulate_frame(&cfg, &gains, &a, &spectra).unwrap();
        let oracle = fir_filter(&a, &build_cp_stream(&frame.y_blocks, g).unwrap());
        worst = worst.max(max_diff_flat(&frame.stream, &oracle));
    }
    let elapsed = start.elapsed();
    verdict(
        1,
        "construction equivalence",
        worst <= 1e-12 && within(elapsed, 5.0),
        format!("{cases} cases, max |diff| = {worst:.3e} (<= 1e-12), {elapsed:.2?} (< 5 s)"),
    );
}

const PAPER_A: [f64; 3] = [1.0, -0.8, 0.15];

fn frame_over(b: &[f64], seed: u64) -> (OfdmConfig, RationalChannel, TxFrame) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ch = RationalChannel::new(&real(&PAPER_A), &real(b)).unwrap();
    let cfg = OfdmConfig::new(64, 2).unwrap();
    cfg.check_channel(&ch).unwrap();
    let gains = subcarrier_gains(&ch, 64, DEFAULT_GAIN_TOL).unwrap();
    let spectra = random_qpsk_spectra(&mut rng, 64, 100);
    let frame = modulate_frame(&cfg, &gains, ch.a(), &spectra).unwrap();
    (cfg, ch, frame)
}

fn recover(cfg: &OfdmConfig, ch: &RationalChannel, frame: &TxFrame) -> f64 {
    let gains = subcarrier_gains(ch, cfg.n(), DEFAULT_GAIN_TOL).unwrap();
    let rx = ch.apply(&frame.stream);
    let out = demodulate_frame(cfg, &gains, &rx, frame.spectra.len(), None).unwrap();
    max_diff(&out.spectra_hat, &frame.spectra)
}

#[test]
fn criterion_2_pure_iir_exact_recovery() {
    let start = Instant::now();
    let (cfg, ch, frame) = frame_over(&[1.0], 2024);
    let err = recover(&cfg, &ch, &frame);
    let elapsed = start.elapsed();
    verdict(
        2,
        "pure IIR exact recovery",
        err <= 1e-9 && within(elapsed, 1.0),
        format!("N=64 G=2 M=100, max |X_hat - X| = {err:.3e} (<= 1e-9), {elapsed:.2?} (< 1 s)"),
    );
}

#[test]
fn criterion_3_mixed_channel_exact_recovery() {
    let (cfg, ch, frame) = frame_over(&[1.0, 0.4], 2024);
    let err = recover(&cfg, &ch, &frame);
    let (_, _, pure) = frame_over(&[1.0], 2024);
    let identical = pure.stream == frame.stream;
    verdict(
        3,
        "mixed channel exact recovery",
        err <= 1e-9 && identical,
        format!("max |X_hat - X| = {err:.3e} (<= 1e-9), transmit stream identical to pure-IIR run: {identical}"),
    );
}

#[test]
fn criterion_4_subchannel_isolation() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let ch = RationalChannel::new(&real(&PAPER_A), &real(&[1.0, 0.4])).unwrap();
    let cfg = OfdmConfig::new(64, 2).unwrap();
    let gains = subcarrier_gains(&ch, 64, DEFAULT_GAIN_TOL).unwrap();
    let mut ks: Vec<usize> = (0..64).collect();
    for i in (1..ks.len()).rev() {
        ks.swap(i, rng.random_range(0..=i));
    }
    ks.truncate(20);

    let mut worst: f64 = 0.0;
    for &k in &ks {
        let mut x = vec![c(0.0, 0.0); 64];
        x[k] = c(1.0, 0.0);
        let frame = modulate_frame(&cfg, &gains, ch.a(), &[x]).unwrap();
        let out = demodulate_frame(&cfg, &gains, &ch.apply(&frame.stream), 1, None).unwrap();
        let leak = out.spectra_hat[0]
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, v)| v.norm())
            .fold(0.0, f64::max);
        worst = worst.max(leak);
    }
    verdict(
        4,
        "subchannel isolation",
        worst <= 1e-10,
        format!("{} subcarriers, max leakage = {worst:.3e} (<= 1e-10)", ks.len()),
    );
}

#[test]
fn criterion_5_baseline_failure_contrast() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let ch = RationalChannel::pure_iir(&real(&[1.0, -0.8])).unwrap();
    let spectra = random_qpsk_spectra(&mut rng, 64, 50);

    let conv_cfg = OfdmConfig::new(64, 4).unwrap();
    let taps = ch.impulse_response(5);
    let rx = ch.apply(&conventional_modulate(&conv_cfg, &spectra).unwrap());
    let conv_evm = conventional_demodulate(&conv_cfg, &taps, &rx, 50, Some(&spectra))
        .unwrap()
        .evm_rms
        .unwrap();

    let cfg = OfdmConfig::new(64, 1).unwrap();
    let gains = subcarrier_gains(&ch, 64, DEFAULT_GAIN_TOL).unwrap();
    let frame = modulate_frame(&cfg, &gains, ch.a(), &spectra).unwrap();
    let new_evm = demodulate_frame(&cfg, &gains, &ch.apply(&frame.stream), 50, Some(&spectra))
        .unwrap()
        .evm_rms
        .unwrap();

    verdict(
        5,
        "baseline failure contrast",
        conv_evm > 1e-2 && new_evm <= 1e-9,
        format!("conventional G=4 EVM = {conv_evm:.3e} (> 1e-2), guard-synthesis G=1 EVM = {new_evm:.3e} (<= 1e-9)"),
    );
}

/// Single-subcarrier Monte Carlo check of the Q-function expression.
fn brute_force_validates_q(rng: &mut ChaCha8Rng) -> bool {
    let qpsk = Constellation::new(Modulation::Qpsk);
    [0.4, 0.6, 0.9].iter().all(|&sigma: &f64| {
        let bits: Vec<u8> = (0..100_000).map(|_| rng.random_range(0..2u8)).collect();
        let rx: Vec<Complex64> = map_bits(&qpsk, &bits)
            .unwrap()
            .into_iter()
            .map(|s| {
                let re: f64 = rng.sample(box_muller());
                let im: f64 = rng.sample(box_muller());
                s + c(re, im) * sigma
            })
            .collect();
        let errors = count_bit_errors(&bits, &demap_hard(&qpsk, &rx)).unwrap() as f64;
        let p = q_function(std::f64::consts::FRAC_1_SQRT_2 / sigma);
        let n = bits.len() as f64;
        (errors / n - p).abs() <= 3.0 * (p * (1.0 - p) / n).sqrt()
    })
}

/// Standard normal via Box-Muller, so the oracle does not share the library's sampler.
fn box_muller() -> impl rand::distr::Distribution<f64> {
    struct BoxMuller;
    impl rand::distr::Distribution<f64> for BoxMuller {
        fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
            let u1: f64 = 1.0 - rng.random::<f64>();
            let u2: f64 = rng.random();
            (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
        }
    }
    BoxMuller
}

#[test]
fn criterion_6_ber_agreement() {
    let start = Instant::now();
    let oracle_ok = brute_force_validates_q(&mut ChaCha8Rng::seed_from_u64(66));

    let cfg = ExperimentConfig {
        a: real(&PAPER_A),
        b: real(&[1.0]),
        n: 64,
        g: 2,
        modulation: Modulation::Qpsk,
        snr_db: Some(vec![0.0, 4.0, 8.0]),
        trials: 100,
        symbols: 10,
        seed: 6,
        ..Default::default()
    };
    let rep = run_ber_sweep(&cfg).unwrap();
    let mut ok = oracle_ok;
    let mut details = vec![format!("brute-force oracle ok: {oracle_ok}")];
    for r in &rep.records {
        let p = r.analytic_ber.unwrap();
        let ber = r.ber.unwrap();
        let se = (p * (1.0 - p) / r.bits as f64).sqrt();
        let z = (ber - p) / se;
        ok &= r.bits >= 100_000 && z.abs() <= 3.0;
        details.push(format!(
            "{} dB: ber={ber:.4e} analytic={p:.4e} z={z:+.2} bits={}",
            r.param, r.bits
        ));
    }
    let elapsed = start.elapsed();
    ok &= within(elapsed, 30.0);
    details.push(format!("{elapsed:.2?} (< 30 s)"));
    verdict(6, "BER agreement", ok, details.join("; "));
}

#[test]
fn criterion_7_stability_test_matches_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let radius = 1.0 - DEFAULT_MARGIN;
    let (mut compared, mut skipped, mut disagreements, mut stable) = (0, 0, 0, 0);
    for i in 0..600 {
        let degree = rng.random_range(0..=8);
        let a = if i % 2 == 0 {
            // roots spread across the unit circle boundary
            let roots: Vec<Complex64> = (0..degree)
                .map(|_| Complex64::from_polar(rng.random_range(0.0..1.25), rng.random_range(0.0..std::f64::consts::TAU)))
                .collect();
            poly_from_roots(&roots)
        } else {
            let mut v = vec![c(1.0, 0.0)];
            v.extend((0..degree).map(|_| c(rng.random_range(-0.6..0.6), rng.random_range(-0.6..0.6))));
            v
        };
        let max_root = durand_kerner(&a).iter().map(|r| r.norm()).fold(0.0, f64::max);
        if (max_root - radius).abs() <= DEFAULT_MARGIN {
            skipped += 1;
            continue;
        }
        compared += 1;
        stable += usize::from(max_root < radius);
        if is_stable(&a, DEFAULT_MARGIN).unwrap() != (max_root < radius) {
            disagreements += 1;
        }
    }
    verdict(
        7,
        "Schur-Cohn vs Durand-Kerner",
        compared >= 500 && disagreements == 0,
        format!(
            "{compared} compared ({stable} stable by root magnitude), {skipped} in margin band, {disagreements} disagreements"
        ),
    );
}

#[test]
fn criterion_8_ber_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_iirofdm"))
            .args([
                "ber", "--n", "64", "--guard", "2", "--a", "1,-0.8,0.15", "--b", "1", "--mod", "qpsk",
                "--snr-db", "0,4,8", "--trials", "20", "--symbols", "5", "--seed", "42", "--format", "csv",
                "--out",
            ])
            .arg(&path)
            .status()
            .expect("run iirofdm");
        assert!(status.success());
        std::fs::read(&path).unwrap()
    };
    let first = run("first.csv");
    let second = run("second.csv");
    let rows = String::from_utf8_lossy(&first).lines().count();
    verdict(
        8,
        "determinism",
        first == second && rows == 4,
        format!("{} bytes, {rows} lines, byte-identical: {}", first.len(), first == second),
    );
}
