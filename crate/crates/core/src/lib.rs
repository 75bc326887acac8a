//! OFDM for rational `B(z)/A(z)` channels.
//!
//! The transmitter synthesizes each guard interval from the neighbouring
//! symbols and the channel denominator so that, after the all-pole part of
//! the channel, the received stream carries an ordinary cyclic prefix. The
//! receiver drops the prefix and equalizes every subcarrier with one complex
//! tap `A_k / B_k`.
//!
//! * [`spectra`]: DFT, cyclic convolution, unit-circle evaluation
//! * [`channel`]: the rational channel, its subcarrier gains, receiver noise
//! * [`stability`]: Schur-Cohn test for `1/A(z)`
//! * [`modem`]: guard synthesis, framing, zero-forcing demodulation, CP-OFDM baseline
//! * [`mapping`]: Gray QPSK / 16-QAM
//! * [`harness`]: Monte Carlo experiments and CSV/JSON reports

pub mod channel;
pub mod error;
pub mod harness;
pub mod mapping;
pub mod modem;
pub mod spectra;
pub mod stability;

pub use num_complex::Complex64;

pub use channel::{
    add_awgn, apply_rational, fir_filter, subcarrier_gains, RationalChannel, SubcarrierGains,
};
pub use error::{Error, Result};
pub use mapping::{count_bit_errors, demap_hard, map_bits, Constellation, Modulation};
pub use modem::{
    build_cp_stream, compute_guard, conventional_demodulate, conventional_modulate,
    demodulate_frame, modulate_frame, OfdmConfig, RxResult, TxFrame,
};
pub use spectra::{cyclic_convolve, forward_dft, inverse_dft, unit_circle_eval, ComplexBlock};
pub use stability::is_stable;
