//! Gray-labeled QPSK / 16-QAM mapping and hard-decision demapping.
//!
//! Bits are `u8` values in `{0, 1}`, most significant bit of a label first.
//!
//! QPSK: label `b0 b1`, `I = (1 - 2 b0) / sqrt(2)`, `Q = (1 - 2 b1) / sqrt(2)`,
//! so `00 -> (1 + j) / sqrt(2)`.
//!
//! 16-QAM: label `i0 i1 q0 q1`; each axis pair maps through the Gray PAM table
//! `00 -> +1, 01 -> +3, 10 -> -1, 11 -> -3`, scaled by `1 / sqrt(10)`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Modulation {
    Qpsk,
    Qam16,
}

impl Modulation {
    pub fn bits_per_symbol(self) -> usize {
        match self {
            Modulation::Qpsk => 2,
            Modulation::Qam16 => 4,
        }
    }
}

impl FromStr for Modulation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "qpsk" => Ok(Modulation::Qpsk),
            "qam16" | "16qam" => Ok(Modulation::Qam16),
            other => Err(Error::Config(format!("unknown modulation '{other}'"))),
        }
    }
}

impl fmt::Display for Modulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Modulation::Qpsk => "qpsk",
            Modulation::Qam16 => "qam16",
        })
    }
}

/// Unit-average-energy constellation; `points[label]` is the point for that label.
#[derive(Debug, Clone, PartialEq)]
pub struct Constellation {
    pub kind: Modulation,
    pub points: Vec<Complex64>,
}

fn pam4(bits: usize) -> f64 {
    match bits {
        0b00 => 1.0,
        0b01 => 3.0,
        0b10 => -1.0,
        _ => -3.0,
    }
}

impl Constellation {
    pub fn new(kind: Modulation) -> Self {
        let points = match kind {
            Modulation::Qpsk => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                (0..4usize)
                    .map(|label| {
                        let i = if label & 0b10 == 0 { s } else { -s };
                        let q = if label & 0b01 == 0 { s } else { -s };
                        Complex64::new(i, q)
                    })
                    .collect()
            }
            Modulation::Qam16 => {
                let s = 1.0 / 10f64.sqrt();
                (0..16usize)
                    .map(|label| Complex64::new(pam4(label >> 2) * s, pam4(label & 0b11) * s))
                    .collect()
            }
        };
        Self { kind, points }
    }

    pub fn bits_per_symbol(&self) -> usize {
        self.kind.bits_per_symbol()
    }
}

/// Maps groups of bits to constellation points.
pub fn map_bits(c: &Constellation, bits: &[u8]) -> Result<Vec<Complex64>> {
    let bps = c.bits_per_symbol();
    if !bits.len().is_multiple_of(bps) {
        return Err(Error::Size(format!(
            "{} bits is not a multiple of {bps} bits per symbol",
            bits.len()
        )));
    }
    bits.chunks(bps)
        .map(|chunk| {
            let mut label = 0usize;
            for &b in chunk {
                if b > 1 {
                    return Err(Error::Size(format!("bit value {b} is not 0 or 1")));
                }
                label = (label << 1) | b as usize;
            }
            Ok(c.points[label])
        })
        .collect()
}

/// Minimum-distance hard decisions; ties go to the lower label.
pub fn demap_hard(c: &Constellation, symbols: &[Complex64]) -> Vec<u8> {
    let bps = c.bits_per_symbol();
    let mut out = Vec::with_capacity(symbols.len() * bps);
    for &s in symbols {
        let mut best = 0usize;
        let mut best_d = f64::INFINITY;
        for (label, p) in c.points.iter().enumerate() {
            let d = (s - p).norm_sqr();
            if d < best_d {
                best_d = d;
                best = label;
            }
        }
        for shift in (0..bps).rev() {
            out.push(((best >> shift) & 1) as u8);
        }
    }
    out
}

/// Hamming distance between two equal-length bit sequences.
pub fn count_bit_errors(sent: &[u8], recv: &[u8]) -> Result<u64> {
    if sent.len() != recv.len() {
        return Err(Error::Size(format!(
            "bit sequences differ in length: {} vs {}",
            sent.len(),
            recv.len()
        )));
    }
    Ok(sent.iter().zip(recv).filter(|(a, b)| a != b).count() as u64)
}
