//! Channel diagnostics: subcarrier gain magnitudes, singular bins, stability.

use std::fmt::Write as _;

use serde::Serialize;

use crate::channel::{RationalChannel, DEFAULT_GAIN_TOL};
use crate::error::{Error, Result};
use crate::spectra::unit_circle_eval;
use crate::stability::DEFAULT_MARGIN;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GainSummary {
    pub min_abs: f64,
    pub min_index: usize,
    pub max_abs: f64,
    pub max_index: usize,
    /// Subcarriers whose gain is below the relative singularity tolerance.
    pub singular: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InspectReport {
    pub n: usize,
    pub abs_a: Vec<f64>,
    pub abs_b: Vec<f64>,
    pub a_summary: GainSummary,
    pub b_summary: GainSummary,
    pub stable: bool,
    pub guard_requirement: usize,
}

fn summarize(mags: &[f64]) -> GainSummary {
    let (mut min_index, mut max_index) = (0, 0);
    for (k, &m) in mags.iter().enumerate() {
        if m < mags[min_index] {
            min_index = k;
        }
        if m > mags[max_index] {
            max_index = k;
        }
    }
    let max_abs = mags[max_index];
    GainSummary {
        min_abs: mags[min_index],
        min_index,
        max_abs,
        max_index,
        singular: mags
            .iter()
            .enumerate()
            .filter(|(_, &m)| m.is_nan() || m < DEFAULT_GAIN_TOL * max_abs || max_abs == 0.0)
            .map(|(k, _)| k)
            .collect(),
    }
}

/// Evaluates the channel on `n` subcarriers without failing on singular gains.
pub fn inspect(ch: &RationalChannel, n: usize) -> Result<InspectReport> {
    if n < 2 {
        return Err(Error::Config(format!("subcarrier count must be at least 2, got {n}")));
    }
    let abs_a: Vec<f64> = unit_circle_eval(ch.a(), n)?.iter().map(|g| g.norm()).collect();
    let abs_b: Vec<f64> = unit_circle_eval(ch.b(), n)?.iter().map(|g| g.norm()).collect();
    Ok(InspectReport {
        n,
        a_summary: summarize(&abs_a),
        b_summary: summarize(&abs_b),
        abs_a,
        abs_b,
        stable: ch.is_stable(DEFAULT_MARGIN),
        guard_requirement: ch.guard_requirement(),
    })
}

impl InspectReport {
    /// Summary lines prefixed with `#`, then a `k,abs_a,abs_b` table.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# n={}", self.n);
        let _ = writeln!(s, "# stable={}", self.stable);
        let _ = writeln!(s, "# guard_requirement={}", self.guard_requirement);
        for (name, sum) in [("A", &self.a_summary), ("B", &self.b_summary)] {
            let _ = writeln!(
                s,
                "# min|{name}_k|={} at k={}; max|{name}_k|={} at k={}",
                sum.min_abs, sum.min_index, sum.max_abs, sum.max_index
            );
            if !sum.singular.is_empty() {
                let list: Vec<String> = sum.singular.iter().map(|k| k.to_string()).collect();
                let _ = writeln!(s, "# singular {name}_k at k={}", list.join(","));
            }
        }
        s.push_str("k,abs_a,abs_b\n");
        for (k, (a, b)) in self.abs_a.iter().zip(&self.abs_b).enumerate() {
            let _ = writeln!(s, "{k},{a},{b}");
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("inspect report serializes") + "\n"
    }
}
