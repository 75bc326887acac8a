//! Schur-Cohn stability test for the channel denominator.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default stability margin used by [`is_stable`] callers.
pub const DEFAULT_MARGIN: f64 = 1e-6;

/// Decides whether every root of `A(z) = sum_k a(k) z^{-k}` lies within radius `1 - margin`.
///
/// The roots of `A(z)` are the roots of the ordinary polynomial
/// `sum_k a(k) z^{Ga-k}`. The polynomial is first contracted to
/// `p((1 - margin) z)` and then reduced by Schur-Cohn steps
///
/// ```text
/// p_{m-1}(z) = (conj(p_m[m]) p_m(z) - p_m[0] p_m*(z)) / z
/// ```
///
/// where `p*` is the reciprocal polynomial. All roots are inside the unit disk
/// iff `|p_m[0]| < |p_m[m]|` at every step.
pub fn is_stable(a: &[Complex64], margin: f64) -> Result<bool> {
    validate_denominator(a)?;
    if !(0.0..1.0).contains(&margin) {
        return Err(Error::Channel(format!(
            "stability margin must lie in [0, 1), got {margin}"
        )));
    }
    let radius = 1.0 - margin;

    // poly[i] is the coefficient of z^i.
    let degree = a.len() - 1;
    let mut poly: Vec<Complex64> = (0..=degree)
        .map(|i| a[degree - i] * radius.powi(i as i32))
        .collect();

    while poly.len() > 1 {
        let m = poly.len() - 1;
        let lead = poly[m];
        let constant = poly[0];
        if constant.norm() >= lead.norm() {
            return Ok(false);
        }
        let mut next: Vec<Complex64> = (0..m)
            .map(|i| lead.conj() * poly[i + 1] - constant * poly[m - 1 - i].conj())
            .collect();
        let scale = next.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if scale == 0.0 || !scale.is_finite() {
            return Ok(false);
        }
        next.iter_mut().for_each(|c| *c /= scale);
        poly = next;
    }
    Ok(true)
}

pub(crate) fn validate_denominator(a: &[Complex64]) -> Result<()> {
    if a.is_empty() {
        return Err(Error::Channel("denominator A(z) has no coefficients".into()));
    }
    if a.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::Channel("non-finite denominator coefficient".into()));
    }
    if a[0] == Complex64::new(0.0, 0.0) {
        return Err(Error::Channel(
            "a(0) = 0: denominator is not causally invertible".into(),
        ));
    }
    Ok(())
}
