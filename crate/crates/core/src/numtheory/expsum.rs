//! Exponential sums `e(t) = exp(2 pi i t)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::alpha::AlphaVector;
use crate::error::{Error, Result};
use crate::geometry::{frac, TorusPointSet};

/// `e(t)`, with `t` reduced mod 1 before scaling by `2 pi`.
#[inline]
pub fn e(t: f64) -> Complex64 {
    let (s, c) = (2.0 * PI * frac(t)).sin_cos();
    Complex64::new(c, s)
}

/// A nonzero integer frequency vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FrequencyVector(Vec<i64>);

impl FrequencyVector {
    pub fn new(components: Vec<i64>) -> Result<Self> {
        if components.is_empty() || components.iter().all(|&c| c == 0) {
            return Err(Error::usage("r", "frequency vector must have a nonzero component"));
        }
        Ok(FrequencyVector(components))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[i64] {
        &self.0
    }
}

/// Below this distance to the nearest integer the closed form is replaced by direct summation.
pub const TINY_PHASE: f64 = 1e-12;

/// `sum_{j=1}^{n} e(j theta)`.
pub fn geometric_exp_sum(theta: f64, n: u64) -> Complex64 {
    let t = theta - theta.round();
    if t.abs() < TINY_PHASE {
        return direct_exp_sum(theta, n);
    }
    let nf = n as f64;
    let magnitude = (PI * frac(nf * t)).sin() * sign_of_floor_parity(nf * t) / (PI * t).sin();
    e(0.5 * (nf + 1.0) * t) * magnitude
}

/// `sin(pi x)` evaluated as `sin(pi frac(x))` picks up `(-1)^floor(x)`.
#[inline]
fn sign_of_floor_parity(x: f64) -> f64 {
    if (x.floor() as i64).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Term-by-term evaluation of the same sum.
pub fn direct_exp_sum(theta: f64, n: u64) -> Complex64 {
    let t = frac(theta);
    (1..=n).map(|j| e(frac(j as f64 * t))).sum()
}

/// Normalised Weyl sum `(1/N) sum_j e(<r, x_j>)`.
pub fn weyl_sum(points: &TorusPointSet, r: &FrequencyVector) -> Result<Complex64> {
    if r.dim() != points.dim() {
        return Err(Error::usage("r", format!(
            "frequency dimension {} does not match point dimension {}",
            r.dim(),
            points.dim()
        )));
    }
    if points.is_empty() {
        return Err(Error::usage("n", "Weyl sum of an empty set"));
    }
    let sum: Complex64 = points
        .iter()
        .map(|x| {
            let phase = x
                .iter()
                .zip(r.components())
                .map(|(c, &h)| frac(c * h as f64))
                .sum::<f64>();
            e(phase)
        })
        .sum();
    Ok(sum / points.len() as f64)
}

/// `|S_N(<r, alpha>)| / ((min_i r_i)^{1/2 - delta} N^{1/2 + delta})` for positive `r`.
pub fn lemma22_ratio(alpha: &AlphaVector, r: &FrequencyVector, n: u64, delta: f64) -> Result<f64> {
    if r.dim() != alpha.dim() {
        return Err(Error::usage("r", "frequency and alpha dimensions differ"));
    }
    if r.components().iter().any(|&c| c < 1) {
        return Err(Error::usage("r", "all frequency components must be positive"));
    }
    if n == 0 {
        return Err(Error::usage("n", "N must be at least 1"));
    }
    if !(0.0..=0.5).contains(&delta) {
        return Err(Error::usage("delta", "delta must lie in [0, 1/2]"));
    }
    let theta = alpha.phase(r.components());
    let min_r = *r.components().iter().min().expect("nonempty") as f64;
    let nf = n as f64;
    let denom = min_r.powf(0.5 - delta) * nf.powf(0.5 + delta);
    Ok(geometric_exp_sum(theta, n).norm() / denom)
}
