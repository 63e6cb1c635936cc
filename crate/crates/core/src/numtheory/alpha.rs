//! Irrational frequency vectors for Kronecker sequences.

use num_bigint::BigInt;
use num_traits::Signed;

use super::cf::{badness_profile, cf_expand_available, ratio_to_f64, CfSource, ContinuedFraction, QuadraticSurd};
use crate::error::{Error, Result};
use crate::geometry::frac;

/// Depth of the stored continued fractions and badness estimates.
pub const ALPHA_CF_DEPTH: usize = 60;

/// One component `alpha_i`, carried as an unevaluated sum `hi + lo` so that
/// `n * alpha_i mod 1` stays accurate to ~1e-16 for `n` in the millions.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaComponent {
    pub source: CfSource,
    pub hi: f64,
    pub lo: f64,
    pub cf: ContinuedFraction,
    /// Min over computed convergents of `q ||q alpha||`.
    pub badness_estimate: f64,
    pub max_quotient: u64,
}

impl AlphaComponent {
    pub fn new(source: CfSource) -> Result<Self> {
        if source.is_rational() {
            return Err(Error::usage("alpha", "alpha components must be irrational"));
        }
        let cf = cf_expand_available(&source, ALPHA_CF_DEPTH)?;
        let profile = badness_profile(&source, cf.depth())?;
        let (hi, lo) = split_value(&source, &cf);
        if !(0.0..1.0).contains(&hi) {
            return Err(Error::usage("alpha", format!("alpha component {hi} not in (0,1)")));
        }
        Ok(AlphaComponent {
            source,
            hi,
            lo,
            cf,
            badness_estimate: profile.min_product,
            max_quotient: profile.max_quotient,
        })
    }

    pub fn value(&self) -> f64 {
        self.hi
    }

    /// `frac(m * alpha)` for a (possibly negative) integer multiplier.
    #[inline]
    pub fn frac_multiple(&self, m: i64) -> f64 {
        let mf = m as f64;
        let p = mf * self.hi;
        let err = mf.mul_add(self.hi, -p);
        frac(frac(p) + (err + mf * self.lo))
    }
}

/// Splits `x` into `hi + lo` using the deepest available convergent.
fn split_value(source: &CfSource, cf: &ContinuedFraction) -> (f64, f64) {
    let (p, q) = match source {
        CfSource::Enclosure { lo, hi } => {
            // midpoint of the enclosure
            let num = &lo.0 * &hi.1 + &hi.0 * &lo.1;
            let den = &lo.1 * &hi.1 * 2;
            (num, den)
        }
        _ => cf.convergents.last().cloned().expect("at least one convergent"),
    };
    let hi = ratio_to_f64(&p, &q);
    let (mant, exp) = decode(hi);
    // residual (p/q - mant*2^exp) as an exact ratio
    let (num, den) = if exp >= 0 {
        (p - (BigInt::from(mant) << exp as usize) * &q, q)
    } else {
        let scale = -exp as usize;
        ((p << scale) - BigInt::from(mant) * &q, q << scale)
    };
    let lo = if num.is_negative() {
        -ratio_to_f64(&-num, &den)
    } else {
        ratio_to_f64(&num, &den)
    };
    (hi, lo)
}

/// `x = mant * 2^exp` exactly, for finite `x`.
fn decode(x: f64) -> (i64, i32) {
    if x == 0.0 {
        return (0, 0);
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 0 { 1 } else { -1 };
    let exponent = ((bits >> 52) & 0x7ff) as i32;
    let mantissa = if exponent == 0 {
        (bits & 0xf_ffff_ffff_ffff) << 1
    } else {
        (bits & 0xf_ffff_ffff_ffff) | 0x10_0000_0000_0000
    };
    (sign * mantissa as i64, exponent - 1075)
}

/// A `d`-tuple of irrationals in `(0,1)` with continued-fraction evidence.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaVector {
    pub name: String,
    pub components: Vec<AlphaComponent>,
    pub independence_note: String,
    /// Set for user-supplied decimals, where boundedness of the quotients is not established.
    pub badness_unverified: bool,
}

impl AlphaVector {
    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn values(&self) -> Vec<f64> {
        self.components.iter().map(AlphaComponent::value).collect()
    }

    pub fn badness_estimate(&self) -> Vec<f64> {
        self.components.iter().map(|c| c.badness_estimate).collect()
    }

    /// `frac(<r, alpha>)`, accurate for large `r`.
    pub fn phase(&self, r: &[i64]) -> f64 {
        debug_assert_eq!(r.len(), self.dim());
        let total = self
            .components
            .iter()
            .zip(r)
            .map(|(c, &ri)| c.frac_multiple(ri))
            .sum::<f64>();
        frac(total)
    }

    /// Named presets: `golden`, `sqrt2`, `sqrt23`, `sqrt235`.
    pub fn preset(name: &str) -> Result<Self> {
        // fractional parts (a + sqrt d) / c of quadratic irrationals
        let parts: &[(i64, u64, i64)] = match name {
            "golden" => &[(-1, 5, 2)],
            "sqrt2" => &[(-1, 2, 1)],
            "sqrt23" => &[(-1, 2, 1), (-1, 3, 1)],
            "sqrt235" => &[(-1, 2, 1), (-1, 3, 1), (-2, 5, 1)],
            _ => {
                return Err(Error::usage(
                    "alpha",
                    format!("unknown preset {name:?} (golden, sqrt2, sqrt23, sqrt235)"),
                ))
            }
        };
        let components = parts
            .iter()
            .map(|&(a, d, c)| AlphaComponent::new(CfSource::Surd(QuadraticSurd::new(a, 1, d, c)?)))
            .collect::<Result<Vec<_>>>()?;
        let independence_note = match name {
            "golden" | "sqrt2" => "single quadratic irrational; {1, alpha} independent over Q".to_string(),
            _ => "square roots of distinct squarefree integers; {1, sqrt 2, sqrt 3, sqrt 5} \
                  is linearly independent over Q, hence so are 1 and the fractional parts"
                .to_string(),
        };
        Ok(AlphaVector {
            name: name.to_string(),
            components,
            independence_note,
            badness_unverified: false,
        })
    }

    /// User-supplied decimal literals, each in `(0,1)`.
    pub fn from_decimals(literals: &[&str]) -> Result<Self> {
        if literals.is_empty() {
            return Err(Error::usage("alpha", "empty alpha"));
        }
        let components = literals
            .iter()
            .map(|s| AlphaComponent::new(CfSource::decimal(s)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(AlphaVector {
            name: literals.join(","),
            components,
            independence_note: "user supplied; independence not checked".to_string(),
            badness_unverified: true,
        })
    }

    /// Accepts a preset name or a comma list of decimals.
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "golden" | "sqrt2" | "sqrt23" | "sqrt235" => AlphaVector::preset(text),
            _ => AlphaVector::from_decimals(&text.split(',').collect::<Vec<_>>()),
        }
    }
}
