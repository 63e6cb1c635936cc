//! Continued fractions over exact inputs: rationals, quadratic surds and
//! decimal enclosures.
//!
//! Partial quotients are produced with integer arithmetic only. A decimal
//! enclosure yields quotients only while both ends of the enclosing interval
//! agree; past that point the expansion stops with [`Error::Precision`].

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `(a + b*sqrt(d)) / c` with `d` a positive non-square and `c != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticSurd {
    a: BigInt,
    b: BigInt,
    d: BigInt,
    c: BigInt,
}

impl QuadraticSurd {
    pub fn new(a: i64, b: i64, d: u64, c: i64) -> Result<Self> {
        if c == 0 {
            return Err(Error::usage("surd", "zero denominator"));
        }
        if b == 0 {
            return Err(Error::usage("surd", "b = 0 gives a rational, not a surd"));
        }
        let root = d.sqrt();
        if root * root == d {
            return Err(Error::usage("surd", format!("{d} is a perfect square")));
        }
        Ok(QuadraticSurd {
            a: a.into(),
            b: b.into(),
            d: d.into(),
            c: c.into(),
        })
    }

    pub fn to_f64(&self) -> f64 {
        let (a, b, d, c) = (
            self.a.to_f64().unwrap_or(f64::NAN),
            self.b.to_f64().unwrap_or(f64::NAN),
            self.d.to_f64().unwrap_or(f64::NAN),
            self.c.to_f64().unwrap_or(f64::NAN),
        );
        (a + b * d.sqrt()) / c
    }

    /// Rewrites as `(p + sqrt(disc)) / q` with `q | disc - p^2`.
    fn reduced(&self) -> (BigInt, BigInt, BigInt) {
        let (mut p, mut q) = if self.b.is_negative() {
            (-self.a.clone(), -self.c.clone())
        } else {
            (self.a.clone(), self.c.clone())
        };
        let mut disc = &self.b * &self.b * &self.d;
        if !(&disc - &p * &p).is_multiple_of(&q) {
            let scale = q.abs();
            p *= &scale;
            disc *= &scale * &scale;
            q *= scale;
        }
        (p, q, disc)
    }
}

/// The quantity being expanded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CfSource {
    /// `num / den`, `den != 0`.
    Rational { num: BigInt, den: BigInt },
    Surd(QuadraticSurd),
    /// A value known only to lie in `[lo, hi]`, each end a rational `(num, den)`.
    Enclosure {
        lo: (BigInt, BigInt),
        hi: (BigInt, BigInt),
    },
}

impl CfSource {
    pub fn rational(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::usage("x", "zero denominator"));
        }
        Ok(CfSource::Rational {
            num: num.into(),
            den: den.into(),
        })
    }

    /// A decimal literal `[-]digits[.digits]`, taken as accurate to one unit
    /// in its last place.
    pub fn decimal(text: &str) -> Result<Self> {
        let (num, den) = parse_decimal(text)?;
        Ok(CfSource::Enclosure {
            lo: (&num - 1, den.clone()),
            hi: (num + 1, den),
        })
    }

    /// The same literal read as an exact rational.
    pub fn exact_decimal(text: &str) -> Result<Self> {
        let (num, den) = parse_decimal(text)?;
        Ok(CfSource::Rational { num, den })
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, CfSource::Rational { .. })
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            CfSource::Rational { num, den } => ratio_to_f64(num, den),
            CfSource::Surd(s) => s.to_f64(),
            CfSource::Enclosure { lo, hi } => {
                0.5 * (ratio_to_f64(&lo.0, &lo.1) + ratio_to_f64(&hi.0, &hi.1))
            }
        }
    }
}

fn parse_decimal(text: &str) -> Result<(BigInt, BigInt)> {
    let bad = || Error::usage("alpha", format!("not a decimal literal: {text:?}"));
    let t = text.trim();
    let (negative, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = digits.parse().map_err(|_| bad())?;
    if negative {
        num = -num;
    }
    let den = num_traits::pow(BigInt::from(10), frac_part.len());
    Ok((num, den))
}

/// Correctly scaled conversion of a big ratio to `f64`.
pub(crate) fn ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let shift = 70 + den.bits() as i64 - num.bits() as i64;
    let scaled = if shift >= 0 {
        (num << shift as usize) / den
    } else {
        num / (den << (-shift) as usize)
    };
    scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-shift as i32)
}

/// A (possibly terminated) continued fraction `[a0; a1, ..., aK]` with its convergents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuedFraction {
    pub a0: BigInt,
    pub partial_quotients: Vec<u64>,
    /// `(p_k, q_k)` for `k = 0..=K`.
    pub convergents: Vec<(BigInt, BigInt)>,
    /// True when the expansion ended because the input is rational.
    pub terminated: bool,
}

impl ContinuedFraction {
    fn from_quotients(a0: BigInt, partial_quotients: Vec<u64>, terminated: bool) -> Self {
        let mut convergents = Vec::with_capacity(partial_quotients.len() + 1);
        let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
        let (mut p, mut q) = (a0.clone(), BigInt::one());
        convergents.push((p.clone(), q.clone()));
        for &a in &partial_quotients {
            let a = BigInt::from(a);
            let p_next = &a * &p + &p_prev;
            let q_next = &a * &q + &q_prev;
            p_prev = std::mem::replace(&mut p, p_next);
            q_prev = std::mem::replace(&mut q, q_next);
            convergents.push((p.clone(), q.clone()));
        }
        ContinuedFraction {
            a0,
            partial_quotients,
            convergents,
            terminated,
        }
    }

    pub fn depth(&self) -> usize {
        self.partial_quotients.len()
    }

    pub fn max_quotient(&self) -> Option<u64> {
        self.partial_quotients.iter().copied().max()
    }

    /// `q_k * ||q_k x||` for `k = 0..K-1`, computed from the exact identity
    /// `|q_k x - p_k| = 1 / (q_k zeta_{k+1} + q_{k-1})` where the complete
    /// quotient `zeta_{k+1}` is approximated by the remaining partial quotients.
    pub fn convergent_products(&self) -> Vec<f64> {
        let k_max = self.partial_quotients.len();
        let mut out = Vec::with_capacity(k_max);
        for k in 0..k_max {
            let mut zeta = 0.0f64;
            for &a in self.partial_quotients[k..].iter().rev() {
                zeta = a as f64 + if zeta > 0.0 { 1.0 / zeta } else { 0.0 };
            }
            let q_k = &self.convergents[k].1;
            let ratio = if k == 0 {
                0.0
            } else {
                ratio_to_f64(&self.convergents[k - 1].1, q_k)
            };
            let q_f = q_k.to_f64().unwrap_or(f64::INFINITY);
            let dist = 1.0 / (q_f * (zeta + ratio));
            out.push(q_f * dist.min(1.0 - dist));
        }
        out
    }
}

/// Expands `x` to `depth` partial quotients after `a0`, stopping early for rationals.
pub fn cf_expand(x: &CfSource, depth: usize) -> Result<ContinuedFraction> {
    if depth == 0 {
        return Err(Error::usage("depth", "depth must be at least 1"));
    }
    let (a0, quotients, terminated) = expand_raw(x, depth)?;
    Ok(ContinuedFraction::from_quotients(a0, quotients, terminated))
}

/// Like [`cf_expand`] but returns whatever depth the input supports, at least one quotient.
pub fn cf_expand_available(x: &CfSource, depth: usize) -> Result<ContinuedFraction> {
    match cf_expand(x, depth) {
        Err(Error::Precision { reached, .. }) if reached >= 1 => cf_expand(x, reached),
        other => other,
    }
}

fn to_quotient(a: BigInt, reached: usize, requested: usize) -> Result<u64> {
    a.to_u64().ok_or(Error::Precision { reached, requested })
}

fn expand_raw(x: &CfSource, depth: usize) -> Result<(BigInt, Vec<u64>, bool)> {
    let mut quotients = Vec::with_capacity(depth);
    match x {
        CfSource::Rational { num, den } => {
            if den.is_zero() {
                return Err(Error::usage("x", "zero denominator"));
            }
            let (mut n, mut d) = if den.is_negative() {
                (-num.clone(), -den.clone())
            } else {
                (num.clone(), den.clone())
            };
            let a0 = n.div_floor(&d);
            let mut r = &n - &a0 * &d;
            while !r.is_zero() && quotients.len() < depth {
                n = std::mem::replace(&mut d, r);
                let a = n.div_floor(&d);
                r = &n - &a * &d;
                quotients.push(to_quotient(a, quotients.len(), depth)?);
            }
            Ok((a0, quotients, r.is_zero()))
        }
        CfSource::Surd(s) => {
            let (mut p, mut q, disc) = s.reduced();
            let root = disc.sqrt();
            let floor_of = |p: &BigInt, q: &BigInt| {
                if q.is_positive() {
                    (p + &root).div_floor(q)
                } else {
                    (p + &root + BigInt::one()).div_floor(q)
                }
            };
            let a0 = floor_of(&p, &q);
            let mut a = a0.clone();
            for _ in 0..depth {
                p = &a * &q - &p;
                q = (&disc - &p * &p) / &q;
                a = floor_of(&p, &q);
                quotients.push(to_quotient(a.clone(), quotients.len(), depth)?);
            }
            Ok((a0, quotients, false))
        }
        CfSource::Enclosure { lo, hi } => {
            let start = |(n, d): &(BigInt, BigInt)| {
                if d.is_negative() {
                    (-n.clone(), -d.clone())
                } else {
                    (n.clone(), d.clone())
                }
            };
            let (mut n1, mut d1) = start(lo);
            let (mut n2, mut d2) = start(hi);
            let a0 = n1.div_floor(&d1);
            if a0 != n2.div_floor(&d2) {
                return Err(Error::Precision {
                    reached: 0,
                    requested: depth,
                });
            }
            let mut r1 = &n1 - &a0 * &d1;
            let mut r2 = &n2 - &a0 * &d2;
            while quotients.len() < depth {
                if r1.is_zero() || r2.is_zero() {
                    break;
                }
                n1 = std::mem::replace(&mut d1, r1);
                n2 = std::mem::replace(&mut d2, r2);
                let a = n1.div_floor(&d1);
                if a != n2.div_floor(&d2) {
                    break;
                }
                r1 = &n1 - &a * &d1;
                r2 = &n2 - &a * &d2;
                quotients.push(to_quotient(a, quotients.len(), depth)?);
            }
            if quotients.len() < depth {
                return Err(Error::Precision {
                    reached: quotients.len(),
                    requested: depth,
                });
            }
            Ok((a0, quotients, false))
        }
    }
}

/// Depth-`K` diagnostics: the largest of `a_1..a_K` and the smallest
/// `q * ||q x||` over the convergent denominators.
#[derive(Clone, Debug, PartialEq)]
pub struct BadnessProfile {
    pub max_quotient: u64,
    pub min_product: f64,
    /// `q_k ||q_k x||` per convergent, in order.
    pub products: Vec<f64>,
}

/// Extra quotients expanded beyond `K` so the complete quotients used for the
/// last convergent products are accurate.
const TAIL_GUARD: usize = 32;

pub fn badness_profile(x: &CfSource, depth: usize) -> Result<BadnessProfile> {
    if x.is_rational() {
        return Err(Error::usage("x", "rational input has no badness profile"));
    }
    let deep = cf_expand_available(x, depth + TAIL_GUARD)?;
    let k = depth.min(deep.depth());
    let max_quotient = deep.partial_quotients[..k].iter().copied().max().unwrap_or(0);
    let mut products = deep.convergent_products();
    products.truncate(k);
    let min_product = products.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(BadnessProfile {
        max_quotient,
        min_product,
        products,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> CfSource {
        CfSource::Surd(QuadraticSurd::new(1, 1, 5, 2).unwrap())
    }

    #[test]
    fn rational_terminates() {
        let cf = cf_expand(&CfSource::rational(7, 3).unwrap(), 10).unwrap();
        assert_eq!(cf.a0, BigInt::from(2));
        assert_eq!(cf.partial_quotients, vec![3]);
        assert!(cf.terminated);
        assert_eq!(cf.convergents.last().unwrap(), &(BigInt::from(7), BigInt::from(3)));
    }

    #[test]
    fn negative_rational_uses_floor() {
        let cf = cf_expand(&CfSource::rational(-7, 3).unwrap(), 10).unwrap();
        assert_eq!(cf.a0, BigInt::from(-3));
        assert_eq!(cf.partial_quotients, vec![1, 2]);
    }

    #[test]
    fn golden_ratio_all_ones() {
        let cf = cf_expand(&golden(), 20).unwrap();
        assert_eq!(cf.a0, BigInt::from(1));
        assert!(cf.partial_quotients.iter().all(|&a| a == 1));
        assert_eq!(cf.depth(), 20);
    }

    #[test]
    fn surd_with_negative_parts() {
        // (1 - sqrt 2) = -0.414..., which is [-1; 1, 1, 2, 2, 2, ...]
        let cf = cf_expand(&CfSource::Surd(QuadraticSurd::new(1, -1, 2, 1).unwrap()), 6).unwrap();
        assert_eq!(cf.a0, BigInt::from(-1));
        assert_eq!(cf.partial_quotients, vec![1, 1, 2, 2, 2, 2]);
        // sqrt(3)/(-2) = -0.866... = [-1; 7, 2, 6, 2, 6]
        let cf = cf_expand(&CfSource::Surd(QuadraticSurd::new(0, 1, 3, -2).unwrap()), 5).unwrap();
        assert_eq!(cf.a0, BigInt::from(-1));
        assert_eq!(cf.partial_quotients, vec![7, 2, 6, 2, 6]);
    }

    #[test]
    fn decimal_runs_out_of_precision() {
        let pi = CfSource::decimal("3.1415926").unwrap();
        match cf_expand(&pi, 20) {
            Err(Error::Precision { reached, requested }) => {
                assert!(reached >= 2 && reached < 20);
                assert_eq!(requested, 20);
            }
            other => panic!("expected precision error, got {other:?}"),
        }
        let cf = cf_expand_available(&pi, 20).unwrap();
        assert_eq!(&cf.partial_quotients[..2], &[7, 15]);
    }

    #[test]
    fn convergent_recurrence_holds() {
        let cf = cf_expand(&CfSource::Surd(QuadraticSurd::new(0, 1, 7, 1).unwrap()), 40).unwrap();
        for k in 2..cf.convergents.len() {
            let a = BigInt::from(cf.partial_quotients[k - 1]);
            let (p, q) = &cf.convergents[k];
            assert_eq!(*p, &a * &cf.convergents[k - 1].0 + &cf.convergents[k - 2].0);
            assert_eq!(*q, &a * &cf.convergents[k - 1].1 + &cf.convergents[k - 2].1);
            assert!(q > &cf.convergents[k - 1].1);
        }
    }

    #[test]
    fn rational_badness_is_usage_error() {
        assert!(badness_profile(&CfSource::rational(1, 3).unwrap(), 5)
            .unwrap_err()
            .is_usage());
    }

    #[test]
    fn invalid_surds_rejected() {
        assert!(QuadraticSurd::new(1, 1, 4, 1).is_err());
        assert!(QuadraticSurd::new(1, 1, 2, 0).is_err());
        assert!(CfSource::decimal("1.2.3").is_err());
        assert!(CfSource::decimal("abc").is_err());
    }

    #[test]
    fn ratio_conversion() {
        let v = ratio_to_f64(&BigInt::from(1), &BigInt::from(3));
        assert_eq!(v, 1.0 / 3.0);
        let big = num_traits::pow(BigInt::from(10), 40);
        assert!((ratio_to_f64(&(&big * 7), &big) - 7.0).abs() < 1e-15);
    }
}
