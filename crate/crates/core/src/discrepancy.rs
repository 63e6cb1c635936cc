//! Discrepancy of finite point sets: closed forms in one dimension, an exact
//! box enumeration for small sets in `d <= 2`, and the Koksma–Erdős–Turán
//! upper bound in any dimension.

use std::fmt;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::TorusPointSet;
use crate::numtheory::{weyl_sum, FrequencyVector};
use crate::sequences::{generate, SequenceSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiscMode {
    Exact1dStar,
    Exact1dExtreme,
    BruteStar,
    BruteExtreme,
    KetBound,
}

impl fmt::Display for DiscMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiscMode::Exact1dStar => "exact1d_star",
            DiscMode::Exact1dExtreme => "exact1d_extreme",
            DiscMode::BruteStar => "brute_star",
            DiscMode::BruteExtreme => "brute_extreme",
            DiscMode::KetBound => "ket_bound",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiscrepancyResult {
    pub n: usize,
    pub dim: usize,
    pub mode: DiscMode,
    pub value: f64,
    /// `(m, C_d)` for [`DiscMode::KetBound`].
    pub ket_params: Option<(u32, f64)>,
}

pub const DISC_CSV_HEADER: &str = "N,d,mode,value,m,C_d";

impl DiscrepancyResult {
    pub fn csv_row(&self) -> String {
        let (m, c) = match self.ket_params {
            Some((m, c)) => (m.to_string(), c.to_string()),
            None => (String::new(), String::new()),
        };
        format!("{},{},{},{},{},{}", self.n, self.dim, self.mode, self.value, m, c)
    }
}

fn sorted_1d(points: &TorusPointSet) -> Result<Vec<f64>> {
    if points.dim() != 1 {
        return Err(Error::usage("d", format!("one-dimensional formula applied to d = {}", points.dim())));
    }
    if points.is_empty() {
        return Err(Error::usage("n", "empty point set"));
    }
    let mut xs = points.as_flat().to_vec();
    xs.sort_by(f64::total_cmp);
    Ok(xs)
}

/// Anchored discrepancy `1/(2N) + max_i |x_(i) - (2i-1)/(2N)|`.
pub fn star_disc_1d(points: &TorusPointSet) -> Result<DiscrepancyResult> {
    let xs = sorted_1d(points)?;
    let n = xs.len() as f64;
    let worst = xs
        .iter()
        .enumerate()
        .map(|(i, x)| (x - (2 * i + 1) as f64 / (2.0 * n)).abs())
        .fold(0.0, f64::max);
    Ok(DiscrepancyResult {
        n: xs.len(),
        dim: 1,
        mode: DiscMode::Exact1dStar,
        value: 1.0 / (2.0 * n) + worst,
        ket_params: None,
    })
}

/// Discrepancy over all intervals `[a, b)`: `1/N + max(i/N - x_(i)) - min(i/N - x_(i))`.
pub fn extreme_disc_1d(points: &TorusPointSet) -> Result<DiscrepancyResult> {
    let xs = sorted_1d(points)?;
    let n = xs.len() as f64;
    let (lo, hi) = xs
        .iter()
        .enumerate()
        .map(|(i, x)| (i + 1) as f64 / n - x)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    Ok(DiscrepancyResult {
        n: xs.len(),
        dim: 1,
        mode: DiscMode::Exact1dExtreme,
        value: 1.0 / n + hi - lo,
        ket_params: None,
    })
}

/// Largest set accepted by [`brute_disc`] for anchored boxes.
pub const BRUTE_MAX_N: usize = 500;
/// Largest set accepted by [`brute_disc`] for unanchored boxes in two dimensions.
pub const BRUTE_MAX_N_EXTREME_2D: usize = 40;

/// One side of a box along one axis: a cut into the sorted distinct values
/// (points with rank `< cut` lie below it) and the coordinate used for volume.
#[derive(Clone, Copy)]
struct Face {
    cut: usize,
    at: f64,
}

struct Axis {
    lower: Vec<Face>,
    upper: Vec<Face>,
    rank: Vec<usize>,
    distinct: usize,
}

impl Axis {
    fn new(values: &[f64], anchored: bool) -> Axis {
        let mut distinct: Vec<f64> = values.to_vec();
        distinct.sort_by(f64::total_cmp);
        distinct.dedup();
        let m = distinct.len();
        let rank = values
            .iter()
            .map(|v| distinct.partition_point(|d| d < v))
            .collect();
        let mut lower = vec![Face { cut: 0, at: 0.0 }];
        let mut upper = vec![Face { cut: m, at: 1.0 }];
        for (j, &v) in distinct.iter().enumerate() {
            // x >= v keeps rank j, x > v starts at rank j + 1
            if !anchored {
                lower.push(Face { cut: j, at: v });
                lower.push(Face { cut: j + 1, at: v });
            }
            // x < v stops before rank j, x <= v includes it
            upper.push(Face { cut: j, at: v });
            upper.push(Face { cut: j + 1, at: v });
        }
        Axis {
            lower,
            upper,
            rank,
            distinct: m,
        }
    }
}

/// Exact supremum over boxes whose faces pass through point coordinates (or
/// 0 and 1), with each face taken both open and closed. `anchored` restricts
/// to boxes `[0, b)`.
pub fn brute_disc(points: &TorusPointSet, anchored: bool) -> Result<DiscrepancyResult> {
    let n = points.len();
    let d = points.dim();
    if n == 0 {
        return Err(Error::usage("n", "empty point set"));
    }
    let limit = if anchored || d == 1 { BRUTE_MAX_N } else { BRUTE_MAX_N_EXTREME_2D };
    if d > 2 || n > limit {
        return Err(Error::Guard {
            what: format!("brute-force discrepancy for N = {n}, d = {d}"),
            limit: format!("requires d <= 2 and N <= {limit}"),
        });
    }
    let axes: Vec<Axis> = (0..d)
        .map(|k| {
            let vals: Vec<f64> = points.iter().map(|p| p[k]).collect();
            Axis::new(&vals, anchored)
        })
        .collect();
    let nf = n as f64;
    let value = if d == 1 {
        let ax = &axes[0];
        let mut prefix = vec![0usize; ax.distinct + 1];
        for &r in &ax.rank {
            prefix[r + 1] += 1;
        }
        for i in 0..ax.distinct {
            prefix[i + 1] += prefix[i];
        }
        let mut worst = 0.0f64;
        for lo in &ax.lower {
            for hi in ax.upper.iter().filter(|hi| hi.cut >= lo.cut && hi.at >= lo.at) {
                let count = (prefix[hi.cut] - prefix[lo.cut]) as f64;
                worst = worst.max((count / nf - (hi.at - lo.at)).abs());
            }
        }
        worst
    } else {
        let (ax, ay) = (&axes[0], &axes[1]);
        let w = ay.distinct + 1;
        let mut table = vec![0usize; (ax.distinct + 1) * w];
        for (&rx, &ry) in ax.rank.iter().zip(&ay.rank) {
            table[(rx + 1) * w + ry + 1] += 1;
        }
        for i in 1..=ax.distinct {
            for j in 1..=ay.distinct {
                table[i * w + j] += table[(i - 1) * w + j] + table[i * w + j - 1] - table[(i - 1) * w + j - 1];
            }
        }
        let at = |i: usize, j: usize| table[i * w + j] as f64;
        ax.lower
            .par_iter()
            .map(|lx| {
                let mut worst = 0.0f64;
                for hx in ax.upper.iter().filter(|h| h.cut >= lx.cut && h.at >= lx.at) {
                    let wx = hx.at - lx.at;
                    for ly in &ay.lower {
                        for hy in ay.upper.iter().filter(|h| h.cut >= ly.cut && h.at >= ly.at) {
                            let count = at(hx.cut, hy.cut) - at(lx.cut, hy.cut) - at(hx.cut, ly.cut) + at(lx.cut, ly.cut);
                            worst = worst.max((count / nf - wx * (hy.at - ly.at)).abs());
                        }
                    }
                }
                worst
            })
            .reduce(|| 0.0, f64::max)
    };
    Ok(DiscrepancyResult {
        n,
        dim: d,
        mode: if anchored { DiscMode::BruteStar } else { DiscMode::BruteExtreme },
        value,
        ket_params: None,
    })
}

/// Default Koksma–Erdős–Turán constant: 4 in one dimension, `4 * 3^(d-1)` above.
pub fn default_ket_constant(d: usize) -> f64 {
    4.0 * 3f64.powi(d as i32 - 1)
}

/// `C_d (1/m + sum_{0 < |h|_inf <= m} |W(h)| / r(h))`, `r(h) = prod max(|h_j|, 1)`.
pub fn ket_bound(points: &TorusPointSet, m: u32, c_d: f64) -> Result<DiscrepancyResult> {
    if m == 0 {
        return Err(Error::usage("m", "m must be at least 1"));
    }
    if points.is_empty() {
        return Err(Error::usage("n", "empty point set"));
    }
    let d = points.dim();
    let side = 2 * m as usize + 1;
    let total = side.checked_pow(d as u32).ok_or_else(|| Error::usage("m", "frequency box too large"))?;
    // h and -h give conjugate sums, so only the lexicographically positive half is evaluated
    let half: Vec<Vec<i64>> = (0..total)
        .filter_map(|code| {
            let mut rest = code;
            let h: Vec<i64> = (0..d)
                .map(|_| {
                    let v = (rest % side) as i64 - m as i64;
                    rest /= side;
                    v
                })
                .collect();
            let leading = h.iter().rev().copied().find(|&v| v != 0);
            (leading > Some(0)).then_some(h)
        })
        .collect();
    let terms: Vec<f64> = half
        .par_iter()
        .map(|h| {
            let r: f64 = h.iter().map(|&v| (v.unsigned_abs().max(1)) as f64).product();
            let freq = FrequencyVector::new(h.clone()).expect("nonzero by construction");
            weyl_sum(points, &freq).map(|w| w.norm() / r)
        })
        .collect::<Result<_>>()?;
    let sum: f64 = terms.iter().sum();
    Ok(DiscrepancyResult {
        n: points.len(),
        dim: d,
        mode: DiscMode::KetBound,
        value: c_d * (1.0 / m as f64 + 2.0 * sum),
        ket_params: Some((m, c_d)),
    })
}

/// Frequency cutoff used by [`low_disc_scaling`] when it falls back to the KET monitor.
pub const SCALING_KET_M: u32 = 16;

#[derive(Clone, Debug, PartialEq)]
pub struct ScalingPoint {
    pub n: usize,
    pub discrepancy: DiscrepancyResult,
    /// `N D_N / (log N)^d`.
    pub scaled: f64,
}

/// `N D_N / (log N)^d` along a ladder of prefix sizes of one generated run.
///
/// One dimension uses the exact all-intervals formula; two dimensions use
/// the unanchored box enumeration while `N` is within its guard; everything
/// else uses the KET bound with `m = SCALING_KET_M`.
pub fn low_disc_scaling(spec: &SequenceSpec, ladder: &[usize]) -> Result<Vec<ScalingPoint>> {
    if ladder.is_empty() {
        return Err(Error::usage("ladder", "empty ladder"));
    }
    if ladder.iter().any(|&n| n < 2) {
        return Err(Error::usage("ladder", "ladder rungs must be at least 2 (log 1 = 0)"));
    }
    let n_max = *ladder.iter().max().expect("nonempty");
    let all = generate(spec, n_max)?;
    let d = all.dim();
    ladder
        .iter()
        .map(|&n| {
            let pts = all.prefix(n)?;
            let discrepancy = match d {
                1 => extreme_disc_1d(&pts)?,
                2 if n <= BRUTE_MAX_N_EXTREME_2D => brute_disc(&pts, false)?,
                _ => ket_bound(&pts, SCALING_KET_M, default_ket_constant(d))?,
            };
            let scaled = n as f64 * discrepancy.value / (n as f64).ln().powi(d as i32);
            Ok(ScalingPoint { n, discrepancy, scaled })
        })
        .collect()
}

pub fn scaling_csv(points: &[ScalingPoint]) -> String {
    let mut out = format!("{DISC_CSV_HEADER},scaled\n");
    for p in points {
        let _ = writeln!(out, "{},{}", p.discrepancy.csv_row(), p.scaled);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set1(c: &[f64]) -> TorusPointSet {
        TorusPointSet::from_flat(1, c.to_vec()).unwrap()
    }

    #[test]
    fn left_endpoints() {
        let n = 8;
        let pts = set1(&(0..n).map(|i| i as f64 / n as f64).collect::<Vec<_>>());
        assert!((star_disc_1d(&pts).unwrap().value - 0.125).abs() < 1e-15);
        assert!((extreme_disc_1d(&pts).unwrap().value - 0.125).abs() < 1e-15);
        assert!((brute_disc(&pts, true).unwrap().value - 0.125).abs() < 1e-15);
        assert!((brute_disc(&pts, false).unwrap().value - 0.125).abs() < 1e-15);
    }

    #[test]
    fn single_point_at_origin() {
        let pts = set1(&[0.0]);
        assert_eq!(star_disc_1d(&pts).unwrap().value, 1.0);
        assert_eq!(brute_disc(&pts, true).unwrap().value, 1.0);
    }

    #[test]
    fn four_centred_points_in_the_square() {
        let c = [0.25, 0.75];
        let coords: Vec<f64> = c.iter().flat_map(|&x| c.iter().flat_map(move |&y| [x, y])).collect();
        let pts = TorusPointSet::from_flat(2, coords).unwrap();
        // the closed box [0, 3/4]^2 holds all four points but has volume 9/16
        assert!((brute_disc(&pts, true).unwrap().value - 7.0 / 16.0).abs() < 1e-15);
        assert!(brute_disc(&pts, false).unwrap().value >= 7.0 / 16.0);
    }

    #[test]
    fn wrong_dimension_and_guards() {
        let pts = TorusPointSet::from_flat(2, vec![0.1, 0.2]).unwrap();
        assert!(star_disc_1d(&pts).unwrap_err().is_usage());
        assert!(extreme_disc_1d(&pts).unwrap_err().is_usage());
        let big = TorusPointSet::from_flat(2, vec![0.5; 2 * (BRUTE_MAX_N_EXTREME_2D + 1)]).unwrap();
        assert!(matches!(brute_disc(&big, false), Err(Error::Guard { .. })));
        assert!(brute_disc(&big, true).is_ok());
        let cube = TorusPointSet::from_flat(3, vec![0.5; 3]).unwrap();
        assert!(matches!(brute_disc(&cube, true), Err(Error::Guard { .. })));
    }

    #[test]
    fn ket_vanishes_on_full_periods() {
        let n = 16;
        let pts = set1(&(0..n).map(|i| i as f64 / n as f64).collect::<Vec<_>>());
        for m in [1u32, 5, 15] {
            let r = ket_bound(&pts, m, 4.0).unwrap();
            assert!((r.value - 4.0 / m as f64).abs() < 1e-12, "m={m}: {}", r.value);
        }
        assert!(ket_bound(&pts, 0, 4.0).unwrap_err().is_usage());
    }

    #[test]
    fn ket_in_two_dimensions_counts_each_frequency_once() {
        // one point at the origin: every Weyl sum is 1
        let pts = TorusPointSet::from_flat(2, vec![0.0, 0.0]).unwrap();
        let r = ket_bound(&pts, 1, 1.0).unwrap();
        // h in {-1,0,1}^2 \ 0: eight frequencies, each with r(h) = 1
        assert!((r.value - (1.0 + 8.0)).abs() < 1e-12);
    }

    #[test]
    fn csv_row_leaves_empty_fields() {
        let r = extreme_disc_1d(&set1(&[0.0, 0.5])).unwrap();
        assert_eq!(r.csv_row(), "2,1,exact1d_extreme,0.5,,");
        let k = ket_bound(&set1(&[0.0, 0.5]), 1, 4.0).unwrap();
        assert!(k.csv_row().ends_with(",1,4"));
    }
}
