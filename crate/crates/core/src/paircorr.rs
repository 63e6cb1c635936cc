//! The pair correlation statistic
//! `F_N^beta(s) = #{k != l : ||x_k - x_l||_inf <= s / N^beta} / N^(2 - beta d)`, which tends
//! to `(2s)^d` for well spread points; at `beta = 1/d` this is the count divided by `N`.
//!
//! Counts are exact integers over ordered pairs. [`pair_corr_naive`] is the
//! quadratic reference; the grid path buckets points into a periodic cell
//! list whose cells are at least as wide as the largest threshold, so only
//! the `3^d` surrounding cells need to be examined. In one dimension
//! [`Method::Auto`] instead sorts the coordinates and counts by binary search.

use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{sup_distance, TorusPointSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Method {
    Naive,
    Grid,
    #[default]
    Auto,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Method::Naive),
            "grid" => Ok(Method::Grid),
            "auto" => Ok(Method::Auto),
            _ => Err(Error::usage("method", format!("expected naive, grid or auto, got {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairCorrQuery {
    pub beta: f64,
    pub s_values: Vec<f64>,
    pub method: Method,
}

impl PairCorrQuery {
    pub fn new(beta: f64, s_values: Vec<f64>, method: Method) -> Result<Self> {
        if !(beta >= 0.0 && beta.is_finite()) {
            return Err(Error::usage("beta", "beta must be a finite value >= 0"));
        }
        if s_values.is_empty() {
            return Err(Error::usage("s", "at least one s value is required"));
        }
        if s_values.iter().any(|&s| !(s > 0.0 && s.is_finite())) {
            return Err(Error::usage("s", "s values must be positive and finite"));
        }
        if s_values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::usage("s", "s values must be sorted ascending"));
        }
        Ok(PairCorrQuery {
            beta,
            s_values,
            method,
        })
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if self.beta > 1.0 / dim as f64 + 1e-12 {
            return Err(Error::usage("beta", format!("beta {} exceeds 1/d = 1/{dim}", self.beta)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairCorrEntry {
    pub s: f64,
    pub threshold: f64,
    /// Ordered pairs `(k, l)`, `k != l`, within the threshold.
    pub count: u64,
    pub f: f64,
    /// The Poissonian limit `(2s)^d`.
    pub target: f64,
}

impl PairCorrEntry {
    pub fn abs_err(&self) -> f64 {
        (self.f - self.target).abs()
    }

    pub fn rel_err(&self) -> f64 {
        self.abs_err() / self.target
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairCorrResult {
    pub n: usize,
    pub dim: usize,
    pub beta: f64,
    pub entries: Vec<PairCorrEntry>,
}

pub const PAIR_CORR_CSV_HEADER: &str = "N,d,beta,s,threshold,count,F,target,abs_err";

impl PairCorrResult {
    pub fn entry(&self, s: f64) -> Option<&PairCorrEntry> {
        self.entries.iter().find(|e| e.s == s)
    }

    /// Data rows without a header.
    pub fn csv_rows(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                self.n,
                self.dim,
                self.beta,
                e.s,
                e.threshold,
                e.count,
                e.f,
                e.target,
                e.abs_err()
            );
        }
        out
    }

    pub fn to_csv(&self) -> String {
        format!("{PAIR_CORR_CSV_HEADER}\n{}", self.csv_rows())
    }
}

fn thresholds(n: usize, q: &PairCorrQuery) -> Vec<f64> {
    let scale = (n as f64).powf(q.beta);
    q.s_values.iter().map(|s| s / scale).collect()
}

fn assemble(points: &TorusPointSet, q: &PairCorrQuery, thr: &[f64], hist: &[u64]) -> PairCorrResult {
    let n = points.len();
    let d = points.dim();
    let norm = (n as f64).powf(2.0 - q.beta * d as f64);
    let mut running = 0u64;
    let entries = q
        .s_values
        .iter()
        .zip(thr)
        .zip(hist)
        .map(|((&s, &threshold), &h)| {
            running += h;
            PairCorrEntry {
                s,
                threshold,
                count: running,
                f: running as f64 / norm,
                target: (2.0 * s).powi(d as i32),
            }
        })
        .collect();
    PairCorrResult {
        n,
        dim: d,
        beta: q.beta,
        entries,
    }
}

fn validate(points: &TorusPointSet, q: &PairCorrQuery) -> Result<()> {
    if points.len() < 2 {
        return Err(Error::usage("n", "pair correlation needs at least 2 points"));
    }
    q.check_dim(points.dim())
}

/// Adds one pair at distance `dist` to the bucket of the smallest threshold
/// that admits it. Bucket `thr.len()` collects pairs beyond every threshold.
#[inline]
fn record(thr: &[f64], hist: &mut [u64], dist: f64) {
    if dist <= thr[thr.len() - 1] {
        let idx = thr.partition_point(|&t| t < dist);
        hist[idx] += 1;
    }
}

fn add_hist(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

pub fn pair_corr(points: &TorusPointSet, q: &PairCorrQuery) -> Result<PairCorrResult> {
    match q.method {
        Method::Naive => pair_corr_naive(points, q),
        Method::Auto if points.dim() == 1 => pair_corr_sorted(points, q),
        Method::Grid | Method::Auto => pair_corr_grid(points, q),
    }
}

/// Quadratic reference count over all unordered pairs, doubled.
pub fn pair_corr_naive(points: &TorusPointSet, q: &PairCorrQuery) -> Result<PairCorrResult> {
    validate(points, q)?;
    let thr = thresholds(points.len(), q);
    Ok(assemble(points, q, &thr, &naive_hist(points, &thr)))
}

fn naive_hist(points: &TorusPointSet, thr: &[f64]) -> Vec<u64> {
    let n = points.len();
    let hist = (0..n)
        .into_par_iter()
        .fold(
            || vec![0u64; thr.len()],
            |mut hist, i| {
                let a = points.point(i);
                for j in i + 1..n {
                    record(thr, &mut hist, sup_distance(a, points.point(j)));
                }
                hist
            },
        )
        .reduce(|| vec![0u64; thr.len()], add_hist);
    hist.into_iter().map(|h| 2 * h).collect()
}

/// Thresholds above this fall back to the naive count (fewer than three cells per axis).
pub const GRID_MAX_THRESHOLD: f64 = 1.0 / 3.0;
/// Cap on the total number of cells, as a multiple of `N`.
const CELLS_PER_POINT: usize = 4;

/// Cells per axis for a cell list whose cell width strictly exceeds `max_thr`,
/// or `None` when the naive count should be used instead.
fn cells_per_axis(n: usize, dim: usize, max_thr: f64) -> Option<usize> {
    if max_thr > GRID_MAX_THRESHOLD {
        return None;
    }
    // the margin keeps floor(x m) and floor(y m) within one cell of each other
    // for every pair whose rounded distance is <= max_thr
    let by_width = ((1.0 - 1e-9) / max_thr).floor();
    let budget = ((CELLS_PER_POINT * n).max(27) as f64).powf(1.0 / dim as f64).floor();
    let m = by_width.min(budget).min(u32::MAX as f64) as usize;
    (m >= 3).then_some(m)
}

fn pair_corr_grid(points: &TorusPointSet, q: &PairCorrQuery) -> Result<PairCorrResult> {
    validate(points, q)?;
    let thr = thresholds(points.len(), q);
    let max_thr = thr[thr.len() - 1];
    let hist = match cells_per_axis(points.len(), points.dim(), max_thr) {
        Some(m) => CellList::build(points, m).hist(&thr),
        None => naive_hist(points, &thr),
    };
    Ok(assemble(points, q, &thr, &hist))
}

/// Pairs whose gap is this far inside or outside a threshold are classified
/// without evaluating their distance; the rest are checked exactly.
const SWEEP_MARGIN: f64 = 1e-12;

/// One-dimensional count over sorted coordinates. Produces the same integers
/// as the naive count.
fn pair_corr_sorted(points: &TorusPointSet, q: &PairCorrQuery) -> Result<PairCorrResult> {
    validate(points, q)?;
    let thr = thresholds(points.len(), q);
    if thr[thr.len() - 1] > GRID_MAX_THRESHOLD {
        return Ok(assemble(points, q, &thr, &naive_hist(points, &thr)));
    }
    let mut xs = points.as_flat().to_vec();
    xs.sort_by(f64::total_cmp);
    let exact = |a: f64, b: f64, t: f64| sup_distance(&[a], &[b]) <= t;
    let cumulative: Vec<u64> = thr
        .iter()
        .map(|&t| {
            (0..xs.len())
                .into_par_iter()
                .map(|i| {
                    let x = xs[i];
                    let rest = &xs[i + 1..];
                    let below = |bound: f64| rest.partition_point(|&y| y <= bound);
                    let above = |bound: f64| rest.partition_point(|&y| y < bound);
                    let near_in = below(x + t - SWEEP_MARGIN);
                    let near_band = below(x + t + SWEEP_MARGIN);
                    let wrap_band = above(x + 1.0 - t - SWEEP_MARGIN);
                    let wrap_in = above(x + 1.0 - t + SWEEP_MARGIN);
                    let mut k = (near_in + rest.len() - wrap_in) as u64;
                    for &y in rest[near_in..near_band].iter().chain(&rest[wrap_band..wrap_in]) {
                        k += u64::from(exact(x, y, t));
                    }
                    k
                })
                .sum::<u64>()
        })
        .collect();
    let mut prev = 0;
    let hist: Vec<u64> = cumulative
        .iter()
        .map(|&c| {
            let h = 2 * (c - prev);
            prev = c;
            h
        })
        .collect();
    Ok(assemble(points, q, &thr, &hist))
}

/// Periodic cell list: points sorted by cell, `start[c]..start[c+1]` indexing cell `c`.
struct CellList {
    dim: usize,
    m: usize,
    start: Vec<usize>,
    coords: Vec<f64>,
}

impl CellList {
    fn build(points: &TorusPointSet, m: usize) -> Self {
        let dim = points.dim();
        let n_cells = m.pow(dim as u32);
        let cell_of = |p: &[f64]| {
            p.iter().rev().fold(0usize, |acc, &x| {
                let c = ((x * m as f64) as usize).min(m - 1);
                acc * m + c
            })
        };
        let ids: Vec<usize> = points.iter().map(cell_of).collect();
        let mut start = vec![0usize; n_cells + 1];
        for &c in &ids {
            start[c + 1] += 1;
        }
        for c in 0..n_cells {
            start[c + 1] += start[c];
        }
        let mut fill = start.clone();
        let mut coords = vec![0.0; points.as_flat().len()];
        for (p, &c) in points.iter().zip(&ids) {
            let slot = fill[c];
            coords[slot * dim..(slot + 1) * dim].copy_from_slice(p);
            fill[c] += 1;
        }
        CellList { dim, m, start, coords }
    }

    fn cell_points(&self, c: usize) -> &[f64] {
        &self.coords[self.start[c] * self.dim..self.start[c + 1] * self.dim]
    }

    /// Linear ids of the `3^d` cells around `c` (distinct because `m >= 3`).
    fn neighbours(&self, c: usize, out: &mut Vec<usize>) {
        out.clear();
        let total = 3usize.pow(self.dim as u32);
        for k in 0..total {
            let (mut rest, mut code, mut stride, mut id) = (c, k, 1usize, 0usize);
            for _ in 0..self.dim {
                let coord = rest % self.m;
                rest /= self.m;
                let shifted = (coord + self.m - 1 + code % 3) % self.m;
                code /= 3;
                id += shifted * stride;
                stride *= self.m;
            }
            out.push(id);
        }
    }

    fn hist(&self, thr: &[f64]) -> Vec<u64> {
        let n_cells = self.start.len() - 1;
        let dim = self.dim;
        (0..n_cells)
            .into_par_iter()
            .fold(
                || (vec![0u64; thr.len()], Vec::with_capacity(3usize.pow(dim as u32))),
                |(mut hist, mut nb), c| {
                    let own = self.cell_points(c);
                    if own.is_empty() {
                        return (hist, nb);
                    }
                    self.neighbours(c, &mut nb);
                    for &other in &nb {
                        let theirs = self.cell_points(other);
                        let same = other == c;
                        for (i, a) in own.chunks_exact(dim).enumerate() {
                            for (j, b) in theirs.chunks_exact(dim).enumerate() {
                                if same && i == j {
                                    continue;
                                }
                                record(thr, &mut hist, sup_distance(a, b));
                            }
                        }
                    }
                    (hist, nb)
                },
            )
            .map(|(hist, _)| hist)
            .reduce(|| vec![0u64; thr.len()], add_hist)
    }
}
