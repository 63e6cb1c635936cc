//! Points on the d-dimensional unit torus and the nearest-integer sup-norm.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// Fractional part `x - floor(x)`, with a rounded-up `1.0` folded back to `0.0`.
#[inline]
pub fn frac(x: f64) -> f64 {
    let f = x - x.floor();
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

/// Distance from `x` to the nearest integer.
#[inline]
pub fn dist_to_nearest_integer(x: f64) -> f64 {
    let f = frac(x.abs());
    f.min(1.0 - f)
}

/// Sup-norm torus distance between two coordinate slices of equal length.
///
/// Both slices are expected to hold reduced coordinates in `[0, 1)`, in which
/// case `|a_i - b_i|` is already below one and no further reduction is needed.
#[inline]
pub fn sup_distance(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut worst = 0.0f64;
    for (x, y) in a.iter().zip(b) {
        let diff = (x - y).abs();
        let wrapped = diff.min(1.0 - diff);
        if wrapped > worst {
            worst = wrapped;
        }
    }
    worst
}

/// A single point of `[0,1)^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusPoint(Vec<f64>);

impl TorusPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::usage("dim", "a torus point needs at least one coordinate"));
        }
        if let Some(c) = coords.iter().find(|c| !(0.0..1.0).contains(*c)) {
            return Err(Error::usage("coords", format!("coordinate {c} outside [0,1)")));
        }
        Ok(TorusPoint(coords))
    }

    /// Reduces arbitrary reals mod 1.
    pub fn wrapped(coords: &[f64]) -> Result<Self> {
        TorusPoint::new(coords.iter().map(|&c| frac(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }
}

/// Sup-norm torus distance `max_i ||a_i - b_i||`, a value in `[0, 1/2]`.
pub fn torus_dist_sup(a: &TorusPoint, b: &TorusPoint) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::usage(
            "dim",
            format!("dimension mismatch: {} vs {}", a.dim(), b.dim()),
        ));
    }
    Ok(sup_distance(a.coords(), b.coords()))
}

/// An ordered, immutable set of `N` points in `[0,1)^d`, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusPointSet {
    dim: usize,
    coords: Vec<f64>,
}

impl TorusPointSet {
    /// Builds a set from row-major coordinates, validating the range of each one.
    pub fn from_flat(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::usage("dim", "dimension must be at least 1"));
        }
        if coords.len() % dim != 0 {
            return Err(Error::usage(
                "dim",
                format!("{} coordinates do not split into rows of {dim}", coords.len()),
            ));
        }
        if let Some(c) = coords.iter().find(|c| !(0.0..1.0).contains(*c)) {
            return Err(Error::usage("coords", format!("coordinate {c} outside [0,1)")));
        }
        Ok(TorusPointSet { dim, coords })
    }

    pub fn from_points(points: &[TorusPoint]) -> Result<Self> {
        let dim = points
            .first()
            .map(TorusPoint::dim)
            .ok_or_else(|| Error::usage("n", "empty point list"))?;
        let mut coords = Vec::with_capacity(points.len() * dim);
        for p in points {
            if p.dim() != dim {
                return Err(Error::usage("dim", "points of mixed dimension"));
            }
            coords.extend_from_slice(p.coords());
        }
        Ok(TorusPointSet { dim, coords })
    }

    /// Callers guarantee every coordinate already lies in `[0,1)`.
    pub(crate) fn from_flat_unchecked(dim: usize, coords: Vec<f64>) -> Self {
        debug_assert!(coords.iter().all(|c| (0.0..1.0).contains(c)));
        TorusPointSet { dim, coords }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Coordinates of point `i` (0-based).
    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.coords
    }

    /// Returns the first `m` points.
    pub fn prefix(&self, m: usize) -> Result<TorusPointSet> {
        if m > self.len() {
            return Err(Error::usage(
                "n",
                format!("prefix of {m} points requested from a set of {}", self.len()),
            ));
        }
        Ok(TorusPointSet {
            dim: self.dim,
            coords: self.coords[..m * self.dim].to_vec(),
        })
    }

    /// Adds `shift` to every point, mod 1.
    pub fn translated(&self, shift: &[f64]) -> Result<TorusPointSet> {
        if shift.len() != self.dim {
            return Err(Error::usage("dim", "shift dimension mismatch"));
        }
        let coords = self
            .coords
            .chunks_exact(self.dim)
            .flat_map(|p| p.iter().zip(shift).map(|(c, t)| frac(c + t)))
            .collect();
        Ok(TorusPointSet {
            dim: self.dim,
            coords,
        })
    }

    /// Point CSV text: a `dim=<d>` header, then one line of `d` coordinates per point.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.coords.len() * 26 + 16);
        let _ = writeln!(out, "dim={}", self.dim);
        for p in self.iter() {
            for (i, c) in p.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{c:.17e}");
            }
            out.push('\n');
        }
        out
    }

    pub fn parse_csv(text: &str, origin: &Path) -> Result<TorusPointSet> {
        let bad = |line: usize, message: String| Error::Format {
            path: origin.to_path_buf(),
            message: format!("line {line}: {message}"),
        };
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| bad(1, "missing dim=<d> header".into()))?;
        let dim: usize = header
            .trim()
            .strip_prefix("dim=")
            .and_then(|d| d.parse().ok())
            .filter(|&d| d >= 1)
            .ok_or_else(|| bad(1, format!("expected dim=<d>, found {header:?}")))?;
        let mut coords = Vec::new();
        for (idx, line) in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let before = coords.len();
            for field in line.split(',') {
                let c: f64 = field
                    .trim()
                    .parse()
                    .map_err(|_| bad(idx + 1, format!("not a number: {field:?}")))?;
                if !(0.0..1.0).contains(&c) {
                    return Err(bad(idx + 1, format!("coordinate {c} outside [0,1)")));
                }
                coords.push(c);
            }
            if coords.len() - before != dim {
                return Err(bad(
                    idx + 1,
                    format!("expected {dim} coordinates, found {}", coords.len() - before),
                ));
            }
        }
        Ok(TorusPointSet { dim, coords })
    }

    pub fn read_csv(path: &Path) -> Result<TorusPointSet> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        TorusPointSet::parse_csv(&text, path)
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_csv()).map_err(|e| Error::io(path, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(c: &[f64]) -> TorusPoint {
        TorusPoint::new(c.to_vec()).unwrap()
    }

    #[test]
    fn distance_examples() {
        let d = torus_dist_sup(&pt(&[0.9]), &pt(&[0.1])).unwrap();
        assert!((d - 0.2).abs() < 1e-15);
        assert_eq!(torus_dist_sup(&pt(&[0.3, 0.7]), &pt(&[0.3, 0.7])).unwrap(), 0.0);
        let d = torus_dist_sup(&pt(&[0.95, 0.50]), &pt(&[0.05, 0.25])).unwrap();
        assert!((d - 0.25).abs() < 1e-15);
    }

    #[test]
    fn dimension_mismatch_is_usage_error() {
        let err = torus_dist_sup(&pt(&[0.1]), &pt(&[0.1, 0.2])).unwrap_err();
        assert!(err.is_usage());
    }

    #[test]
    fn frac_never_returns_one() {
        assert_eq!(frac(-1e-20), 0.0);
        assert_eq!(frac(3.0), 0.0);
        assert!((frac(-0.25) - 0.75).abs() < 1e-16);
    }

    #[test]
    fn rejects_out_of_range_points() {
        assert!(TorusPoint::new(vec![1.0]).is_err());
        assert!(TorusPoint::new(vec![]).is_err());
        assert!(TorusPointSet::from_flat(2, vec![0.1, 0.2, 0.3]).is_err());
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let set = TorusPointSet::from_flat(2, vec![0.1, 0.2, 1.0 / 3.0, 0.999_999_999_999]).unwrap();
        let text = set.to_csv();
        assert!(text.starts_with("dim=2\n"));
        assert!(text.ends_with('\n'));
        let back = TorusPointSet::parse_csv(&text, Path::new("mem")).unwrap();
        assert_eq!(back, set);
    }

    #[test]
    fn csv_errors_name_the_line() {
        let err = TorusPointSet::parse_csv("dim=2\n0.1,0.2\n0.3\n", Path::new("p.csv")).unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        assert!(TorusPointSet::parse_csv("0.1,0.2\n", Path::new("p.csv")).is_err());
        assert!(TorusPointSet::parse_csv("dim=1\n1.5\n", Path::new("p.csv")).is_err());
    }

    #[test]
    fn prefix_bounds() {
        let set = TorusPointSet::from_flat(1, vec![0.1, 0.2, 0.3]).unwrap();
        assert_eq!(set.prefix(3).unwrap(), set);
        assert_eq!(set.prefix(1).unwrap().as_flat(), &[0.1]);
        assert!(set.prefix(4).unwrap_err().is_usage());
    }

    fn coords(d: usize) -> impl Strategy<Value = Vec<f64>> {
        proptest::collection::vec(0.0f64..1.0, d)
    }

    proptest! {
        #[test]
        fn distance_is_symmetric_bounded_and_shift_invariant(
            (a, b, t) in (1usize..5).prop_flat_map(|d| (coords(d), coords(d), coords(d)))
        ) {
            let dab = sup_distance(&a, &b);
            prop_assert_eq!(dab, sup_distance(&b, &a));
            prop_assert!((0.0..=0.5).contains(&dab));
            let at: Vec<f64> = a.iter().zip(&t).map(|(x, s)| frac(x + s)).collect();
            let bt: Vec<f64> = b.iter().zip(&t).map(|(x, s)| frac(x + s)).collect();
            prop_assert!((sup_distance(&at, &bt) - dab).abs() < 1e-12);
        }
    }
}
