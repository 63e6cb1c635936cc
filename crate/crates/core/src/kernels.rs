//! Closed-form expectations of perturbation phases and the series bounds
//! that control the variance of the pair correlation statistic.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::numtheory::{geometric_exp_sum, AlphaVector};

/// `zeta(2) = pi^2 / 6`.
pub const ZETA_2: f64 = PI * PI / 6.0;

/// Normalised sinc, `sin(pi x) / (pi x)` with the removable singularity filled.
pub fn sinc_pi(x: f64) -> f64 {
    let y = PI * x;
    if y.abs() < 1e-8 {
        1.0 - y * y / 6.0
    } else {
        y.sin() / y
    }
}

/// Index coincidence pattern of `(k, l, m, n)` with `k != l` and `m != n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OverlapCase {
    /// `k = m`, `l != n`
    KEqM,
    /// `k != m`, `l = n`
    LEqN,
    /// `k = n`, `l != m`
    KEqN,
    /// `k != n`, `l = m`
    LEqM,
    /// `k = m`, `l = n`
    SamePair,
    /// `k = n`, `l = m`
    SwappedPair,
    AllDistinct,
}

impl OverlapCase {
    pub const ALL: [OverlapCase; 7] = [
        OverlapCase::KEqM,
        OverlapCase::LEqN,
        OverlapCase::KEqN,
        OverlapCase::LEqM,
        OverlapCase::SamePair,
        OverlapCase::SwappedPair,
        OverlapCase::AllDistinct,
    ];

    pub fn classify(k: u64, l: u64, m: u64, n: u64) -> Result<OverlapCase> {
        if k == l || m == n {
            return Err(Error::usage("case", "requires k != l and m != n"));
        }
        Ok(match (k == m, l == n, k == n, l == m) {
            (true, true, _, _) => OverlapCase::SamePair,
            (_, _, true, true) => OverlapCase::SwappedPair,
            (true, false, _, _) => OverlapCase::KEqM,
            (false, true, _, _) => OverlapCase::LEqN,
            (_, _, true, false) => OverlapCase::KEqN,
            (_, _, false, true) => OverlapCase::LEqM,
            _ => OverlapCase::AllDistinct,
        })
    }

    /// The case obtained by exchanging the roles of `(k, l)` and `(m, n)`.
    pub fn mirror(self) -> OverlapCase {
        match self {
            OverlapCase::KEqN => OverlapCase::LEqM,
            OverlapCase::LEqM => OverlapCase::KEqN,
            other => other,
        }
    }

    /// A representative index tuple `(k, l, m, n)`.
    pub fn representative(self) -> (u64, u64, u64, u64) {
        match self {
            OverlapCase::KEqM => (1, 2, 1, 3),
            OverlapCase::LEqN => (1, 2, 3, 2),
            OverlapCase::KEqN => (1, 2, 3, 1),
            OverlapCase::LEqM => (1, 2, 2, 3),
            OverlapCase::SamePair => (1, 2, 1, 2),
            OverlapCase::SwappedPair => (1, 2, 2, 1),
            OverlapCase::AllDistinct => (1, 2, 3, 4),
        }
    }
}

impl fmt::Display for OverlapCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OverlapCase::KEqM => "k=m",
            OverlapCase::LEqN => "l=n",
            OverlapCase::KEqN => "k=n",
            OverlapCase::LEqM => "l=m",
            OverlapCase::SamePair => "k=m,l=n",
            OverlapCase::SwappedPair => "k=n,l=m",
            OverlapCase::AllDistinct => "distinct",
        })
    }
}

impl std::str::FromStr for OverlapCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OverlapCase::ALL
            .into_iter()
            .find(|c| c.to_string() == s)
            .ok_or_else(|| Error::usage("case", format!("unknown overlap case {s:?}")))
    }
}

/// `E[e(r eps (X_k - X_l) + r' eps (X_m - X_n))]` for i.i.d. uniform `X`.
///
/// A `(r - r')` factor is 1 when `r = r'`, a `(r + r')` factor is 1 when `r = -r'`.
pub fn lemma21_expectation(r: i64, rp: i64, eps: f64, case: OverlapCase) -> Result<f64> {
    if r == 0 || rp == 0 {
        return Err(Error::usage("r", "frequencies must be nonzero"));
    }
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::usage("eps", "eps must be positive"));
    }
    let (rf, rpf) = (r as f64, rp as f64);
    let s_r = sinc_pi(rf * eps);
    let s_rp = sinc_pi(rpf * eps);
    let s_plus = if r == -rp { 1.0 } else { sinc_pi((rf + rpf) * eps) };
    let s_minus = if r == rp { 1.0 } else { sinc_pi((rf - rpf) * eps) };
    Ok(match case {
        OverlapCase::KEqM | OverlapCase::LEqN => s_plus * s_r * s_rp,
        OverlapCase::KEqN | OverlapCase::LEqM => s_minus * s_r * s_rp,
        OverlapCase::SamePair => s_plus * s_plus,
        OverlapCase::SwappedPair => s_minus * s_minus,
        OverlapCase::AllDistinct => s_r * s_r * s_rp * s_rp,
    })
}

/// `E[e(r eps (X_k - X_l))] = sinc_pi(r eps)^2` for `k != l`.
pub fn remark22_expectation(r: i64, eps: f64) -> Result<f64> {
    if r == 0 {
        return Err(Error::usage("r", "frequency must be nonzero"));
    }
    let s = sinc_pi(r as f64 * eps);
    Ok(s * s)
}

/// Density of `eps (X - X')` for independent uniform vectors on `[0,1]^d`.
pub fn triangular_density(x: &[f64], eps: f64) -> f64 {
    x.iter()
        .map(|&xi| {
            let u = (xi / eps).abs();
            if u >= 1.0 {
                0.0
            } else {
                (1.0 - u) / eps
            }
        })
        .product()
}

/// A truncated series compared against its claimed bound.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundCheckResult {
    pub lemma: &'static str,
    pub param1: f64,
    pub param2: f64,
    pub n_or_rp: i64,
    /// Truncated sum.
    pub lhs: f64,
    pub rhs: f64,
    /// Analytic bound on the omitted terms.
    pub tail: f64,
    pub r_max: u64,
    /// `lhs + tail <= rhs`: the full series provably respects the bound.
    pub satisfied: bool,
}

pub const BOUND_CSV_HEADER: &str = "lemma,param1,param2,N_or_rp,lhs,rhs,tail,satisfied";

impl BoundCheckResult {
    fn new(lemma: &'static str, params: (f64, f64), n_or_rp: i64, lhs: f64, rhs: f64, tail: f64, r_max: u64) -> Self {
        BoundCheckResult {
            lemma,
            param1: params.0,
            param2: params.1,
            n_or_rp,
            lhs,
            rhs,
            tail,
            r_max,
            satisfied: lhs + tail <= rhs,
        }
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.lemma, self.param1, self.param2, self.n_or_rp, self.lhs, self.rhs, self.tail, self.satisfied
        )
    }
}

/// Deterministic summation of `f(i)` over `range`: fixed blocks, four lanes
/// per block, blocks combined pairwise.
pub fn pairwise_sum(range: std::ops::Range<usize>, f: &impl Fn(usize) -> f64) -> f64 {
    const BLOCK: usize = 1024;
    let len = range.end.saturating_sub(range.start);
    if len <= BLOCK {
        let mut acc = [0.0f64; 4];
        let mut i = range.start;
        while i + 4 <= range.end {
            acc[0] += f(i);
            acc[1] += f(i + 1);
            acc[2] += f(i + 2);
            acc[3] += f(i + 3);
            i += 4;
        }
        while i < range.end {
            acc[0] += f(i);
            i += 1;
        }
        return (acc[0] + acc[1]) + (acc[2] + acc[3]);
    }
    let blocks = len.div_ceil(BLOCK);
    let mid = range.start + (blocks / 2) * BLOCK;
    pairwise_sum(range.start..mid, f) + pairwise_sum(mid..range.end, f)
}

/// `sum_{0 < |r| <= R} sinc_pi(r eps)^2 | |S_N(r alpha)|^2 - N |` for one-dimensional `alpha`,
/// against `rhs = c N^(1 + delta)`.
pub fn lemma23_lhs(alpha: &AlphaVector, eps: f64, n: u64, r_max: u64, delta: f64, c: f64) -> Result<BoundCheckResult> {
    if alpha.dim() != 1 {
        return Err(Error::usage("alpha", "the double-sum bound is one-dimensional"));
    }
    if r_max == 0 {
        return Err(Error::usage("rmax", "R_max must be at least 1"));
    }
    if n == 0 {
        return Err(Error::usage("n", "N must be at least 1"));
    }
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::usage("eps", "eps must be positive"));
    }
    let nf = n as f64;
    let term = |i: usize| {
        let r = i as i64 + 1;
        let weight = remark22_expectation(r, eps).expect("r >= 1");
        if weight == 0.0 {
            return 0.0;
        }
        let s = geometric_exp_sum(alpha.phase(&[r]), n).norm_sqr();
        weight * (s - nf).abs()
    };
    // r and -r contribute equally
    let lhs = 2.0 * pairwise_sum(0..r_max as usize, &term);
    let tail = 2.0 * nf * nf / (PI * PI * eps * eps * r_max as f64);
    let rhs = c * nf.powf(1.0 + delta);
    Ok(BoundCheckResult::new("lemma23", (eps, delta), n as i64, lhs, rhs, tail, r_max))
}

/// Precomputed powers for checking `sum_{r >= 1, r != |r'|} r^-sigma / |r + r'|^2
/// <= (2 + 3 zeta(2)) / |r'|^sigma` at many `r'` with one `(sigma, R_max)`.
pub struct Lemma24Table {
    sigma: f64,
    r_max: u64,
    /// `pow[r] = r^-sigma`, index 0 unused.
    pow: Vec<f64>,
    /// `inv_sq[j] = 1 / j^2`, index 0 unused.
    inv_sq: Vec<f64>,
}

impl Lemma24Table {
    pub fn new(sigma: f64, r_max: u64, max_abs_rp: u64) -> Result<Self> {
        if !(0.0..1.0).contains(&sigma) {
            return Err(Error::usage("sigma", "sigma must lie in [0, 1)"));
        }
        if max_abs_rp == 0 {
            return Err(Error::usage("rp", "r' must be nonzero"));
        }
        if r_max < 4 * max_abs_rp {
            return Err(Error::usage("rmax", format!("R_max must be at least 4|r'| = {}", 4 * max_abs_rp)));
        }
        let pow = (0..=r_max)
            .map(|r| if r == 0 { 0.0 } else { (r as f64).powf(-sigma) })
            .collect();
        let inv_sq = (0..=r_max + max_abs_rp)
            .map(|j| if j == 0 { 0.0 } else { 1.0 / (j as f64 * j as f64) })
            .collect();
        Ok(Lemma24Table { sigma, r_max, pow, inv_sq })
    }

    pub fn check(&self, rp: i64) -> Result<BoundCheckResult> {
        let a = rp.unsigned_abs();
        if rp == 0 || a as usize + self.r_max as usize >= self.inv_sq.len() {
            return Err(Error::usage("rp", format!("r' = {rp} outside the table")));
        }
        let r_max = self.r_max as usize;
        let excluded = a as usize;
        let term = |r: usize| {
            let j = (r as i64 + rp).unsigned_abs() as usize;
            self.pow[r] * self.inv_sq[j]
        };
        let lhs = pairwise_sum(1..excluded.min(r_max + 1), &term) + pairwise_sum(excluded + 1..r_max + 1, &term);
        let rhs = (2.0 + 3.0 * ZETA_2) / (a as f64).powf(self.sigma);
        // sum_{r > R} (r + r')^-2 <= 1 / (R + r')
        let tail = 1.0 / (self.r_max as f64 + rp as f64);
        Ok(BoundCheckResult::new("lemma24", (self.sigma, self.r_max as f64), rp, lhs, rhs, tail, self.r_max))
    }
}

pub fn lemma24_check(rp: i64, sigma: f64, r_max: u64) -> Result<BoundCheckResult> {
    Lemma24Table::new(sigma, r_max, rp.unsigned_abs())?.check(rp)
}
