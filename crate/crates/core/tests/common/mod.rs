//! Reference computations used only by the integration and acceptance tests.
//! None of them call into the library's numerical code.
#![allow(dead_code)]

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0f64, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else { p1 };
            let p_prev = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * p - p_prev) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Composite rule on `[0, 1]`: `panels` equal panels with `n` nodes each.
pub fn composite_rule(panels: usize, n: usize) -> Vec<(f64, f64)> {
    let base = gauss_legendre(n);
    let h = 1.0 / panels as f64;
    let mut out = Vec::with_capacity(panels * n);
    for p in 0..panels {
        let a = p as f64 * h;
        for &(x, w) in &base {
            out.push((a + 0.5 * h * (x + 1.0), 0.5 * h * w));
        }
    }
    out
}

/// Index pattern `(k, l, m, n)` for each overlap case name.
pub fn pattern(case: &str) -> [usize; 4] {
    match case {
        "k=m" => [0, 1, 0, 2],
        "l=n" => [0, 1, 2, 1],
        "k=n" => [0, 1, 2, 0],
        "l=m" => [0, 1, 1, 2],
        "k=m,l=n" => [0, 1, 0, 1],
        "k=n,l=m" => [0, 1, 1, 0],
        "distinct" => [0, 1, 2, 3],
        other => panic!("unknown case {other}"),
    }
}

/// Coefficient of each distinct uniform variable in
/// `r eps (X_k - X_l) + r' eps (X_m - X_n)`.
fn coefficients(r: i64, rp: i64, eps: f64, idx: [usize; 4]) -> Vec<f64> {
    let vars = idx.iter().max().unwrap() + 1;
    let mut c = vec![0.0; vars];
    let (rf, rpf) = (r as f64 * eps, rp as f64 * eps);
    c[idx[0]] += rf;
    c[idx[1]] -= rf;
    c[idx[2]] += rpf;
    c[idx[3]] -= rpf;
    c
}

fn mul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

/// Tensor quadrature of `E[e(...)]`, evaluated axis by axis. The integrand
/// is a product of one-variable factors, so this equals the full tensor sum.
pub fn quad_expectation(r: i64, rp: i64, eps: f64, idx: [usize; 4], rule: &[(f64, f64)]) -> (f64, f64) {
    coefficients(r, rp, eps, idx)
        .into_iter()
        .map(|c| {
            rule.iter().fold((0.0, 0.0), |acc, &(x, w)| {
                let t = 2.0 * PI * c * x;
                (acc.0 + w * t.cos(), acc.1 + w * t.sin())
            })
        })
        .fold((1.0, 0.0), mul)
}

/// The same tensor rule summed over every grid point.
pub fn quad_expectation_full(r: i64, rp: i64, eps: f64, idx: [usize; 4], rule: &[(f64, f64)]) -> (f64, f64) {
    let c = coefficients(r, rp, eps, idx);
    let vars = c.len();
    let n = rule.len();
    let total = n.pow(vars as u32);
    let (mut re, mut im) = (0.0, 0.0);
    for flat in 0..total {
        let (mut rest, mut w, mut phase) = (flat, 1.0, 0.0);
        for &cv in &c {
            let (x, wx) = rule[rest % n];
            rest /= n;
            w *= wx;
            phase += cv * x;
        }
        re += w * (2.0 * PI * phase).cos();
        im += w * (2.0 * PI * phase).sin();
    }
    (re, im)
}

/// `[a0; a1, a2, ...]` of `(a + b sqrt(d)) / c` from a decimal enclosure
/// with `digits` digits, keeping quotients on which both ends agree.
pub fn surd_quotients(a: i64, b: i64, d: u64, c: i64, digits: u32) -> Vec<BigInt> {
    let scale = BigInt::from(10).pow(digits);
    let s = (BigInt::from(b) * BigInt::from(b) * BigInt::from(d) * &scale * &scale).sqrt();
    let base = BigInt::from(a) * &scale;
    let (lo, hi) = if b >= 0 {
        (&base + &s, &base + &s + 1)
    } else {
        (&base - &s - 1, &base - &s)
    };
    let den = BigInt::from(c) * &scale;
    let (lo, hi, den) = if c < 0 { (-hi, -lo, -den) } else { (lo, hi, den) };
    euclid_common(lo, hi, den)
}

/// Quotients shared by the expansions of `lo/den` and `hi/den`.
pub fn euclid_common(lo: BigInt, hi: BigInt, den: BigInt) -> Vec<BigInt> {
    let (mut x, mut y) = ((lo, den.clone()), (hi, den));
    let mut out = Vec::new();
    loop {
        if x.1.is_zero() || y.1.is_zero() {
            return out;
        }
        let fx = x.0.div_floor(&x.1);
        let fy = y.0.div_floor(&y.1);
        if fx != fy {
            return out;
        }
        out.push(fx.clone());
        let rx = &x.0 - &fx * &x.1;
        let ry = &y.0 - &fy * &y.1;
        x = (x.1, rx);
        y = (y.1, ry);
    }
}

/// Partial quotients of a rational by the Euclidean algorithm.
pub fn rational_quotients(num: i64, den: i64) -> Vec<BigInt> {
    let (mut p, mut q) = (BigInt::from(num), BigInt::from(den));
    let mut out = Vec::new();
    while !q.is_zero() {
        let a = p.div_floor(&q);
        let r = &p - &a * &q;
        out.push(a);
        p = q;
        q = r;
    }
    out
}

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn one() -> BigInt {
    BigInt::one()
}

fn count(xs: &[f64], inside: impl Fn(f64) -> bool) -> usize {
    xs.iter().filter(|&&x| inside(x)).count()
}

/// Sup over `[0, t)` by direct counting at every candidate edge, open and closed.
pub fn star_disc_brute(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mut best: f64 = 0.0;
    for &t in xs.iter().chain(&[1.0]) {
        let open = count(xs, |x| x < t) as f64 / n;
        let closed = count(xs, |x| x <= t) as f64 / n;
        best = best.max((open - t).abs()).max((closed - t).abs());
    }
    best
}

/// Sup over subintervals `[a, b)` of `[0, 1)`, all edge closures.
pub fn extreme_disc_brute(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mut edges: Vec<f64> = xs.to_vec();
    edges.push(0.0);
    edges.push(1.0);
    let mut best: f64 = 0.0;
    for &a in &edges {
        for &b in &edges {
            if b < a {
                continue;
            }
            let len = b - a;
            let counts = [
                count(xs, |x| a <= x && x < b),
                count(xs, |x| a <= x && x <= b),
                count(xs, |x| a < x && x < b),
                count(xs, |x| a < x && x <= b),
            ];
            for c in counts {
                best = best.max((c as f64 / n - len).abs());
            }
        }
    }
    best
}

/// `sum_{j=1}^{N} e(j theta)` term by term with compensated accumulation.
pub fn exp_sum_direct(theta: f64, n: u64) -> (f64, f64) {
    let (mut re, mut im) = (0.0f64, 0.0f64);
    let (mut cre, mut cim) = (0.0f64, 0.0f64);
    for j in 1..=n {
        let t = 2.0 * PI * ((j as f64 * theta) % 1.0);
        for (sum, comp, v) in [(&mut re, &mut cre, t.cos()), (&mut im, &mut cim, t.sin())] {
            let y = v - *comp;
            let s = *sum + y;
            *comp = (s - *sum) - y;
            *sum = s;
        }
    }
    (re, im)
}

/// CDF of `eps (X - X')` for independent uniforms on `[0, 1]`.
fn triangle_cdf(x: f64, eps: f64) -> f64 {
    let u = (x / eps).clamp(-1.0, 1.0);
    if u <= 0.0 {
        0.5 * (1.0 + u) * (1.0 + u)
    } else {
        1.0 - 0.5 * (1.0 - u) * (1.0 - u)
    }
}

/// Probability that `c + eps (X - X')` lies within `w` of an integer.
fn window_probability(c: f64, eps: f64, w: f64) -> f64 {
    let reach = (eps + w + 1.0).ceil() as i64;
    (-reach..=reach)
        .map(|k| {
            let centre = k as f64 - c;
            triangle_cdf(centre + w, eps) - triangle_cdf(centre - w, eps)
        })
        .sum()
}

/// Exact `E F_N(s)` at `beta = 1/d` for core points `z` (flat, dimension `d`)
/// perturbed by `eps U`, summing the triangular law over periodic copies of
/// the window.
pub fn perturbed_expected_f_dim(z: &[f64], d: usize, eps: f64, s: f64) -> f64 {
    let n = z.len() / d;
    let w = s / (n as f64).powf(1.0 / d as f64);
    let mut total = 0.0;
    for l in 0..n {
        for m in 0..n {
            if l == m {
                continue;
            }
            let mut p = 1.0;
            for i in 0..d {
                p *= window_probability(z[l * d + i] - z[m * d + i], eps, w);
                if p == 0.0 {
                    break;
                }
            }
            total += p;
        }
    }
    total / n as f64
}

/// [`perturbed_expected_f_dim`] in one dimension.
pub fn perturbed_expected_f(z: &[f64], eps: f64, s: f64) -> f64 {
    perturbed_expected_f_dim(z, 1, eps, s)
}
