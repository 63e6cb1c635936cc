//! Seeded Monte Carlo harnesses built on [`generate`] and [`pair_corr`].
//!
//! Every run is a grid of jobs `(seed, N)`. A job generates the sequence
//! once at the largest rung and takes prefixes, so each seed's ladder reuses
//! a single generation. Jobs run in parallel and results are assembled in
//! job order, so reports are byte-identical across reruns and thread counts.

use std::fmt;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::paircorr::{pair_corr, Method, PairCorrQuery};
use crate::sequences::{generate, SequenceSpec};

pub const REPORT_CSV_HEADER: &str = "experiment,spec,seed,N,d,beta,s,F,target,abs_err";
pub const SUMMARY_CSV_HEADER: &str = "N,s,mean_F,var_F,max_abs_err,n_seeds";

pub const MIN_DECAY_SEEDS: usize = 30;
pub const MIN_DECAY_RUNGS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExperimentKind {
    PpcConvergence,
    Expectation,
    VarianceDecay,
    BetaSweep,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 4] = [
        ExperimentKind::PpcConvergence,
        ExperimentKind::Expectation,
        ExperimentKind::VarianceDecay,
        ExperimentKind::BetaSweep,
    ];
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExperimentKind::PpcConvergence => "ppc_convergence",
            ExperimentKind::Expectation => "expectation",
            ExperimentKind::VarianceDecay => "variance_decay",
            ExperimentKind::BetaSweep => "beta_sweep",
        })
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExperimentKind::ALL
            .into_iter()
            .find(|k| k.to_string() == s)
            .ok_or_else(|| {
                Error::usage(
                    "experiment",
                    format!("unknown experiment {s:?}; expected ppc_convergence, expectation, variance_decay or beta_sweep"),
                )
            })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub spec: SequenceSpec,
    pub ladder: Vec<usize>,
    pub s_values: Vec<f64>,
    /// Scaling exponents. Empty means `1/d`; only the beta sweep uses more than one.
    pub betas: Vec<f64>,
    /// Ignored for deterministic specs.
    pub seeds: Vec<u64>,
    pub tolerance: f64,
    pub method: Method,
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(spec: SequenceSpec, ladder: Vec<usize>, s_values: Vec<f64>, seeds: Vec<u64>) -> Result<Self> {
        let cfg = ExperimentConfig {
            spec,
            ladder,
            s_values,
            betas: Vec::new(),
            seeds,
            tolerance: 0.05,
            method: Method::Auto,
            out: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_betas(mut self, betas: Vec<f64>) -> Result<Self> {
        self.betas = betas;
        self.validate()?;
        Ok(self)
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Result<Self> {
        self.tolerance = tolerance;
        self.validate()?;
        Ok(self)
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn with_out(mut self, out: impl Into<PathBuf>) -> Self {
        self.out = Some(out.into());
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.ladder.is_empty() {
            return Err(Error::usage("ladder", "at least one N is required"));
        }
        if self.ladder[0] < 2 {
            return Err(Error::usage("ladder", "every N must be at least 2"));
        }
        if self.ladder.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::usage("ladder", "N values must be strictly increasing"));
        }
        PairCorrQuery::new(0.0, self.s_values.clone(), self.method)?;
        if self.spec.is_stochastic() && self.seeds.is_empty() {
            return Err(Error::usage("seeds", "stochastic specs need at least one seed"));
        }
        let mut sorted = self.seeds.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::usage("seeds", "seeds must be distinct"));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::usage("tolerance", "tolerance must be positive and finite"));
        }
        if let Some(d) = self.spec.dim() {
            let cap = 1.0 / d as f64 + 1e-12;
            if let Some(&b) = self.betas.iter().find(|&&b| !(b >= 0.0 && b <= cap)) {
                return Err(Error::usage("beta", format!("beta {b} outside [0, 1/{d}]")));
            }
        }
        Ok(())
    }

    /// Canonical `key=value` text; the content hash is taken over this.
    pub fn canonical_text(&self, kind: ExperimentKind) -> String {
        let join = |v: Vec<String>| v.join(",");
        let mut out = String::new();
        let _ = writeln!(out, "experiment={kind}");
        let _ = writeln!(out, "spec={}", self.spec);
        let _ = writeln!(out, "ladder={}", join(self.ladder.iter().map(|n| n.to_string()).collect()));
        let _ = writeln!(out, "s={}", join(self.s_values.iter().map(|s| s.to_string()).collect()));
        if !self.betas.is_empty() {
            let _ = writeln!(out, "beta={}", join(self.betas.iter().map(|b| b.to_string()).collect()));
        }
        if self.spec.is_stochastic() {
            let _ = writeln!(out, "seeds={}", join(self.seeds.iter().map(|s| s.to_string()).collect()));
        }
        let _ = writeln!(out, "tolerance={}", self.tolerance);
        let _ = writeln!(out, "method={}", method_name(self.method));
        out
    }

    fn dim(&self) -> Result<usize> {
        match self.spec.dim() {
            Some(d) => Ok(d),
            None => Ok(generate(&self.spec, 1)?.dim()),
        }
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Naive => "naive",
        Method::Grid => "grid",
        Method::Auto => "auto",
    }
}

/// SHA-256 over `"blob <len>\0" + text`, hex encoded.
pub fn content_hash(text: &str) -> String {
    let mut h = Sha256::new();
    h.update(format!("blob {}\0", text.len()).as_bytes());
    h.update(text.as_bytes());
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeedRow {
    /// `None` for deterministic specs.
    pub seed: Option<u64>,
    pub n: usize,
    pub beta: f64,
    pub s: f64,
    pub f: f64,
    pub target: f64,
}

impl SeedRow {
    pub fn abs_err(&self) -> f64 {
        (self.f - self.target).abs()
    }

    pub fn rel_err(&self) -> f64 {
        self.abs_err() / self.target
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    pub n: usize,
    pub beta: f64,
    pub s: f64,
    pub mean_f: f64,
    /// Sample variance (divisor `n_seeds - 1`); zero for a single seed.
    pub var_f: f64,
    pub max_abs_err: f64,
    pub n_seeds: usize,
    pub target: f64,
    /// `3 sqrt(var / n_seeds)`.
    pub band: f64,
    /// One-dimensional perturbed specs at `beta = 1` only: `2s (1 - s^2 / (eps^2 N^2))`.
    pub finite_n_target: Option<f64>,
}

impl SummaryRow {
    pub fn within_band(&self) -> bool {
        (self.mean_f - self.target).abs() <= self.band
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecaySlope {
    pub s: f64,
    pub slope: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentReport {
    pub kind: ExperimentKind,
    pub spec_text: String,
    pub dim: usize,
    pub config_hash: String,
    pub tolerance: f64,
    pub rows: Vec<SeedRow>,
    pub summary: Vec<SummaryRow>,
    /// Variance decay only.
    pub slopes: Vec<DecaySlope>,
}

impl ExperimentReport {
    pub fn summary_at(&self, n: usize, s: f64) -> Option<&SummaryRow> {
        self.summary.iter().find(|r| r.n == n && r.s == s)
    }

    pub fn rows_at(&self, n: usize) -> impl Iterator<Item = &SeedRow> + '_ {
        self.rows.iter().filter(move |r| r.n == n)
    }

    /// Worst relative error over all seeds and s at rung `n`.
    pub fn max_rel_err_at(&self, n: usize) -> f64 {
        self.rows_at(n).map(SeedRow::rel_err).fold(0.0, f64::max)
    }

    pub fn max_slope(&self) -> Option<f64> {
        self.slopes.iter().map(|d| d.slope).reduce(f64::max)
    }

    pub fn report_csv(&self) -> String {
        let mut out = format!("{REPORT_CSV_HEADER}\n");
        for r in &self.rows {
            let seed = r.seed.map(|s| s.to_string()).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                self.kind,
                self.spec_text,
                seed,
                r.n,
                self.dim,
                r.beta,
                r.s,
                r.f,
                r.target,
                r.abs_err()
            );
        }
        out
    }

    /// A leading `beta` column is added when the report spans several betas.
    pub fn summary_csv(&self) -> String {
        let multi = self.summary.iter().any(|r| r.beta != self.summary[0].beta);
        let mut out = String::new();
        if multi {
            out.push_str("beta,");
        }
        out.push_str(SUMMARY_CSV_HEADER);
        out.push('\n');
        for r in &self.summary {
            if multi {
                let _ = write!(out, "{},", r.beta);
            }
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                r.n, r.s, r.mean_f, r.var_f, r.max_abs_err, r.n_seeds
            );
        }
        out
    }

    pub fn meta_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "experiment={}", self.kind);
        let _ = writeln!(out, "spec={}", self.spec_text);
        let _ = writeln!(out, "d={}", self.dim);
        let _ = writeln!(out, "config_hash={}", self.config_hash);
        let _ = writeln!(out, "tolerance={}", self.tolerance);
        for d in &self.slopes {
            let _ = writeln!(out, "slope[s={}]={}", d.s, d.slope);
        }
        out
    }

    /// Writes `report.csv`, `summary.csv` and `meta.txt` into `dir`.
    pub fn write_dir(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        for (name, body) in [
            ("report.csv", self.report_csv()),
            ("summary.csv", self.summary_csv()),
            ("meta.txt", self.meta_text()),
        ] {
            let path = dir.join(name);
            std::fs::write(&path, body).map_err(|e| Error::io(&path, e))?;
        }
        Ok(())
    }
}

fn perturbation_eps(spec: &SequenceSpec) -> Option<f64> {
    match spec {
        SequenceSpec::Perturbed { epsilon, .. } => Some(*epsilon),
        _ => None,
    }
}

/// Runs every `(seed, N, beta)` job and assembles the report.
fn run_grid(cfg: &ExperimentConfig, kind: ExperimentKind, betas: &[f64]) -> Result<ExperimentReport> {
    cfg.validate()?;
    let dim = cfg.dim()?;
    let seeds: Vec<Option<u64>> = if cfg.spec.is_stochastic() {
        cfg.seeds.iter().copied().map(Some).collect()
    } else {
        vec![None]
    };
    let n_max = *cfg.ladder.last().expect("validated ladder");
    let queries = betas
        .iter()
        .map(|&b| PairCorrQuery::new(b, cfg.s_values.clone(), cfg.method))
        .collect::<Result<Vec<_>>>()?;

    let per_seed: Vec<Vec<SeedRow>> = seeds
        .par_iter()
        .map(|&seed| -> Result<Vec<SeedRow>> {
            let spec = match seed {
                Some(s) => cfg.spec.with_seed(s),
                None => cfg.spec.clone(),
            };
            let full = generate(&spec, n_max)?;
            let mut rows = Vec::new();
            for &n in &cfg.ladder {
                let pts = full.prefix(n)?;
                for q in &queries {
                    let res = pair_corr(&pts, q)?;
                    rows.extend(res.entries.iter().map(|e| SeedRow {
                        seed,
                        n,
                        beta: q.beta,
                        s: e.s,
                        f: e.f,
                        target: e.target,
                    }));
                }
            }
            Ok(rows)
        })
        .collect::<Result<_>>()?;

    let mut rows: Vec<SeedRow> = per_seed.into_iter().flatten().collect();
    // Sorted key: N, beta, s, then seed order as configured.
    let seed_pos = |s: Option<u64>| seeds.iter().position(|&x| x == s).unwrap_or(0);
    rows.sort_by(|a, b| {
        a.n.cmp(&b.n)
            .then(a.beta.total_cmp(&b.beta))
            .then(a.s.total_cmp(&b.s))
            .then(seed_pos(a.seed).cmp(&seed_pos(b.seed)))
    });

    let eps = perturbation_eps(&cfg.spec);
    let summary: Vec<SummaryRow> = rows
        .chunk_by(|a, b| a.n == b.n && a.beta == b.beta && a.s == b.s)
        .map(|group| {
            let k = group.len();
            let mean_f = group.iter().map(|r| r.f).sum::<f64>() / k as f64;
            let var_f = if k > 1 {
                group.iter().map(|r| (r.f - mean_f).powi(2)).sum::<f64>() / (k - 1) as f64
            } else {
                0.0
            };
            let first = &group[0];
            let finite_n_target = match eps {
                Some(e) if dim == 1 && first.beta == 1.0 => {
                    let t = first.s / (e * first.n as f64);
                    Some(2.0 * first.s * (1.0 - t * t))
                }
                _ => None,
            };
            SummaryRow {
                n: first.n,
                beta: first.beta,
                s: first.s,
                mean_f,
                var_f,
                max_abs_err: group.iter().map(SeedRow::abs_err).fold(0.0, f64::max),
                n_seeds: k,
                target: first.target,
                band: 3.0 * (var_f / k as f64).sqrt(),
                finite_n_target,
            }
        })
        .collect();

    Ok(ExperimentReport {
        kind,
        spec_text: cfg.spec.to_string(),
        dim,
        config_hash: content_hash(&cfg.canonical_text(kind)),
        tolerance: cfg.tolerance,
        rows,
        summary,
        slopes: Vec::new(),
    })
}

fn classical_beta(cfg: &ExperimentConfig) -> Result<f64> {
    Ok(1.0 / cfg.dim()? as f64)
}

/// Pair correlations at `beta = 1/d` along the ladder, per seed.
pub fn run_ppc_convergence(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let beta = classical_beta(cfg)?;
    run_grid(cfg, ExperimentKind::PpcConvergence, &[beta])
}

/// Seed means at `beta = 1/d` with 3-sigma normal bands around `(2s)^d`.
pub fn run_expectation_check(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    if !cfg.spec.is_stochastic() {
        return Err(Error::usage("spec", "the expectation check needs a stochastic spec"));
    }
    let beta = classical_beta(cfg)?;
    run_grid(cfg, ExperimentKind::Expectation, &[beta])
}

/// Sample variance of F per rung and the least-squares slope of
/// `log Var` against `log N` for each s.
pub fn run_variance_decay(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    if !cfg.spec.is_stochastic() {
        return Err(Error::usage("spec", "variance decay needs a stochastic spec"));
    }
    if cfg.seeds.len() < MIN_DECAY_SEEDS {
        return Err(Error::usage(
            "seeds",
            format!("variance decay needs at least {MIN_DECAY_SEEDS} seeds, got {}", cfg.seeds.len()),
        ));
    }
    if cfg.ladder.len() < MIN_DECAY_RUNGS {
        return Err(Error::usage(
            "ladder",
            format!("insufficient rungs: variance decay needs at least {MIN_DECAY_RUNGS}, got {}", cfg.ladder.len()),
        ));
    }
    let beta = classical_beta(cfg)?;
    let mut report = run_grid(cfg, ExperimentKind::VarianceDecay, &[beta])?;
    for &s in &cfg.s_values {
        let pts: Vec<(f64, f64)> = report
            .summary
            .iter()
            .filter(|r| r.s == s)
            .map(|r| ((r.n as f64).ln(), r.var_f.max(f64::MIN_POSITIVE).ln()))
            .collect();
        report.slopes.push(DecaySlope {
            s,
            slope: least_squares_slope(&pts),
        });
    }
    Ok(report)
}

/// Pair correlations at each configured beta (default `1/d`).
pub fn run_beta_sweep(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let betas = if cfg.betas.is_empty() {
        vec![classical_beta(cfg)?]
    } else {
        cfg.betas.clone()
    };
    run_grid(cfg, ExperimentKind::BetaSweep, &betas)
}

pub fn run_experiment(kind: ExperimentKind, cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    match kind {
        ExperimentKind::PpcConvergence => run_ppc_convergence(cfg),
        ExperimentKind::Expectation => run_expectation_check(cfg),
        ExperimentKind::VarianceDecay => run_variance_decay(cfg),
        ExperimentKind::BetaSweep => run_beta_sweep(cfg),
    }
}

pub fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perturbed(eps: f64) -> SequenceSpec {
        SequenceSpec::perturbed_kronecker("golden", eps, 0).unwrap()
    }

    #[test]
    fn slope_of_exact_line() {
        let pts: Vec<(f64, f64)> = (0..5).map(|i| (i as f64, 3.0 - 0.7 * i as f64)).collect();
        assert!((least_squares_slope(&pts) + 0.7).abs() < 1e-12);
    }

    #[test]
    fn hash_matches_git_blob_format() {
        // sha256 of "blob 0\0"
        assert_eq!(
            content_hash(""),
            "473a0f4c3be8a93681a267e3b1e9a7dcda1185436fe141f7749120a303721813"
        );
    }

    #[test]
    fn config_validation() {
        let ok = ExperimentConfig::new(perturbed(0.1), vec![100, 1000], vec![1.0], vec![1]);
        assert!(ok.is_ok());
        let bad_ladder = ExperimentConfig::new(perturbed(0.1), vec![1000, 100], vec![1.0], vec![1]);
        assert!(matches!(bad_ladder, Err(Error::Usage { ref key, .. }) if key == "ladder"));
        let no_seeds = ExperimentConfig::new(perturbed(0.1), vec![100], vec![1.0], vec![]);
        assert!(matches!(no_seeds, Err(Error::Usage { ref key, .. }) if key == "seeds"));
        let det = ExperimentConfig::new(SequenceSpec::parse("vdc:2").unwrap(), vec![100], vec![1.0], vec![]);
        assert!(det.is_ok());
        let beta = det.unwrap().with_betas(vec![0.5, 1.5]);
        assert!(matches!(beta, Err(Error::Usage { ref key, .. }) if key == "beta"));
    }

    #[test]
    fn single_rung_decay_is_rejected() {
        let cfg = ExperimentConfig::new(perturbed(0.1), vec![1000], vec![1.0], (0..30).collect()).unwrap();
        let err = run_variance_decay(&cfg).unwrap_err();
        assert!(matches!(err, Error::Usage { ref key, ref message } if key == "ladder" && message.contains("insufficient rungs")));
    }

    #[test]
    fn row_counts_and_determinism() {
        let cfg = ExperimentConfig::new(perturbed(0.1), vec![100, 400, 1600], vec![0.5, 1.0], vec![3, 1, 2]).unwrap();
        let a = run_ppc_convergence(&cfg).unwrap();
        assert_eq!(a.rows.len(), 3 * 2 * 3);
        assert_eq!(a.summary.len(), 3 * 2);
        assert!(a.summary.iter().all(|r| r.var_f >= 0.0 && r.n_seeds == 3));
        let b = run_ppc_convergence(&cfg).unwrap();
        assert_eq!(a.report_csv(), b.report_csv());
        assert_eq!(a.summary_csv(), b.summary_csv());
        assert_eq!(a.config_hash, b.config_hash);
        assert!(a.report_csv().starts_with(REPORT_CSV_HEADER));
        assert!(a.summary_csv().starts_with(SUMMARY_CSV_HEADER));
    }

    #[test]
    fn per_seed_rows_reproduce_individually() {
        let cfg = ExperimentConfig::new(perturbed(0.2), vec![500, 2000], vec![1.0], vec![11, 12]).unwrap();
        let all = run_ppc_convergence(&cfg).unwrap();
        let single = ExperimentConfig::new(perturbed(0.2), vec![500, 2000], vec![1.0], vec![12]).unwrap();
        let one = run_ppc_convergence(&single).unwrap();
        let from_all: Vec<&SeedRow> = all.rows.iter().filter(|r| r.seed == Some(12)).collect();
        assert_eq!(from_all.len(), one.rows.len());
        for (x, y) in from_all.iter().zip(&one.rows) {
            assert_eq!(**x, *y);
        }
    }

    #[test]
    fn deterministic_spec_has_one_row_per_cell() {
        let cfg = ExperimentConfig::new(SequenceSpec::parse("vdc:2").unwrap(), vec![256, 1024], vec![1.0], vec![5, 6])
            .unwrap()
            .with_betas(vec![0.0, 0.5, 1.0])
            .unwrap();
        let r = run_beta_sweep(&cfg).unwrap();
        assert_eq!(r.rows.len(), 2 * 3);
        assert!(r.rows.iter().all(|row| row.seed.is_none()));
        assert!(r.summary_csv().starts_with("beta,N,s,"));
        assert!(r.report_csv().lines().nth(1).unwrap().starts_with("beta_sweep,vdc:2,,256,1,"));
    }

    #[test]
    fn expectation_requires_stochastic_spec() {
        let cfg = ExperimentConfig::new(SequenceSpec::parse("kronecker:golden").unwrap(), vec![100], vec![1.0], vec![])
            .unwrap();
        assert!(run_expectation_check(&cfg).unwrap_err().is_usage());
    }

    #[test]
    fn finite_n_value_in_one_dimension() {
        let cfg = ExperimentConfig::new(perturbed(0.5), vec![10], vec![1.0], (0..4).collect()).unwrap();
        let r = run_expectation_check(&cfg).unwrap();
        let t = r.summary[0].finite_n_target.unwrap();
        assert!((t - 2.0 * (1.0 - 1.0 / 25.0)).abs() < 1e-15);
    }

    #[test]
    fn kind_round_trip() {
        for k in ExperimentKind::ALL {
            assert_eq!(k.to_string().parse::<ExperimentKind>().unwrap(), k);
        }
        assert!("nope".parse::<ExperimentKind>().is_err());
    }
}
