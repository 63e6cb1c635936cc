use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use super::args::Args;
use crate::discrepancy::{
    brute_disc, default_ket_constant, extreme_disc_1d, ket_bound, low_disc_scaling, scaling_csv, star_disc_1d,
    DISC_CSV_HEADER, SCALING_KET_M,
};
use crate::error::{Error, Result};
use crate::experiments::{run_experiment, ExperimentConfig, ExperimentKind};
use crate::kernels::{
    lemma21_expectation, lemma23_lhs, remark22_expectation, triangular_density, Lemma24Table, OverlapCase,
    BOUND_CSV_HEADER,
};
use crate::numtheory::{lemma22_ratio, AlphaVector, FrequencyVector};
use crate::paircorr::{pair_corr, Method, PairCorrQuery};
use crate::sequences::{generate, SequenceSpec};

pub const GENERATE_KEYS: &[&str] = &["spec", "n", "out"];
pub const PPC_KEYS: &[&str] = &["spec", "n", "beta", "s", "method", "out"];
pub const DISC_KEYS: &[&str] = &["spec", "n", "mode", "m", "cd", "ladder", "out"];
pub const KERNEL_KEYS: &[&str] = &[
    "lemma", "r", "rp", "eps", "case", "alpha", "n", "delta", "rmax", "c", "sigma", "x", "out",
];
pub const EXPERIMENT_KEYS: &[&str] = &[
    "experiment", "spec", "n", "ladder", "s", "beta", "seeds", "tolerance", "method", "out",
];

const DEFAULT_LADDER: [usize; 4] = [1_000, 10_000, 100_000, 1_000_000];

fn emit(args: &Args, body: &str, stdout: &mut dyn Write) -> Result<()> {
    match args.raw("out") {
        Some(path) => {
            let path = PathBuf::from(path);
            std::fs::write(&path, body).map_err(|e| Error::io(&path, e))
        }
        None => stdout.write_all(body.as_bytes()).map_err(|e| Error::io("<stdout>", e)),
    }
}

fn spec(args: &Args) -> Result<SequenceSpec> {
    SequenceSpec::parse(args.require("spec")?)
}

fn count(args: &Args, min: usize) -> Result<usize> {
    let n: usize = args.get("n")?.ok_or_else(|| Error::usage("n", "required"))?;
    if n < min {
        return Err(Error::usage("n", format!("N must be at least {min}, got {n}")));
    }
    Ok(n)
}

fn dim_of(spec: &SequenceSpec) -> Result<usize> {
    match spec.dim() {
        Some(d) => Ok(d),
        None => Ok(generate(spec, 1)?.dim()),
    }
}

pub fn cmd_generate(args: &Args, stdout: &mut dyn Write) -> Result<()> {
    let n = count(args, 1)?;
    let spec = spec(args)?;
    let points = generate(&spec, n)?;
    emit(args, &points.to_csv(), stdout)
}

pub fn cmd_ppc(args: &Args, stdout: &mut dyn Write) -> Result<()> {
    let n = count(args, 2)?;
    let beta: Option<f64> = args.get("beta")?;
    let s = args.list_f64("s")?.unwrap_or_else(|| vec![1.0]);
    let method: Method = args.get_or("method", Method::Auto)?;
    let spec = spec(args)?;
    let d = dim_of(&spec)?;
    let q = PairCorrQuery::new(beta.unwrap_or(1.0 / d as f64), s, method)?;
    let points = generate(&spec, n)?;
    emit(args, &pair_corr(&points, &q)?.to_csv(), stdout)
}

pub fn cmd_disc(args: &Args, stdout: &mut dyn Write) -> Result<()> {
    let mode = args.raw("mode").map(str::to_string);
    let m: Option<u32> = args.get("m")?;
    let cd: Option<f64> = args.get("cd")?;
    let spec = spec(args)?;
    if mode.as_deref() == Some("scaling") {
        let ladder: Vec<usize> = args
            .list_int("ladder")?
            .ok_or_else(|| Error::usage("ladder", "required for scaling mode"))?;
        return emit(args, &scaling_csv(&low_disc_scaling(&spec, &ladder)?), stdout);
    }
    if args.raw("ladder").is_some() {
        return Err(Error::usage("ladder", "only used with mode=scaling"));
    }
    let n = count(args, 1)?;
    if m == Some(0) {
        return Err(Error::usage("m", "frequency cutoff must be at least 1"));
    }
    let d = dim_of(&spec)?;
    let mode = mode.unwrap_or_else(|| if d == 1 { "exact1d_star" } else { "brute_star" }.to_string());
    if !matches!(
        mode.as_str(),
        "exact1d_star" | "exact1d_extreme" | "brute_star" | "brute_extreme" | "ket_bound"
    ) {
        return Err(Error::usage("mode", format!("unknown mode {mode:?}")));
    }
    let points = generate(&spec, n)?;
    let result = match mode.as_str() {
        "exact1d_star" => star_disc_1d(&points)?,
        "exact1d_extreme" => extreme_disc_1d(&points)?,
        "brute_star" => brute_disc(&points, true)?,
        "brute_extreme" => brute_disc(&points, false)?,
        _ => ket_bound(&points, m.unwrap_or(SCALING_KET_M), cd.unwrap_or_else(|| default_ket_constant(d)))?,
    };
    emit(args, &format!("{DISC_CSV_HEADER}\n{}\n", result.csv_row()), stdout)
}

fn required_f64(args: &Args, key: &str) -> Result<f64> {
    args.get(key)?.ok_or_else(|| Error::usage(key, "required"))
}

fn required_f64_list(args: &Args, key: &str) -> Result<Vec<f64>> {
    args.list_f64(key)?.ok_or_else(|| Error::usage(key, "required"))
}

fn required_i64_list(args: &Args, key: &str) -> Result<Vec<i64>> {
    args.list_int(key)?.ok_or_else(|| Error::usage(key, "required"))
}

fn required_u64_list(args: &Args, key: &str) -> Result<Vec<u64>> {
    args.list_int(key)?.ok_or_else(|| Error::usage(key, "required"))
}

fn join_colon<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(":")
}

pub fn cmd_kernel(args: &Args, stdout: &mut dyn Write) -> Result<()> {
    let lemma = args.require("lemma")?;
    let mut out = String::new();
    match lemma {
        "lemma21" => {
            let r = required_i64_list(args, "r")?;
            let rp = required_i64_list(args, "rp")?;
            let eps = required_f64(args, "eps")?;
            let cases = match args.raw("case") {
                Some(c) => vec![c.parse::<OverlapCase>()?],
                None => OverlapCase::ALL.to_vec(),
            };
            out.push_str("case,r,rp,eps,value\n");
            for &c in &cases {
                for &a in &r {
                    for &b in &rp {
                        let v = lemma21_expectation(a, b, eps, c)?;
                        let _ = writeln!(out, "\"{c}\",{a},{b},{eps},{v}");
                    }
                }
            }
        }
        "remark22" => {
            let r = required_i64_list(args, "r")?;
            let eps = required_f64(args, "eps")?;
            out.push_str("r,eps,value\n");
            for &a in &r {
                let _ = writeln!(out, "{a},{eps},{}", remark22_expectation(a, eps)?);
            }
        }
        "lemma22" => {
            let r = FrequencyVector::new(required_i64_list(args, "r")?)?;
            let ns = required_u64_list(args, "n")?;
            let deltas = required_f64_list(args, "delta")?;
            let alpha = AlphaVector::parse(args.require("alpha")?)?;
            out.push_str("alpha,r,N,delta,ratio\n");
            for &delta in &deltas {
                for &n in &ns {
                    let v = lemma22_ratio(&alpha, &r, n, delta)?;
                    let _ = writeln!(out, "{},{},{n},{delta},{v}", alpha.name, join_colon(r.components()));
                }
            }
        }
        "lemma23" => {
            let eps = required_f64(args, "eps")?;
            let ns = required_u64_list(args, "n")?;
            let r_max: u64 = args.get("rmax")?.ok_or_else(|| Error::usage("rmax", "required"))?;
            let delta = required_f64(args, "delta")?;
            let c = required_f64(args, "c")?;
            let alpha = AlphaVector::parse(args.require("alpha")?)?;
            out.push_str(BOUND_CSV_HEADER);
            out.push('\n');
            for &n in &ns {
                let _ = writeln!(out, "{}", lemma23_lhs(&alpha, eps, n, r_max, delta, c)?.csv_row());
            }
        }
        "lemma24" => {
            let rp = required_i64_list(args, "rp")?;
            let sigmas = required_f64_list(args, "sigma")?;
            let r_max: u64 = args.get("rmax")?.ok_or_else(|| Error::usage("rmax", "required"))?;
            let max_rp = rp.iter().map(|x| x.unsigned_abs()).max().unwrap_or(1);
            out.push_str(BOUND_CSV_HEADER);
            out.push('\n');
            for &sigma in &sigmas {
                let table = Lemma24Table::new(sigma, r_max, max_rp)?;
                for &x in &rp {
                    let _ = writeln!(out, "{}", table.check(x)?.csv_row());
                }
            }
        }
        "density" => {
            let x = required_f64_list(args, "x")?;
            let eps = required_f64(args, "eps")?;
            if !(eps > 0.0 && eps.is_finite()) {
                return Err(Error::usage("eps", "eps must be positive"));
            }
            out.push_str("x,eps,value\n");
            let _ = writeln!(out, "{},{eps},{}", join_colon(&x), triangular_density(&x, eps));
        }
        other => {
            return Err(Error::usage(
                "lemma",
                format!("unknown kernel {other:?}; expected lemma21, remark22, lemma22, lemma23, lemma24 or density"),
            ))
        }
    }
    emit(args, &out, stdout)
}

pub fn cmd_experiment(args: &Args, stdout: &mut dyn Write) -> Result<()> {
    let kind: ExperimentKind = args.require("experiment")?.parse()?;
    let ladder: Vec<usize> = match (args.list_int("ladder")?, args.get::<usize>("n")?) {
        (Some(_), Some(_)) => return Err(Error::usage("n", "give either n or ladder, not both")),
        (Some(l), None) => l,
        (None, Some(n)) => vec![n],
        (None, None) => DEFAULT_LADDER.to_vec(),
    };
    let s = args.list_f64("s")?.unwrap_or_else(|| vec![1.0]);
    let betas = args.list_f64("beta")?;
    let seeds: Vec<u64> = args.list_int("seeds")?.unwrap_or_default();
    let tolerance: Option<f64> = args.get("tolerance")?;
    let method: Method = args.get_or("method", Method::Auto)?;
    if betas.is_some() && kind != ExperimentKind::BetaSweep {
        return Err(Error::usage("beta", format!("{kind} always uses beta = 1/d")));
    }
    let mut cfg = ExperimentConfig::new(spec(args)?, ladder, s, seeds)?
        .with_method(method)
        .with_betas(betas.unwrap_or_default())?;
    if let Some(t) = tolerance {
        cfg = cfg.with_tolerance(t)?;
    }
    let report = run_experiment(kind, &cfg)?;
    match args.raw("out") {
        Some(dir) => report.write_dir(&PathBuf::from(dir)),
        None => stdout
            .write_all(report.report_csv().as_bytes())
            .map_err(|e| Error::io("<stdout>", e)),
    }
}
