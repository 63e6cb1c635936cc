//! Seeded Monte Carlo experiments: convergence, the expectation check and
//! variance decay, written as CSV reports.
//!
//! ```text
//! cargo run --release --example perturbed_experiment
//! ```

use ppclab::experiments::{run_experiment, ExperimentConfig, ExperimentKind};
use ppclab::SequenceSpec;

pub fn run_example() -> ppclab::Result<()> {
    let spec = SequenceSpec::parse("perturbed:kronecker:golden:eps=0.1:seed=0")?;
    let cfg = ExperimentConfig::new(spec, vec![1_000, 4_000, 16_000, 64_000], vec![0.5, 1.0, 2.0], (0..30).collect())?;

    let report = run_experiment(ExperimentKind::PpcConvergence, &cfg)?;
    println!("config hash {}", report.config_hash);
    println!("worst relative error at N=64000: {:.4}", report.max_rel_err_at(64_000));

    let report = run_experiment(ExperimentKind::VarianceDecay, &cfg)?;
    for d in &report.slopes {
        println!("s={}: log-log variance slope {:.3}", d.s, d.slope);
    }
    for row in report.summary.iter().filter(|r| r.n == 64_000) {
        println!(
            "s={}: mean {:.4} target {} band {:.4} within band: {}",
            row.s,
            row.mean_f,
            row.target,
            row.band,
            row.within_band()
        );
    }

    let dir = std::env::temp_dir().join("ppclab-example-report");
    std::fs::create_dir_all(&dir).map_err(|e| ppclab::Error::io(&dir, e))?;
    report.write_dir(&dir)?;
    println!("report written to {}", dir.display());
    Ok(())
}

#[allow(dead_code)]
fn main() -> ppclab::Result<()> {
    run_example()
}
