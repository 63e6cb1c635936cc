//! Pair correlation of a perturbed Kronecker sequence against its Poisson limit,
//! and the same statistic for the unperturbed sequence.
//!
//! ```text
//! cargo run --release --example pair_correlation
//! ```

use ppclab::{generate, pair_corr, Method, PairCorrQuery, SequenceSpec};

pub fn run_example() -> ppclab::Result<()> {
    let n = 100_000;
    let s = vec![0.5, 1.0, 2.0];
    let query = PairCorrQuery::new(1.0, s, Method::Auto)?;
    for text in ["perturbed:kronecker:golden:eps=0.1:seed=3", "kronecker:golden", "iid:d=1:seed=3"] {
        let points = generate(&SequenceSpec::parse(text)?, n)?;
        let result = pair_corr(&points, &query)?;
        println!("{text}");
        for e in &result.entries {
            println!("  s={:<4} F={:.5} target={} pairs={}", e.s, e.f, e.target, e.count);
        }
    }

    // grid and naive counting agree exactly
    let pts = generate(&SequenceSpec::parse("halton:2,3")?, 2000)?;
    let q = |m| PairCorrQuery::new(0.5, vec![1.0, 2.0], m);
    let grid = pair_corr(&pts, &q(Method::Grid)?)?;
    let naive = pair_corr(&pts, &q(Method::Naive)?)?;
    assert_eq!(grid, naive);
    print!("{}", grid.to_csv());
    Ok(())
}

#[allow(dead_code)]
fn main() -> ppclab::Result<()> {
    run_example()
}
