//! Weyl exponential sums of Kronecker sequences, in closed form and point by point.
//!
//! ```text
//! cargo run --example exp_sums
//! ```

use ppclab::numtheory::{direct_exp_sum, geometric_exp_sum, weyl_sum};
use ppclab::{generate, AlphaVector, FrequencyVector, SequenceSpec};

pub fn run_example() -> ppclab::Result<()> {
    let theta = AlphaVector::preset("golden")?.values()[0];
    for n in [10, 1_000, 100_000] {
        let g = geometric_exp_sum(theta, n);
        let d = direct_exp_sum(theta, n);
        println!("N={n:>6}: |S| = {:.6} (geometric) {:.6} (direct)", g.norm(), d.norm());
    }

    let points = generate(&SequenceSpec::parse("kronecker:sqrt23")?, 5_000)?;
    for r in [vec![1, 0], vec![1, 1], vec![3, -2]] {
        let s = weyl_sum(&points, &FrequencyVector::new(r.clone())?)?;
        println!("r={r:?}: |(1/N) sum e(r . x_n)| = {:.2e}", s.norm());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> ppclab::Result<()> {
    run_example()
}
