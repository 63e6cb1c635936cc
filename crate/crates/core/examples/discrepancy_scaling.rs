//! Discrepancy of low-discrepancy and random point sets, exactly in one
//! dimension and by box enumeration or Erdos-Turan-Koksma bound in two.
//!
//! ```text
//! cargo run --release --example discrepancy_scaling
//! ```

use ppclab::discrepancy::{brute_disc, extreme_disc_1d, ket_bound, low_disc_scaling, star_disc_1d};
use ppclab::{generate, SequenceSpec};

pub fn run_example() -> ppclab::Result<()> {
    let vdc = generate(&SequenceSpec::parse("vdc:2")?, 1000)?;
    println!("vdc N=1000: D* = {:.6}, D = {:.6}", star_disc_1d(&vdc)?.value, extreme_disc_1d(&vdc)?.value);

    let halton = generate(&SequenceSpec::parse("halton:2,3")?, 200)?;
    println!("halton N=200: D* = {:.6}", brute_disc(&halton, true)?.value);
    println!("halton N=200: KET bound {:.6}", ket_bound(&halton, 8, 1.0)?.value);

    let ladder = [100, 1_000, 10_000, 100_000];
    for text in ["vdc:2", "kronecker:golden", "iid:d=1:seed=5"] {
        let rows = low_disc_scaling(&SequenceSpec::parse(text)?, &ladder)?;
        let scaled: Vec<String> = rows.iter().map(|r| format!("{:.3}", r.scaled)).collect();
        println!("{text:>18}: N D_N / log N = {}", scaled.join("  "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> ppclab::Result<()> {
    run_example()
}
