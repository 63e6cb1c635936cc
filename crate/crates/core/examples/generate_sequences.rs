//! Generates the built-in sequence families and prints a few points of each.
//!
//! ```text
//! cargo run --example generate_sequences
//! ```

use ppclab::{generate, SequenceSpec};

pub fn run_example() -> ppclab::Result<()> {
    let specs = [
        "kronecker:golden",
        "kronecker:sqrt23",
        "perturbed:kronecker:golden:eps=0.1:seed=7",
        "vdc:2",
        "halton:2,3",
        "iid:d=2:seed=1",
    ];
    for text in specs {
        let spec = SequenceSpec::parse(text)?;
        let points = generate(&spec, 5)?;
        println!("{spec}");
        for p in points.iter() {
            let coords: Vec<String> = p.iter().map(|x| format!("{x:.6}")).collect();
            println!("  ({})", coords.join(", "));
        }
    }

    // the same seed always gives the same points, and prefixes are stable
    let spec = SequenceSpec::parse("perturbed:kronecker:golden:eps=0.1:seed=7")?;
    let long = generate(&spec, 1000)?;
    let short = generate(&spec, 10)?;
    assert_eq!(long.prefix(10)?, short);
    println!("prefix of 1000 points matches a fresh run of 10");
    Ok(())
}

#[allow(dead_code)]
fn main() -> ppclab::Result<()> {
    run_example()
}
