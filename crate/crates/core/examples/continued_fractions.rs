//! Continued fraction expansions and badness diagnostics.
//!
//! ```text
//! cargo run --example continued_fractions
//! ```

use ppclab::numtheory::{badness_profile, cf_expand, cf_expand_available, CfSource, QuadraticSurd};
use ppclab::AlphaVector;

pub fn run_example() -> ppclab::Result<()> {
    let golden = CfSource::Surd(QuadraticSurd::new(1, 1, 5, 2)?);
    let cf = cf_expand(&golden, 12)?;
    println!("(1 + sqrt 5)/2 = [{}; {:?}]", cf.a0, cf.partial_quotients);
    for (p, q) in cf.convergents.iter().take(6) {
        println!("  {p}/{q}");
    }

    let root7 = CfSource::Surd(QuadraticSurd::new(0, 1, 7, 1)?);
    println!("sqrt 7 = [{}; {:?}]", cf_expand(&root7, 12)?.a0, cf_expand(&root7, 12)?.partial_quotients);

    let cf = cf_expand(&CfSource::rational(355, 113)?, 10)?;
    println!("355/113 = [{}; {:?}] terminated={}", cf.a0, cf.partial_quotients, cf.terminated);

    // a decimal literal supports only as many quotients as its digits pin down
    let pi = CfSource::decimal("3.14159265358979323846")?;
    let cf = cf_expand_available(&pi, 100)?;
    println!("pi to 20 digits gives {} reliable quotients: {:?}", cf.depth(), cf.partial_quotients);

    let profile = badness_profile(&golden, 30)?;
    println!(
        "golden: max quotient {}, min q||q x|| {:.5}, last {:.5}",
        profile.max_quotient,
        profile.min_product,
        profile.products.last().unwrap()
    );

    for name in ["golden", "sqrt2", "sqrt23", "sqrt235"] {
        let alpha = AlphaVector::preset(name)?;
        let quotients: Vec<u64> = alpha.components.iter().map(|c| c.max_quotient).collect();
        println!("{name}: values {:?} max quotients {quotients:?}", alpha.values());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> ppclab::Result<()> {
    run_example()
}
