//! Closed-form expectations of the perturbation kernel and numerical checks
//! of the exponential-sum and series bounds.
//!
//! ```text
//! cargo run --release --example kernel_bounds
//! ```

use ppclab::kernels::{
    lemma21_expectation, lemma23_lhs, remark22_expectation, triangular_density, Lemma24Table, OverlapCase,
};
use ppclab::numtheory::lemma22_ratio;
use ppclab::{AlphaVector, FrequencyVector};

pub fn run_example() -> ppclab::Result<()> {
    let eps = 0.3;
    for case in OverlapCase::ALL {
        println!("E[e(...)] r=2 r'=-3 eps={eps} {case:>9}: {:+.6}", lemma21_expectation(2, -3, eps, case)?);
    }
    println!("E[e(r eps (X - X'))] at r=4: {:.6}", remark22_expectation(4, eps)?);
    println!("triangular density at (0.1, -0.2): {:.4}", triangular_density(&[0.1, -0.2], eps));

    let alpha = AlphaVector::preset("sqrt23")?;
    let r = FrequencyVector::new(vec![3, 2])?;
    for n in [100, 10_000, 1_000_000] {
        println!("weyl sum ratio N={n}: {:.4}", lemma22_ratio(&alpha, &r, n, 0.25)?);
    }

    let golden = AlphaVector::preset("golden")?;
    for n in [100, 1000] {
        let check = lemma23_lhs(&golden, 0.1, n, 10_000, 1.0, 0.1)?;
        println!("series at N={n}: lhs {:.3} + tail {:.3} vs {:.3}: {}", check.lhs, check.tail, check.rhs, check.satisfied);
    }

    let table = Lemma24Table::new(0.5, 100_000, 100)?;
    for rp in [1, 10, 100] {
        let check = table.check(rp)?;
        println!("r'={rp}: {:.6} + {:.2e} <= {:.6}: {}", check.lhs, check.tail, check.rhs, check.satisfied);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> ppclab::Result<()> {
    run_example()
}
