mod common;

use ppclab::numtheory::{geometric_exp_sum, lemma22_ratio, weyl_sum};
use ppclab::{generate, AlphaVector, FrequencyVector, SequenceSpec};

#[test]
fn geometric_sum_matches_direct_summation() {
    for &theta in &[0.1, 0.377, 0.5, 0.999_999, 1e-7, 0.618_033_988_749_894_9, 0.25 + 1e-9] {
        for &n in &[1u64, 2, 10, 997, 20_000] {
            let closed = geometric_exp_sum(theta, n);
            let (re, im) = common::exp_sum_direct(theta, n);
            let tol = 1e-9 * n as f64;
            assert!((closed.re - re).abs() < tol && (closed.im - im).abs() < tol, "theta {theta} n {n}");
        }
    }
}

#[test]
fn weyl_sum_of_kronecker_points_is_a_geometric_sum() {
    let alpha = AlphaVector::preset("sqrt23").unwrap();
    let pts = generate(&SequenceSpec::parse("kronecker:sqrt23").unwrap(), 5000).unwrap();
    for r in [vec![1, 0], vec![3, -2], vec![7, 11]] {
        let fv = FrequencyVector::new(r.clone()).unwrap();
        let w = weyl_sum(&pts, &fv).unwrap();
        let g = geometric_exp_sum(alpha.phase(&r), 5000) / 5000.0;
        assert!((w - g).norm() < 1e-9, "{r:?}");
    }
}

#[test]
fn kronecker_sum_ratio_never_exceeds_one_at_half() {
    let alpha = AlphaVector::preset("golden").unwrap();
    for r in 1..=50 {
        let fv = FrequencyVector::new(vec![r]).unwrap();
        for n in [1u64, 10, 1000, 100_000] {
            assert!(lemma22_ratio(&alpha, &fv, n, 0.5).unwrap() <= 1.0 + 1e-12);
        }
    }
}
