mod common;

use ppclab::discrepancy::{brute_disc, extreme_disc_1d, star_disc_1d};
use ppclab::{RandomSource, TorusPointSet};

fn random_set(seed: u64, n: usize, grid: Option<u32>) -> Vec<f64> {
    let src = RandomSource::new(seed);
    (0..n as u64)
        .map(|i| {
            let u = src.uniform_value(i + 1, 0);
            match grid {
                Some(g) => (u * g as f64).floor() / g as f64,
                None => u,
            }
        })
        .collect()
}

#[test]
fn one_dimensional_formulas_match_box_oracle() {
    for seed in 0..40u64 {
        let n = 1 + (seed as usize * 37) % 120;
        let grid = if seed % 3 == 0 { Some(16) } else { None };
        let xs = random_set(seed, n, grid);
        let pts = TorusPointSet::from_flat(1, xs.clone()).unwrap();
        let star = star_disc_1d(&pts).unwrap().value;
        let ext = extreme_disc_1d(&pts).unwrap().value;
        assert!((star - common::star_disc_brute(&xs)).abs() < 1e-12, "seed {seed}");
        assert!((ext - common::extreme_disc_brute(&xs)).abs() < 1e-12, "seed {seed}");
        let brute = brute_disc(&pts, true).unwrap().value;
        assert!((brute - star).abs() < 1e-12, "seed {seed}");
    }
}

#[test]
fn unanchored_brute_force_matches_oracle_in_one_dimension() {
    for seed in 100..110u64 {
        let xs = random_set(seed, 30, Some(8));
        let pts = TorusPointSet::from_flat(1, xs.clone()).unwrap();
        let v = brute_disc(&pts, false).unwrap().value;
        assert!((v - common::extreme_disc_brute(&xs)).abs() < 1e-12);
    }
}
