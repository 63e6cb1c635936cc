mod common;

use num_bigint::BigInt;
use ppclab::numtheory::{badness_profile, cf_expand, CfSource, QuadraticSurd};
use ppclab::{AlphaVector, Error};

fn quotients(cf: &ppclab::numtheory::ContinuedFraction) -> Vec<BigInt> {
    std::iter::once(cf.a0.clone())
        .chain(cf.partial_quotients.iter().map(|&a| BigInt::from(a)))
        .collect()
}

#[test]
fn surds_match_decimal_oracle() {
    let cases: &[(i64, i64, u64, i64)] = &[
        (1, 1, 5, 2),
        (-1, 1, 5, 2),
        (0, 1, 2, 1),
        (-1, 1, 3, 1),
        (-2, 1, 5, 1),
        (3, -2, 7, 5),
        (1, 1, 13, -3),
        (0, 3, 11, 7),
        (-5, 4, 19, 6),
    ];
    for &(a, b, d, c) in cases {
        let oracle = common::surd_quotients(a, b, d, c, 400);
        assert!(oracle.len() > 150, "oracle too shallow for {a} {b} {d} {c}");
        let cf = cf_expand(&CfSource::Surd(QuadraticSurd::new(a, b, d, c).unwrap()), 120).unwrap();
        assert_eq!(quotients(&cf)[..], oracle[..121], "({a} + {b} sqrt {d}) / {c}");
    }
}

#[test]
fn rationals_match_euclid() {
    for &(p, q) in &[(7, 3), (-7, 3), (355, 113), (1, 1), (0, 5), (144, 89), (-1000, 7), (5, -2)] {
        let cf = cf_expand(&CfSource::rational(p, q).unwrap(), 50).unwrap();
        assert!(cf.terminated);
        assert_eq!(quotients(&cf), common::rational_quotients(p, q), "{p}/{q}");
        let (pk, qk) = cf.convergents.last().unwrap();
        assert_eq!(pk * BigInt::from(q), qk * BigInt::from(p));
    }
}

#[test]
fn decimal_enclosure_matches_oracle_depth() {
    let text = "3.14159265358979323846264338327950288419716939937510";
    let den = BigInt::from(10).pow(50);
    let num: BigInt = text.replace('.', "").parse().unwrap();
    let oracle = common::euclid_common(&num - 1, &num + 1, den);
    let cf = ppclab::numtheory::cf_expand_available(&CfSource::decimal(text).unwrap(), 200).unwrap();
    assert_eq!(quotients(&cf), oracle);
    assert!(matches!(
        cf_expand(&CfSource::decimal(text).unwrap(), oracle.len() + 5),
        Err(Error::Precision { .. })
    ));
}

#[test]
fn convergents_are_best_approximations() {
    let cf = cf_expand(&CfSource::Surd(QuadraticSurd::new(0, 1, 2, 1).unwrap()), 20).unwrap();
    for w in cf.convergents.windows(2) {
        let (p0, q0) = &w[0];
        let (p1, q1) = &w[1];
        let det = p1 * q0 - p0 * q1;
        assert!(det == BigInt::from(1) || det == BigInt::from(-1));
    }
}

#[test]
fn presets_have_bounded_quotients() {
    let exact = |a: i64, d: u64, c: i64| {
        // (a + sqrt d) / c to 40 digits, then a correctly rounded parse
        let scale = BigInt::from(10).pow(40);
        let num = BigInt::from(a) * &scale + (BigInt::from(d) * &scale * &scale).sqrt();
        format!("0.{:0>40}", (num / c).to_string()).parse::<f64>().unwrap()
    };
    let parts: &[(&str, &[(i64, u64, i64)])] = &[
        ("golden", &[(-1, 5, 2)]),
        ("sqrt2", &[(-1, 2, 1)]),
        ("sqrt23", &[(-1, 2, 1), (-1, 3, 1)]),
        ("sqrt235", &[(-1, 2, 1), (-1, 3, 1), (-2, 5, 1)]),
    ];
    for &(name, comps) in parts {
        let alpha = AlphaVector::preset(name).unwrap();
        for (c, &(a, d, den)) in alpha.components.iter().zip(comps) {
            assert!(c.max_quotient <= 4, "{name}: {}", c.max_quotient);
            assert!(c.badness_estimate > 0.1);
            assert_eq!(c.hi, exact(a, d, den), "{name}");
            assert!(c.lo.abs() <= 0.5 * f64::EPSILON * c.hi);
        }
    }
    let profile = badness_profile(&CfSource::Surd(QuadraticSurd::new(1, 1, 5, 2).unwrap()), 40).unwrap();
    assert_eq!(profile.max_quotient, 1);
    let late = profile.products[30];
    assert!((late - 1.0 / 5f64.sqrt()).abs() < 1e-10);
}

#[test]
fn kronecker_multiples_match_exact_arithmetic() {
    // frac(n * (sqrt 5 - 1)/2) from integer square roots at 60 digits
    let alpha = AlphaVector::preset("golden").unwrap();
    let scale = BigInt::from(10).pow(60);
    let root5: BigInt = (BigInt::from(5) * &scale * &scale).sqrt();
    for n in [1i64, 7, 1000, 123_457, 1_000_000, 987_654_321] {
        let num = (BigInt::from(n) * (&root5 - &scale)) / 2;
        let frac_num = num % &scale;
        let shifted: BigInt = frac_num / BigInt::from(10).pow(40);
        let exact = shifted.to_string().parse::<f64>().unwrap() / 1e20;
        let got = alpha.components[0].frac_multiple(n);
        assert!((got - exact).abs() < 1e-15 * (n as f64).max(1.0).log10().max(1.0), "n = {n}: {got} vs {exact}");
    }
}
