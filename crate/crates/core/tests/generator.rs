use std::collections::HashSet;

use mci_core::generator::Pcg32;
use mci_core::{generate_instance, size_bounds, Scenario};
use proptest::prelude::*;

/// Upper 0.999 quantiles of the chi-square distribution.
const CHI2_999: [(usize, f64); 4] = [(3, 16.266), (5, 20.515), (10, 29.588), (12, 32.909)];

fn sizes(hyperedge_type: u8, n: usize, draws: usize, seed: u64) -> Vec<usize> {
    let count = draws.div_ceil(n);
    let sc = Scenario::new(n, 1, hyperedge_type, count, seed).unwrap();
    let mut out: Vec<usize> = sc.instances().flat_map(|h| h.unwrap().hyperedges().iter().map(Vec::len).collect::<Vec<_>>()).collect();
    out.truncate(draws);
    out
}

fn chi_square(observed: &[usize], lo: usize, hi: usize) -> f64 {
    let bins = hi - lo + 1;
    let expected = observed.len() as f64 / bins as f64;
    let mut counts = vec![0usize; bins];
    for &s in observed {
        counts[s - lo] += 1;
    }
    counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum()
}

fn binomial(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

#[test]
fn uniform_sizes_for_bounded_types() {
    for t in 1..=4u8 {
        let (lo, hi) = size_bounds(t, 14).unwrap();
        let observed = sizes(t, 14, 1000, 2024);
        assert_eq!(observed.len(), 1000);
        assert!(observed.iter().all(|s| (lo..=hi).contains(s)));
        let df = hi - lo;
        let critical = CHI2_999.iter().find(|(d, _)| *d == df).unwrap().1;
        let stat = chi_square(&observed, lo, hi);
        assert!(stat <= critical, "type {t}: chi2 {stat:.3} > {critical}");
    }
}

#[test]
fn type_five_mean_size() {
    let n = 14u64;
    let observed = sizes(5, 14, 1000, 2024);
    assert!(observed.iter().all(|&s| (2..=14).contains(&s)));
    let weight: f64 = (2..=n).map(|k| binomial(n, k)).sum();
    let mean: f64 = (2..=n).map(|k| k as f64 * binomial(n, k)).sum::<f64>() / weight;
    let second: f64 = (2..=n).map(|k| (k * k) as f64 * binomial(n, k)).sum::<f64>() / weight;
    assert!((mean - 114674.0 / 16369.0).abs() < 1e-12);
    let se = ((second - mean * mean) / observed.len() as f64).sqrt();
    let sample = observed.iter().sum::<usize>() as f64 / observed.len() as f64;
    assert!((sample - mean).abs() <= 3.0 * se, "mean {sample} vs {mean} (se {se})");
}

#[test]
fn type_five_sets_are_distinct() {
    let sc = Scenario::new(6, 5, 5, 3, 9).unwrap();
    for h in sc.instances() {
        let h = h.unwrap();
        let set: HashSet<_> = h.hyperedges().iter().collect();
        assert_eq!(set.len(), 30);
    }
}

#[test]
fn instances_are_independent_of_count() {
    let a = Scenario::new(9, 2, 3, 5, 11).unwrap();
    let b = Scenario { count: 50, ..a };
    for i in 0..5 {
        assert_eq!(generate_instance(&a, i).unwrap(), generate_instance(&b, i).unwrap());
    }
}

proptest! {
    #[test]
    fn below_is_in_range(seed in any::<u64>(), stream in any::<u64>(), bound in 1u32..) {
        let mut rng = Pcg32::new(seed, stream);
        for _ in 0..20 {
            prop_assert!(rng.below(bound) < bound);
        }
    }

    #[test]
    fn generated_instances_respect_bounds(n in 2usize..=20, d in 1usize..=3, t in 1u8..=4, seed in any::<u64>()) {
        let (lo, hi) = size_bounds(t, n).unwrap();
        let Ok(sc) = Scenario::new(n, d, t, 1, seed) else {
            prop_assert!(hi < lo);
            return Ok(());
        };
        let h = generate_instance(&sc, 0).unwrap();
        prop_assert_eq!(h.m(), n * d);
        prop_assert!(h.hyperedges().iter().all(|s| (lo..=hi).contains(&s.len())));
        prop_assert_eq!(&h, &generate_instance(&sc, 0).unwrap());
    }
}
