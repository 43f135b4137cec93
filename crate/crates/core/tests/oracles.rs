mod common;

use common::*;
use shift_test::assoc::{fisher_exact_2x2, hypergeometric_log_pmf, pearson_v, spearman_v};
use shift_test::{shift_profile, ContingencyTable2x2, LogOdds, Pearson, Spearman};

#[test]
fn log_odds_profile_matches_per_shift_oracle() {
    let mut rng = TestRng(17);
    for _ in 0..50 {
        let x: Vec<u32> = (0..50).map(|_| rng.below(2) as u32).collect();
        let y: Vec<u32> = (0..50).map(|_| rng.below(2) as u32).collect();
        let profile = shift_profile(&x, &y, 5, &LogOdds::<f64>::new(0.1).unwrap()).unwrap();
        assert_eq!(profile.segment_length(), 40);
        for (s, score) in profile.iter() {
            let (xs, ys) = shifted_pair(&x, &y, 5, s);
            assert_eq!(
                score.to_bits(),
                log_odds_oracle(&xs, &ys, 0.1).to_bits(),
                "shift {s}"
            );
        }
    }
}

#[test]
fn pearson_profile_matches_per_shift_oracle() {
    let mut rng = TestRng(5);
    let x: Vec<f64> = (0..120).map(|_| rng.gaussian()).collect();
    let y: Vec<f64> = (0..120).map(|_| 3.0 + rng.gaussian() * 2.0).collect();
    let profile = shift_profile(&x, &y, 20, &Pearson).unwrap();
    for (s, score) in profile.iter() {
        let (xs, ys) = shifted_pair(&x, &y, 20, s);
        let expected = pearson_oracle(&xs, &ys);
        assert!(
            (score - expected).abs() <= 1e-12 * expected.abs().max(1e-300),
            "shift {s}"
        );
    }
    let profile = shift_profile(&x, &y, 20, &Spearman).unwrap();
    for (s, score) in profile.iter() {
        let (xs, ys) = shifted_pair(&x, &y, 20, s);
        assert!((score - spearman_oracle(&xs, &ys)).abs() <= 1e-12);
    }
}

#[test]
fn pearson_fixed_dataset() {
    let x = [1.2, 2.3, 2.9, 4.1, 5.0, 6.2, 6.8, 8.1, 9.3, 9.9];
    let y = [2.0, 1.7, 3.5, 3.9, 6.1, 5.2, 7.7, 7.1, 9.8, 8.6];
    let r = pearson_v(&x, &y).unwrap();
    assert!((r - pearson_oracle(&x, &y)).abs() < 1e-12);
    let r32 = pearson_v(&x.map(|v| v as f32), &y.map(|v| v as f32)).unwrap();
    assert!((f64::from(r32) - r).abs() < 1e-5);
}

#[test]
fn spearman_with_ties_matches_rank_oracle() {
    let x = [1.0, 2.0, 2.0, 3.0, 5.0, 5.0, 5.0, 0.5, 4.0, 2.0];
    let y = [2.0, 1.0, 4.0, 4.0, 6.0, 3.0, 6.0, 1.0, 0.0, 4.0];
    assert!((spearman_v(&x, &y).unwrap() - spearman_oracle(&x, &y)).abs() < 1e-12);
    let mut rng = TestRng(99);
    for _ in 0..200 {
        let x: Vec<f64> = (0..30).map(|_| rng.below(6) as f64).collect();
        let y: Vec<f64> = (0..30).map(|_| rng.below(4) as f64 * 0.5).collect();
        match spearman_v(&x, &y) {
            Ok(r) => assert!((r - spearman_oracle(&x, &y)).abs() < 1e-12),
            Err(_) => assert!(spearman_oracle(&x, &y).is_nan()),
        }
    }
}

#[test]
fn fisher_small_example_matches_enumeration() {
    let t = ContingencyTable2x2::new(3, 1, 1, 3);
    let expected = fisher_oracle(3, 1, 1, 3);
    // margins (4, 4, 4, 4): weights 1, 16, 36, 16, 1 over 70
    assert!((expected - 34.0 / 70.0).abs() < 1e-15);
    assert!((fisher_exact_2x2(&t).unwrap() - expected).abs() < 1e-10);
}

#[test]
fn point_probabilities_sum_to_one() {
    for (r1, r2, c1) in [(4u64, 4u64, 4u64), (10, 3, 7), (20, 20, 13), (1, 30, 1)] {
        let lo = c1.saturating_sub(r2);
        let hi = r1.min(c1);
        let total: f64 = (lo..=hi)
            .map(|a| {
                let t = ContingencyTable2x2::new(a, r1 - a, c1 - a, r2 - (c1 - a));
                hypergeometric_log_pmf(&t).exp()
            })
            .sum();
        assert!((total - 1.0).abs() < 1e-10, "{total}");
    }
}
