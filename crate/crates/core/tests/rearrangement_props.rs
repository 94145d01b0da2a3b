//! Property suites for the rearrangement calculus: the sort oracle,
//! equimeasurability, mass conservation, the set-supremum identity, and the
//! Hardy–Littlewood inequality.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wconv_core::{
    double_star, hardy_littlewood_pair, rearrange_sampled, sup_mean_over_sets, GridFunction1D,
    Profile,
};

fn random_grid(rng: &mut ChaCha8Rng, m: usize, h: f64) -> GridFunction1D {
    let values: Vec<f64> = (0..m).map(|_| rng.gen_range(-5.0..5.0)).collect();
    GridFunction1D::symmetric(h, values).unwrap()
}

/// Independent oracle: plain descending sort of absolute values.
fn sort_oracle(f: &GridFunction1D) -> Vec<f64> {
    let mut v: Vec<f64> = f.values().iter().map(|x| x.abs()).collect();
    v.sort_by(|a, b| b.partial_cmp(a).unwrap());
    v
}

#[test]
fn rearrangement_matches_sort_oracle_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(91);
    for _ in 0..20 {
        let f = random_grid(&mut rng, 10_000, 0.01);
        let prof = rearrange_sampled(&f);
        let oracle = sort_oracle(&f);
        match &prof {
            Profile::Sampled(s) => assert_eq!(s.values(), oracle.as_slice()),
            _ => panic!("expected sampled profile"),
        }
    }
}

#[test]
fn equimeasurability_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(92);
    let f = random_grid(&mut rng, 500, 0.25);
    let prof = rearrange_sampled(&f);
    let h = f.h();
    for _ in 0..200 {
        let lambda = rng.gen_range(0.0..5.5);
        if lambda == 0.0 {
            continue;
        }
        let direct = f.values().iter().filter(|v| v.abs() > lambda).count() as f64 * h;
        let rearr = match &prof {
            Profile::Sampled(s) => {
                s.values().iter().zip(s.widths()).filter(|(v, _)| **v > lambda).map(|(_, w)| w).sum::<f64>()
            }
            _ => unreachable!(),
        };
        assert_eq!(direct, rearr, "lambda = {lambda}");
    }
}

#[test]
fn mass_conservation() {
    let mut rng = ChaCha8Rng::seed_from_u64(93);
    for _ in 0..50 {
        let m = rng.gen_range(3..400);
        let h = rng.gen_range(0.01..2.0);
        let f = random_grid(&mut rng, m, h);
        let prof = rearrange_sampled(&f);
        let mass = prof.prefix_integral(f.measure()).unwrap();
        let direct = f.integral_abs();
        assert!(
            (mass - direct).abs() <= 1e-12 * direct.max(1.0),
            "{mass} vs {direct}"
        );
    }
}

#[test]
fn double_star_monotone_and_dominating() {
    let mut rng = ChaCha8Rng::seed_from_u64(94);
    for _ in 0..20 {
        let f = random_grid(&mut rng, 64, 0.125);
        let prof = rearrange_sampled(&f);
        let mut prev = f64::INFINITY;
        for k in 1..=128 {
            let t = k as f64 * 0.0625;
            let ds = double_star(&prof, t).unwrap();
            assert!(ds <= prev * (1.0 + 1e-14), "t = {t}");
            assert!(ds >= prof.value(t) - 1e-14, "t = {t}");
            prev = ds;
        }
    }
}

#[test]
fn set_supremum_identity_exact_on_grid_measures() {
    let mut rng = ChaCha8Rng::seed_from_u64(95);
    for _ in 0..10 {
        let f = random_grid(&mut rng, 100, 0.05);
        let prof = rearrange_sampled(&f);
        for k in 1..=100usize {
            let t = k as f64 * f.h();
            let sup = sup_mean_over_sets(&f, t).unwrap();
            let ds = double_star(&prof, t).unwrap();
            assert_eq!(sup, ds, "k = {k}");
        }
    }
}

#[test]
fn brute_force_subset_oracle_small_grid() {
    // all C(8, k) cell unions on a small grid: the top-k selection is optimal
    let mut rng = ChaCha8Rng::seed_from_u64(96);
    let f = random_grid(&mut rng, 8, 0.5);
    let m = f.len();
    for k in 1..=m {
        let mut best: f64 = 0.0;
        for mask in 0u32..(1 << m) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let sum: f64 = (0..m).filter(|i| mask & (1 << i) != 0).map(|i| f.values()[i].abs()).sum();
            best = best.max(sum * f.h() / (k as f64 * f.h()));
        }
        let sup = sup_mean_over_sets(&f, k as f64 * f.h()).unwrap();
        assert!((sup - best).abs() <= 1e-12 * best.max(1.0), "k = {k}: {sup} vs {best}");
    }
}

#[test]
fn ties_do_not_change_output() {
    // same multiset with duplicates in different input orders
    let a = GridFunction1D::symmetric(1.0, vec![2.0, -2.0, 1.0, 2.0]).unwrap();
    let b = GridFunction1D::symmetric(1.0, vec![-2.0, 2.0, 2.0, 1.0]).unwrap();
    let (pa, pb) = (rearrange_sampled(&a), rearrange_sampled(&b));
    match (&pa, &pb) {
        (Profile::Sampled(sa), Profile::Sampled(sb)) => assert_eq!(sa.values(), sb.values()),
        _ => unreachable!(),
    }
}

#[test]
fn hardy_littlewood_holds_on_1000_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(97);
    for _ in 0..1000 {
        let m = rng.gen_range(2..64);
        let h = rng.gen_range(0.05..1.5);
        let f = random_grid(&mut rng, m, h);
        let g = random_grid(&mut rng, m, h);
        let hl = hardy_littlewood_pair(&f, &g).unwrap();
        assert!(
            hl.lhs <= hl.rhs + 1e-12 * hl.rhs.abs().max(1.0),
            "lhs {} > rhs {}",
            hl.lhs,
            hl.rhs
        );
    }
}

proptest! {
    #[test]
    fn scaling_commutes_with_rearrangement(
        values in prop::collection::vec(-10.0f64..10.0, 1..40),
        c in 0.0f64..7.0,
    ) {
        let f = GridFunction1D::symmetric(0.5, values.clone()).unwrap();
        let scaled = GridFunction1D::symmetric(0.5, values.iter().map(|v| c * v).collect()).unwrap();
        let pa = rearrange_sampled(&scaled);
        let pb = rearrange_sampled(&f).scale(c).unwrap();
        if let (Profile::Sampled(sa), Profile::Sampled(sb)) = (&pa, &pb) {
            for (x, y) in sa.values().iter().zip(sb.values()) {
                prop_assert!((x - y).abs() <= 1e-12 * y.abs().max(1.0));
            }
        }
    }

    #[test]
    fn equimeasurability_random(values in prop::collection::vec(-3.0f64..3.0, 1..50), lambda in 0.01f64..3.0) {
        let f = GridFunction1D::symmetric(0.25, values).unwrap();
        let prof = rearrange_sampled(&f);
        let direct = f.values().iter().filter(|v| v.abs() > lambda).count() as f64 * f.h();
        if let Profile::Sampled(s) = &prof {
            let rearr: f64 = s.values().iter().zip(s.widths()).filter(|(v, _)| **v > lambda).map(|(_, w)| w).sum();
            prop_assert_eq!(direct, rearr);
        }
    }
}
