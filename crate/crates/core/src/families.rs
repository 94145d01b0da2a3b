//! Seeded generators for scan families: interval unions, pair families for
//! the bilinear-form supremum, random parameter tuples, and random monotone
//! staircase weights.

use crate::conditions::ParamSet;
use crate::kernels::SetUnion1D;
use crate::weights::RadialWeight;
use rand::Rng;

/// Random union of 1–3 disjoint intervals inside `[-scale, scale]`.
pub fn random_interval_union<R: Rng>(rng: &mut R, scale: f64) -> SetUnion1D {
    let k = rng.gen_range(1..=3);
    let mut intervals = Vec::with_capacity(k);
    for _ in 0..k {
        let a = rng.gen_range(-scale..scale * 0.9);
        let len = rng.gen_range(0.05 * scale..0.5 * scale);
        intervals.push((a, a + len));
    }
    SetUnion1D::new(intervals).expect("generated intervals are valid")
}

/// Random pair `(E, W)` of interval unions; measures are independent.
pub fn random_pair<R: Rng>(rng: &mut R, scale: f64) -> (SetUnion1D, SetUnion1D) {
    (random_interval_union(rng, scale), random_interval_union(rng, scale))
}

/// Centered equal pairs `E = W = [-a, a]` across geometric scales.
pub fn centered_pair_family(
    scale_min: f64,
    scale_max: f64,
    per_decade: u32,
) -> Vec<(SetUnion1D, SetUnion1D)> {
    let decades = (scale_max / scale_min).log10();
    let n = (decades * per_decade as f64).ceil().max(1.0) as usize;
    (0..=n)
        .map(|i| {
            let a = scale_min * (scale_max / scale_min).powf(i as f64 / n as f64);
            let s = SetUnion1D::interval(-a, a).unwrap();
            (s.clone(), s)
        })
        .collect()
}

/// The scan family for the weak-norm supremum: centered pairs, offset pairs,
/// and pairs of unequal measure, across geometric scales.
pub fn sandwich_family(scale_min: f64, scale_max: f64, per_decade: u32) -> Vec<(SetUnion1D, SetUnion1D)> {
    let mut fam = centered_pair_family(scale_min, scale_max, per_decade);
    let decades = (scale_max / scale_min).log10();
    let n = (decades * per_decade as f64).ceil().max(1.0) as usize;
    for i in 0..=n {
        let a = scale_min * (scale_max / scale_min).powf(i as f64 / n as f64);
        // offset pair
        fam.push((
            SetUnion1D::interval(a, 3.0 * a).unwrap(),
            SetUnion1D::interval(-a, a).unwrap(),
        ));
        // unequal measures
        fam.push((
            SetUnion1D::interval(-a, a).unwrap(),
            SetUnion1D::interval(-0.25 * a, 0.25 * a).unwrap(),
        ));
    }
    fam
}

/// Random tuple in the power-weight cone `0 ≤ α < n/p'`, `0 ≤ β < n/q` at
/// `n = 1`, balanced with probability one half (the regime where finiteness
/// of the set-supremum functional is equivalent to the closed-form balance
/// rule). Unbalanced tuples get `q` nudged by at least 0.05.
pub fn random_corollary1_tuple<R: Rng>(rng: &mut R) -> ParamSet {
    loop {
        let p = rng.gen_range(1.2..3.5);
        let q = p + rng.gen_range(0.0..2.0);
        let p_conj = p / (p - 1.0);
        let alpha = rng.gen_range(0.0..0.95 / p_conj);
        let beta = rng.gen_range(0.0..0.95 / q);
        // balance: 1/r = 1 + 1/q - 1/p - (α+β)
        let inv_r = 1.0 + 1.0 / q - 1.0 / p - (alpha + beta);
        if !(inv_r > 0.02 && inv_r < 0.98) {
            continue;
        }
        let r = 1.0 / inv_r;
        let mut ps = ParamSet {
            n: Some(1),
            p: Some(p),
            q: Some(q),
            r: Some(r),
            alpha: Some(alpha),
            beta: Some(beta),
            ..Default::default()
        };
        if rng.gen_bool(0.5) {
            // break the balance without leaving the valid p <= q range
            let bump = rng.gen_range(0.05..0.3);
            let q2 = if rng.gen_bool(0.5) { q + bump } else { (q - bump).max(p + 1e-3) };
            if (q2 - q).abs() < 0.049 {
                continue;
            }
            ps.q = Some(q2);
        }
        return ps;
    }
}

/// Random nonincreasing staircase weight: 4–12 steps with geometric-ish
/// decay, supported inside a bounded ball.
pub fn random_monotone_weight<R: Rng>(rng: &mut R) -> RadialWeight {
    let steps = rng.gen_range(4..=12);
    let mut radii = Vec::with_capacity(steps);
    let mut values = Vec::with_capacity(steps);
    let mut r = 0.0;
    let mut v = rng.gen_range(0.5..3.0);
    for _ in 0..steps {
        r += rng.gen_range(0.2..1.5);
        radii.push(r);
        values.push(v);
        v *= rng.gen_range(0.3..0.95);
    }
    RadialWeight::sampled(radii, values).expect("staircase is a valid weight")
}

/// Geometric grid of centered balls `(0, ρ)` with a sprinkling of off-center
/// balls, for the ball-supremum scan.
pub fn ball_grid(rho_min: f64, rho_max: f64, per_decade: u32) -> Vec<(f64, f64)> {
    let decades = (rho_max / rho_min).log10();
    let n = (decades * per_decade as f64).ceil().max(1.0) as usize;
    let mut balls = Vec::with_capacity(2 * n);
    for i in 0..=n {
        let rho = rho_min * (rho_max / rho_min).powf(i as f64 / n as f64);
        balls.push((0.0, rho));
        balls.push((1.5 * rho, rho));
        balls.push((4.0 * rho, rho));
    }
    balls
}
