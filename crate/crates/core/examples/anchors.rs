//! Quick tour: the closed-form condition anchors and the two-sided sandwich
//! for the weighted Riesz potential.
//!
//! Run with `cargo run --release -p wconv-core --example anchors`.

use wconv_core::conditions::{compute_d, compute_g, compute_l, TScan};
use wconv_core::families::{ball_grid, sandwich_family};
use wconv_core::harness::two_sided_verify;
use wconv_core::{rearrange_radial_power, riesz_profile, RadialWeight};

fn main() {
    let scan = TScan::default();
    // power weights |x|^{-1/4} on the line, Riesz kernel with γ = 1/2
    let mu_star = rearrange_radial_power(0.25, 1).unwrap();
    let k_star = riesz_profile(0.5, 1).unwrap();

    let g = compute_g(&mu_star, &mu_star, 2.0, 4.0, 4.0, &scan).unwrap();
    println!("G  (p=2, q=4, r=4)      = {}   [16√2/9 = {}]", g.value, 16.0 * 2f64.sqrt() / 9.0);

    let l = compute_l(&mu_star, &mu_star, 2.0, 2.0, 0.5, 1, &scan).unwrap();
    let d = compute_d(&mu_star, &mu_star, &k_star, 2.0, 2.0, &scan).unwrap();
    println!("L  (p=q=2, γ=1/2)       = {}", l.value);
    println!("D  (same instance)      = {}   [64/9 = {}]", d.value, 64.0 / 9.0);
    println!("D/L                     = {}   [2√2 = {}]",
        d.value.to_f64() / l.value.to_f64(),
        2.0 * 2f64.sqrt());

    let mu = RadialWeight::power(0.25);
    let rep = two_sided_verify(
        &mu,
        &mu,
        2.0,
        2.0,
        0.5,
        &ball_grid(1e-3, 1e3, 6),
        &sandwich_family(1e-2, 1e2, 3),
        &scan,
    )
    .unwrap();
    println!();
    println!("two-sided sandwich for A_γ with μ = ν = |x|^(-1/4):");
    println!("  F (ball bound)        = {}", rep.f_value);
    println!("  empirical lower bound = {}", rep.lower_bound);
    println!("  L (set bound)         = {}", rep.l_value);
    println!("  F <= L                : {}", rep.f_le_l);
}
