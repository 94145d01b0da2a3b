//! Grid convolution/potential operators, the weighted bilinear form, and the
//! empirical operator-norm lower bound built on it.
//!
//! Grid convolutions integrate the kernel exactly over every cell (the cell
//! function is piecewise constant), so kernel singularities never enter the
//! error budget. The bilinear form is reduced to the correlation form
//! `∫ K(u)·C(u) du` with `C(u) = ∫_{W ∩ (E-u)} μ(x) ν(x+u) dx`, and both
//! levels are integrated with singularity-aware quadrature.

use crate::error::{CoreError, Result};
use crate::ext::ExtReal;
use crate::kernels::{KernelSpec, SetUnion1D};
use crate::quad::{integrate_singular_with_floor, QuadResult, SingularPoint};
use crate::rearrangement::{GridFunction1D, Profile};
use crate::weights::RadialWeight;

/// Relative tolerance targets for the two quadrature levels of the bilinear
/// form; the inner level is exact for step weights.
const INNER_TOL: f64 = 1e-10;
const OUTER_TOL: f64 = 1e-8;

/// `(K*f)(x) = Σ_j f_j ∫_{cell_j} K(x - y) dy` at one point.
pub fn convolve_at(f: &GridFunction1D, kernel: &KernelSpec, x: f64) -> Result<f64> {
    let mut acc = 0.0;
    for j in 0..f.len() {
        let v = f.values()[j];
        if v == 0.0 {
            continue;
        }
        let (lo, hi) = f.cell_edges(j);
        // ∫_{cell} K(x-y) dy = ∫_{x-hi}^{x-lo} K(u) du
        acc += v * kernel.cell_integral(x - hi, x - lo)?;
    }
    Ok(acc)
}

/// Convolution evaluated at every cell center; output grid = input grid.
pub fn convolve(f: &GridFunction1D, kernel: &KernelSpec) -> Result<GridFunction1D> {
    if let KernelSpec::Riesz { gamma, .. } = kernel {
        if *gamma <= 0.0 {
            return Err(CoreError::InvalidInput(format!("non-integrable riesz exponent {gamma}")));
        }
    }
    let mut out = f.clone();
    for i in 0..f.len() {
        out.values_mut()[i] = convolve_at(f, kernel, f.cell_center(i))?;
    }
    Ok(out)
}

/// Riesz potential `I_γ f` on the grid (dimension 1).
pub fn riesz_potential(f: &GridFunction1D, gamma: f64) -> Result<GridFunction1D> {
    convolve(f, &KernelSpec::riesz(gamma, 1)?)
}

/// Weighted potential `A_γ f(y) = ν(y)·I_γ(μ f)(y)`.
pub fn weighted_potential_apply(
    f: &GridFunction1D,
    mu: &RadialWeight,
    nu: &RadialWeight,
    gamma: f64,
) -> Result<GridFunction1D> {
    weighted_conv_apply(f, mu, nu, &KernelSpec::riesz(gamma, 1)?)
}

/// Weighted convolution `A_K f(y) = ν(y)·(K * (μ f))(y)` with exact cell
/// averages of `μ f`; a non-integrable `μ` cell is rejected with its index.
pub fn weighted_conv_apply(
    f: &GridFunction1D,
    mu: &RadialWeight,
    nu: &RadialWeight,
    kernel: &KernelSpec,
) -> Result<GridFunction1D> {
    let mut weighted = f.clone();
    for j in 0..f.len() {
        let (lo, hi) = f.cell_edges(j);
        match mu.interval_integral(lo, hi) {
            ExtReal::Finite(m) => weighted.values_mut()[j] = f.values()[j] * m / f.h(),
            ExtReal::Infinite => {
                return Err(CoreError::NonIntegrableCell {
                    cell: j,
                    exponent: mu.singular_exponent().unwrap_or(f64::NAN),
                })
            }
        }
    }
    let mut out = convolve(&weighted, kernel)?;
    for i in 0..out.len() {
        let y = out.cell_center(i);
        let scaled = nu.eval(y) * out.values()[i];
        if !scaled.is_finite() {
            return Err(CoreError::InvalidInput(format!(
                "output weight singular at grid node y = {y}; shift the grid off the singularity"
            )));
        }
        out.values_mut()[i] = scaled;
    }
    Ok(out)
}

/// Band-limiting projector `S f = (1/2π)·(sinc kernel) * f` under the
/// convention `𝓕f(ξ) = ∫ f e^{-ixξ} dx`, `𝓕⁻¹g(x) = (1/2π)∫ g e^{ixξ} dξ`.
pub fn sinc_apply(f: &GridFunction1D, d: f64) -> Result<GridFunction1D> {
    if !(d > 0.0) {
        return Err(CoreError::InvalidInput(format!("band edge d = {d}")));
    }
    let mut out = convolve(f, &KernelSpec::Sinc { edges: vec![d] })?;
    let c = 1.0 / (2.0 * std::f64::consts::PI);
    for v in out.values_mut() {
        *v *= c;
    }
    Ok(out)
}

/// Bilinear-form value with its accumulated quadrature error bound.
#[derive(Clone, Copy, Debug)]
pub struct QuadOutcome {
    pub value: f64,
    pub abs_err: f64,
}

/// `∫_E ν(y) ∫_W K(y-x) μ(x) dx dy`, computed in the correlation form
/// `∫ K(u) C(u) du` with `C(u) = ∫_{W ∩ (E-u)} μ(x) ν(x+u) dx`.
///
/// All kernel and weight singular points are split and desingularized, so
/// the reported error bound is a genuine quadrature estimate. A divergent
/// inner integral yields the infinite tag.
pub fn bilinear_form(
    e: &SetUnion1D,
    w: &SetUnion1D,
    mu: &RadialWeight,
    nu: &RadialWeight,
    kernel: &KernelSpec,
) -> Result<BilinearOutcome> {
    // Divergence precheck for origin-singular power weights: the double
    // integral near (0, 0) converges iff each weight is locally integrable
    // and, for the Riesz kernel, α + β < 1 + γ.
    let touches_zero =
        |s: &SetUnion1D| s.intervals().iter().any(|&(a, b)| a <= 0.0 && b >= 0.0);
    let power_exp = |w: &RadialWeight| match w {
        RadialWeight::Power { exponent } if *exponent > 0.0 => *exponent,
        _ => 0.0,
    };
    let (a_mu, b_nu) = (power_exp(mu), power_exp(nu));
    if (touches_zero(w) && a_mu >= 1.0) || (touches_zero(e) && b_nu >= 1.0) {
        return Ok(BilinearOutcome { value: ExtReal::Infinite, abs_err: f64::INFINITY });
    }
    if let KernelSpec::Riesz { gamma, .. } = kernel {
        if touches_zero(e) && touches_zero(w) && a_mu + b_nu >= 1.0 + gamma {
            return Ok(BilinearOutcome { value: ExtReal::Infinite, abs_err: f64::INFINITY });
        }
    }

    // Inner weighted correlation at shift u; step-by-step exact when both
    // weight rules are piecewise constant.
    let exact_steps = is_step_rule(mu) && is_step_rule(nu);
    let mu_sing = mu.quad_singularities();
    let nu_sing = nu.quad_singularities();
    let inner = |u: f64| -> QuadResult {
        let shifted_e = e.translate(-u);
        let Some(region) = w.intersect(&shifted_e) else {
            return QuadResult::zero();
        };
        if exact_steps {
            let mut acc = 0.0;
            for &(a, b) in region.intervals() {
                acc += step_pair_integral(mu, nu, u, a, b);
            }
            return QuadResult { value: acc, abs_err: 0.0 };
        }
        let mut total = QuadResult::zero();
        for &(a, b) in region.intervals() {
            total.accumulate(weighted_shift_integral(
                mu, nu, u, a, b, &mu_sing, &nu_sing, INNER_TOL,
            ));
        }
        total
    };

    // Outer u-domain: the hull of E - W. Kinks: endpoint differences, the
    // shifts where either weight's singular structure crosses a region
    // boundary (u ∈ -∂W for ν's origin, u ∈ ∂E for μ's), and the kernel's
    // own singular points. C(u) is merely non-smooth at the kinks, but the
    // endpoint substitution is a plain reparametrization, so declaring a
    // positive exponent there flattens the cusp and saves the bisection from
    // chasing it.
    let (u_lo, u_hi) = (e.min() - w.max(), e.max() - w.min());
    let smoothing = 0.5;
    let mut sing: Vec<SingularPoint> = kernel
        .singular_points()
        .into_iter()
        .map(|(location, exponent)| SingularPoint { location, exponent: exponent.max(smoothing) })
        .collect();
    // C(u) scales like |u|^{1-α-β} near zero when both weights are singular,
    // on top of any kernel singularity; u = 0 must be a panel boundary
    // (C(0) itself may be infinite even when the u-integral converges).
    let kernel_exp_at_zero = match kernel {
        KernelSpec::Riesz { gamma, n } => *n as f64 - gamma,
        _ => 0.0,
    };
    let zero_exp = (kernel_exp_at_zero + (a_mu + b_nu - 1.0).max(0.0)).clamp(smoothing, 0.97);
    sing.push(SingularPoint { location: 0.0, exponent: zero_exp });
    for &ee in &e.endpoints() {
        for &ww in &w.endpoints() {
            sing.push(SingularPoint { location: ee - ww, exponent: smoothing });
        }
    }
    for s in &nu_sing {
        for &ww in &w.endpoints() {
            sing.push(SingularPoint { location: s.location - ww, exponent: s.exponent.max(smoothing) });
        }
    }
    for s in &mu_sing {
        for &ee in &e.endpoints() {
            sing.push(SingularPoint { location: ee - s.location, exponent: s.exponent.max(smoothing) });
        }
    }
    // Divergence guard: a non-integrable weight pairing (α + β ≥ 1 with the
    // singular points inside the region) shows up as a non-finite inner value.
    let mut divergent = false;
    let f = |u: f64| {
        let c = inner(u);
        if !c.value.is_finite() {
            return f64::NAN;
        }
        kernel.eval(u) * c.value
    };
    // the outer integrand inherits the inner quadrature's noise; stop
    // refining once estimates reach that floor
    let result = integrate_singular_with_floor(&f, u_lo, u_hi, &sing, OUTER_TOL, 30.0 * INNER_TOL);
    if !result.value.is_finite() {
        divergent = true;
    }
    if divergent {
        return Ok(BilinearOutcome { value: ExtReal::Infinite, abs_err: f64::INFINITY });
    }
    let err = result.abs_err + INNER_TOL * result.value.abs();
    Ok(BilinearOutcome { value: ExtReal::finite(result.value), abs_err: err })
}

#[derive(Clone, Copy, Debug)]
pub struct BilinearOutcome {
    pub value: ExtReal,
    pub abs_err: f64,
}

/// `∫_a^b μ(x)·ν(x+u) dx` with the ν-side singular panels integrated in
/// `w = x + u` coordinates.
///
/// Near `x = -u` the shifted argument `x + u` loses all significant digits
/// when computed by subtraction, which turns the integrand into quantization
/// noise; switching coordinates puts the singular endpoint at an exact zero
/// in the integration variable (`-u + u = 0` in floats), so the evaluation
/// stays smooth all the way in.
#[allow(clippy::too_many_arguments)]
fn weighted_shift_integral(
    mu: &RadialWeight,
    nu: &RadialWeight,
    u: f64,
    a: f64,
    b: f64,
    mu_sing: &[SingularPoint],
    nu_sing: &[SingularPoint],
    tol_rel: f64,
) -> QuadResult {
    #[derive(Clone, Copy, PartialEq)]
    enum End {
        Plain,
        MuPoint(f64),
        NuPoint(f64),
    }

    // panel cuts in x coordinates: weight kinks plus the two singular points
    let mut cuts = vec![a, b];
    let mut mu_at = End::Plain;
    let mut nu_at = End::Plain;
    for s in mu_sing {
        if s.location > a && s.location < b {
            cuts.push(s.location);
        }
        if s.exponent > 0.0 {
            mu_at = End::MuPoint(s.exponent);
        }
    }
    for s in nu_sing {
        let loc = s.location - u;
        if loc > a && loc < b {
            cuts.push(loc);
        }
        if s.exponent > 0.0 {
            nu_at = End::NuPoint(s.exponent);
        }
    }
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cuts.dedup();

    let classify = |x: f64| -> End {
        if let End::MuPoint(s) = mu_at {
            if x == 0.0 {
                return End::MuPoint(s);
            }
        }
        if let End::NuPoint(s) = nu_at {
            if x == -u {
                return End::NuPoint(s);
            }
        }
        End::Plain
    };

    // each panel: at most one singular end after a midpoint split
    let mut panels: Vec<(f64, f64, End, End)> = Vec::new();
    for win in cuts.windows(2) {
        let (lo, hi) = (win[0], win[1]);
        let (el, eh) = (classify(lo), classify(hi));
        if el != End::Plain && eh != End::Plain {
            let mid = 0.5 * (lo + hi);
            panels.push((lo, mid, el, End::Plain));
            panels.push((mid, hi, End::Plain, eh));
        } else {
            panels.push((lo, hi, el, eh));
        }
    }

    let one = |lo: f64, hi: f64, el: End, eh: End, tol: f64, depth: u32| -> QuadResult {
        let x_integrand = |x: f64| mu.eval(x) * nu.eval(x + u);
        match (el, eh) {
            // ν-side panels in w = x + u coordinates; the singular end
            // becomes an exact zero
            (End::NuPoint(s), _) | (_, End::NuPoint(s)) => {
                let w_integrand = |wv: f64| mu.eval(wv - u) * nu.eval(wv);
                let (wlo, whi) = (lo + u, hi + u);
                let sing = [SingularPoint { location: 0.0, exponent: s }];
                quad_panel(&w_integrand, wlo, whi, &sing, tol, depth)
            }
            (End::MuPoint(s), _) | (_, End::MuPoint(s)) => {
                let sing = [SingularPoint { location: 0.0, exponent: s }];
                quad_panel(&x_integrand, lo, hi, &sing, tol, depth)
            }
            _ => quad_panel(&x_integrand, lo, hi, &[], tol, depth),
        }
    };

    // magnitude pass, then refinement
    let scale: f64 = panels
        .iter()
        .map(|&(lo, hi, el, eh)| one(lo, hi, el, eh, 1.0, 0).value.abs())
        .sum::<f64>()
        .max(1e-280);
    let per_panel = scale * tol_rel / (panels.len() as f64).sqrt();
    let mut total = QuadResult::zero();
    for &(lo, hi, el, eh) in &panels {
        total.accumulate(one(lo, hi, el, eh, per_panel, 21));
    }
    total
}

/// One desingularized panel (the endpoints named in `sing` are exact in the
/// integration variable).
fn quad_panel<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    sing: &[SingularPoint],
    tol_abs: f64,
    depth: u32,
) -> QuadResult {
    use crate::quad::adaptive_with_floor;
    if !(hi > lo) {
        return QuadResult::zero();
    }
    let s_lo = sing.iter().find(|s| s.location == lo).map(|s| s.exponent);
    let s_hi = sing.iter().find(|s| s.location == hi).map(|s| s.exponent);
    match (s_lo, s_hi) {
        (Some(s), _) if s > 0.0 => {
            let q = 6.0 / (1.0 - s);
            let vmax = (hi - lo).powf(1.0 / q);
            let g = |v: f64| {
                let x = lo + v.powf(q);
                if !(x > lo) {
                    return 0.0;
                }
                f(x) * q * v.powf(q - 1.0)
            };
            adaptive_with_floor(&g, 0.0, vmax, tol_abs, 1e-13, depth)
        }
        (_, Some(s)) if s > 0.0 => {
            let q = 6.0 / (1.0 - s);
            let vmax = (hi - lo).powf(1.0 / q);
            let g = |v: f64| {
                let x = hi - v.powf(q);
                if !(x < hi) {
                    return 0.0;
                }
                f(x) * q * v.powf(q - 1.0)
            };
            adaptive_with_floor(&g, 0.0, vmax, tol_abs, 1e-13, depth)
        }
        _ => adaptive_with_floor(f, lo, hi, tol_abs, 1e-13, depth),
    }
}

fn is_step_rule(w: &RadialWeight) -> bool {
    match w {
        RadialWeight::Sampled { .. } => true,
        RadialWeight::Power { exponent } => *exponent == 0.0,
        RadialWeight::LogPower { .. } => false,
    }
}

/// Exact `∫_a^b μ(x)·ν(x + u) dx` for piecewise-constant rules: integrate
/// `μ` against each constant piece of the shifted `ν`.
fn step_pair_integral(mu: &RadialWeight, nu: &RadialWeight, u: f64, a: f64, b: f64) -> f64 {
    let mut cuts = vec![a, b];
    if let RadialWeight::Sampled { radii, .. } = nu {
        for &r in radii {
            for v in [r - u, -r - u] {
                if v > a && v < b {
                    cuts.push(v);
                }
            }
        }
    }
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cuts.dedup();
    let mut acc = 0.0;
    for pair in cuts.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        let nv = nu.eval(0.5 * (lo + hi) + u);
        if nv != 0.0 {
            acc += nv * mu.interval_integral(lo, hi).expect_finite("step weight integral");
        }
    }
    acc
}

/// Witnessed maximum of the normalized bilinear form over a family of pairs:
/// `max |bilinear(E,W)| / (|E|^{1/q'}·|W|^{1/p})` — the empirical lower bound
/// for the weak-type operator-norm equivalence.
#[derive(Clone, Debug)]
pub struct NormLowerBound {
    pub value: f64,
    pub abs_err: f64,
    pub witness: usize,
    pub per_pair: Vec<f64>,
}

pub fn empirical_norm_lower_bound(
    mu: &RadialWeight,
    nu: &RadialWeight,
    kernel: &KernelSpec,
    p: f64,
    q: f64,
    family: &[(SetUnion1D, SetUnion1D)],
) -> Result<NormLowerBound> {
    if family.is_empty() {
        return Err(CoreError::EmptyGrid("norm lower bound needs a pair family".into()));
    }
    if !(p > 1.0 && q > 1.0) {
        return Err(CoreError::InvalidInput(format!("need p, q > 1, got p = {p}, q = {q}")));
    }
    let qp = q / (q - 1.0);
    use rayon::prelude::*;
    let rows: Vec<Result<(f64, f64)>> = family
        .par_iter()
        .map(|(e, w)| {
            let b = bilinear_form(e, w, mu, nu, kernel)?;
            let scale = e.measure().powf(1.0 / qp) * w.measure().powf(1.0 / p);
            match b.value {
                ExtReal::Finite(v) => Ok((v.abs() / scale, b.abs_err / scale)),
                ExtReal::Infinite => Ok((f64::INFINITY, f64::INFINITY)),
            }
        })
        .collect();
    let mut per_pair = Vec::with_capacity(rows.len());
    let mut best = (0.0f64, 0.0f64, 0usize);
    for (i, row) in rows.into_iter().enumerate() {
        let (v, err) = row?;
        per_pair.push(v);
        if v > best.0 {
            best = (v, err, i);
        }
    }
    Ok(NormLowerBound { value: best.0, abs_err: best.1, witness: best.2, per_pair })
}

/// Exact right side of the rearrangement majorant
/// `∫₀^ξ μ*(s) ∫₀^η ν*(t) K**(max(t,s)) dt ds`
/// via the split `∫ μ* K** N(min(η,·)) + ∫ ν* K** M(min(ξ,·))`, all in
/// closed form on the piecewise-power class.
pub fn rearranged_majorant(
    mu_star: &Profile,
    nu_star: &Profile,
    k_star: &Profile,
    xi: f64,
    eta: f64,
) -> Result<ExtReal> {
    if !(xi > 0.0 && eta > 0.0) {
        return Err(CoreError::InvalidInput(format!("majorant needs ξ, η > 0, got {xi}, {eta}")));
    }
    let kss = match k_star.piecewise().prefix_integral() {
        Ok(p) => p.shift_power(-1.0),
        Err(CoreError::NonIntegrableAtZero { .. }) => return Ok(ExtReal::Infinite),
        Err(e) => return Err(e),
    };
    let m_pref = match mu_star.piecewise().prefix_integral() {
        Ok(p) => p,
        Err(CoreError::NonIntegrableAtZero { .. }) => return Ok(ExtReal::Infinite),
        Err(e) => return Err(e),
    };
    let n_pref = match nu_star.piecewise().prefix_integral() {
        Ok(p) => p,
        Err(CoreError::NonIntegrableAtZero { .. }) => return Ok(ExtReal::Infinite),
        Err(e) => return Err(e),
    };
    let term1 = mu_star
        .piecewise()
        .mul(&kss)
        .mul(&n_pref.freeze_above(eta))
        .integrate(0.0, xi);
    let term2 = nu_star
        .piecewise()
        .mul(&kss)
        .mul(&m_pref.freeze_above(xi))
        .integrate(0.0, eta);
    Ok(term1 + term2)
}
