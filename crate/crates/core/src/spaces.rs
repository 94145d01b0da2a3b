//! Lorentz quasi-norms, weighted Lebesgue norms, weak norms in raw and
//! averaged form, and the weight-regularity estimators.

use crate::error::{CoreError, Result};
use crate::ext::ExtReal;
use crate::rearrangement::Profile;
use crate::weights::RadialWeight;
use crate::GridFunction1D;
use serde::{Deserialize, Serialize};

/// Parameters of the Lorentz space `L^{p,τ}`; `τ = ∞` is the weak space.
#[derive(Clone, Copy, Debug)]
pub struct LorentzParams {
    pub p: f64,
    pub tau: f64,
}

impl LorentzParams {
    pub fn new(p: f64, tau: f64) -> Result<Self> {
        if !(p > 1.0) || !p.is_finite() {
            return Err(CoreError::InvalidInput(format!("Lorentz p = {p} must lie in (1, ∞)")));
        }
        if !(tau > 0.0) {
            return Err(CoreError::InvalidInput(format!("Lorentz tau = {tau} must be positive")));
        }
        Ok(LorentzParams { p, tau })
    }

    pub fn weak(p: f64) -> Result<Self> {
        Self::new(p, f64::INFINITY)
    }
}

/// `‖φ‖_{L^{p,τ}}` of a rearrangement profile.
///
/// Finite `τ`: `(∫₀^∞ (t^{1/p} φ(t))^τ dt/t)^{1/τ}`, exact piecewise; `τ = ∞`:
/// `sup_t t^{1/p} φ(t)`. Divergent integrals return the infinite tag.
pub fn lorentz_norm(phi: &Profile, lp: LorentzParams) -> ExtReal {
    if lp.tau.is_infinite() {
        let (sup, _) = phi.piecewise().shift_power(1.0 / lp.p).sup();
        return sup;
    }
    let integrand = phi.piecewise_pow(lp.tau).shift_power(lp.tau / lp.p - 1.0);
    integrand.integrate(0.0, f64::INFINITY).powf(1.0 / lp.tau)
}

/// `‖f‖_{L^p(ω)} = (Σ_cells |f|^p ∫_cell ω^p)^{1/p}` with power weights
/// integrated exactly over singular cells; divergent cells tag the whole
/// norm infinite.
pub fn weighted_lebesgue_norm(f: &GridFunction1D, omega: &RadialWeight, p: f64) -> Result<ExtReal> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(CoreError::InvalidInput(format!("Lebesgue p = {p} must lie in [1, ∞)")));
    }
    let mut sum = 0.0f64;
    for (i, &v) in f.values().iter().enumerate() {
        if v == 0.0 {
            continue;
        }
        let (a, b) = f.cell_edges(i);
        let cell = match omega {
            RadialWeight::Power { .. } => omega.interval_integral_pow(a, b, p),
            // midpoint rule for tabulated weights (cells are assumed to
            // resolve the sample grid)
            RadialWeight::Sampled { .. } => {
                ExtReal::finite(omega.eval(f.cell_center(i)).powf(p) * f.h())
            }
            RadialWeight::LogPower { .. } => omega.interval_integral_pow(a, b, p),
        };
        match cell {
            ExtReal::Finite(ci) => sum += v.abs().powf(p) * ci,
            ExtReal::Infinite => return Ok(ExtReal::Infinite),
        }
    }
    Ok(ExtReal::from_raw(sum.powf(1.0 / p)))
}

/// Raw weak norm `sup_t t^{1/r} K*(t)`.
pub fn weak_norm_raw(kstar: &Profile, r: f64) -> Result<ExtReal> {
    if !(r > 1.0) {
        return Err(CoreError::InvalidInput(format!("weak exponent r = {r} must exceed 1")));
    }
    Ok(kstar.piecewise().shift_power(1.0 / r).sup().0)
}

/// Averaged weak norm `sup_t t^{1/r} K**(t) = sup_t t^{-1/r'} ∫₀ᵗ K*`.
///
/// This is the form the sufficiency estimates actually use; it dominates the
/// raw form and exceeds it by a factor of exactly `r'` on pure power laws
/// `K* = t^{-1/r}`. Profiles that are not integrable at zero tag as infinite.
pub fn weak_norm_via_average(kstar: &Profile, r: f64) -> Result<ExtReal> {
    if !(r > 1.0) {
        return Err(CoreError::InvalidInput(format!("weak exponent r = {r} must exceed 1")));
    }
    let prefix = match kstar.piecewise().prefix_integral() {
        Ok(p) => p,
        Err(CoreError::NonIntegrableAtZero { .. }) => return Ok(ExtReal::Infinite),
        Err(e) => return Err(e),
    };
    Ok(prefix.shift_power(1.0 / r - 1.0).sup().0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegularityDirection {
    /// `φ(λt) ≤ C·φ(t)/λ^δ` — polynomial decay of the rearrangement.
    Decay,
    /// `φ(t) ≤ C·φ(λt)·λ^δ` — the reverse estimate.
    Reverse,
}

/// Outcome of a regularity scan for one exponent.
#[derive(Clone, Debug, Serialize)]
pub struct RegularityReport {
    pub exponent: f64,
    pub direction: RegularityDirection,
    /// Smallest admissible multiplicative constant over the scanned grids.
    pub constant: ExtReal,
    pub lambda_grid: Vec<f64>,
    pub pass: bool,
}

/// Estimate the best constant in the regularity estimate for `φ` with
/// exponent `delta` over `λ ∈ λgrid ⊆ [1, ∞)`, `t ∈ tgrid`.
///
/// Pure power laws short-circuit to the exact ratio `λ^{±(δ-e)}`, so the
/// matched-exponent case reports the constant 1 exactly.
pub fn regularity_estimate(
    phi: &Profile,
    delta: f64,
    direction: RegularityDirection,
    lambda_grid: &[f64],
    t_grid: &[f64],
) -> Result<RegularityReport> {
    if delta < 0.0 {
        return Err(CoreError::InvalidInput(format!("regularity exponent {delta} < 0")));
    }
    if lambda_grid.is_empty() || t_grid.is_empty() {
        return Err(CoreError::EmptyGrid("regularity estimate needs λ and t grids".into()));
    }
    for &l in lambda_grid {
        if !(l >= 1.0) {
            return Err(CoreError::InvalidInput(format!("λ = {l} < 1")));
        }
    }

    // Exact route for uncapped power laws.
    if let Profile::PowerLaw { exponent, cap, coeff } = phi {
        if cap.is_infinite() && *coeff > 0.0 {
            let mut best = 0.0f64;
            for &l in lambda_grid {
                let ratio = match direction {
                    RegularityDirection::Decay => l.powf(delta - exponent),
                    RegularityDirection::Reverse => l.powf(exponent - delta),
                };
                best = best.max(ratio);
            }
            return Ok(RegularityReport {
                exponent: delta,
                direction,
                constant: ExtReal::from_raw(best),
                lambda_grid: lambda_grid.to_vec(),
                pass: best.is_finite(),
            });
        }
    }

    let mut best = 0.0f64;
    let mut infinite = false;
    for &t in t_grid {
        if !(t > 0.0) {
            return Err(CoreError::InvalidInput(format!("t = {t} in regularity grid")));
        }
        for &l in lambda_grid {
            let (num, den) = match direction {
                RegularityDirection::Decay => (phi.value(l * t) * l.powf(delta), phi.value(t)),
                RegularityDirection::Reverse => (phi.value(t), phi.value(l * t) * l.powf(delta)),
            };
            if num == 0.0 {
                continue;
            }
            if den == 0.0 {
                infinite = true;
                continue;
            }
            best = best.max(num / den);
        }
    }
    let constant = if infinite { ExtReal::Infinite } else { ExtReal::from_raw(best) };
    Ok(RegularityReport {
        exponent: delta,
        direction,
        constant,
        lambda_grid: lambda_grid.to_vec(),
        pass: constant.is_finite(),
    })
}

/// Result of the radial-averaging condition check
/// `ψ*(t) ≤ C·(1/t)∫_{t/2}^t ψ(s) ds`.
#[derive(Clone, Debug, Serialize)]
pub struct Condition212Report {
    pub constant: ExtReal,
    pub pass: bool,
    /// `t` attaining the worst ratio, when finite.
    pub argmax_t: Option<f64>,
}

/// Check the averaging condition for a radial rule over `t_grid`.
///
/// `ψ*` is the decreasing rearrangement of the rule on `(0, ∞)` (one-sided,
/// Lebesgue measure). Sampled rules must resolve every dyadic block
/// `[t/2, t]` with at least 4 sample pieces.
pub fn condition_2_12_check(psi: &RadialWeight, t_grid: &[f64]) -> Result<Condition212Report> {
    if t_grid.is_empty() {
        return Err(CoreError::EmptyGrid("condition (t/2, t) check needs a t grid".into()));
    }
    // ψ* on (0,∞) and the block average, per rule kind.
    type RuleFn = Box<dyn Fn(f64) -> f64>;
    let (star, avg): (RuleFn, RuleFn) = match psi {
        RadialWeight::Power { exponent } => {
            let e = *exponent;
            if e < 0.0 {
                return Err(CoreError::InvalidInput(
                    "averaging check expects a nonincreasing or sampled rule".into(),
                ));
            }
            let star = move |t: f64| t.powf(-e);
            let avg = move |t: f64| {
                if e == 1.0 {
                    (2.0f64).ln() / t
                } else {
                    let p1 = 1.0 - e;
                    (t.powf(p1) - (t / 2.0).powf(p1)) / (p1 * t)
                }
            };
            (Box::new(star), Box::new(avg))
        }
        RadialWeight::Sampled { radii, values } => {
            // one-sided widths
            let mut pieces: Vec<(f64, f64)> = Vec::with_capacity(values.len());
            let mut lo = 0.0;
            for (i, &hi) in radii.iter().enumerate() {
                pieces.push((values[i], hi - lo));
                lo = hi;
            }
            // resolution: every dyadic block needs >= 4 sample pieces
            for &t in t_grid {
                let count = overlapping_pieces(radii, t / 2.0, t);
                if count < 4 {
                    return Err(CoreError::Resolution(format!(
                        "dyadic block [{}, {t}] holds only {count} sample pieces (need 4)",
                        t / 2.0
                    )));
                }
            }
            let mut sorted = pieces.clone();
            sorted.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
            let star = move |t: f64| {
                let mut acc = 0.0;
                for &(v, w) in &sorted {
                    acc += w;
                    if acc >= t {
                        return v;
                    }
                }
                0.0
            };
            let radii = radii.clone();
            let values = values.clone();
            let avg = move |t: f64| {
                let (a, b) = (t / 2.0, t);
                let mut acc = 0.0;
                let mut lo = 0.0;
                for (i, &hi) in radii.iter().enumerate() {
                    acc += values[i] * ((b.min(hi) - a.max(lo)).max(0.0));
                    lo = hi;
                }
                acc / t
            };
            (Box::new(star), Box::new(avg))
        }
        RadialWeight::LogPower { .. } => {
            return Err(CoreError::InvalidInput(
                "averaging check is not provided for the log-power fixture".into(),
            ))
        }
    };

    let mut best = 0.0f64;
    let mut arg = None;
    for &t in t_grid {
        if !(t > 0.0) {
            return Err(CoreError::InvalidInput(format!("t = {t} in check grid")));
        }
        let s = star(t);
        if s == 0.0 {
            continue;
        }
        let a = avg(t);
        if a <= 0.0 {
            return Ok(Condition212Report {
                constant: ExtReal::Infinite,
                pass: false,
                argmax_t: Some(t),
            });
        }
        if s / a > best {
            best = s / a;
            arg = Some(t);
        }
    }
    Ok(Condition212Report {
        constant: ExtReal::from_raw(best),
        pass: best.is_finite(),
        argmax_t: arg,
    })
}

fn overlapping_pieces(radii: &[f64], a: f64, b: f64) -> usize {
    let mut count = 0;
    let mut lo = 0.0f64;
    for &hi in radii {
        if hi.min(b) > lo.max(a) {
            count += 1;
        }
        lo = hi;
    }
    count
}
