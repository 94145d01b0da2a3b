//! Radial weights on `ℝⁿ` with exact interval/set integrals and exact
//! rearrangement profiles where the rule admits one.

use crate::error::{CoreError, Result};
use crate::ext::ExtReal;
use crate::kernels::{ball_volume, SetUnion1D};
use crate::quad::{integrate_singular, SingularPoint};
use crate::rearrangement::{rearrange_radial_power, Profile, SampledProfile, Tail};

/// A weight given by a radial rule `ω(x) = ψ(|x|)`.
#[derive(Clone, Debug)]
pub enum RadialWeight {
    /// `|x|^{-exponent}`; negative exponents give growing weights.
    Power { exponent: f64 },
    /// Step rule: `ψ(r) = values[i]` on `(radii[i-1], radii[i]]` with
    /// `radii[-1] = 0`, zero beyond the last radius.
    Sampled { radii: Vec<f64>, values: Vec<f64> },
    /// `|x|^{-exponent}·(ln|x|)^{-log_exponent}` outside `|x| >= cutoff`,
    /// zero inside (the slowly-divergent probe fixture).
    LogPower { exponent: f64, log_exponent: f64, cutoff: f64 },
}

impl RadialWeight {
    pub fn power(exponent: f64) -> Self {
        RadialWeight::Power { exponent }
    }

    pub fn constant() -> Self {
        RadialWeight::Power { exponent: 0.0 }
    }

    pub fn sampled(radii: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if radii.is_empty() || radii.len() != values.len() {
            return Err(CoreError::InvalidInput(
                "sampled weight needs matching nonempty radii/values".into(),
            ));
        }
        let mut prev = 0.0;
        for (i, &r) in radii.iter().enumerate() {
            if !(r > prev) || !r.is_finite() {
                return Err(CoreError::InvalidInput(format!(
                    "radii must increase strictly from 0; radii[{i}] = {r}"
                )));
            }
            prev = r;
        }
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() || v < 0.0 {
                return Err(CoreError::NonFinite { idx: i, value: v });
            }
        }
        Ok(RadialWeight::Sampled { radii, values })
    }

    pub fn log_power(exponent: f64, log_exponent: f64, cutoff: f64) -> Result<Self> {
        if !(cutoff > 1.0) {
            return Err(CoreError::InvalidInput(format!(
                "log-power cutoff {cutoff} must exceed 1"
            )));
        }
        Ok(RadialWeight::LogPower { exponent, log_exponent, cutoff })
    }

    /// Pointwise value at `x ∈ ℝ`.
    pub fn eval(&self, x: f64) -> f64 {
        let r = x.abs();
        match self {
            RadialWeight::Power { exponent } => {
                if *exponent == 0.0 {
                    1.0
                } else {
                    r.powf(-exponent)
                }
            }
            RadialWeight::Sampled { radii, values } => {
                if r == 0.0 {
                    return values[0];
                }
                match radii.binary_search_by(|b| b.partial_cmp(&r).unwrap()) {
                    Ok(i) => values[i],
                    Err(i) => {
                        if i < values.len() {
                            values[i]
                        } else {
                            0.0
                        }
                    }
                }
            }
            RadialWeight::LogPower { exponent, log_exponent, cutoff } => {
                if r < *cutoff {
                    0.0
                } else {
                    r.powf(-exponent) * r.ln().powf(-log_exponent)
                }
            }
        }
    }

    /// Whether the rule is singular at the origin, with its exponent.
    pub fn singular_exponent(&self) -> Option<f64> {
        match self {
            RadialWeight::Power { exponent } if *exponent > 0.0 => Some(*exponent),
            _ => None,
        }
    }

    /// Exact `∫_a^b ω(x)^p dx` on the line (`p = 1` gives the weighted measure).
    /// Integrals across an origin singularity are evaluated in closed form;
    /// a non-integrable singularity inside `[a, b]` yields the infinite tag.
    pub fn interval_integral_pow(&self, a: f64, b: f64, p: f64) -> ExtReal {
        if !(b > a) {
            return ExtReal::finite(0.0);
        }
        match self {
            RadialWeight::Power { exponent } => {
                let e = exponent * p;
                if e == 0.0 {
                    return ExtReal::finite(b - a);
                }
                let p1 = 1.0 - e;
                if p1 <= 0.0 && a <= 0.0 && b >= 0.0 {
                    return ExtReal::Infinite;
                }
                // antiderivative of |x|^{-e}: sign(x)·|x|^{1-e}/(1-e)
                let anti = |x: f64| x.signum() * x.abs().powf(p1) / p1;
                ExtReal::from_raw(anti(b) - anti(a))
            }
            RadialWeight::Sampled { radii, values } => {
                let mut acc = 0.0;
                let mut lo = 0.0;
                for (i, &hi) in radii.iter().enumerate() {
                    let vpow = values[i].powf(p);
                    // positive side (lo, hi], negative side [-hi, -lo)
                    acc += vpow * ((b.min(hi) - a.max(lo)).max(0.0));
                    acc += vpow * ((b.min(-lo) - a.max(-hi)).max(0.0));
                    lo = hi;
                }
                ExtReal::finite(acc)
            }
            RadialWeight::LogPower { cutoff, .. } => {
                let f = |x: f64| self.eval(x).powf(p);
                let mut total = 0.0;
                // supported on |x| >= cutoff only
                for (lo, hi) in [(a, b.min(-*cutoff)), (a.max(*cutoff), b)] {
                    if hi > lo {
                        total += integrate_singular(&f, lo, hi, &[], 1e-10).value;
                    }
                }
                ExtReal::from_raw(total)
            }
        }
    }

    /// Weighted measure `∫_a^b ω`.
    pub fn interval_integral(&self, a: f64, b: f64) -> ExtReal {
        self.interval_integral_pow(a, b, 1.0)
    }

    /// `ω(E)` for an interval union.
    pub fn set_integral(&self, set: &SetUnion1D) -> ExtReal {
        let mut acc = ExtReal::finite(0.0);
        for &(a, b) in set.intervals() {
            acc = acc + self.interval_integral(a, b);
        }
        acc
    }

    /// `∫_{B_R(0)} ω` on the line.
    pub fn centered_ball_integral(&self, radius: f64) -> ExtReal {
        self.interval_integral(-radius, radius)
    }

    /// Exact decreasing rearrangement on `ℝⁿ`.
    ///
    /// Power rules map to the closed-form power profile; sampled rules are
    /// rearranged exactly piece by piece with the radial measure
    /// `vₙ·(rᵢⁿ − rᵢ₋₁ⁿ)`. The log-power fixture has no closed form here.
    pub fn rearrangement_profile(&self, n: u32) -> Result<Profile> {
        match self {
            RadialWeight::Power { exponent } => {
                if *exponent < 0.0 {
                    return Err(CoreError::InvalidInput(format!(
                        "cannot rearrange growing power weight |x|^{}",
                        -exponent
                    )));
                }
                rearrange_radial_power(*exponent, n)
            }
            RadialWeight::Sampled { radii, values } => {
                let vn = ball_volume(n)?;
                let mut pieces: Vec<(f64, f64)> = Vec::with_capacity(values.len());
                let mut lo = 0.0f64;
                for (i, &hi) in radii.iter().enumerate() {
                    let w = vn * (hi.powi(n as i32) - lo.powi(n as i32));
                    pieces.push((values[i], w));
                    lo = hi;
                }
                pieces.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
                let widths: Vec<f64> = pieces.iter().map(|p| p.1).collect();
                let vals: Vec<f64> = pieces.iter().map(|p| p.0).collect();
                Ok(Profile::Sampled(SampledProfile::new(widths, vals, Tail::Zero)?))
            }
            RadialWeight::LogPower { .. } => Err(CoreError::InvalidInput(
                "log-power fixture has no closed-form rearrangement".into(),
            )),
        }
    }

    /// Quadrature split points of `x ↦ ω(x)` with their singular exponents.
    pub fn quad_singularities(&self) -> Vec<SingularPoint> {
        match self {
            RadialWeight::Power { exponent } if *exponent > 0.0 => {
                vec![SingularPoint { location: 0.0, exponent: *exponent }]
            }
            RadialWeight::Sampled { radii, .. } => {
                let mut pts = vec![SingularPoint { location: 0.0, exponent: 0.0 }];
                for &r in radii {
                    pts.push(SingularPoint { location: r, exponent: 0.0 });
                    pts.push(SingularPoint { location: -r, exponent: 0.0 });
                }
                pts
            }
            RadialWeight::LogPower { cutoff, .. } => vec![
                SingularPoint { location: *cutoff, exponent: 0.0 },
                SingularPoint { location: -*cutoff, exponent: 0.0 },
            ],
            _ => Vec::new(),
        }
    }
}
