//! Closed-form convolution kernels with exact rearrangement profiles, plus
//! exact 1-D set arithmetic for the necessity fixtures.

use crate::error::{CoreError, Result};
use crate::piecewise::PiecewiseFn;
use crate::quad::sine_integral;
use crate::rearrangement::{rearrange_sampled, GridFunction1D, Profile};

/// Volume of the unit ball in `ℝⁿ` for the dimensions the library supports.
pub fn ball_volume(n: u32) -> Result<f64> {
    match n {
        1 => Ok(2.0),
        2 => Ok(std::f64::consts::PI),
        3 => Ok(4.0 * std::f64::consts::PI / 3.0),
        _ => Err(CoreError::UnsupportedDimension(n)),
    }
}

/// Finite union of disjoint closed intervals, kept sorted and merged.
#[derive(Clone, Debug, PartialEq)]
pub struct SetUnion1D {
    intervals: Vec<(f64, f64)>,
}

impl SetUnion1D {
    pub fn new(mut intervals: Vec<(f64, f64)>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(CoreError::InvalidInput("set union needs at least one interval".into()));
        }
        for &(a, b) in &intervals {
            if !a.is_finite() || !b.is_finite() || !(a < b) {
                return Err(CoreError::InvalidInput(format!("bad interval [{a}, {b}]")));
            }
        }
        intervals.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        // Merge overlapping or touching intervals.
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(intervals.len());
        for (a, b) in intervals {
            match merged.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => merged.push((a, b)),
            }
        }
        Ok(SetUnion1D { intervals: merged })
    }

    pub fn interval(a: f64, b: f64) -> Result<Self> {
        Self::new(vec![(a, b)])
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }

    pub fn translate(&self, dx: f64) -> Self {
        SetUnion1D {
            intervals: self.intervals.iter().map(|&(a, b)| (a + dx, b + dx)).collect(),
        }
    }

    pub fn min(&self) -> f64 {
        self.intervals[0].0
    }

    pub fn max(&self) -> f64 {
        self.intervals.last().unwrap().1
    }

    /// Exact Minkowski difference `E − W = { e − w }`.
    pub fn minkowski_difference(e: &SetUnion1D, w: &SetUnion1D) -> Self {
        let mut parts = Vec::with_capacity(e.intervals.len() * w.intervals.len());
        for &(ae, be) in &e.intervals {
            for &(aw, bw) in &w.intervals {
                parts.push((ae - bw, be - aw));
            }
        }
        SetUnion1D::new(parts).expect("difference of valid intervals is valid")
    }

    pub fn intersect(&self, other: &SetUnion1D) -> Option<SetUnion1D> {
        let mut parts = Vec::new();
        for &(a, b) in &self.intervals {
            for &(c, d) in &other.intervals {
                let lo = a.max(c);
                let hi = b.min(d);
                if lo < hi {
                    parts.push((lo, hi));
                }
            }
        }
        if parts.is_empty() {
            None
        } else {
            Some(SetUnion1D::new(parts).unwrap())
        }
    }

    /// All interval endpoints (quadrature split points).
    pub fn endpoints(&self) -> Vec<f64> {
        let mut pts = Vec::with_capacity(2 * self.intervals.len());
        for &(a, b) in &self.intervals {
            pts.push(a);
            pts.push(b);
        }
        pts
    }
}

/// A convolution kernel with its evaluation rule and, where a closed form
/// exists, its exact decreasing rearrangement.
#[derive(Clone, Debug)]
pub enum KernelSpec {
    /// `|z|^{γ-n}`, the Riesz potential kernel, `0 < γ < n`.
    Riesz { gamma: f64, n: u32 },
    /// `∏ sin(d_j x_j/2)/(x_j/2)`, the band-limiting projector kernel.
    Sinc { edges: Vec<f64> },
    /// `height · χ_S` for a 1-D interval union `S`.
    Indicator { set: SetUnion1D, height: f64 },
    /// Step kernel given by cell averages.
    Sampled { grid: GridFunction1D },
}

impl KernelSpec {
    pub fn riesz(gamma: f64, n: u32) -> Result<Self> {
        if !(gamma > 0.0 && gamma < n as f64) {
            return Err(CoreError::InvalidInput(format!(
                "riesz kernel requires 0 < gamma < n, got gamma = {gamma}, n = {n}"
            )));
        }
        ball_volume(n)?;
        Ok(KernelSpec::Riesz { gamma, n })
    }

    /// Pointwise evaluation on the line (`n = 1` kernels).
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            KernelSpec::Riesz { gamma, n } => x.abs().powf(gamma - *n as f64),
            KernelSpec::Sinc { edges } => sinc_kernel_eval(edges, &[x]),
            KernelSpec::Indicator { set, height } => {
                let inside = set.intervals().iter().any(|&(a, b)| x >= a && x <= b);
                if inside {
                    *height
                } else {
                    0.0
                }
            }
            KernelSpec::Sampled { grid } => {
                if x < grid.left() || x > -grid.left() {
                    0.0
                } else {
                    let i = (((x - grid.left()) / grid.h()) as usize).min(grid.len() - 1);
                    grid.values()[i]
                }
            }
        }
    }

    /// Exact `∫_a^b K(u) du` for 1-D kernels, integrated across any interior
    /// singularity in closed form.
    pub fn cell_integral(&self, a: f64, b: f64) -> Result<f64> {
        if !(b >= a) {
            return Err(CoreError::InvalidInput(format!("cell [{a}, {b}]")));
        }
        match self {
            KernelSpec::Riesz { gamma, n } => {
                if *n != 1 {
                    return Err(CoreError::UnsupportedDimension(*n));
                }
                // antiderivative of |u|^{γ-1} is sign(u)·|u|^γ/γ
                let anti = |u: f64| u.signum() * u.abs().powf(*gamma) / gamma;
                Ok(anti(b) - anti(a))
            }
            KernelSpec::Sinc { edges } => {
                if edges.len() != 1 {
                    return Err(CoreError::UnsupportedDimension(edges.len() as u32));
                }
                let d = edges[0];
                // ∫ sin(du/2)/(u/2) du = 2·Si(du/2)
                Ok(2.0 * (sine_integral(d * b / 2.0) - sine_integral(d * a / 2.0)))
            }
            KernelSpec::Indicator { set, height } => {
                let mut overlap = 0.0;
                for &(lo, hi) in set.intervals() {
                    overlap += (b.min(hi) - a.max(lo)).max(0.0);
                }
                Ok(height * overlap)
            }
            KernelSpec::Sampled { grid } => {
                let mut acc = 0.0;
                for i in 0..grid.len() {
                    let (lo, hi) = grid.cell_edges(i);
                    let w = (b.min(hi) - a.max(lo)).max(0.0);
                    acc += grid.values()[i] * w;
                }
                Ok(acc)
            }
        }
    }

    /// The exact decreasing rearrangement, where a closed form exists.
    pub fn profile(&self) -> Result<Profile> {
        match self {
            KernelSpec::Riesz { gamma, n } => riesz_profile(*gamma, *n),
            KernelSpec::Indicator { set, height } => Profile::indicator(*height, set.measure()),
            KernelSpec::Sampled { grid } => Ok(rearrange_sampled(grid)),
            KernelSpec::Sinc { .. } => Err(CoreError::InvalidInput(
                "sinc kernel has no closed-form rearrangement".into(),
            )),
        }
    }

    /// Singular points of the 1-D kernel as `(location, exponent)`; kink
    /// points carry exponent 0.
    pub fn singular_points(&self) -> Vec<(f64, f64)> {
        match self {
            KernelSpec::Riesz { gamma, n } => vec![(0.0, *n as f64 - gamma)],
            KernelSpec::Indicator { set, .. } => {
                set.endpoints().into_iter().map(|p| (p, 0.0)).collect()
            }
            _ => Vec::new(),
        }
    }

    /// Exact piecewise form of `K*` (via [`Self::profile`]).
    pub fn profile_piecewise(&self) -> Result<PiecewiseFn> {
        Ok(self.profile()?.piecewise())
    }
}

/// `K*(t) = (t/vₙ)^{-(n-γ)/n}`, the exact rearrangement of `|z|^{γ-n}`.
pub fn riesz_profile(gamma: f64, n: u32) -> Result<Profile> {
    if !(gamma > 0.0 && gamma < n as f64) {
        return Err(CoreError::InvalidInput(format!(
            "riesz profile requires 0 < gamma < n, got gamma = {gamma}, n = {n}"
        )));
    }
    crate::rearrangement::rearrange_radial_power(n as f64 - gamma, n)
}

/// `∏_j sin(d_j x_j/2)/(x_j/2)` with the removable singularity evaluated by a
/// two-term Taylor form once `|d_j·x_j| < 1e-4` (cancellation control).
pub fn sinc_kernel_eval(edges: &[f64], x: &[f64]) -> f64 {
    assert_eq!(edges.len(), x.len(), "dimension mismatch in sinc kernel");
    let mut prod = 1.0;
    for (&d, &xj) in edges.iter().zip(x) {
        let w = d * xj / 2.0;
        prod *= if (d * xj).abs() < 1e-4 {
            d * (1.0 - w * w / 6.0)
        } else {
            (w).sin() / (xj / 2.0)
        };
    }
    prod
}

/// The §-necessity kernel `|E−W|^{-1/r}·χ_{E−W}`; its raw weak `L^{r,∞}` norm
/// equals 1 exactly.
pub fn difference_indicator_kernel(e: &SetUnion1D, w: &SetUnion1D, r: f64) -> Result<KernelSpec> {
    let (me, mw) = (e.measure(), w.measure());
    if (me - mw).abs() > 1e-12 * me.max(mw) {
        return Err(CoreError::MeasureMismatch { e: me, w: mw });
    }
    if !(r > 1.0) {
        return Err(CoreError::InvalidInput(format!("weak exponent r = {r} must exceed 1")));
    }
    let diff = SetUnion1D::minkowski_difference(e, w);
    let height = diff.measure().powf(-1.0 / r);
    Ok(KernelSpec::Indicator { set: diff, height })
}

/// Indicator kernel of the shifted ball `B_radius(N̄)` (dimension 1).
pub fn shifted_ball_indicator(shift: f64, radius: f64) -> Result<KernelSpec> {
    if !(radius > 0.0) {
        return Err(CoreError::InvalidInput(format!("radius {radius}")));
    }
    Ok(KernelSpec::Indicator {
        set: SetUnion1D::interval(shift - radius, shift + radius)?,
        height: 1.0,
    })
}
