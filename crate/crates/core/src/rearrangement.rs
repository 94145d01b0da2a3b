//! Decreasing rearrangements, the running average `f**`, and the
//! set-supremum characterization of `f**` on 1-D grids.

use crate::error::{CoreError, Result};
use crate::ext::ExtReal;
use crate::kernels::ball_volume;
use crate::piecewise::{PiecewiseFn, PowTerm};

/// Behaviour of a sampled profile beyond its last breakpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tail {
    Zero,
    HoldLast,
}

/// A nonincreasing, nonnegative function of `t ∈ (0, ∞)`: the shape of any
/// decreasing rearrangement (`f*`, `μ*`, `ν*`, `K*`).
#[derive(Clone, Debug)]
pub enum Profile {
    /// `coeff · t^{-exponent}` on `(0, cap]`, zero beyond a finite cap.
    PowerLaw { coeff: f64, exponent: f64, cap: f64 },
    Sampled(SampledProfile),
}

#[derive(Clone, Debug)]
pub struct SampledProfile {
    widths: Vec<f64>,
    values: Vec<f64>,
    tail: Tail,
    /// Set when every piece has this exact width (grid-borne profiles).
    uniform: Option<f64>,
    /// Cumulative breakpoints `t_1 < … < t_m` (derived).
    breaks: Vec<f64>,
}

impl SampledProfile {
    pub fn new(widths: Vec<f64>, values: Vec<f64>, tail: Tail) -> Result<Self> {
        if widths.is_empty() || widths.len() != values.len() {
            return Err(CoreError::InvalidInput(
                "sampled profile needs matching nonempty widths/values".into(),
            ));
        }
        for (i, &w) in widths.iter().enumerate() {
            if !(w > 0.0) || !w.is_finite() {
                return Err(CoreError::NonFinite { idx: i, value: w });
            }
        }
        let mut prev = f64::INFINITY;
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() || v < 0.0 {
                return Err(CoreError::NonFinite { idx: i, value: v });
            }
            if v > prev {
                return Err(CoreError::InvalidInput(format!(
                    "profile values must be nonincreasing, value[{i}] = {v} follows {prev}"
                )));
            }
            prev = v;
        }
        let uniform =
            if widths.iter().all(|&w| w == widths[0]) { Some(widths[0]) } else { None };
        let mut breaks = Vec::with_capacity(widths.len());
        let mut acc = 0.0;
        for &w in &widths {
            acc += w;
            breaks.push(acc);
        }
        Ok(SampledProfile { widths, values, tail, uniform, breaks })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn widths(&self) -> &[f64] {
        &self.widths
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breaks
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    fn support_end(&self) -> f64 {
        match self.tail {
            Tail::Zero => *self.breaks.last().unwrap(),
            Tail::HoldLast => {
                if *self.values.last().unwrap() > 0.0 {
                    f64::INFINITY
                } else {
                    *self.breaks.last().unwrap()
                }
            }
        }
    }

    fn value(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return *self.values.first().unwrap();
        }
        match self.breaks.binary_search_by(|b| b.partial_cmp(&t).unwrap()) {
            Ok(i) => self.values[i],
            Err(i) => {
                if i < self.values.len() {
                    self.values[i]
                } else {
                    match self.tail {
                        Tail::Zero => 0.0,
                        Tail::HoldLast => *self.values.last().unwrap(),
                    }
                }
            }
        }
    }
}

impl Profile {
    pub fn power_law(coeff: f64, exponent: f64, cap: f64) -> Result<Self> {
        if !(coeff >= 0.0) || !coeff.is_finite() {
            return Err(CoreError::InvalidInput(format!("power-law coefficient {coeff}")));
        }
        if exponent < 0.0 {
            return Err(CoreError::InvalidInput(format!(
                "power-law exponent {exponent} < 0 would make the profile increasing"
            )));
        }
        if !(cap > 0.0) {
            return Err(CoreError::InvalidInput(format!("power-law cap {cap}")));
        }
        Ok(Profile::PowerLaw { coeff, exponent, cap })
    }

    /// Constant profile `c` on `(0, ∞)`.
    pub fn constant(c: f64) -> Self {
        Profile::PowerLaw { coeff: c, exponent: 0.0, cap: f64::INFINITY }
    }

    /// Indicator-shaped profile `c·χ_{(0, len]}`.
    pub fn indicator(c: f64, len: f64) -> Result<Self> {
        Ok(Profile::Sampled(SampledProfile::new(vec![len], vec![c], Tail::Zero)?))
    }

    pub fn sampled(widths: Vec<f64>, values: Vec<f64>, tail: Tail) -> Result<Self> {
        Ok(Profile::Sampled(SampledProfile::new(widths, values, tail)?))
    }

    pub fn value(&self, t: f64) -> f64 {
        match self {
            Profile::PowerLaw { coeff, exponent, cap } => {
                if t <= 0.0 {
                    f64::INFINITY
                } else if t > *cap {
                    0.0
                } else if *exponent == 0.0 {
                    *coeff
                } else {
                    coeff * t.powf(-exponent)
                }
            }
            Profile::Sampled(s) => s.value(t),
        }
    }

    /// End of the support (may be +∞).
    pub fn support_end(&self) -> f64 {
        match self {
            Profile::PowerLaw { cap, .. } => *cap,
            Profile::Sampled(s) => s.support_end(),
        }
    }

    pub fn scale(&self, c: f64) -> Result<Self> {
        if !(c >= 0.0) {
            return Err(CoreError::InvalidInput(format!("scale factor {c} must be >= 0")));
        }
        Ok(match self {
            Profile::PowerLaw { coeff, exponent, cap } => {
                Profile::PowerLaw { coeff: c * coeff, exponent: *exponent, cap: *cap }
            }
            Profile::Sampled(s) => Profile::Sampled(SampledProfile::new(
                s.widths.clone(),
                s.values.iter().map(|v| c * v).collect(),
                s.tail,
            )?),
        })
    }

    /// Exact piecewise-power representation.
    pub fn piecewise(&self) -> PiecewiseFn {
        match self {
            Profile::PowerLaw { coeff, exponent, cap } => {
                PiecewiseFn::single(*coeff, -exponent, *cap)
            }
            Profile::Sampled(s) => {
                let mut uppers: Vec<f64> = s.breaks.clone();
                let mut terms: Vec<Vec<PowTerm>> =
                    s.values.iter().map(|&v| vec![PowTerm { coeff: v, power: 0.0 }]).collect();
                if s.tail == Tail::HoldLast && *s.values.last().unwrap() > 0.0 {
                    uppers.push(f64::INFINITY);
                    terms.push(vec![PowTerm { coeff: *s.values.last().unwrap(), power: 0.0 }]);
                }
                PiecewiseFn::new(uppers, terms).expect("validated profile pieces")
            }
        }
    }

    /// Exact piecewise form of `φ^τ` (profiles are single power terms per
    /// piece, so raising to a power stays in the class).
    pub fn piecewise_pow(&self, tau: f64) -> PiecewiseFn {
        match self {
            Profile::PowerLaw { coeff, exponent, cap } => {
                PiecewiseFn::single(coeff.powf(tau), -exponent * tau, *cap)
            }
            Profile::Sampled(s) => {
                let mut uppers: Vec<f64> = s.breaks.clone();
                let mut terms: Vec<Vec<PowTerm>> = s
                    .values
                    .iter()
                    .map(|&v| vec![PowTerm { coeff: v.powf(tau), power: 0.0 }])
                    .collect();
                if s.tail == Tail::HoldLast && *s.values.last().unwrap() > 0.0 {
                    uppers.push(f64::INFINITY);
                    terms.push(vec![PowTerm {
                        coeff: s.values.last().unwrap().powf(tau),
                        power: 0.0,
                    }]);
                }
                PiecewiseFn::new(uppers, terms).expect("validated profile pieces")
            }
        }
    }

    /// `∫₀ᵗ φ(s) ds` in closed form.
    pub fn prefix_integral(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) {
            return Err(CoreError::InvalidInput(format!("prefix integral at t = {t}")));
        }
        match self {
            Profile::PowerLaw { coeff, exponent, cap } => {
                if *exponent >= 1.0 && *coeff > 0.0 {
                    return Err(CoreError::NonIntegrableAtZero { exponent: *exponent });
                }
                let upto = t.min(*cap);
                Ok(coeff * upto.powf(1.0 - exponent) / (1.0 - exponent))
            }
            Profile::Sampled(s) => {
                let mut acc = 0.0;
                let mut lo = 0.0;
                for (i, &hi) in s.breaks.iter().enumerate() {
                    if t >= hi {
                        acc += s.values[i] * s.widths[i];
                    } else {
                        if t > lo {
                            acc += s.values[i] * (t - lo);
                        }
                        return Ok(acc);
                    }
                    lo = hi;
                }
                if t > lo && s.tail == Tail::HoldLast {
                    acc += s.values.last().unwrap() * (t - lo);
                }
                Ok(acc)
            }
        }
    }

    /// Total mass `∫₀^∞ φ`; infinite tag when the tail is not integrable.
    pub fn total_mass(&self) -> Result<ExtReal> {
        match self {
            Profile::PowerLaw { coeff, exponent, cap } => {
                if *exponent >= 1.0 && *coeff > 0.0 {
                    return Err(CoreError::NonIntegrableAtZero { exponent: *exponent });
                }
                if cap.is_infinite() && *coeff > 0.0 {
                    Ok(ExtReal::Infinite)
                } else {
                    Ok(ExtReal::finite(self.prefix_integral(*cap)?))
                }
            }
            Profile::Sampled(s) => {
                if s.support_end().is_infinite() {
                    Ok(ExtReal::Infinite)
                } else {
                    Ok(ExtReal::finite(self.prefix_integral(s.support_end())?))
                }
            }
        }
    }
}

/// Cell-averaged samples on a uniform symmetric grid `[-L, L]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction1D {
    left: f64,
    h: f64,
    values: Vec<f64>,
}

impl GridFunction1D {
    /// Grid symmetric about 0: `m·h = 2L` holds by construction.
    pub fn symmetric(h: f64, values: Vec<f64>) -> Result<Self> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(CoreError::InvalidInput(format!("cell width {h}")));
        }
        if values.is_empty() {
            return Err(CoreError::InvalidInput("grid needs at least one cell".into()));
        }
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(CoreError::NonFinite { idx: i, value: v });
            }
        }
        let left = -(values.len() as f64) * h / 2.0;
        Ok(GridFunction1D { left, h, values })
    }

    /// Exact cell averages of `c·χ_{[a,b]}` on a symmetric grid of `m` cells.
    pub fn indicator(h: f64, m: usize, a: f64, b: f64, c: f64) -> Result<Self> {
        let mut g = Self::symmetric(h, vec![0.0; m])?;
        for i in 0..m {
            let (lo, hi) = g.cell_edges(i);
            let overlap = (hi.min(b) - lo.max(a)).max(0.0);
            g.values[i] = c * overlap / h;
        }
        Ok(g)
    }

    /// Midpoint sampling (cell average up to `O(h²)` for smooth `f`).
    pub fn sample_centers(h: f64, m: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let mut g = Self::symmetric(h, vec![0.0; m])?;
        for i in 0..m {
            g.values[i] = f(g.cell_center(i));
        }
        for (i, &v) in g.values.iter().enumerate() {
            if !v.is_finite() {
                return Err(CoreError::NonFinite { idx: i, value: v });
            }
        }
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn left(&self) -> f64 {
        self.left
    }

    pub fn half_length(&self) -> f64 {
        -self.left
    }

    pub fn measure(&self) -> f64 {
        self.values.len() as f64 * self.h
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn cell_center(&self, i: usize) -> f64 {
        self.left + (i as f64 + 0.5) * self.h
    }

    pub fn cell_edges(&self, i: usize) -> (f64, f64) {
        (self.left + i as f64 * self.h, self.left + (i as f64 + 1.0) * self.h)
    }

    pub fn same_grid(&self, other: &GridFunction1D) -> bool {
        self.left == other.left && self.h == other.h && self.values.len() == other.values.len()
    }

    /// `∫ |f|` over the grid.
    pub fn integral_abs(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).sum::<f64>() * self.h
    }
}

/// Decreasing rearrangement of a grid function: the sampled profile whose
/// value on the `k`-th cell of measure is the `k`-th largest `|cell value|`.
/// Ties keep original cell order; equal values make the output independent
/// of the tie order.
pub fn rearrange_sampled(f: &GridFunction1D) -> Profile {
    let mut sorted: Vec<f64> = f.values.iter().map(|v| v.abs()).collect();
    // Stable descending sort = tie-break by original cell index.
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let widths = vec![f.h; sorted.len()];
    Profile::Sampled(
        SampledProfile::new(widths, sorted, Tail::Zero).expect("sorted abs values are a profile"),
    )
}

/// Exact rearrangement of the radial power weight `|x|^{-a}` on `ℝⁿ`:
/// `(t/vₙ)^{-a/n}` with `vₙ` the unit-ball volume.
pub fn rearrange_radial_power(a: f64, n: u32) -> Result<Profile> {
    if a < 0.0 {
        return Err(CoreError::InvalidInput(format!(
            "radial power exponent {a} < 0: profile would be increasing"
        )));
    }
    let vn = ball_volume(n)?;
    if a == 0.0 {
        return Ok(Profile::constant(1.0));
    }
    let e = a / n as f64;
    Profile::power_law(vn.powf(e), e, f64::INFINITY)
}

/// `φ**(t) = (1/t)·∫₀ᵗ φ(s) ds`, closed form.
pub fn double_star(phi: &Profile, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(CoreError::InvalidInput(format!("double_star at t = {t}")));
    }
    // Uniform sampled profiles at an exact piece boundary: accumulate values
    // in piece order, so the set-supremum route below reproduces the result
    // bit for bit.
    if let Profile::Sampled(s) = phi {
        if let Some(w) = s.uniform {
            let ratio = t / w;
            let k = ratio.round();
            if k >= 1.0 && (ratio - k).abs() < 1e-9 && (k as usize) <= s.values.len() {
                let mut acc = 0.0;
                for &v in &s.values[..k as usize] {
                    acc += v;
                }
                return Ok(acc * w / t);
            }
        }
    }
    Ok(phi.prefix_integral(t)? / t)
}

/// `sup { (1/|E|)·∫_E |f| : E a union of cells, |E| = t }`.
///
/// The supremum is attained by the `t/h` cells of largest `|value|`, so this
/// equals `double_star(rearrange_sampled(f), t)` exactly; `t` must sit on the
/// cell-measure lattice.
pub fn sup_mean_over_sets(f: &GridFunction1D, t: f64) -> Result<f64> {
    if !(t > 0.0) || t > f.measure() * (1.0 + 1e-12) {
        return Err(CoreError::InvalidInput(format!(
            "set measure t = {t} outside (0, {}]",
            f.measure()
        )));
    }
    let ratio = t / f.h;
    let k = ratio.round();
    if (ratio - k).abs() > 1e-9 {
        return Err(CoreError::Resolution(format!(
            "t = {t} is not a multiple of the cell width {}",
            f.h
        )));
    }
    let k = k as usize;
    let mut sorted: Vec<f64> = f.values.iter().map(|v| v.abs()).collect();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut acc = 0.0;
    for &v in &sorted[..k] {
        acc += v;
    }
    Ok(acc * f.h / t)
}

/// Both sides of the Hardy–Littlewood rearrangement inequality
/// `∫ f·g ≤ ∫ f*·g*` on a shared grid.
#[derive(Clone, Copy, Debug)]
pub struct HardyLittlewoodPair {
    pub lhs: f64,
    pub rhs: f64,
}

pub fn hardy_littlewood_pair(
    f: &GridFunction1D,
    g: &GridFunction1D,
) -> Result<HardyLittlewoodPair> {
    if !f.same_grid(g) {
        return Err(CoreError::GridMismatch(format!(
            "left {} vs {}, h {} vs {}, m {} vs {}",
            f.left,
            g.left,
            f.h,
            g.h,
            f.len(),
            g.len()
        )));
    }
    let lhs: f64 = f.values.iter().zip(&g.values).map(|(a, b)| a * b).sum::<f64>() * f.h;
    let mut fa: Vec<f64> = f.values.iter().map(|v| v.abs()).collect();
    let mut ga: Vec<f64> = g.values.iter().map(|v| v.abs()).collect();
    fa.sort_by(|a, b| b.partial_cmp(a).unwrap());
    ga.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let rhs: f64 = fa.iter().zip(&ga).map(|(a, b)| a * b).sum::<f64>() * f.h;
    Ok(HardyLittlewoodPair { lhs, rhs })
}
