//! Piecewise sums of power terms `Σ c·uᵖ` on `(0, ∞)`.
//!
//! Rearrangement profiles, their running integrals, averaged kernels `K**`,
//! and all products appearing in the condition functionals stay inside this
//! class, so prefix integrals, products, and definite integrals are computed
//! in closed form. Logarithms only arise in definite integrals of `u⁻¹`
//! terms, which `integrate` handles directly.

use crate::error::{CoreError, Result};
use crate::ext::ExtReal;

/// Exponents within this distance of a critical value (0 for boundedness,
/// -1 for integrability) classify as the critical case. Balance equations
/// are solved in floating point, so matched exponents carry residuals of a
/// few 1e-16; the snap matches the 1e-12 equality tolerance used by the
/// closed-form parameter rules.
pub const POW_TOL: f64 = 1e-12;

/// One power term `coeff · u^power`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PowTerm {
    pub coeff: f64,
    pub power: f64,
}

impl PowTerm {
    pub fn eval(self, u: f64) -> f64 {
        if self.coeff == 0.0 {
            0.0
        } else if self.power == 0.0 {
            self.coeff
        } else {
            self.coeff * u.powf(self.power)
        }
    }
}

/// Piecewise function on `(0, last_upper]`, zero beyond; piece `i` covers
/// `(uppers[i-1], uppers[i]]` with the implicit lower bound `uppers[-1] = 0`.
/// The last upper may be `f64::INFINITY`.
#[derive(Clone, Debug)]
pub struct PiecewiseFn {
    uppers: Vec<f64>,
    terms: Vec<Vec<PowTerm>>,
}

impl PiecewiseFn {
    pub fn new(uppers: Vec<f64>, terms: Vec<Vec<PowTerm>>) -> Result<Self> {
        if uppers.is_empty() || uppers.len() != terms.len() {
            return Err(CoreError::InvalidInput(
                "piecewise function needs matching, nonempty cut/term lists".into(),
            ));
        }
        let mut prev = 0.0;
        for &u in &uppers {
            if !(u > prev) {
                return Err(CoreError::InvalidInput(format!(
                    "piece boundaries must increase strictly from 0, got {u} after {prev}"
                )));
            }
            prev = u;
        }
        Ok(PiecewiseFn { uppers, terms })
    }

    /// Single power term on `(0, cap]`.
    pub fn single(coeff: f64, power: f64, cap: f64) -> Self {
        PiecewiseFn { uppers: vec![cap], terms: vec![vec![PowTerm { coeff, power }]] }
    }

    /// Constant `c` on `(0, cap]`.
    pub fn constant(c: f64, cap: f64) -> Self {
        Self::single(c, 0.0, cap)
    }

    pub fn domain_end(&self) -> f64 {
        *self.uppers.last().unwrap()
    }

    pub fn uppers(&self) -> &[f64] {
        &self.uppers
    }

    fn piece_index(&self, u: f64) -> Option<usize> {
        if u <= 0.0 || u > self.domain_end() {
            return None;
        }
        match self.uppers.binary_search_by(|b| b.partial_cmp(&u).unwrap()) {
            Ok(i) => Some(i),
            Err(i) => Some(i),
        }
    }

    pub fn eval(&self, u: f64) -> f64 {
        match self.piece_index(u) {
            Some(i) => self.terms[i].iter().map(|t| t.eval(u)).sum(),
            None => 0.0,
        }
    }

    /// Terms active on the piece containing `u`, if any.
    pub fn terms_at(&self, u: f64) -> Option<&[PowTerm]> {
        self.piece_index(u).map(|i| self.terms[i].as_slice())
    }

    pub fn scale(&self, c: f64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|ts| ts.iter().map(|t| PowTerm { coeff: c * t.coeff, power: t.power }).collect())
            .collect();
        PiecewiseFn { uppers: self.uppers.clone(), terms }
    }

    /// Multiply pointwise by `u^delta`.
    pub fn shift_power(&self, delta: f64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|ts| {
                ts.iter()
                    .map(|t| PowTerm { coeff: t.coeff, power: t.power + delta })
                    .collect()
            })
            .collect();
        PiecewiseFn { uppers: self.uppers.clone(), terms }
    }

    /// Pointwise product; the result is zero beyond either factor's domain.
    pub fn mul(&self, other: &PiecewiseFn) -> Self {
        let end = self.domain_end().min(other.domain_end());
        let mut cuts: Vec<f64> = self
            .uppers
            .iter()
            .chain(other.uppers.iter())
            .copied()
            .filter(|&u| u <= end)
            .collect();
        if !cuts.contains(&end) {
            cuts.push(end);
        }
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        cuts.dedup();

        let mut terms = Vec::with_capacity(cuts.len());
        for &hi in &cuts {
            // Representative interior point of the piece: its upper endpoint.
            let (a_terms, b_terms) = (self.terms_at(hi), other.terms_at(hi));
            let mut prod: Vec<PowTerm> = Vec::new();
            if let (Some(at), Some(bt)) = (a_terms, b_terms) {
                for ta in at {
                    for tb in bt {
                        let coeff = ta.coeff * tb.coeff;
                        if coeff == 0.0 {
                            continue;
                        }
                        let power = ta.power + tb.power;
                        if let Some(existing) = prod.iter_mut().find(|t| t.power == power) {
                            existing.coeff += coeff;
                        } else {
                            prod.push(PowTerm { coeff, power });
                        }
                    }
                }
            }
            terms.push(prod);
        }
        PiecewiseFn { uppers: cuts, terms }
    }

    /// Exact `∫_a^b`; `b = ∞` allowed. Divergence yields the infinite tag.
    pub fn integrate(&self, a: f64, b: f64) -> ExtReal {
        let a = a.max(0.0);
        let b = b.min(self.domain_end());
        if !(b > a) {
            return ExtReal::finite(0.0);
        }
        let mut total = 0.0;
        let mut lo_bound = 0.0;
        for (i, &hi) in self.uppers.iter().enumerate() {
            let lo = lo_bound;
            lo_bound = hi;
            let (x0, x1) = (lo.max(a), hi.min(b));
            if !(x1 > x0) {
                if lo >= b {
                    break;
                }
                continue;
            }
            for t in &self.terms[i] {
                if t.coeff == 0.0 {
                    continue;
                }
                let p1 = t.power + 1.0;
                let piece = if x1.is_infinite() {
                    if p1 < -POW_TOL {
                        // ∫_x0^∞ u^p du = -x0^{p+1}/(p+1)
                        -t.coeff * x0.powf(p1) / p1
                    } else {
                        return ExtReal::Infinite;
                    }
                } else if p1.abs() <= POW_TOL {
                    if x0 == 0.0 {
                        return ExtReal::Infinite;
                    }
                    t.coeff * (x1 / x0).ln()
                } else if p1 < 0.0 && x0 == 0.0 {
                    return ExtReal::Infinite;
                } else {
                    let lo_pow = if x0 == 0.0 { 0.0 } else { x0.powf(p1) };
                    t.coeff * (x1.powf(p1) - lo_pow) / p1
                };
                total += piece;
            }
        }
        ExtReal::from_raw(total)
    }

    /// Running integral `F(u) = ∫₀ᵘ f` as a piecewise function; extends as a
    /// constant beyond the source domain when that domain is bounded.
    ///
    /// Fails when a first-piece term is non-integrable at zero; `u⁻¹` terms on
    /// later pieces are rejected too because they would need a log term.
    pub fn prefix_integral(&self) -> Result<PiecewiseFn> {
        let mut uppers = self.uppers.clone();
        let mut out_terms = Vec::with_capacity(self.terms.len() + 1);
        let mut carry = 0.0; // F at the lower boundary of the current piece
        let mut lo = 0.0f64;
        for (i, ts) in self.terms.iter().enumerate() {
            let mut piece: Vec<PowTerm> = Vec::new();
            let mut constant = carry;
            for t in ts {
                if t.coeff == 0.0 {
                    continue;
                }
                if t.power <= -1.0 + POW_TOL {
                    if i == 0 {
                        return Err(CoreError::NonIntegrableAtZero { exponent: -t.power });
                    }
                    return Err(CoreError::InvalidInput(
                        "prefix integral of a u^-1 (or worse) term is not a power sum".into(),
                    ));
                }
                let p1 = t.power + 1.0;
                piece.push(PowTerm { coeff: t.coeff / p1, power: p1 });
                if lo > 0.0 {
                    constant -= t.coeff / p1 * lo.powf(p1);
                }
            }
            if constant != 0.0 {
                piece.push(PowTerm { coeff: constant, power: 0.0 });
            }
            let hi = self.uppers[i];
            if hi.is_finite() {
                carry = piece.iter().map(|t| t.eval(hi)).sum();
            }
            out_terms.push(piece);
            lo = hi;
        }
        if self.domain_end().is_finite() {
            uppers.push(f64::INFINITY);
            out_terms.push(vec![PowTerm { coeff: carry, power: 0.0 }]);
        }
        PiecewiseFn::new(uppers, out_terms)
    }

    /// `u ↦ f(min(u, cut))`: identical below `cut`, frozen at `f(cut)` above,
    /// with the domain extended to infinity.
    pub fn freeze_above(&self, cut: f64) -> Self {
        let frozen = self.eval(cut);
        let mut uppers = Vec::new();
        let mut terms = Vec::new();
        for (i, &hi) in self.uppers.iter().enumerate() {
            if hi < cut {
                uppers.push(hi);
                terms.push(self.terms[i].clone());
            } else {
                uppers.push(cut);
                terms.push(self.terms[i].clone());
                break;
            }
        }
        uppers.push(f64::INFINITY);
        terms.push(vec![PowTerm { coeff: frozen, power: 0.0 }]);
        PiecewiseFn { uppers, terms }
    }

    /// Supremum over `(0, ∞)` with an argmax witness.
    ///
    /// Exact for pieces with one or two terms (monotone pieces and closed-form
    /// stationary points); pieces with more terms are refined by log-spaced
    /// interior samples. Endpoint blowup is classified from the dominant
    /// term's sign and power, so pure power inputs classify exactly.
    pub fn sup(&self) -> (ExtReal, Option<f64>) {
        let mut best = f64::NEG_INFINITY;
        let mut arg = None;
        let mut consider = |value: f64, at: f64| {
            if value > best {
                best = value;
                arg = Some(at);
            }
        };

        let mut lo = 0.0f64;
        for (i, &hi) in self.uppers.iter().enumerate() {
            let ts = &self.terms[i];
            let active: Vec<&PowTerm> = ts.iter().filter(|t| t.coeff != 0.0).collect();
            if active.is_empty() {
                consider(0.0, if hi.is_finite() { hi } else { lo.max(1.0) });
                lo = hi;
                continue;
            }
            // behaviour at the piece's lower edge (limit from the right)
            if lo == 0.0 {
                let min_power =
                    active.iter().map(|t| t.power).fold(f64::INFINITY, f64::min);
                if min_power < -POW_TOL {
                    let dom: f64 = active
                        .iter()
                        .filter(|t| (t.power - min_power).abs() <= POW_TOL)
                        .map(|t| t.coeff)
                        .sum();
                    if dom > 0.0 {
                        return (ExtReal::Infinite, Some(0.0));
                    }
                } else {
                    let at_zero: f64 = active
                        .iter()
                        .filter(|t| t.power.abs() <= POW_TOL)
                        .map(|t| t.coeff)
                        .sum();
                    consider(at_zero, 0.0);
                }
            } else {
                consider(ts.iter().map(|t| t.eval(lo)).sum(), lo);
            }
            // upper edge
            if hi.is_finite() {
                consider(ts.iter().map(|t| t.eval(hi)).sum(), hi);
            } else {
                let max_power = active.iter().map(|t| t.power).fold(f64::NEG_INFINITY, f64::max);
                if max_power > POW_TOL {
                    let dom: f64 = active
                        .iter()
                        .filter(|t| (t.power - max_power).abs() <= POW_TOL)
                        .map(|t| t.coeff)
                        .sum();
                    if dom > 0.0 {
                        return (ExtReal::Infinite, None);
                    }
                } else if max_power >= -POW_TOL {
                    let limit: f64 = active
                        .iter()
                        .filter(|t| t.power.abs() <= POW_TOL)
                        .map(|t| t.coeff)
                        .sum();
                    consider(limit, lo.max(1.0) * 10.0);
                }
            }
            // interior candidates
            if active.len() == 2 {
                if let Some(u) = piece_stationary(active[0], active[1], lo, hi) {
                    consider(ts.iter().map(|t| t.eval(u)).sum(), u);
                }
            } else if active.len() > 2 {
                let a = if lo > 0.0 { lo } else { hi.min(1e300) * 1e-12 };
                let b = if hi.is_finite() { hi } else { a * 1e12 };
                let (la, lb) = (a.ln(), b.ln());
                for k in 1..32 {
                    let u = (la + (lb - la) * k as f64 / 32.0).exp();
                    consider(ts.iter().map(|t| t.eval(u)).sum(), u);
                }
            }
            lo = hi;
        }
        (ExtReal::from_raw(best), arg)
    }

    /// Interior stationary points of pieces with exactly two terms.
    pub fn stationary_points(&self) -> Vec<f64> {
        let mut pts = Vec::new();
        let mut lo = 0.0;
        for (i, &hi) in self.uppers.iter().enumerate() {
            let active: Vec<&PowTerm> =
                self.terms[i].iter().filter(|t| t.coeff != 0.0).collect();
            if active.len() == 2 {
                pts.extend(piece_stationary(active[0], active[1], lo, hi));
            }
            lo = hi;
        }
        pts
    }
}

/// Stationary point of `c₁ u^{p₁} + c₂ u^{p₂}` inside `(lo, hi)`, if any.
fn piece_stationary(a: &PowTerm, b: &PowTerm, lo: f64, hi: f64) -> Option<f64> {
    if a.power == b.power {
        return None;
    }
    // d/du = c₁ p₁ u^{p₁-1} + c₂ p₂ u^{p₂-1} = 0
    let num = -a.coeff * a.power;
    let den = b.coeff * b.power;
    if den == 0.0 || num / den <= 0.0 {
        return None;
    }
    let u = (num / den).powf(1.0 / (b.power - a.power));
    if u.is_finite() && u > lo && (hi.is_infinite() || u < hi) {
        Some(u)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol * b.abs().max(1.0), "{a} vs {b}");
    }

    #[test]
    fn integrate_power_piece() {
        // (s/2)^{-1/2} = sqrt(2)·s^{-1/2} on (0, ∞): ∫₀¹ = 2√2
        let f = PiecewiseFn::single(2.0f64.sqrt(), -0.5, f64::INFINITY);
        close(f.integrate(0.0, 1.0).expect_finite("int"), 2.0 * 2.0f64.sqrt(), 1e-14);
        // tail: ∫₁^∞ s^{-1/2} diverges
        assert!(f.integrate(1.0, f64::INFINITY).is_infinite());
    }

    #[test]
    fn prefix_integral_of_step() {
        // step: 2 on (0,1], 1 on (1,2]
        let f = PiecewiseFn::new(
            vec![1.0, 2.0],
            vec![vec![PowTerm { coeff: 2.0, power: 0.0 }], vec![PowTerm { coeff: 1.0, power: 0.0 }]],
        )
        .unwrap();
        let pf = f.prefix_integral().unwrap();
        close(pf.eval(0.5), 1.0, 1e-15);
        close(pf.eval(1.0), 2.0, 1e-15);
        close(pf.eval(1.5), 2.5, 1e-15);
        close(pf.eval(2.0), 3.0, 1e-15);
        close(pf.eval(10.0), 3.0, 1e-15); // frozen total mass
    }

    #[test]
    fn product_and_log_integral() {
        // (1/u)·u = 1 on (0,1]; and ∫_a^b 1/u = ln(b/a)
        let inv = PiecewiseFn::single(1.0, -1.0, 1.0);
        let lin = PiecewiseFn::single(1.0, 1.0, f64::INFINITY);
        let prod = inv.mul(&lin);
        close(prod.eval(0.3), 1.0, 1e-15);
        close(inv.integrate(0.25, 1.0).expect_finite("ln"), (4.0f64).ln(), 1e-14);
        assert!(inv.integrate(0.0, 1.0).is_infinite());
    }

    #[test]
    fn freeze_clamps_and_extends() {
        let f = PiecewiseFn::single(1.0, 1.0, 10.0); // u on (0,10]
        let g = f.freeze_above(3.0);
        close(g.eval(2.0), 2.0, 1e-15);
        close(g.eval(7.0), 3.0, 1e-15);
        close(g.eval(1e9), 3.0, 1e-15);
    }

    #[test]
    fn stationary_point_two_terms() {
        // u^{-1/2} + u: min at derivative 0 → -0.5 u^{-3/2} + 1 = 0 → u = (1/2)^{2/3}
        let f = PiecewiseFn::new(
            vec![f64::INFINITY],
            vec![vec![PowTerm { coeff: 1.0, power: -0.5 }, PowTerm { coeff: 1.0, power: 1.0 }]],
        )
        .unwrap();
        let pts = f.stationary_points();
        assert_eq!(pts.len(), 1);
        close(pts[0], 0.5f64.powf(2.0 / 3.0), 1e-12);
    }
}
