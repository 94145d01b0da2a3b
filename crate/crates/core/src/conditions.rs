//! Weight-condition functionals and closed-form parameter checkers.
//!
//! The set-based suprema are computed through the rearrangement reduction:
//! `ν(E) ≤ ∫₀^{|E|} ν*` with equality attained by super-level sets, so the
//! supremum over measurable sets of equal measure becomes a supremum over a
//! single scale variable `t`. That reduction is exact, not an approximation.
//!
//! Suprema over `t` are resolved analytically on the piecewise-power
//! representation (monotone or closed-form-stationary pieces, dominant-term
//! classification at both ends), with a geometric grid retained for the
//! diagnostic trace.

use crate::error::{CoreError, Result};
use crate::ext::ExtReal;
use crate::kernels::SetUnion1D;
use crate::piecewise::PiecewiseFn;
use crate::rearrangement::Profile;
use crate::weights::RadialWeight;
use serde::{Deserialize, Serialize};

/// Geometric scan grid for suprema over `t`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct TScan {
    pub t_min: f64,
    pub t_max: f64,
    pub points_per_decade: u32,
}

impl Default for TScan {
    fn default() -> Self {
        TScan { t_min: 1e-6, t_max: 1e6, points_per_decade: 97 }
    }
}

impl TScan {
    pub fn points(&self) -> Vec<f64> {
        let decades = (self.t_max / self.t_min).log10();
        let n = (decades * self.points_per_decade as f64).ceil() as usize;
        let l0 = self.t_min.ln();
        let l1 = self.t_max.ln();
        (0..=n).map(|i| (l0 + (l1 - l0) * i as f64 / n as f64).exp()).collect()
    }
}

/// Value of a condition functional together with its witness and trace.
#[derive(Clone, Debug, Serialize)]
pub struct ConditionValue {
    pub value: ExtReal,
    /// Scale attaining (or approaching) the supremum; `None` when the blowup
    /// sits at `t → ∞`.
    pub argmax_t: Option<f64>,
    /// Index of the maximizing member for family scans.
    pub witness: Option<usize>,
    /// Whether a ball-family maximum occurred at a centered ball.
    pub max_at_centered: Option<bool>,
    /// `(t, normalized integrand)` diagnostic samples.
    pub trace: Vec<(f64, f64)>,
}

impl ConditionValue {
    fn infinite_at_zero() -> Self {
        ConditionValue {
            value: ExtReal::Infinite,
            argmax_t: Some(0.0),
            witness: None,
            max_at_centered: None,
            trace: Vec::new(),
        }
    }
}

/// Supremum of `numerator(t)/t^exponent` with trace; exact classification on
/// the piecewise representation.
fn sup_ratio(numerator: &PiecewiseFn, exponent: f64, scan: &TScan) -> ConditionValue {
    let g = numerator.shift_power(-exponent);
    let (value, argmax) = g.sup();
    let mut trace = Vec::new();
    for t in scan.points() {
        let v = g.eval(t);
        if v.is_finite() {
            trace.push((t, v));
        }
    }
    ConditionValue { value, argmax_t: argmax, witness: None, max_at_centered: None, trace }
}

fn prefix_or_infinite(profile: &Profile) -> Result<std::result::Result<PiecewiseFn, ()>> {
    match profile.piecewise().prefix_integral() {
        Ok(p) => Ok(Ok(p)),
        Err(CoreError::NonIntegrableAtZero { .. }) => Ok(Err(())),
        Err(e) => Err(e),
    }
}

fn conjugate(p: f64) -> f64 {
    if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

/// `𝒢 = sup_t (∫₀ᵗ μ*)(∫₀ᵗ ν*) / t^{1 + 1/r + 1/p - 1/q}`.
pub fn compute_g(
    mu_star: &Profile,
    nu_star: &Profile,
    p: f64,
    q: f64,
    r: f64,
    scan: &TScan,
) -> Result<ConditionValue> {
    if !(1.0 < p && p <= q && q.is_finite() && p.is_finite()) {
        return Err(CoreError::InvalidInput(format!("need 1 < p <= q < ∞, got p = {p}, q = {q}")));
    }
    if !(r > 1.0 && r.is_finite()) {
        return Err(CoreError::InvalidInput(format!("need 1 < r < ∞, got r = {r}")));
    }
    let (pm, pn) = match (prefix_or_infinite(mu_star)?, prefix_or_infinite(nu_star)?) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return Ok(ConditionValue::infinite_at_zero()),
    };
    Ok(sup_ratio(&pm.mul(&pn), 1.0 + 1.0 / r + 1.0 / p - 1.0 / q, scan))
}

/// `ℒ = sup_t (∫₀ᵗ μ*)(∫₀ᵗ ν*) / t^{2 + 1/p - 1/q - γ/n}`.
pub fn compute_l(
    mu_star: &Profile,
    nu_star: &Profile,
    p: f64,
    q: f64,
    gamma: f64,
    n: u32,
    scan: &TScan,
) -> Result<ConditionValue> {
    if !(p > 1.0 && q > 1.0 && p.is_finite() && q.is_finite()) {
        return Err(CoreError::InvalidInput(format!("need 1 < p, q < ∞, got p = {p}, q = {q}")));
    }
    if !(gamma > 0.0 && gamma < n as f64) {
        return Err(CoreError::InvalidInput(format!("need 0 < γ < n, got γ = {gamma}, n = {n}")));
    }
    let (pm, pn) = match (prefix_or_infinite(mu_star)?, prefix_or_infinite(nu_star)?) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return Ok(ConditionValue::infinite_at_zero()),
    };
    Ok(sup_ratio(&pm.mul(&pn), 2.0 + 1.0 / p - 1.0 / q - gamma / n as f64, scan))
}

/// `𝒟 = sup_t (∫₀ᵗ μ*)(∫₀ᵗ ν*)(∫₀ᵗ K*) / t^{2 + 1/p - 1/q}`.
pub fn compute_d(
    mu_star: &Profile,
    nu_star: &Profile,
    k_star: &Profile,
    p: f64,
    q: f64,
    scan: &TScan,
) -> Result<ConditionValue> {
    if !(p > 1.0 && q > 1.0 && p.is_finite() && q.is_finite()) {
        return Err(CoreError::InvalidInput(format!("need 1 < p, q < ∞, got p = {p}, q = {q}")));
    }
    compute_b(mu_star, nu_star, k_star, 2.0 + 1.0 / p - 1.0 / q, scan)
}

/// `ℬ = sup_ω ω^{-β}(∫₀^ω μ*)(∫₀^ω ν*)(∫₀^ω K*)`, `β > 1`.
pub fn compute_b(
    mu_star: &Profile,
    nu_star: &Profile,
    k_star: &Profile,
    beta_exp: f64,
    scan: &TScan,
) -> Result<ConditionValue> {
    if !(beta_exp > 1.0) {
        return Err(CoreError::InvalidInput(format!("need β > 1, got β = {beta_exp}")));
    }
    let prefixes = (
        prefix_or_infinite(mu_star)?,
        prefix_or_infinite(nu_star)?,
        prefix_or_infinite(k_star)?,
    );
    let (pm, pn, pk) = match prefixes {
        (Ok(a), Ok(b), Ok(c)) => (a, b, c),
        _ => return Ok(ConditionValue::infinite_at_zero()),
    };
    Ok(sup_ratio(&pm.mul(&pn).mul(&pk), beta_exp, scan))
}

/// `𝒮` restricted to interval pairs:
/// `max ν(E)μ(W) / (|E|^{1 + 1/p - 1/q}·|E−W|^{1/r})` over the supplied
/// equal-measure pairs. A lower bound for the full set-pair supremum.
pub fn compute_s_balls(
    mu: &RadialWeight,
    nu: &RadialWeight,
    p: f64,
    q: f64,
    r: f64,
    pairs: &[(SetUnion1D, SetUnion1D)],
) -> Result<ConditionValue> {
    if pairs.is_empty() {
        return Err(CoreError::EmptyGrid("S scan needs at least one (E, W) pair".into()));
    }
    let mut best = ExtReal::finite(0.0);
    let mut witness = None;
    for (i, (e, w)) in pairs.iter().enumerate() {
        let (me, mw) = (e.measure(), w.measure());
        if (me - mw).abs() > 1e-9 * me.max(mw) {
            return Err(CoreError::MeasureMismatch { e: me, w: mw });
        }
        let diff = SetUnion1D::minkowski_difference(e, w);
        let denom = me.powf(1.0 + 1.0 / p - 1.0 / q) * diff.measure().powf(1.0 / r);
        let val = nu.set_integral(e) * mu.set_integral(w) * ExtReal::finite(1.0 / denom);
        if val.to_f64() > best.to_f64() || (val.is_infinite() && best.is_finite()) {
            best = val;
            witness = Some(i);
        }
    }
    Ok(ConditionValue {
        value: best,
        argmax_t: witness.map(|i| pairs[i].0.measure()),
        witness,
        max_at_centered: None,
        trace: Vec::new(),
    })
}

/// `ℱ = max_B ν(B)μ(B)/|B|^{2 + 1/p - 1/q - γ/n}` over the scanned balls
/// (intervals `[c - ρ, c + ρ]`); reports whether a centered ball attained
/// the maximum. Dimension 1 only.
pub fn compute_f(
    mu: &RadialWeight,
    nu: &RadialWeight,
    p: f64,
    q: f64,
    gamma: f64,
    balls: &[(f64, f64)],
) -> Result<ConditionValue> {
    if balls.is_empty() {
        return Err(CoreError::EmptyGrid("F scan needs at least one ball".into()));
    }
    let exponent = 2.0 + 1.0 / p - 1.0 / q - gamma;
    let mut best = ExtReal::finite(0.0);
    let mut witness = None;
    let mut trace = Vec::new();
    for (i, &(c, rho)) in balls.iter().enumerate() {
        if !(rho > 0.0) {
            return Err(CoreError::InvalidInput(format!("ball radius {rho}")));
        }
        let (a, b) = (c - rho, c + rho);
        let denom = (2.0 * rho).powf(exponent);
        let val = nu.interval_integral(a, b) * mu.interval_integral(a, b)
            * ExtReal::finite(1.0 / denom);
        if let ExtReal::Finite(v) = val {
            trace.push((2.0 * rho, v));
        }
        if val.to_f64() > best.to_f64() || (val.is_infinite() && best.is_finite()) {
            best = val;
            witness = Some(i);
        }
    }
    Ok(ConditionValue {
        value: best,
        argmax_t: witness.map(|i| 2.0 * balls[i].1),
        witness,
        max_at_centered: witness.map(|i| balls[i].0 == 0.0),
        trace,
    })
}

/// `𝒦 = sup_{π/(4d) ≤ t ≤ π/(2d)} sup_{Q_t} ν(Q_t)μ(Q_t)/|Q_t|^{1 + 1/r + 1/p - 1/q}`
/// over length-`t` intervals `Q_t`; positions scanned on a centered-plus-
/// geometric-offset family. Dimension 1 only.
pub fn compute_k_pnn(
    mu: &RadialWeight,
    nu: &RadialWeight,
    p: f64,
    q: f64,
    r: f64,
    d: f64,
) -> Result<ConditionValue> {
    if !(d > 0.0) {
        return Err(CoreError::InvalidInput(format!("edge length d = {d}")));
    }
    let exponent = 1.0 + 1.0 / r + 1.0 / p - 1.0 / q;
    let t_lo = std::f64::consts::PI / (4.0 * d);
    let t_hi = std::f64::consts::PI / (2.0 * d);
    let mut best = ExtReal::finite(0.0);
    let mut arg = None;
    let mut trace = Vec::new();
    for i in 0..=8 {
        let t = t_lo * (t_hi / t_lo).powf(i as f64 / 8.0);
        // centered window plus offsets growing geometrically in units of t
        let mut centers = vec![0.0];
        for k in 0..=6 {
            let off = t * 2.0f64.powi(k - 1);
            centers.push(off);
            centers.push(-off);
        }
        for &c in &centers {
            let (a, b) = (c - t / 2.0, c + t / 2.0);
            let val = nu.interval_integral(a, b) * mu.interval_integral(a, b)
                * ExtReal::finite(1.0 / t.powf(exponent));
            if val.to_f64() > best.to_f64() || (val.is_infinite() && best.is_finite()) {
                best = val;
                arg = Some(t);
            }
            if c == 0.0 {
                if let ExtReal::Finite(v) = val {
                    trace.push((t, v));
                }
            }
        }
    }
    Ok(ConditionValue { value: best, argmax_t: arg, witness: None, max_at_centered: None, trace })
}

/// The exponent tuple appearing in the parameter conditions; fields are
/// optional because each rule needs a different subset.
///
/// For the rearrangement-regularity rules (`Theorem1Hyp`, `Theorem2Hyp`) the
/// `alpha`/`beta`/`rho` fields are the profile decay exponents in `t`; for
/// the power-weight rules they are the weight exponents in `x` (the two
/// differ by the factor `n`).
#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
pub struct ParamSet {
    pub n: Option<u32>,
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub r: Option<f64>,
    pub theta: Option<f64>,
    pub tau1: Option<f64>,
    pub tau2: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub s: Option<f64>,
    pub gamma: Option<f64>,
    pub rho: Option<f64>,
}

macro_rules! field {
    ($ps:expr, $name:ident) => {
        $ps.$name.ok_or(CoreError::MissingField(stringify!($name)))?
    };
}

impl ParamSet {
    pub fn p_conj(&self) -> Result<f64> {
        Ok(conjugate(field!(self, p)))
    }

    pub fn q_conj(&self) -> Result<f64> {
        Ok(conjugate(field!(self, q)))
    }
}

/// Closed-form parameter rules; each names the condition family it checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamRule {
    /// Regularity + integrability hypotheses for the O'Neil-type theorem.
    Theorem1Hyp,
    /// Regularity hypotheses for the potential-operator theorem.
    Theorem2Hyp,
    /// Power-weight convolution balance (iff condition).
    Corollary1,
    /// Stein–Weiss balance for the Riesz potential.
    SteinWeiss,
    /// Weighted Young inequality (three-exponent balance).
    Kerman,
    /// Sharp weighted Young inequality, including θ = ∞.
    TheoremAPrime,
    /// Potential-operator power-weight balance, strict bounds.
    Corollary3A,
    /// Borderline variant with non-strict bounds (τ ≤ 1 case).
    Corollary3B,
    /// Band-limited projector balance.
    Corollary6,
}

/// One clause of a rule: name, outcome, and the signed residual (negative
/// slack means violation for inequalities; for equalities the residual is the
/// mismatch).
#[derive(Clone, Debug, Serialize)]
pub struct ClauseResult {
    pub clause: String,
    pub satisfied: bool,
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub rule: ParamRule,
    pub pass: bool,
    pub clauses: Vec<ClauseResult>,
}

const EQ_TOL: f64 = 1e-12;

struct Clauses(Vec<ClauseResult>);

impl Clauses {
    fn new() -> Self {
        Clauses(Vec::new())
    }

    /// `lhs = rhs` to relative tolerance.
    fn eq(&mut self, name: &str, lhs: f64, rhs: f64) {
        let scale = lhs.abs().max(rhs.abs()).max(1.0);
        let residual = lhs - rhs;
        self.0.push(ClauseResult {
            clause: name.into(),
            satisfied: residual.abs() <= EQ_TOL * scale,
            residual,
        });
    }

    /// `lhs > rhs` (strict).
    fn gt(&mut self, name: &str, lhs: f64, rhs: f64) {
        self.0.push(ClauseResult { clause: name.into(), satisfied: lhs > rhs, residual: lhs - rhs });
    }

    /// `lhs >= rhs`.
    fn ge(&mut self, name: &str, lhs: f64, rhs: f64) {
        self.0
            .push(ClauseResult { clause: name.into(), satisfied: lhs >= rhs, residual: lhs - rhs });
    }

    /// `lhs < rhs` (strict).
    fn lt(&mut self, name: &str, lhs: f64, rhs: f64) {
        self.0.push(ClauseResult { clause: name.into(), satisfied: lhs < rhs, residual: rhs - lhs });
    }

    /// `lhs <= rhs`.
    fn le(&mut self, name: &str, lhs: f64, rhs: f64) {
        self.0
            .push(ClauseResult { clause: name.into(), satisfied: lhs <= rhs, residual: rhs - lhs });
    }

    fn into_report(self, rule: ParamRule) -> CheckReport {
        let pass = self.0.iter().all(|c| c.satisfied);
        CheckReport { rule, pass, clauses: self.0 }
    }
}

/// Evaluate one closed-form parameter rule.
pub fn check_params(rule: ParamRule, ps: &ParamSet) -> Result<CheckReport> {
    let mut c = Clauses::new();
    match rule {
        ParamRule::Theorem1Hyp => {
            let (p, q, r) = (field!(ps, p), field!(ps, q), field!(ps, r));
            let (alpha, beta) = (field!(ps, alpha), field!(ps, beta));
            c.gt("p > 1", p, 1.0);
            c.le("p <= q", p, q);
            c.lt("q < inf", q, f64::INFINITY);
            c.gt("r > 1", r, 1.0);
            c.lt("r < inf", r, f64::INFINITY);
            c.ge("alpha >= 0", alpha, 0.0);
            c.ge("beta >= 0", beta, 0.0);
            c.gt("alpha + 1/r + 1/p > 1", alpha + 1.0 / r + 1.0 / p, 1.0);
            c.gt("beta + 1/r + 1/q' > 1", beta + 1.0 / r + 1.0 / conjugate(q), 1.0);
        }
        ParamRule::Theorem2Hyp => {
            let (p, q, gamma, n) = (field!(ps, p), field!(ps, q), field!(ps, gamma), field!(ps, n));
            let (alpha, beta) = (field!(ps, alpha), field!(ps, beta));
            let gn = gamma / n as f64;
            c.gt("p > 1", p, 1.0);
            c.gt("q > 1", q, 1.0);
            c.gt("gamma > 0", gamma, 0.0);
            c.lt("gamma < n", gamma, n as f64);
            c.gt("alpha + 1/p > gamma/n", alpha + 1.0 / p, gn);
            c.gt("beta + 1/q' > gamma/n", beta + 1.0 / conjugate(q), gn);
        }
        ParamRule::Corollary1 => {
            let (p, q, r, n) = (field!(ps, p), field!(ps, q), field!(ps, r), field!(ps, n));
            let (alpha, beta) = (field!(ps, alpha), field!(ps, beta));
            let nf = n as f64;
            c.gt("p > 1", p, 1.0);
            c.le("p <= q", p, q);
            c.lt("q < inf", q, f64::INFINITY);
            c.gt("r > 1", r, 1.0);
            c.lt("r < inf", r, f64::INFINITY);
            c.eq(
                "1/q = 1/p + 1/r + (alpha+beta)/n - 1",
                1.0 / q,
                1.0 / p + 1.0 / r + (alpha + beta) / nf - 1.0,
            );
            c.ge("alpha >= 0", alpha, 0.0);
            c.lt("alpha < n/p'", alpha, nf / conjugate(p));
            c.ge("beta >= 0", beta, 0.0);
            c.lt("beta < n/q", beta, nf / q);
        }
        ParamRule::SteinWeiss => {
            let (p, q, n) = (field!(ps, p), field!(ps, q), field!(ps, n));
            let (alpha, beta, gamma) = (field!(ps, alpha), field!(ps, beta), field!(ps, gamma));
            let nf = n as f64;
            c.gt("p > 1", p, 1.0);
            c.le("p <= q", p, q);
            c.lt("q < inf", q, f64::INFINITY);
            c.gt("gamma > 0", gamma, 0.0);
            c.lt("gamma < n", gamma, nf);
            c.eq("gamma = alpha + beta + n(1/p - 1/q)", gamma, alpha + beta + nf * (1.0 / p - 1.0 / q));
            c.lt("alpha < n/p'", alpha, nf / conjugate(p));
            c.lt("beta < n/q", beta, nf / q);
            c.ge("alpha + beta >= 0", alpha + beta, 0.0);
        }
        ParamRule::Kerman => {
            let (p, q, theta, n) = (field!(ps, p), field!(ps, q), field!(ps, theta), field!(ps, n));
            let (alpha, beta, s) = (field!(ps, alpha), field!(ps, beta), field!(ps, s));
            let nf = n as f64;
            c.gt("p > 1", p, 1.0);
            c.lt("p < inf", p, f64::INFINITY);
            c.gt("q > 1", q, 1.0);
            c.lt("q < inf", q, f64::INFINITY);
            c.gt("theta > 1", theta, 1.0);
            c.lt("theta < inf", theta, f64::INFINITY);
            c.le("1/q <= 1/p + 1/theta", 1.0 / q, 1.0 / p + 1.0 / theta);
            c.eq(
                "1/q = 1/p + 1/theta + (alpha+beta+s)/n - 1",
                1.0 / q,
                1.0 / p + 1.0 / theta + (alpha + beta + s) / nf - 1.0,
            );
            c.lt("alpha < n/p'", alpha, nf / conjugate(p));
            c.lt("beta < n/q", beta, nf / q);
            c.lt("s < n/theta'", s, nf / conjugate(theta));
            c.ge("alpha + beta >= 0", alpha + beta, 0.0);
            c.ge("alpha + s >= 0", alpha + s, 0.0);
            c.ge("beta + s >= 0", beta + s, 0.0);
        }
        ParamRule::TheoremAPrime => {
            let (p, q, theta, n) = (field!(ps, p), field!(ps, q), field!(ps, theta), field!(ps, n));
            let (alpha, beta, s) = (field!(ps, alpha), field!(ps, beta), field!(ps, s));
            let nf = n as f64;
            c.gt("p > 1", p, 1.0);
            c.lt("p < inf", p, f64::INFINITY);
            c.gt("q > 1", q, 1.0);
            c.lt("q < inf", q, f64::INFINITY);
            c.gt("theta > 1", theta, 1.0);
            c.le("1/q <= 1/p + 1/theta", 1.0 / q, 1.0 / p + 1.0 / theta);
            c.eq(
                "1/q = 1/p + 1/theta + (alpha+beta+s)/n - 1",
                1.0 / q,
                1.0 / p + 1.0 / theta + (alpha + beta + s) / nf - 1.0,
            );
            c.lt("alpha < n/p'", alpha, nf / conjugate(p));
            c.lt("beta < n/q", beta, nf / q);
            if theta.is_finite() {
                c.lt("s < n/theta'", s, nf / conjugate(theta));
            } else {
                c.gt("s > 0 (theta = inf)", s, 0.0);
                c.lt("s < n (theta = inf)", s, nf);
            }
            c.ge("alpha + beta >= 0", alpha + beta, 0.0);
            c.ge("alpha + s >= 0", alpha + s, 0.0);
            c.ge("beta + s >= 0", beta + s, 0.0);
        }
        ParamRule::Corollary3A => {
            let (p, q, n) = (field!(ps, p), field!(ps, q), field!(ps, n));
            let (alpha, beta, gamma) = (field!(ps, alpha), field!(ps, beta), field!(ps, gamma));
            let (tau1, tau2) = (field!(ps, tau1), field!(ps, tau2));
            let nf = n as f64;
            c.gt("p > 1", p, 1.0);
            c.lt("p < inf", p, f64::INFINITY);
            c.gt("q > 1", q, 1.0);
            c.lt("q < inf", q, f64::INFINITY);
            c.gt("gamma > 0", gamma, 0.0);
            c.lt("gamma < n", gamma, nf);
            c.ge("alpha >= 0", alpha, 0.0);
            c.ge("beta >= 0", beta, 0.0);
            let tau_ok = (tau1 > 0.0 && tau1 <= tau2 && tau2.is_finite())
                || (tau1 > 1.0 && tau1 <= tau2);
            c.0.push(ClauseResult {
                clause: "0 < tau1 <= tau2 < inf, or 1 < tau1 <= tau2 <= inf".into(),
                satisfied: tau_ok,
                residual: tau2 - tau1,
            });
            c.eq("gamma = alpha + beta + n(1/p - 1/q)", gamma, alpha + beta + nf * (1.0 / p - 1.0 / q));
            c.lt("alpha < n/p'", alpha, nf / conjugate(p));
            c.lt("beta < n/q", beta, nf / q);
        }
        ParamRule::Corollary3B => {
            let (p, q, n) = (field!(ps, p), field!(ps, q), field!(ps, n));
            let (alpha, beta, gamma) = (field!(ps, alpha), field!(ps, beta), field!(ps, gamma));
            let tau = field!(ps, tau1);
            let nf = n as f64;
            c.gt("p > 1", p, 1.0);
            c.lt("p < inf", p, f64::INFINITY);
            c.gt("q > 1", q, 1.0);
            c.lt("q < inf", q, f64::INFINITY);
            c.gt("gamma > 0", gamma, 0.0);
            c.lt("gamma < n", gamma, nf);
            c.ge("alpha >= 0", alpha, 0.0);
            c.ge("beta >= 0", beta, 0.0);
            c.gt("tau > 0", tau, 0.0);
            c.le("tau <= 1", tau, 1.0);
            c.eq("gamma = alpha + beta + n(1/p - 1/q)", gamma, alpha + beta + nf * (1.0 / p - 1.0 / q));
            c.le("alpha <= n/p'", alpha, nf / conjugate(p));
            c.le("beta <= n/q", beta, nf / q);
        }
        ParamRule::Corollary6 => {
            let (p, q, s, n) = (field!(ps, p), field!(ps, q), field!(ps, s), field!(ps, n));
            let (alpha, beta) = (field!(ps, alpha), field!(ps, beta));
            let nf = n as f64;
            c.gt("p > 1", p, 1.0);
            c.lt("p < inf", p, f64::INFINITY);
            c.gt("q > 1", q, 1.0);
            c.lt("q < inf", q, f64::INFINITY);
            c.gt("s > 1", s, 1.0);
            c.lt("s < inf", s, f64::INFINITY);
            c.ge("alpha >= 0", alpha, 0.0);
            c.ge("beta >= 0", beta, 0.0);
            c.eq("1/s = 1/p - 1/q + (alpha+beta)/n", 1.0 / s, 1.0 / p - 1.0 / q + (alpha + beta) / nf);
            c.lt("alpha < n/p'", alpha, nf / conjugate(p));
            c.lt("beta < n/q", beta, nf / q);
        }
    }
    Ok(c.into_report(rule))
}
