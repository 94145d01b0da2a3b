//! Task implementations: each maps a validated config onto library calls and
//! produces report rows.

use crate::config::{ExperimentConfig, NormRequest, ProbeConfig, SweepTarget, Task};
use crate::report::{Outcome, ReportRow};
use anyhow::{bail, Context, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::path::Path;
use std::time::Instant;
use wconv_core::conditions::{
    check_params, compute_d, compute_f, compute_g, compute_k_pnn, compute_l, ParamRule,
};
use wconv_core::harness::{
    divergence_probe_s_positive, lemma1_verify, lemma2_verify, lemma3_verify, pnn_verify,
    two_sided_verify, DivergenceClass,
};
use wconv_core::operators::empirical_norm_lower_bound;
use wconv_core::spaces::{
    lorentz_norm, weak_norm_raw, weak_norm_via_average, weighted_lebesgue_norm, LorentzParams,
};
use wconv_core::{
    double_star, rearrange_sampled, sup_mean_over_sets, ExtReal, GridFunction1D, Profile,
};

pub fn run_task(cfg: &ExperimentConfig, base: &Path, seed: u64) -> Result<Vec<ReportRow>> {
    match cfg.task {
        Task::Conditions => conditions(cfg, base),
        Task::Rearrange => rearrange(cfg, base, seed),
        Task::Norm => norm(cfg, base),
        Task::EstimateNorm => estimate_norm(cfg, base, seed),
        Task::VerifyLemma1 => verify_lemma1(cfg, base, seed),
        Task::VerifyLemma2 => verify_lemma2(cfg, base),
        Task::VerifyLemma3 => verify_lemma3(cfg, base),
        Task::TwoSided => two_sided(cfg, base, seed),
        Task::Pnn => pnn(cfg, base),
        Task::DivergenceProbe => divergence_probe(cfg),
        Task::Sweep => sweep(cfg, base, seed),
    }
}

fn profile_for(cfg: &ExperimentConfig, which: &str, base: &Path) -> Result<Profile> {
    Ok(cfg.require_weight(which, base)?.rearrangement_profile(1)?)
}

fn kernel_profile(cfg: &ExperimentConfig) -> Result<Profile> {
    Ok(cfg.kernel.as_ref().context("missing field `kernel`")?.build()?.profile()?)
}

fn conditions(cfg: &ExperimentConfig, base: &Path) -> Result<Vec<ReportRow>> {
    let scan = cfg.tscan();
    let mut rows = Vec::new();
    let mut id = 0;
    let wanted: Vec<String> = cfg
        .functionals
        .clone()
        .unwrap_or_else(|| vec!["g".into()])
        .iter()
        .map(|s| s.to_lowercase())
        .collect();

    for f in &wanted {
        let t0 = Instant::now();
        let (case, cv) = match f.as_str() {
            "g" => {
                let (p, q, r) =
                    (cfg.require_param("p")?, cfg.require_param("q")?, cfg.require_param("r")?);
                let mu = profile_for(cfg, "mu", base)?;
                let nu = profile_for(cfg, "nu", base)?;
                ("G", compute_g(&mu, &nu, p, q, r, &scan)?)
            }
            "l" => {
                let (p, q, gamma) = (
                    cfg.require_param("p")?,
                    cfg.require_param("q")?,
                    cfg.require_param("gamma")?,
                );
                let n = cfg.params.n.unwrap_or(1);
                let mu = profile_for(cfg, "mu", base)?;
                let nu = profile_for(cfg, "nu", base)?;
                ("L", compute_l(&mu, &nu, p, q, gamma, n, &scan)?)
            }
            "d" => {
                let (p, q) = (cfg.require_param("p")?, cfg.require_param("q")?);
                let mu = profile_for(cfg, "mu", base)?;
                let nu = profile_for(cfg, "nu", base)?;
                let k = kernel_profile(cfg)?;
                ("D", compute_d(&mu, &nu, &k, p, q, &scan)?)
            }
            "f" => {
                let (p, q, gamma) = (
                    cfg.require_param("p")?,
                    cfg.require_param("q")?,
                    cfg.require_param("gamma")?,
                );
                let mu = cfg.require_weight("mu", base)?;
                let nu = cfg.require_weight("nu", base)?;
                let balls = wconv_core::families::ball_grid(1e-3, 1e3, 8);
                ("F", compute_f(&mu, &nu, p, q, gamma, &balls)?)
            }
            "k" => {
                let (p, q, r) =
                    (cfg.require_param("p")?, cfg.require_param("q")?, cfg.require_param("r")?);
                let d = cfg
                    .d_list
                    .as_ref()
                    .and_then(|l| l.first().copied())
                    .context("missing field `d_list`")?;
                let mu = cfg.require_weight("mu", base)?;
                let nu = cfg.require_weight("nu", base)?;
                ("K", compute_k_pnn(&mu, &nu, p, q, r, d)?)
            }
            other => bail!("unknown functional `{other}` (expected g, l, d, f, or k)"),
        };
        let wall = t0.elapsed().as_secs_f64() * 1e3;
        let mut row = ReportRow::new(id, case)
            .value(cv.value)
            .witness(cv.argmax_t.map(|t| format!("argmax_t={t}")).unwrap_or_default())
            .inputs(json!({"params": cfg.params}))
            .detail(json!({"trace": cv.trace, "max_at_centered": cv.max_at_centered}));
        row.wall_ms = wall;
        rows.push(row);
        id += 1;
    }

    if let Some(rule) = cfg.rule {
        let t0 = Instant::now();
        let report = check_params(rule, &cfg.params)?;
        let residuals: Vec<_> =
            report.clauses.iter().map(|c| json!({"clause": c.clause, "residual": c.residual, "ok": c.satisfied})).collect();
        let mut row = ReportRow::new(id, format!("rule:{:?}", rule))
            .outcome(Outcome::from_bool(report.pass))
            .inputs(json!({"params": cfg.params}))
            .detail(json!({ "clauses": residuals }));
        row.wall_ms = t0.elapsed().as_secs_f64() * 1e3;
        rows.push(row);
    }
    Ok(rows)
}

fn rearrange(cfg: &ExperimentConfig, base: &Path, seed: u64) -> Result<Vec<ReportRow>> {
    let grid = cfg.grid.as_ref().context("missing field `grid`")?;
    let values = cfg.load_grid_values(base, seed)?;
    let f = GridFunction1D::symmetric(grid.h, values)?;
    let prof = rearrange_sampled(&f);
    let mut rows = Vec::new();
    if let Profile::Sampled(s) = &prof {
        for (i, (&v, &b)) in s.values().iter().zip(s.breakpoints()).enumerate() {
            rows.push(
                ReportRow::new(i, format!("t<={b}"))
                    .value(ExtReal::finite(v))
                    .inputs(json!({"h": grid.h})),
            );
        }
    }
    // identity checks at a few grid scales
    let m = f.len();
    let mut id = rows.len();
    for k in [1, m / 2, m] {
        if k == 0 {
            continue;
        }
        let t = k as f64 * f.h();
        let sup = sup_mean_over_sets(&f, t)?;
        let ds = double_star(&prof, t)?;
        rows.push(
            ReportRow::new(id, format!("identity@k={k}"))
                .value(ExtReal::finite(sup))
                .outcome(Outcome::from_bool(sup == ds))
                .witness(format!("double_star={ds}")),
        );
        id += 1;
    }
    Ok(rows)
}

fn norm(cfg: &ExperimentConfig, base: &Path) -> Result<Vec<ReportRow>> {
    let req = cfg.norm.as_ref().context("missing field `norm`")?;
    let t0 = Instant::now();
    let (case, value) = match req {
        NormRequest::Lorentz { profile, p, tau } => {
            let prof = profile.build()?;
            let lp = LorentzParams::new(*p, tau.unwrap_or(f64::INFINITY))?;
            ("lorentz", lorentz_norm(&prof, lp))
        }
        NormRequest::WeakRaw { profile, r } => {
            let prof = profile.build()?;
            ("weak_raw", weak_norm_raw(&prof, *r)?)
        }
        NormRequest::WeakAverage { profile, r } => {
            let prof = profile.build()?;
            ("weak_average", weak_norm_via_average(&prof, *r)?)
        }
        NormRequest::WeightedLebesgue { support, omega, p } => {
            let grid = cfg.grid.as_ref().context("missing field `grid`")?;
            let m = (2.0 * grid.l / grid.h).round() as usize;
            let f = GridFunction1D::indicator(grid.h, m, support.0, support.1, 1.0)?;
            let w = omega.build(base)?;
            ("weighted_lebesgue", weighted_lebesgue_norm(&f, &w, *p)?)
        }
    };
    let mut row = ReportRow::new(0, case).value(value).inputs(serde_json::to_value(req)?);
    row.wall_ms = t0.elapsed().as_secs_f64() * 1e3;
    Ok(vec![row])
}

fn estimate_norm(cfg: &ExperimentConfig, base: &Path, seed: u64) -> Result<Vec<ReportRow>> {
    let (p, q) = (cfg.require_param("p")?, cfg.require_param("q")?);
    let mu = cfg.require_weight("mu", base)?;
    let nu = cfg.require_weight("nu", base)?;
    let kernel = cfg.kernel.as_ref().context("missing field `kernel`")?.build()?;
    let family = cfg.build_family(seed)?;
    let t0 = Instant::now();
    let nb = empirical_norm_lower_bound(&mu, &nu, &kernel, p, q, &family)?;
    let mut row = ReportRow::new(0, "norm_lower_bound")
        .value(ExtReal::from_raw(nb.value))
        .err_bound(nb.abs_err)
        .witness(format!("pair#{}", nb.witness))
        .inputs(json!({"p": p, "q": q, "family_size": family.len()}))
        .detail(json!({"per_pair": nb.per_pair}));
    row.wall_ms = t0.elapsed().as_secs_f64() * 1e3;
    Ok(vec![row])
}

fn verify_lemma1(cfg: &ExperimentConfig, base: &Path, seed: u64) -> Result<Vec<ReportRow>> {
    let pairs = cfg.pairs.unwrap_or(500);
    let kernel = cfg.kernel.as_ref().context("missing field `kernel`")?.build()?;
    let mu = cfg.require_weight("mu", base)?;
    let nu = cfg.require_weight("nu", base)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let family: Vec<_> =
        (0..pairs).map(|_| wconv_core::families::random_pair(&mut rng, 5.0)).collect();

    use rayon::prelude::*;
    let reports: Vec<_> = family
        .par_iter()
        .map(|(e, w)| {
            let t0 = Instant::now();
            let rep = lemma1_verify(e, w, &mu, &nu, &kernel);
            (rep, t0.elapsed().as_secs_f64() * 1e3)
        })
        .collect();

    let mut rows = Vec::with_capacity(pairs);
    for (i, ((e, w), (rep, wall))) in family.iter().zip(reports).enumerate() {
        let rep = rep?;
        let mut row = ReportRow::new(i, format!("pair{i}"))
            .value(rep.margin)
            .outcome(Outcome::from_bool(rep.pass))
            .err_bound(rep.lhs_err)
            .witness(format!("lhs={} rhs={}", rep.lhs, rep.rhs))
            .inputs(json!({"e": e.intervals(), "w": w.intervals()}));
        row.wall_ms = wall;
        rows.push(row);
    }
    Ok(rows)
}

fn verify_lemma2(cfg: &ExperimentConfig, base: &Path) -> Result<Vec<ReportRow>> {
    let beta_exp = cfg.beta_exp.context("missing field `beta_exp`")?;
    let mu = profile_for(cfg, "mu", base)?;
    let nu = profile_for(cfg, "nu", base)?;
    let k = kernel_profile(cfg)?;
    let omegas = cfg.omega_grid();
    let t0 = Instant::now();
    let rep = lemma2_verify(&mu, &nu, &k, beta_exp, &omegas)?;
    let mut rows = Vec::new();
    for (i, &(omega, lhs)) in rep.per_omega.iter().enumerate() {
        rows.push(
            ReportRow::new(i, format!("omega={omega}"))
                .value(ExtReal::from_raw(lhs))
                .inputs(json!({"beta_exp": beta_exp})),
        );
    }
    let outcome = if rep.applicable { Outcome::Pass } else { Outcome::Inconclusive };
    let mut row = ReportRow::new(rows.len(), "ratio_lhs_over_B")
        .value(rep.ratio)
        .outcome(outcome)
        .witness(format!("B={}", rep.b_value.value))
        .detail(serde_json::to_value(&rep)?);
    row.wall_ms = t0.elapsed().as_secs_f64() * 1e3;
    rows.push(row);
    Ok(rows)
}

fn verify_lemma3(cfg: &ExperimentConfig, base: &Path) -> Result<Vec<ReportRow>> {
    let (p, q) = (cfg.require_param("p")?, cfg.require_param("q")?);
    let (alpha, beta, rho) = (
        cfg.require_param("alpha")?,
        cfg.require_param("beta")?,
        cfg.require_param("rho")?,
    );
    let mu = profile_for(cfg, "mu", base)?;
    let nu = profile_for(cfg, "nu", base)?;
    let k = kernel_profile(cfg)?;
    let shapes = cfg.shape_grid.clone().unwrap_or_else(|| vec![0.25, 1.0, 4.0]);
    let mut grid = Vec::new();
    for &shape in &shapes {
        for scale in [-4i32, -2, 0, 2, 4] {
            let s = 10.0f64.powi(scale);
            grid.push((s, shape * s));
        }
    }
    let t0 = Instant::now();
    let rep = lemma3_verify(&mu, &nu, &k, p, q, alpha, beta, rho, &grid)?;
    let mut rows = Vec::new();
    for (i, &(xi, eta, lhs)) in rep.per_point.iter().enumerate() {
        rows.push(
            ReportRow::new(i, format!("xi={xi},eta={eta}")).value(ExtReal::from_raw(lhs)),
        );
    }
    let mut row = ReportRow::new(rows.len(), "ratio_lhs_over_D")
        .value(rep.ratio)
        .outcome(Outcome::Pass)
        .witness(format!("D={}", rep.d_value.value))
        .detail(serde_json::to_value(&rep)?);
    row.wall_ms = t0.elapsed().as_secs_f64() * 1e3;
    rows.push(row);
    Ok(rows)
}

fn two_sided(cfg: &ExperimentConfig, base: &Path, seed: u64) -> Result<Vec<ReportRow>> {
    let (p, q, gamma) =
        (cfg.require_param("p")?, cfg.require_param("q")?, cfg.require_param("gamma")?);
    let mu = cfg.require_weight("mu", base)?;
    let nu = cfg.require_weight("nu", base)?;
    let balls = wconv_core::families::ball_grid(1e-3, 1e3, 4);
    let family = cfg.build_family(seed)?;
    let t0 = Instant::now();
    let rep = two_sided_verify(&mu, &nu, p, q, gamma, &balls, &family, &cfg.tscan())?;
    let wall = t0.elapsed().as_secs_f64() * 1e3;
    let mk = |id: usize, case: &str, v: ExtReal| ReportRow::new(id, case).value(v);
    let mut rows = vec![
        mk(0, "F", rep.f_value),
        mk(1, "L", rep.l_value),
        mk(2, "norm_lower_bound", ExtReal::from_raw(rep.lower_bound)),
        mk(3, "C0=F/lower", rep.c0),
        mk(4, "C1=lower/L", rep.c1),
    ];
    let mut summary = ReportRow::new(5, "sandwich")
        .outcome(Outcome::from_bool(rep.f_le_l))
        .witness(format!(
            "l_over_f={:?} averaging={:?}",
            rep.l_over_f, rep.averaging_condition_pass
        ))
        .detail(serde_json::to_value(&rep)?);
    summary.wall_ms = wall;
    rows.push(summary);
    Ok(rows)
}

fn pnn(cfg: &ExperimentConfig, base: &Path) -> Result<Vec<ReportRow>> {
    let (p, q, r) =
        (cfg.require_param("p")?, cfg.require_param("q")?, cfg.require_param("r")?);
    let ds = cfg.d_list.clone().unwrap_or_else(|| vec![1.0, 2.0, 4.0, 8.0]);
    let mu = cfg.require_weight("mu", base)?;
    let nu = cfg.require_weight("nu", base)?;
    let t0 = Instant::now();
    let rep = pnn_verify(&mu, &nu, p, q, r, &ds)?;
    let mut rows = Vec::new();
    for (i, row) in rep.rows.iter().enumerate() {
        rows.push(
            ReportRow::new(i, format!("d={}", row.d))
                .value(ExtReal::from_raw(row.norm_lower_bound))
                .outcome(Outcome::from_bool(row.lower_le_upper))
                .witness(format!("upper={} K={}", row.bound_upper, row.k_window))
                .inputs(json!({"p": p, "q": q, "r": r})),
        );
    }
    let mut fit = ReportRow::new(rows.len(), "fitted_exponent")
        .value(ExtReal::from_raw(rep.fitted_exponent))
        .detail(serde_json::to_value(&rep)?);
    fit.wall_ms = t0.elapsed().as_secs_f64() * 1e3;
    rows.push(fit);
    Ok(rows)
}

fn divergence_probe(cfg: &ExperimentConfig) -> Result<Vec<ReportRow>> {
    let ProbeConfig { alpha, p, s_exp, r_max } =
        *cfg.probe.as_ref().context("missing field `probe`")?;
    let t0 = Instant::now();
    let rep = divergence_probe_s_positive(alpha, p, s_exp, r_max)?;
    let mut rows = Vec::new();
    for (i, &(r, v)) in rep.partials.iter().enumerate() {
        rows.push(ReportRow::new(i, format!("R={r}")).value(ExtReal::finite(v)));
    }
    let outcome = match rep.classification {
        DivergenceClass::Inconclusive => Outcome::Inconclusive,
        _ => Outcome::Pass,
    };
    let mut class = ReportRow::new(rows.len(), format!("classification:{:?}", rep.classification))
        .value(ExtReal::finite(rep.log_slope))
        .outcome(outcome)
        .witness(format!("increment_ratio={}", rep.increment_ratio))
        .inputs(json!({"alpha": alpha, "p": p, "s_exp": s_exp, "r_max": r_max}));
    class.wall_ms = t0.elapsed().as_secs_f64() * 1e3;
    rows.push(class);
    Ok(rows)
}

fn sweep(cfg: &ExperimentConfig, base: &Path, seed: u64) -> Result<Vec<ReportRow>> {
    let sweep_cfg = cfg.sweep.as_ref().context("missing field `sweep`")?;
    match sweep_cfg.target {
        SweepTarget::Corollary1 => {
            let points = sweep_cfg.points;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let tuples: Vec<_> =
                (0..points).map(|_| wconv_core::families::random_corollary1_tuple(&mut rng)).collect();
            let scan = cfg.tscan();
            use rayon::prelude::*;
            let rows: Vec<Result<ReportRow>> = tuples
                .par_iter()
                .enumerate()
                .map(|(i, ps)| {
                    let t0 = Instant::now();
                    let mu = wconv_core::rearrange_radial_power(ps.alpha.unwrap(), 1)?;
                    let nu = wconv_core::rearrange_radial_power(ps.beta.unwrap(), 1)?;
                    let g = compute_g(&mu, &nu, ps.p.unwrap(), ps.q.unwrap(), ps.r.unwrap(), &scan)?;
                    let rule = check_params(ParamRule::Corollary1, ps)?;
                    let agree = g.value.is_finite() == rule.pass;
                    let mut row = ReportRow::new(i, format!("tuple{i}"))
                        .value(g.value)
                        .outcome(Outcome::from_bool(agree))
                        .witness(format!("rule_pass={}", rule.pass))
                        .inputs(serde_json::to_value(ps)?);
                    row.wall_ms = t0.elapsed().as_secs_f64() * 1e3;
                    Ok(row)
                })
                .collect();
            rows.into_iter().collect()
        }
        SweepTarget::Pnn => {
            // delegate to the pnn harness; rows carry the fitted exponent
            pnn(cfg, base)
        }
    }
}
