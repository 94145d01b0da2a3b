//! JSON experiment configuration: task selection, parameter tuple, weight
//! and kernel rules, grids, families, and output paths.

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use wconv_core::conditions::{ParamRule, ParamSet, TScan};
use wconv_core::{KernelSpec, Profile, RadialWeight, SetUnion1D};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Conditions,
    Rearrange,
    Norm,
    EstimateNorm,
    VerifyLemma1,
    VerifyLemma2,
    VerifyLemma3,
    TwoSided,
    Pnn,
    DivergenceProbe,
    Sweep,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::Conditions => "conditions",
            Task::Rearrange => "rearrange",
            Task::Norm => "norm",
            Task::EstimateNorm => "estimate-norm",
            Task::VerifyLemma1 => "verify-lemma1",
            Task::VerifyLemma2 => "verify-lemma2",
            Task::VerifyLemma3 => "verify-lemma3",
            Task::TwoSided => "two-sided",
            Task::Pnn => "pnn",
            Task::DivergenceProbe => "divergence-probe",
            Task::Sweep => "sweep",
        }
    }
}

/// Weight rule: closed-form kinds inline, tabulated kinds by file reference
/// (two-column CSV `t,value` with strictly increasing `t`).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightSpec {
    Constant,
    Power { exponent: f64 },
    Samples { path: PathBuf },
    LogPower { exponent: f64, log_exponent: f64, cutoff: f64 },
}

impl WeightSpec {
    pub fn build(&self, base_dir: &Path) -> Result<RadialWeight> {
        Ok(match self {
            WeightSpec::Constant => RadialWeight::constant(),
            WeightSpec::Power { exponent } => RadialWeight::power(*exponent),
            WeightSpec::Samples { path } => {
                let full = if path.is_absolute() { path.clone() } else { base_dir.join(path) };
                let (radii, values) = read_weight_samples(&full)?;
                RadialWeight::sampled(radii, values)
                    .with_context(|| format!("invalid weight samples in {}", full.display()))?
            }
            WeightSpec::LogPower { exponent, log_exponent, cutoff } => {
                RadialWeight::log_power(*exponent, *log_exponent, *cutoff)?
            }
        })
    }
}

fn read_weight_samples(path: &Path) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("cannot open weight sample file {}", path.display()))?;
    let mut radii = Vec::new();
    let mut values = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        if i == 0 && record.get(0).map(|s| s.parse::<f64>().is_err()).unwrap_or(false) {
            continue; // header row
        }
        if record.len() < 2 {
            bail!("weight sample file {}: row {} needs two columns (t, value)", path.display(), i);
        }
        radii.push(record[0].parse::<f64>()?);
        values.push(record[1].parse::<f64>()?);
    }
    if radii.windows(2).any(|w| w[0] >= w[1]) {
        bail!("weight sample file {}: t column must increase strictly", path.display());
    }
    Ok((radii, values))
}

/// Profile rule for norm tasks.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProfileSpec {
    PowerLaw { coeff: f64, exponent: f64 },
    Indicator { height: f64, length: f64 },
    RadialPower { exponent: f64, n: u32 },
    RieszKernel { gamma: f64, n: u32 },
}

impl ProfileSpec {
    pub fn build(&self) -> Result<Profile> {
        Ok(match self {
            ProfileSpec::PowerLaw { coeff, exponent } => {
                Profile::power_law(*coeff, *exponent, f64::INFINITY)?
            }
            ProfileSpec::Indicator { height, length } => Profile::indicator(*height, *length)?,
            ProfileSpec::RadialPower { exponent, n } => {
                wconv_core::rearrange_radial_power(*exponent, *n)?
            }
            ProfileSpec::RieszKernel { gamma, n } => wconv_core::riesz_profile(*gamma, *n)?,
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KernelConfig {
    Riesz { gamma: f64 },
    Sinc { d: f64 },
    Ball { shift: f64, radius: f64 },
}

impl KernelConfig {
    pub fn build(&self) -> Result<KernelSpec> {
        Ok(match self {
            KernelConfig::Riesz { gamma } => KernelSpec::riesz(*gamma, 1)?,
            KernelConfig::Sinc { d } => KernelSpec::Sinc { edges: vec![*d] },
            KernelConfig::Ball { shift, radius } => {
                wconv_core::shifted_ball_indicator(*shift, *radius)?
            }
        })
    }
}

/// Family of (E, W) pairs for bilinear-form scans.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilySpec {
    Centered { scale_min: f64, scale_max: f64, per_decade: u32 },
    Sandwich { scale_min: f64, scale_max: f64, per_decade: u32 },
    Random { pairs: usize, scale: f64 },
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct GridConfig {
    pub h: f64,
    pub l: f64,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ProbeConfig {
    pub alpha: f64,
    pub p: f64,
    pub s_exp: f64,
    pub r_max: f64,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum SweepTarget {
    Corollary1,
    Pnn,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepConfig {
    pub target: SweepTarget,
    #[serde(default)]
    pub points: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NormRequest {
    /// `tau: null` selects the weak space (`τ = ∞`; JSON cannot carry
    /// infinities).
    Lorentz { profile: ProfileSpec, p: f64, tau: Option<f64> },
    WeakRaw { profile: ProfileSpec, r: f64 },
    WeakAverage { profile: ProfileSpec, r: f64 },
    WeightedLebesgue { support: (f64, f64), omega: WeightSpec, p: f64 },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GridSource {
    Random { cells: usize },
    File { path: PathBuf },
}

/// The top-level experiment description.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub task: Task,
    #[serde(default)]
    pub params: ParamSet,
    pub mu: Option<WeightSpec>,
    pub nu: Option<WeightSpec>,
    pub kernel: Option<KernelConfig>,
    pub rule: Option<ParamRule>,
    /// Which condition functionals the `conditions` task computes.
    pub functionals: Option<Vec<String>>,
    pub norm: Option<NormRequest>,
    pub grid: Option<GridConfig>,
    pub grid_source: Option<GridSource>,
    pub tscan: Option<TScan>,
    pub family: Option<FamilySpec>,
    pub omega_decades: Option<(i32, i32)>,
    pub shape_grid: Option<Vec<f64>>,
    pub beta_exp: Option<f64>,
    pub d_list: Option<Vec<f64>>,
    pub probe: Option<ProbeConfig>,
    pub sweep: Option<SweepConfig>,
    pub pairs: Option<usize>,
    pub seed: Option<u64>,
    pub out_csv: Option<PathBuf>,
    pub out_json: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        let cfg: ExperimentConfig = serde_json::from_str(&text)
            .with_context(|| format!("config {} does not match the schema", path.display()))?;
        Ok(cfg)
    }

    pub fn tscan(&self) -> TScan {
        self.tscan.unwrap_or_default()
    }

    /// Seed is mandatory for randomized tasks (reproducibility).
    pub fn require_seed(&self) -> Result<u64> {
        self.seed.context("missing field `seed` (required for randomized tasks)")
    }

    pub fn require_param(&self, name: &str) -> Result<f64> {
        let v = match name {
            "p" => self.params.p,
            "q" => self.params.q,
            "r" => self.params.r,
            "theta" => self.params.theta,
            "tau1" => self.params.tau1,
            "tau2" => self.params.tau2,
            "alpha" => self.params.alpha,
            "beta" => self.params.beta,
            "s" => self.params.s,
            "gamma" => self.params.gamma,
            "rho" => self.params.rho,
            _ => None,
        };
        v.with_context(|| format!("missing field `{name}`"))
    }

    pub fn require_weight(&self, which: &str, base: &Path) -> Result<RadialWeight> {
        let spec = match which {
            "mu" => self.mu.as_ref(),
            _ => self.nu.as_ref(),
        };
        spec.with_context(|| format!("missing field `{which}`"))?.build(base)
    }

    pub fn build_family(&self, seed: u64) -> Result<Vec<(SetUnion1D, SetUnion1D)>> {
        use rand::SeedableRng;
        let spec = self.family.as_ref().context("missing field `family`")?;
        Ok(match spec {
            FamilySpec::Centered { scale_min, scale_max, per_decade } => {
                wconv_core::families::centered_pair_family(*scale_min, *scale_max, *per_decade)
            }
            FamilySpec::Sandwich { scale_min, scale_max, per_decade } => {
                wconv_core::families::sandwich_family(*scale_min, *scale_max, *per_decade)
            }
            FamilySpec::Random { pairs, scale } => {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                (0..*pairs)
                    .map(|_| wconv_core::families::random_pair(&mut rng, *scale))
                    .collect()
            }
        })
    }

    pub fn load_grid_values(&self, base: &Path, seed: u64) -> Result<Vec<f64>> {
        use rand::{Rng, SeedableRng};
        match self.grid_source.as_ref().context("missing field `grid_source`")? {
            GridSource::Random { cells } => {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                Ok((0..*cells).map(|_| rng.gen_range(-5.0..5.0)).collect())
            }
            GridSource::File { path } => {
                let full = if path.is_absolute() { path.clone() } else { base.join(path) };
                let text = std::fs::read_to_string(&full)
                    .with_context(|| format!("cannot read grid file {}", full.display()))?;
                let mut out = Vec::new();
                for (i, line) in text.lines().enumerate() {
                    let line = line.trim();
                    if line.is_empty() || (i == 0 && line.parse::<f64>().is_err()) {
                        continue;
                    }
                    out.push(
                        line.parse::<f64>()
                            .with_context(|| format!("bad value on line {} of {}", i + 1, full.display()))?,
                    );
                }
                Ok(out)
            }
        }
    }

    /// Geometric ω grid from decade bounds.
    pub fn omega_grid(&self) -> Vec<f64> {
        let (lo, hi) = self.omega_decades.unwrap_or((-2, 2));
        (4 * lo..=4 * hi).map(|k| 10.0f64.powf(k as f64 / 4.0)).collect()
    }
}
