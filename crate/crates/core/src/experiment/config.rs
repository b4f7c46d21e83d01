use crate::error::{Error, Result};
use crate::hilbert::{
    compose, make_averaged, project_ball, project_box, project_halfspace, reflected_resolvent,
    resolvent, scaled_identity, CertifiedOperator, MonotoneMap, SolverSettings, Vector,
};
use crate::modulus::{sne_from_ssne, Modulus, SneModulus};
use crate::sampling::{SamplerSettings, SamplingBox, DEFAULT_SEED};
use serde::{Deserialize, Serialize};
use std::path::Path;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema_version: u32,
    pub dimension: usize,
    /// Applied in order: the composite is `operators[n−1] ∘ … ∘ operators[0]`.
    pub operators: Vec<OperatorSpec>,
    #[serde(default)]
    pub solver: Option<SolverSpec>,
    #[serde(default = "yes")]
    pub verify_certificates: bool,
    #[serde(default)]
    pub claims: Vec<ClaimSpec>,
    #[serde(default)]
    pub rates: Option<RatesSpec>,
    #[serde(default)]
    pub rate_table: Option<RateTableSpec>,
    #[serde(default)]
    pub falsifier: FalsifierSpec,
    #[serde(default)]
    pub output: OutputSpec,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSpec {
    pub tol: f64,
    pub max_iter: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum OperatorSpec {
    Ball { center: Vec<f64>, radius: f64 },
    /// `{x : ⟨normal, x⟩ ≤ offset}`.
    Halfspace { normal: Vec<f64>, offset: f64 },
    Box { lo: Vec<f64>, hi: Vec<f64> },
    ScaledIdentity { beta: f64 },
    Averaged { alpha: f64, of: Box<OperatorSpec> },
    Resolvent { map: MonotoneSpec },
    ReflectedResolvent { map: MonotoneSpec },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MonotoneSpec {
    ScaledIdentity { lambda: f64 },
    /// `λ(x − P_H x)` for `H = {x : ⟨normal, x⟩ ≤ offset}`.
    HalfspaceResidual { normal: Vec<f64>, offset: f64, lambda: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModulusSpec {
    /// `ε ↦ coef · ε^exp`.
    Power { coef: f64, exp: f64 },
    Constant { value: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SneSpec {
    /// `(b, ε) ↦ coef · b^b_exp · ε^eps_exp`.
    Monomial { coef: f64, b_exp: f64, eps_exp: f64 },
    FromSsne { chi: ModulusSpec },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CompositeTarget {
    Composite,
}

/// An operator index or `"composite"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Target {
    Index(usize),
    Named(CompositeTarget),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "claim", rename_all = "snake_case", deny_unknown_fields)]
pub enum ClaimSpec {
    Ssne { target: Target, modulus: ModulusSpec },
    Sne { target: Target, modulus: SneSpec },
    Cld { target: Target, gauge: f64 },
    Supercoercivity { target: Target, modulus: ModulusSpec },
    Averaged { target: Target, alpha: f64 },
    Lipschitz { target: Target, constant: f64 },
    /// On the monotone map behind a resolvent-type operator.
    InverseUniformMonotonicity { target: Target, modulus: ModulusSpec },
    UniformContinuity { target: Target, modulus: ModulusSpec },
}

impl ClaimSpec {
    pub fn target(&self) -> Target {
        match self {
            ClaimSpec::Ssne { target, .. }
            | ClaimSpec::Sne { target, .. }
            | ClaimSpec::Cld { target, .. }
            | ClaimSpec::Supercoercivity { target, .. }
            | ClaimSpec::Averaged { target, .. }
            | ClaimSpec::Lipschitz { target, .. }
            | ClaimSpec::InverseUniformMonotonicity { target, .. }
            | ClaimSpec::UniformContinuity { target, .. } => *target,
        }
    }
}

/// Σ against iteration of the composite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RatesSpec {
    pub epsilon_grid: Vec<f64>,
    pub b: f64,
    pub d: f64,
    pub x0: Vec<f64>,
    pub n_max: usize,
    /// SSNE-moduli of all maps; taken from the certificates when absent.
    #[serde(default)]
    pub chis: Option<Vec<ModulusSpec>>,
    /// Supercoercivity moduli of maps 2..m; from certificates when absent.
    #[serde(default)]
    pub nus: Option<Vec<ModulusSpec>>,
    /// AFP gauge; the maximum of the certified AFP bounds when absent.
    #[serde(default)]
    pub k: Option<ModulusSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RateTableSpec {
    /// The swept argument: ε for Γ and Σ, δ for Φ and Ψ. Θ is repeated.
    pub epsilon_grid: Vec<f64>,
    pub requests: Vec<RateRequest>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RateRequest {
    Theta {
        #[serde(default)]
        name: Option<String>,
        eta: ModulusSpec,
        l1: f64,
        l2: f64,
        l3: f64,
    },
    Phi {
        #[serde(default)]
        name: Option<String>,
        chi: ModulusSpec,
        nu: ModulusSpec,
        k: ModulusSpec,
    },
    Psi {
        #[serde(default)]
        name: Option<String>,
        m: usize,
        chis: Vec<ModulusSpec>,
        nus: Vec<ModulusSpec>,
        k: ModulusSpec,
    },
    Gamma {
        #[serde(default)]
        name: Option<String>,
        alpha: ModulusSpec,
        omega: SneSpec,
        b: f64,
        d: f64,
    },
    /// Σ with the inputs of the `rates` section.
    Sigma {
        #[serde(default)]
        name: Option<String>,
    },
}

impl RateRequest {
    pub fn label(&self) -> String {
        let (name, kind) = match self {
            RateRequest::Theta { name, .. } => (name, "theta"),
            RateRequest::Phi { name, .. } => (name, "phi"),
            RateRequest::Psi { name, .. } => (name, "psi"),
            RateRequest::Gamma { name, .. } => (name, "gamma"),
            RateRequest::Sigma { name } => (name, "sigma"),
        };
        name.clone().unwrap_or_else(|| kind.to_owned())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FalsifierSpec {
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(rename = "box", default)]
    pub sampling_box: SamplingBox,
    #[serde(default = "yes")]
    pub heavy_tail: bool,
}

fn default_trials() -> usize {
    100_000
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

impl Default for FalsifierSpec {
    fn default() -> Self {
        FalsifierSpec {
            trials: default_trials(),
            seed: default_seed(),
            sampling_box: SamplingBox::default(),
            heavy_tail: true,
        }
    }
}

impl FalsifierSpec {
    pub fn settings(&self) -> SamplerSettings {
        SamplerSettings::new(self.trials, self.seed)
            .with_box(self.sampling_box.lo, self.sampling_box.hi)
            .heavy_tail(self.heavy_tail)
    }
}

/// File names are relative to the output directory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub dir: Option<String>,
    #[serde(default = "report_name")]
    pub report: String,
    #[serde(default = "curve_name")]
    pub curve: String,
    #[serde(default = "rates_name")]
    pub rates: String,
    #[serde(default = "table_name")]
    pub rate_table: String,
}

fn report_name() -> String {
    "report.json".into()
}
fn curve_name() -> String {
    "curve.csv".into()
}
fn rates_name() -> String {
    "rates.csv".into()
}
fn table_name() -> String {
    "rate_table.csv".into()
}

impl Default for OutputSpec {
    fn default() -> Self {
        OutputSpec {
            dir: None,
            report: report_name(),
            curve: curve_name(),
            rates: rates_name(),
            rate_table: table_name(),
        }
    }
}

fn config_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

fn vector(name: &str, c: &[f64], dim: usize) -> Result<Vector> {
    if c.len() != dim {
        return Err(config_err(format!("{name} has {} components, dimension is {dim}", c.len())));
    }
    Vector::new(c.to_vec()).map_err(|e| config_err(format!("{name}: {e}")))
}

impl ModulusSpec {
    pub fn build(&self) -> Result<Modulus> {
        match *self {
            ModulusSpec::Power { coef, exp } => {
                if !(coef > 0.0 && coef.is_finite() && exp.is_finite()) {
                    return Err(config_err(format!("power modulus needs coef > 0, got {coef}")));
                }
                Ok(Modulus::power(coef, exp))
            }
            ModulusSpec::Constant { value } => {
                if !(value >= 0.0 && value.is_finite()) {
                    return Err(config_err(format!("constant modulus {value} must be ≥ 0")));
                }
                Ok(Modulus::constant(value))
            }
        }
    }
}

impl SneSpec {
    pub fn build(&self) -> Result<SneModulus> {
        match self {
            SneSpec::Monomial { coef, b_exp, eps_exp } => {
                if !(*coef > 0.0 && coef.is_finite()) {
                    return Err(config_err(format!("SNE monomial needs coef > 0, got {coef}")));
                }
                Ok(SneModulus::monomial(*coef, *b_exp, *eps_exp))
            }
            SneSpec::FromSsne { chi } => Ok(sne_from_ssne(&chi.build()?)),
        }
    }
}

impl MonotoneSpec {
    pub fn build(&self, dim: usize) -> Result<MonotoneMap> {
        match self {
            MonotoneSpec::ScaledIdentity { lambda } => MonotoneMap::scaled_identity(dim, *lambda),
            MonotoneSpec::HalfspaceResidual { normal, offset, lambda } => {
                MonotoneMap::halfspace_residual(vector("normal", normal, dim)?, *offset, *lambda)
            }
        }
    }
}

/// An operator together with the monotone map it resolves, if any.
#[derive(Clone, Debug)]
pub struct BuiltOperator {
    pub op: CertifiedOperator,
    pub monotone: Option<MonotoneMap>,
}

impl OperatorSpec {
    pub fn build(&self, dim: usize, solver: SolverSettings) -> Result<BuiltOperator> {
        let plain = |op| Ok(BuiltOperator { op, monotone: None });
        match self {
            OperatorSpec::Ball { center, radius } => plain(project_ball(vector("center", center, dim)?, *radius)?),
            OperatorSpec::Halfspace { normal, offset } => {
                plain(project_halfspace(vector("normal", normal, dim)?, *offset)?)
            }
            OperatorSpec::Box { lo, hi } => {
                plain(project_box(vector("lo", lo, dim)?, vector("hi", hi, dim)?)?)
            }
            OperatorSpec::ScaledIdentity { beta } => plain(scaled_identity(dim, *beta)?),
            OperatorSpec::Averaged { alpha, of } => {
                let inner = of.build(dim, solver)?;
                plain(make_averaged(*alpha, &inner.op)?)
            }
            OperatorSpec::Resolvent { map } => {
                let a = map.build(dim)?;
                Ok(BuiltOperator {
                    op: resolvent(&a, solver)?,
                    monotone: Some(a),
                })
            }
            OperatorSpec::ReflectedResolvent { map } => {
                let a = map.build(dim)?;
                Ok(BuiltOperator {
                    op: reflected_resolvent(&a, solver)?,
                    monotone: Some(a),
                })
            }
        }
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| config_err(format!("invalid config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| config_err(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Checks that deserialization cannot express.
    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(config_err(format!(
                "schema_version {} is not supported (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        if self.dimension == 0 {
            return Err(config_err("dimension must be positive"));
        }
        if self.operators.is_empty() {
            return Err(config_err("at least one operator is required"));
        }
        for c in &self.claims {
            if let Target::Index(i) = c.target() {
                if i >= self.operators.len() {
                    return Err(config_err(format!(
                        "claim targets operator {i}, only {} defined",
                        self.operators.len()
                    )));
                }
            }
        }
        if self.falsifier.trials == 0 {
            return Err(config_err("falsifier.trials must be at least 1"));
        }
        let b = self.falsifier.sampling_box;
        if !(b.lo < b.hi && b.lo.is_finite() && b.hi.is_finite()) {
            return Err(config_err("falsifier.box needs finite lo < hi"));
        }
        if let Some(r) = &self.rates {
            check_grid("rates.epsilon_grid", &r.epsilon_grid)?;
            if r.x0.len() != self.dimension {
                return Err(config_err("rates.x0 does not match the dimension"));
            }
            if r.n_max == 0 {
                return Err(config_err("rates.n_max must be at least 1"));
            }
        }
        if let Some(t) = &self.rate_table {
            check_grid("rate_table.epsilon_grid", &t.epsilon_grid)?;
            let needs_rates = t.requests.iter().any(|r| matches!(r, RateRequest::Sigma { .. }));
            if needs_rates && self.rates.is_none() {
                return Err(config_err("a sigma request needs a rates section"));
            }
        }
        Ok(())
    }

    pub fn solver_settings(&self) -> SolverSettings {
        match self.solver {
            Some(s) => SolverSettings {
                tol: s.tol,
                max_iter: s.max_iter,
            },
            None => SolverSettings::default(),
        }
    }

    pub fn build_operators(&self) -> Result<Vec<BuiltOperator>> {
        let solver = self.solver_settings();
        self.operators
            .iter()
            .enumerate()
            .map(|(i, s)| {
                s.build(self.dimension, solver)
                    .map_err(|e| config_err(format!("operator {i}: {e}")))
            })
            .collect()
    }

    pub fn composite(built: &[BuiltOperator]) -> Result<CertifiedOperator> {
        compose(&built.iter().map(|b| b.op.clone()).collect::<Vec<_>>())
    }
}

fn check_grid(name: &str, grid: &[f64]) -> Result<()> {
    if grid.iter().any(|&e| !(e > 0.0 && e.is_finite())) {
        return Err(config_err(format!("{name} must contain positive reals")));
    }
    Ok(())
}
