use super::config::{
    BuiltOperator, ClaimSpec, ExperimentConfig, ModulusSpec, RateRequest, RatesSpec, Target,
};
use crate::bound::Bound;
use crate::error::{Error, Result};
use crate::hilbert::{CertifiedOperator, MonotoneMap, Vector};
use crate::lab::{
    certificate_claims, csv_bound, csv_error, csv_real, falsify, falsify_monotone, monotone_claims,
    rate_vs_reality_with_curve, Claim, MonotoneClaim, RateReport, SampleReport,
};
use crate::modulus::{CldGauge, Modulus, Provenance};
use crate::rates::{gamma_rate, phi_bound, psi_bound, theta_bound, SigmaInputs};
use crate::sampling::SamplerSettings;
use rayon::prelude::*;
use serde::Serialize;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "SSNE_OUT_DIR";
const FALLBACK_OUT_DIR: &str = "ssne-out";

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub out_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// No claim falsified and no rate violated.
    Clean,
    Falsified,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Clean => 0,
            Outcome::Falsified => 1,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveSummary {
    pub file: String,
    pub start: Vector,
    pub n_max: usize,
    pub final_displacement: f64,
    pub nonincreasing: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableRow {
    pub quantity: String,
    pub epsilon: f64,
    pub value: Bound,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub dimension: usize,
    pub operators: Vec<String>,
    pub composite: String,
    pub falsifier: SamplerSettings,
    pub falsification: Vec<SampleReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rates: Option<RateReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rate_table: Option<Vec<TableRow>>,
    pub falsified_claims: usize,
    pub rate_violations: usize,
    pub outcome: Outcome,
}

impl RunReport {
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

enum Task<'a> {
    Operator(&'a CertifiedOperator, Claim),
    Monotone(&'a MonotoneMap, MonotoneClaim),
}

fn target_op<'a>(
    t: Target,
    built: &'a [BuiltOperator],
    composite: &'a CertifiedOperator,
) -> &'a CertifiedOperator {
    match t {
        Target::Index(i) => &built[i].op,
        Target::Named(_) => composite,
    }
}

fn target_monotone(t: Target, built: &[BuiltOperator]) -> Result<&MonotoneMap> {
    match t {
        Target::Index(i) => built[i].monotone.as_ref().ok_or_else(|| {
            Error::Config(format!("operator {i} is not built from a monotone map"))
        }),
        Target::Named(_) => Err(Error::Config(
            "monotonicity claims need an operator index, not the composite".into(),
        )),
    }
}

fn claim_task<'a>(
    spec: &ClaimSpec,
    built: &'a [BuiltOperator],
    composite: &'a CertifiedOperator,
) -> Result<Task<'a>> {
    let t = spec.target();
    let op = || target_op(t, built, composite);
    Ok(match spec {
        ClaimSpec::Ssne { modulus, .. } => Task::Operator(op(), Claim::Ssne(modulus.build()?)),
        ClaimSpec::Sne { modulus, .. } => Task::Operator(op(), Claim::Sne(modulus.build()?)),
        ClaimSpec::Cld { gauge, .. } => Task::Operator(
            op(),
            Claim::Cld(CldGauge::constant(*gauge).map_err(|e| Error::Config(e.to_string()))?),
        ),
        ClaimSpec::Supercoercivity { modulus, .. } => {
            Task::Operator(op(), Claim::Supercoercivity(modulus.build()?))
        }
        ClaimSpec::Averaged { alpha, .. } => Task::Operator(op(), Claim::Averaged(*alpha)),
        ClaimSpec::Lipschitz { constant, .. } => Task::Operator(op(), Claim::Lipschitz(*constant)),
        ClaimSpec::InverseUniformMonotonicity { modulus, .. } => Task::Monotone(
            target_monotone(t, built)?,
            MonotoneClaim::InverseUniformMonotonicity(modulus.build()?),
        ),
        ClaimSpec::UniformContinuity { modulus, .. } => Task::Monotone(
            target_monotone(t, built)?,
            MonotoneClaim::UniformContinuity(modulus.build()?),
        ),
    })
}

fn build_list(specs: &[ModulusSpec]) -> Result<Vec<Modulus>> {
    specs.iter().map(|s| s.build()).collect()
}

/// Σ inputs from the `rates` section, filling gaps from the certificates.
pub fn sigma_inputs(spec: &RatesSpec, built: &[BuiltOperator]) -> Result<SigmaInputs> {
    let m = built.len();
    if m < 2 {
        return Err(Error::Config("rates need a composition of at least two operators".into()));
    }
    let missing = |what: &str, i: usize| {
        Error::Config(format!(
            "operator {i} ({}) certifies no {what}; give it in the rates section",
            built[i].op.name()
        ))
    };
    let chis = match &spec.chis {
        Some(c) => build_list(c)?,
        None => (0..m)
            .map(|i| built[i].op.ssne_modulus().ok_or_else(|| missing("SSNE modulus", i)))
            .collect::<Result<_>>()?,
    };
    let nus = match &spec.nus {
        Some(n) => build_list(n)?,
        None => (1..m)
            .map(|i| {
                built[i]
                    .op
                    .supercoercivity_modulus()
                    .ok_or_else(|| missing("supercoercivity modulus", i))
            })
            .collect::<Result<_>>()?,
    };
    let k = match &spec.k {
        Some(k) => k.build()?,
        None => {
            let bounds: Vec<Modulus> = (0..m)
                .map(|i| {
                    built[i]
                        .op
                        .certificates()
                        .afp_bound
                        .clone()
                        .ok_or_else(|| missing("AFP bound", i))
                })
                .collect::<Result<_>>()?;
            let prov = Provenance::new("max").inputs("of", bounds.iter().map(|b| b.provenance()));
            Modulus::new(prov, move |e| bounds.iter().map(|b| b.eval(e)).fold(0.0, f64::max))
        }
    };
    let inputs = SigmaInputs {
        chis,
        nus,
        k,
        b: spec.b,
        d: spec.d,
    };
    inputs.validate().map_err(|e| Error::Config(e.to_string()))?;
    Ok(inputs)
}

/// Evaluates the rate table requests. Pure computation.
pub fn rate_table(cfg: &ExperimentConfig, built: &[BuiltOperator]) -> Result<Vec<TableRow>> {
    let (grid, requests) = match (&cfg.rate_table, &cfg.rates) {
        (Some(t), _) => (t.epsilon_grid.clone(), t.requests.clone()),
        (None, Some(r)) => (r.epsilon_grid.clone(), vec![RateRequest::Sigma { name: None }]),
        (None, None) => {
            return Err(Error::Config("config has no rate_table or rates section".into()));
        }
    };
    let sigma = match &cfg.rates {
        Some(r) if requests.iter().any(|q| matches!(q, RateRequest::Sigma { .. })) => {
            Some(sigma_inputs(r, built)?)
        }
        _ => None,
    };
    let mut rows = Vec::new();
    for req in &requests {
        let label = req.label();
        for &eps in &grid {
            let value = match req {
                RateRequest::Theta { eta, l1, l2, l3, .. } => {
                    theta_bound(&eta.build()?, *l1, *l2, *l3)?.theta
                }
                RateRequest::Phi { chi, nu, k, .. } => {
                    phi_bound(&chi.build()?, &nu.build()?, &k.build()?, eps)?.phi
                }
                RateRequest::Psi { m, chis, nus, k, .. } => {
                    psi_bound(*m, &build_list(chis)?, &build_list(nus)?, &k.build()?, eps)?
                }
                RateRequest::Gamma { alpha, omega, b, d, .. } => {
                    gamma_rate(eps, *b, *d, &alpha.build()?, &omega.build()?)?
                }
                RateRequest::Sigma { .. } => sigma.as_ref().expect("built above").rate(eps)?,
            };
            rows.push(TableRow {
                quantity: label.clone(),
                epsilon: eps,
                value,
            });
        }
    }
    Ok(rows)
}

/// Columns `quantity,epsilon,value,overflow_flag`.
pub fn write_table_csv<W: Write>(rows: &[TableRow], w: W) -> Result<()> {
    let mut out = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w);
    out.write_record(["quantity", "epsilon", "value", "overflow_flag"])
        .map_err(csv_error)?;
    for r in rows {
        out.write_record([
            r.quantity.clone(),
            csv_real(r.epsilon),
            csv_bound(r.value),
            r.value.is_overflow().to_string(),
        ])
        .map_err(csv_error)?;
    }
    out.flush()?;
    Ok(())
}

/// Output directory: the explicit option, then the config, then the
/// environment, then `ssne-out`.
pub fn output_dir(cfg: &ExperimentConfig, opts: &RunOptions) -> PathBuf {
    if let Some(d) = &opts.out_dir {
        return d.clone();
    }
    if let Some(d) = &cfg.output.dir {
        return PathBuf::from(d);
    }
    match std::env::var_os(OUT_DIR_ENV) {
        Some(d) if !d.is_empty() => PathBuf::from(d),
        _ => PathBuf::from(FALLBACK_OUT_DIR),
    }
}

/// Everything `run` computes, without touching the file system.
pub struct Execution {
    pub report: RunReport,
    pub curve_csv: Option<Vec<u8>>,
    pub rates_csv: Option<Vec<u8>>,
    pub table_csv: Option<Vec<u8>>,
}

pub fn execute(cfg: &ExperimentConfig, opts: &RunOptions) -> Result<Execution> {
    let mut falsifier = cfg.falsifier;
    if let Some(s) = opts.seed {
        falsifier.seed = s;
    }
    if let Some(n) = opts.samples {
        if n == 0 {
            return Err(Error::Config("--samples must be at least 1".into()));
        }
        falsifier.trials = n;
    }
    let settings = falsifier.settings();
    let built = cfg.build_operators()?;
    let composite = ExperimentConfig::composite(&built)?;

    let mut tasks: Vec<Task> = Vec::new();
    if cfg.verify_certificates {
        for b in &built {
            tasks.extend(certificate_claims(&b.op).into_iter().map(|c| Task::Operator(&b.op, c)));
            if let Some(a) = &b.monotone {
                tasks.extend(monotone_claims(a).into_iter().map(|c| Task::Monotone(a, c)));
            }
        }
        if built.len() > 1 {
            tasks.extend(
                certificate_claims(&composite)
                    .into_iter()
                    .map(|c| Task::Operator(&composite, c)),
            );
        }
    }
    for spec in &cfg.claims {
        tasks.push(claim_task(spec, &built, &composite)?);
    }
    let falsification: Vec<SampleReport> = tasks
        .par_iter()
        .map(|t| match t {
            Task::Operator(op, c) => falsify(op, c, &settings),
            Task::Monotone(a, c) => falsify_monotone(a, c, &settings),
        })
        .collect::<Result<_>>()?;

    let mut rates = None;
    let mut curve = None;
    let (mut curve_csv, mut rates_csv) = (None, None);
    if let Some(spec) = &cfg.rates {
        let sigma = sigma_inputs(spec, &built)?;
        let x0 = Vector::new(spec.x0.clone())?;
        let (report, c) = rate_vs_reality_with_curve(&composite, &x0, &sigma, &spec.epsilon_grid, spec.n_max)?;
        let mut buf = Vec::new();
        c.write_csv(&mut buf)?;
        curve_csv = Some(buf);
        let mut buf = Vec::new();
        report.write_csv(&mut buf)?;
        rates_csv = Some(buf);
        curve = Some(CurveSummary {
            file: cfg.output.curve.clone(),
            start: x0,
            n_max: c.n_max(),
            final_displacement: *c.values.last().expect("n_max ≥ 1"),
            nonincreasing: c.is_nonincreasing(1e-12),
        });
        rates = Some(report);
    }
    let table = match cfg.rate_table {
        Some(_) => Some(rate_table(cfg, &built)?),
        None => None,
    };
    let table_csv = match &table {
        Some(rows) => {
            let mut buf = Vec::new();
            write_table_csv(rows, &mut buf)?;
            Some(buf)
        }
        None => None,
    };

    let falsified_claims = falsification.iter().filter(|r| r.falsified()).count();
    let rate_violations = rates.as_ref().map_or(0, |r: &RateReport| {
        r.rows.iter().filter(|row| row.verdict == crate::lab::Verdict::Violation).count()
    });
    let outcome = if falsified_claims + rate_violations == 0 {
        Outcome::Clean
    } else {
        Outcome::Falsified
    };
    let report = RunReport {
        schema_version: cfg.schema_version,
        dimension: cfg.dimension,
        operators: built.iter().map(|b| b.op.name().to_owned()).collect(),
        composite: composite.name().to_owned(),
        falsifier: settings,
        falsification,
        rates,
        curve,
        rate_table: table,
        falsified_claims,
        rate_violations,
        outcome,
    };
    Ok(Execution {
        report,
        curve_csv,
        rates_csv,
        table_csv,
    })
}

/// Writes `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    std::fs::create_dir_all(&dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

/// Runs a config end to end and writes the report and CSV files.
pub fn run(config: &Path, opts: &RunOptions) -> Result<(RunReport, PathBuf)> {
    let cfg = ExperimentConfig::load(config)?;
    let exec = execute(&cfg, opts)?;
    let dir = output_dir(&cfg, opts);
    if let Some(b) = &exec.curve_csv {
        write_atomic(&dir.join(&cfg.output.curve), b)?;
    }
    if let Some(b) = &exec.rates_csv {
        write_atomic(&dir.join(&cfg.output.rates), b)?;
    }
    if let Some(b) = &exec.table_csv {
        write_atomic(&dir.join(&cfg.output.rate_table), b)?;
    }
    write_atomic(&dir.join(&cfg.output.report), exec.report.to_json()?.as_bytes())?;
    Ok((exec.report, dir))
}

/// Tabulates the requested rates and writes the table CSV. Returns the
/// rows and the path written.
pub fn print_rates(config: &Path, opts: &RunOptions) -> Result<(Vec<TableRow>, PathBuf)> {
    let cfg = ExperimentConfig::load(config)?;
    let built = cfg.build_operators()?;
    let rows = rate_table(&cfg, &built)?;
    let mut buf = Vec::new();
    write_table_csv(&rows, &mut buf)?;
    let path = output_dir(&cfg, opts).join(&cfg.output.rate_table);
    write_atomic(&path, &buf)?;
    Ok((rows, path))
}
