//! Iteration driving and certified-rate-versus-iteration checks.

use super::csv_real;
use crate::bound::Bound;
use crate::error::{Error, Result};
use crate::hilbert::{CertifiedOperator, Vector};
use crate::rates::SigmaInputs;
use serde::{Deserialize, Serialize};
use std::io::Write;

/// Displacements `‖Rⁿx₀ − Rⁿ⁺¹x₀‖` for `n = 0..=n_max`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DisplacementCurve {
    pub start: Vector,
    pub values: Vec<f64>,
}

impl DisplacementCurve {
    pub fn n_max(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    /// First `n` with displacement at most `eps`.
    pub fn first_index_at_most(&self, eps: f64) -> Option<usize> {
        self.values.iter().position(|&v| v <= eps)
    }

    /// True iff no value exceeds its predecessor by more than `slack`.
    pub fn is_nonincreasing(&self, slack: f64) -> bool {
        self.values.windows(2).all(|w| w[1] <= w[0] + slack)
    }

    /// Columns `n,displacement`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
        out.write_record(["n", "displacement"]).map_err(csv_error)?;
        for (n, v) in self.values.iter().enumerate() {
            out.write_record([n.to_string(), csv_real(*v)]).map_err(csv_error)?;
        }
        out.flush()?;
        Ok(())
    }
}

pub(crate) fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Config(format!("csv: {other:?}")),
    }
}

pub fn iterate_displacement(r: &CertifiedOperator, x0: &Vector, n_max: usize) -> Result<DisplacementCurve> {
    if n_max < 1 {
        return Err(Error::invalid("n_max", "must be at least 1"));
    }
    let mut values = Vec::with_capacity(n_max + 1);
    let mut x = r.apply(x0)?;
    let mut prev = x0.clone();
    for _ in 0..=n_max {
        values.push(prev.distance(&x));
        let next = r.apply(&x)?;
        prev = std::mem::replace(&mut x, next);
    }
    Ok(DisplacementCurve {
        start: x0.clone(),
        values,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Every displacement from the certified index up to `n_max` is ≤ ε.
    Verified,
    /// The certified index lies beyond the computed curve.
    CertifiedOnly,
    /// Some displacement at or after the certified index exceeds ε.
    Violation,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RateRow {
    pub epsilon: f64,
    pub certified_rate: Bound,
    pub empirical_index: Option<usize>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RateReport {
    pub n_max: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rate: Option<String>,
    pub rows: Vec<RateRow>,
}

impl RateReport {
    pub fn has_violation(&self) -> bool {
        self.rows.iter().any(|r| r.verdict == Verdict::Violation)
    }

    /// Columns `epsilon,certified_rate,empirical_index,overflow_flag,verdict`.
    /// An unreached ε leaves `empirical_index` empty.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
        out.write_record(["epsilon", "certified_rate", "empirical_index", "overflow_flag", "verdict"])
            .map_err(csv_error)?;
        for row in &self.rows {
            let verdict = match row.verdict {
                Verdict::Verified => "verified",
                Verdict::CertifiedOnly => "certified_only",
                Verdict::Violation => "violation",
            };
            out.write_record([
                csv_real(row.epsilon),
                super::csv_bound(row.certified_rate),
                row.empirical_index.map(|i| i.to_string()).unwrap_or_default(),
                row.certified_rate.is_overflow().to_string(),
                verdict.to_owned(),
            ])
            .map_err(csv_error)?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Compares certified rates with a computed curve. `certified[i]` is the
/// rate claimed for `grid[i]`: every `n ≥ certified[i]` should have
/// displacement at most `grid[i]`.
pub fn check_rates(curve: &DisplacementCurve, grid: &[f64], certified: &[Bound]) -> Result<RateReport> {
    if grid.len() != certified.len() {
        return Err(Error::invalid("certified", "one rate per grid point"));
    }
    let n_max = curve.n_max();
    let rows = grid
        .iter()
        .zip(certified)
        .map(|(&eps, &rate)| {
            let slack = 1e-12 * (1.0 + eps);
            let verdict = match rate {
                Bound::Finite(s) if s <= n_max as f64 => {
                    let from = s.max(0.0) as usize;
                    if curve.values[from..].iter().all(|&v| v <= eps + slack) {
                        Verdict::Verified
                    } else {
                        Verdict::Violation
                    }
                }
                _ => Verdict::CertifiedOnly,
            };
            RateRow {
                epsilon: eps,
                certified_rate: rate,
                empirical_index: curve.first_index_at_most(eps + slack),
                verdict,
            }
        })
        .collect();
    Ok(RateReport {
        n_max,
        rate: None,
        rows,
    })
}

/// Σ per grid point against the iterates of `r` from `x0`, run for `n_max`
/// steps. Requires `b ≥ ‖x0‖` and `d ≥ ‖x0 − Rx0‖`.
pub fn rate_vs_reality(
    r: &CertifiedOperator,
    x0: &Vector,
    sigma: &SigmaInputs,
    grid: &[f64],
    n_max: usize,
) -> Result<RateReport> {
    Ok(rate_vs_reality_with_curve(r, x0, sigma, grid, n_max)?.0)
}

pub(crate) fn rate_vs_reality_with_curve(
    r: &CertifiedOperator,
    x0: &Vector,
    sigma: &SigmaInputs,
    grid: &[f64],
    n_max: usize,
) -> Result<(RateReport, DisplacementCurve)> {
    sigma.validate()?;
    let norm = x0.norm();
    let disp = x0.distance(&r.apply(x0)?);
    if norm > sigma.b || disp > sigma.d {
        return Err(Error::Precondition(format!(
            "start point needs b ≥ ‖x0‖ = {norm} and d ≥ ‖x0 − Rx0‖ = {disp}, got b = {}, d = {}",
            sigma.b, sigma.d
        )));
    }
    let certified = grid.iter().map(|&e| sigma.rate(e)).collect::<Result<Vec<_>>>()?;
    let curve = iterate_displacement(r, x0, n_max)?;
    let mut report = check_rates(&curve, grid, &certified)?;
    report.rate = Some(sigma.provenance().to_string());
    Ok((report, curve))
}
