//! First-class moduli and the conversion rules between them.
//!
//! A modulus is a closure together with a [`Provenance`] tag recording the
//! rule that built it and that rule's inputs, so reports can show how a
//! composite bound was assembled.

pub mod calculus;
pub mod empirical;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

pub use calculus::*;
pub use empirical::{empirical_adequate_modulus, EmpiricalStepModulus, StepValue};

/// Constructing rule plus its parameter list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub rule: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<Param>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Param {
    pub name: String,
    pub value: ParamValue,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Number(f64),
    Text(String),
    Modulus(Box<Provenance>),
    Moduli(Vec<Provenance>),
}

impl Provenance {
    pub fn new(rule: impl Into<String>) -> Self {
        Provenance {
            rule: rule.into(),
            params: Vec::new(),
        }
    }

    pub fn number(mut self, name: &str, value: f64) -> Self {
        self.params.push(Param {
            name: name.to_owned(),
            value: ParamValue::Number(value),
        });
        self
    }

    pub fn text(mut self, name: &str, value: impl Into<String>) -> Self {
        self.params.push(Param {
            name: name.to_owned(),
            value: ParamValue::Text(value.into()),
        });
        self
    }

    pub fn input(mut self, name: &str, value: &Provenance) -> Self {
        self.params.push(Param {
            name: name.to_owned(),
            value: ParamValue::Modulus(Box::new(value.clone())),
        });
        self
    }

    pub fn inputs<'a>(mut self, name: &str, values: impl IntoIterator<Item = &'a Provenance>) -> Self {
        self.params.push(Param {
            name: name.to_owned(),
            value: ParamValue::Moduli(values.into_iter().cloned().collect()),
        });
        self
    }

    /// Every rule name in the chain, depth first, this tag first.
    pub fn rules(&self) -> Vec<&str> {
        let mut out = vec![self.rule.as_str()];
        for p in &self.params {
            match &p.value {
                ParamValue::Modulus(inner) => out.extend(inner.rules()),
                ParamValue::Moduli(list) => list.iter().for_each(|m| out.extend(m.rules())),
                _ => {}
            }
        }
        out
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rule)?;
        if self.params.is_empty() {
            return Ok(());
        }
        f.write_str("(")?;
        for (i, p) in self.params.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}=", p.name)?;
            match &p.value {
                ParamValue::Number(v) => write!(f, "{v}")?,
                ParamValue::Text(t) => write!(f, "{t}")?,
                ParamValue::Modulus(m) => write!(f, "{m}")?,
                ParamValue::Moduli(ms) => {
                    f.write_str("[")?;
                    for (j, m) in ms.iter().enumerate() {
                        if j > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{m}")?;
                    }
                    f.write_str("]")?;
                }
            }
        }
        f.write_str(")")
    }
}

type UnaryFn = dyn Fn(f64) -> f64 + Send + Sync;
type BinaryFn = dyn Fn(f64, f64) -> f64 + Send + Sync;

/// A function `(0,∞) → (0,∞)`.
///
/// Houses SSNE moduli χ, moduli of (inverse) uniform monotonicity ψ,
/// supercoercivity moduli ν and η, norm gauges K and the derived
/// quantities of the calculus. Positivity is the caller's contract; use
/// [`Modulus::is_positive_on`] to check it on a grid.
#[derive(Clone)]
pub struct Modulus {
    f: Arc<UnaryFn>,
    provenance: Arc<Provenance>,
}

impl Modulus {
    pub fn new(provenance: Provenance, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Modulus {
            f: Arc::new(f),
            provenance: Arc::new(provenance),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn constant(value: f64) -> Self {
        Modulus::new(Provenance::new("constant").number("value", value), move |_| value)
    }

    /// `x ↦ coef · x^exp`.
    pub fn power(coef: f64, exp: f64) -> Self {
        Modulus::new(
            Provenance::new("power").number("coef", coef).number("exp", exp),
            move |x| {
                if exp == 1.0 {
                    coef * x
                } else if exp == 2.0 {
                    coef * x * x
                } else {
                    coef * x.powf(exp)
                }
            },
        )
    }

    /// Same function, new tag.
    pub fn relabel(&self, provenance: Provenance) -> Self {
        Modulus {
            f: self.f.clone(),
            provenance: Arc::new(provenance),
        }
    }

    pub fn is_positive_on(&self, grid: &[f64]) -> bool {
        grid.iter().all(|&x| self.eval(x) > 0.0)
    }
}

impl fmt::Debug for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Modulus({})", self.provenance)
    }
}

/// An SNE-modulus ω: `(0,∞) × (0,∞) → (0,∞)`, evaluated as `ω(b, ε)`.
#[derive(Clone)]
pub struct SneModulus {
    f: Arc<BinaryFn>,
    provenance: Arc<Provenance>,
}

impl SneModulus {
    pub fn new(
        provenance: Provenance,
        f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        SneModulus {
            f: Arc::new(f),
            provenance: Arc::new(provenance),
        }
    }

    pub fn eval(&self, b: f64, eps: f64) -> f64 {
        (self.f)(b, eps)
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// `(b, ε) ↦ coef · b^b_exp · ε^eps_exp`.
    pub fn monomial(coef: f64, b_exp: f64, eps_exp: f64) -> Self {
        SneModulus::new(
            Provenance::new("monomial")
                .number("coef", coef)
                .number("b_exp", b_exp)
                .number("eps_exp", eps_exp),
            move |b, e| coef * b.powf(b_exp) * e.powf(eps_exp),
        )
    }
}

impl fmt::Debug for SneModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SneModulus({})", self.provenance)
    }
}

/// Gauge `K: (0,∞) → [0,1)` of a contraction for large distances.
#[derive(Clone)]
pub struct CldGauge {
    f: Arc<UnaryFn>,
    provenance: Arc<Provenance>,
}

impl CldGauge {
    pub fn new(provenance: Provenance, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        CldGauge {
            f: Arc::new(f),
            provenance: Arc::new(provenance),
        }
    }

    pub fn constant(value: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&value) {
            return Err(Error::invalid("k", format!("gauge value {value} outside [0, 1)")));
        }
        Ok(CldGauge::new(
            Provenance::new("constant").number("value", value),
            move |_| value,
        ))
    }

    pub fn eval(&self, eps: f64) -> f64 {
        (self.f)(eps)
    }

    /// Evaluates and enforces the `[0, 1)` range.
    pub fn checked_eval(&self, eps: f64) -> Result<f64> {
        let k = self.eval(eps);
        if (0.0..1.0).contains(&k) {
            Ok(k)
        } else {
            Err(Error::invalid(
                "k",
                format!("gauge value {k} at ε = {eps} outside [0, 1)"),
            ))
        }
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }
}

impl fmt::Debug for CldGauge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CldGauge({})", self.provenance)
    }
}
