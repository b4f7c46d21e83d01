//! Step-function estimate of the classical modulus of an adequate triple
//! `(M, A, B)` over a finite sample of `M`.
//!
//! For `ε > 0` the value is `inf { B(y) : A(y) ≥ ε }`, which is `+∞` when no
//! sample qualifies; at `ε = 0` it is `min(0, inf B)`.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepValue {
    Finite(f64),
    /// Empty infimum.
    Infinite,
}

impl StepValue {
    pub fn finite(self) -> Option<f64> {
        match self {
            StepValue::Finite(v) => Some(v),
            StepValue::Infinite => None,
        }
    }
}

/// Sorted `(a, value)` breakpoints: `value` is the infimum of `B` over samples
/// with `A ≥ a`. Evaluating at `ε` picks the first breakpoint with `a ≥ ε`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalStepModulus {
    breakpoints: Vec<(f64, f64)>,
    at_zero: f64,
}

impl EmpiricalStepModulus {
    pub fn breakpoints(&self) -> &[(f64, f64)] {
        &self.breakpoints
    }

    pub fn eval(&self, eps: f64) -> StepValue {
        if eps <= 0.0 {
            return StepValue::Finite(self.at_zero);
        }
        let idx = self.breakpoints.partition_point(|&(a, _)| a < eps);
        match self.breakpoints.get(idx) {
            Some(&(_, v)) => StepValue::Finite(v),
            None => StepValue::Infinite,
        }
    }
}

/// Builds the step modulus from samples `(A(y), B(y))`.
pub fn empirical_adequate_modulus(samples: &[(f64, f64)]) -> Result<EmpiricalStepModulus> {
    if samples.is_empty() {
        return Err(Error::Empty { what: "sample list" });
    }
    if let Some(&(a, b)) = samples
        .iter()
        .find(|(a, b)| !(a.is_finite() && *a >= 0.0 && b.is_finite()))
    {
        return Err(Error::invalid(
            "samples",
            format!("need finite A ≥ 0 and finite B, got ({a}, {b})"),
        ));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(|x, y| x.0.total_cmp(&y.0));

    // suffix minima, then keep one breakpoint per distinct a
    let mut breakpoints = Vec::with_capacity(sorted.len());
    let mut running = f64::INFINITY;
    for &(a, b) in sorted.iter().rev() {
        running = running.min(b);
        match breakpoints.last_mut() {
            Some((last_a, v)) if *last_a == a => *v = running,
            _ => breakpoints.push((a, running)),
        }
    }
    breakpoints.reverse();

    let min_b = samples.iter().map(|s| s.1).fold(f64::INFINITY, f64::min);
    Ok(EmpiricalStepModulus {
        breakpoints,
        at_zero: min_b.min(0.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Direct evaluation of the defining infimum.
    fn brute(samples: &[(f64, f64)], eps: f64) -> StepValue {
        if eps == 0.0 {
            let m = samples.iter().map(|s| s.1).fold(f64::INFINITY, f64::min);
            return StepValue::Finite(m.min(0.0));
        }
        let m = samples
            .iter()
            .filter(|s| s.0 >= eps)
            .map(|s| s.1)
            .fold(f64::INFINITY, f64::min);
        if m.is_finite() {
            StepValue::Finite(m)
        } else {
            StepValue::Infinite
        }
    }

    #[test]
    fn examples() {
        let s = [(1.0, 5.0), (2.0, 3.0)];
        let m = empirical_adequate_modulus(&s).unwrap();
        assert_eq!(m.eval(1.5), StepValue::Finite(3.0));
        assert_eq!(m.eval(1.5), brute(&s, 1.5));
        assert_eq!(m.eval(2.5), StepValue::Infinite);
        assert_eq!(m.eval(0.0), StepValue::Finite(0.0));
        assert_eq!(m.eval(1.0), StepValue::Finite(3.0));
    }

    #[test]
    fn zero_branch_takes_negative_minimum() {
        let m = empirical_adequate_modulus(&[(1.0, -2.0), (0.5, 4.0)]).unwrap();
        assert_eq!(m.eval(0.0), StepValue::Finite(-2.0));
    }

    #[test]
    fn empty_sample_is_an_error() {
        assert!(matches!(
            empirical_adequate_modulus(&[]),
            Err(Error::Empty { .. })
        ));
    }

    fn sample_strategy() -> impl Strategy<Value = Vec<(f64, f64)>> {
        prop::collection::vec((0.0f64..10.0, -5.0f64..20.0), 1..40)
    }

    proptest! {
        #[test]
        fn matches_brute_force(samples in sample_strategy(), eps in 0.0f64..12.0) {
            let m = empirical_adequate_modulus(&samples).unwrap();
            prop_assert_eq!(m.eval(eps), brute(&samples, eps));
        }

        #[test]
        fn nondecreasing(samples in sample_strategy(), e1 in 0.0f64..12.0, e2 in 0.0f64..12.0) {
            let m = empirical_adequate_modulus(&samples).unwrap();
            let (lo, hi) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
            match (m.eval(lo), m.eval(hi)) {
                (StepValue::Finite(a), StepValue::Finite(b)) => prop_assert!(a <= b),
                (StepValue::Infinite, StepValue::Finite(_)) => prop_assert!(false),
                _ => {}
            }
        }

        #[test]
        fn dominated_by_every_sample(samples in sample_strategy()) {
            let m = empirical_adequate_modulus(&samples).unwrap();
            for &(a, b) in &samples {
                let v = m.eval(a).finite().unwrap();
                prop_assert!(v <= b);
            }
        }
    }
}
