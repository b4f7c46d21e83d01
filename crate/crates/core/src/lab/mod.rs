//! Sampling falsifiers, constructive witnesses and iteration experiments.

mod falsify;
mod iterate;
mod witness;

pub use falsify::*;
pub use iterate::{
    check_rates, iterate_displacement, rate_vs_reality, DisplacementCurve, RateReport, RateRow,
    Verdict,
};
pub(crate) use iterate::{csv_error, rate_vs_reality_with_curve};

pub use witness::{construct_afp_witness, locate_fixed_point, solve_regularized_inclusion, AfpWitness};

use crate::bound::Bound;

/// 17 significant digits in scientific notation.
pub(crate) fn csv_real(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "inf".to_owned()
    }
}

/// Integer-valued rates print as plain integers, everything else as a real.
pub(crate) fn csv_bound(b: Bound) -> String {
    match b {
        Bound::Overflow => "inf".to_owned(),
        Bound::Finite(v) if v.fract() == 0.0 && v.abs() < 1e15 => format!("{v:.0}"),
        Bound::Finite(v) => csv_real(v),
    }
}
