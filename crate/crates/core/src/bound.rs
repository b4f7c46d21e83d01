//! Extended reals for certified bounds.
//!
//! Certified rates of this kind are routinely astronomical.
//! Any evaluation that leaves the double range (or hits an `inf - inf`
//! style indeterminate form) is reported as [`Bound::Overflow`] rather than
//! panicking or silently producing NaN.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Bound {
    Finite(f64),
    /// The value exceeds the double range.
    Overflow,
}

impl Bound {
    /// Wraps a raw double, mapping every non-finite value to `Overflow`.
    pub fn from_f64(value: f64) -> Self {
        if value.is_finite() {
            Bound::Finite(value)
        } else {
            Bound::Overflow
        }
    }

    pub fn is_overflow(self) -> bool {
        matches!(self, Bound::Overflow)
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Bound::Finite(v) => Some(v),
            Bound::Overflow => None,
        }
    }

    /// The value as a double, `+inf` for overflow.
    pub fn to_f64(self) -> f64 {
        match self {
            Bound::Finite(v) => v,
            Bound::Overflow => f64::INFINITY,
        }
    }

    /// `true` when an index `n` is covered by this bound, i.e. `n >= self`
    /// fails only if the bound is finite and larger than `n`.
    pub fn admits_index(self, n: usize) -> bool {
        match self {
            Bound::Finite(v) => (n as f64) >= v,
            Bound::Overflow => false,
        }
    }
}

impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        self.to_f64().partial_cmp(&other.to_f64())
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(v) => write!(f, "{v}"),
            Bound::Overflow => f.write_str("exceeds double range"),
        }
    }
}

// JSON: finite values are plain numbers, overflow is the string "inf".
impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Bound::Finite(v) => serializer.serialize_f64(*v),
            Bound::Overflow => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Bound {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Text(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Num(v) => Ok(Bound::from_f64(v)),
            Repr::Text(s) if s == "inf" => Ok(Bound::Overflow),
            Repr::Text(s) => Err(serde::de::Error::custom(format!("invalid bound `{s}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn non_finite_values_become_overflow() {
        assert_eq!(Bound::from_f64(f64::INFINITY), Bound::Overflow);
        assert_eq!(Bound::from_f64(f64::NAN), Bound::Overflow);
        assert_eq!(Bound::from_f64(2.5), Bound::Finite(2.5));
    }

    #[test]
    fn json_uses_inf_marker() {
        let text = serde_json::to_string(&[Bound::Finite(2610.0), Bound::Overflow]).unwrap();
        assert_eq!(text, r#"[2610.0,"inf"]"#);
        let back: Vec<Bound> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, vec![Bound::Finite(2610.0), Bound::Overflow]);
    }

    #[test]
    fn admits_index() {
        assert!(Bound::Finite(3.0).admits_index(3));
        assert!(!Bound::Finite(3.0).admits_index(2));
        assert!(!Bound::Overflow.admits_index(usize::MAX));
    }
}
