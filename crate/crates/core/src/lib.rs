//! Quantitative calculus for super strongly nonexpansive (SSNE) mappings.
//!
//! * [`hilbert`]: vectors of ℝⁿ, certified operators (projections, averaged
//!   maps, compositions) and numerically resolved (reflected) resolvents.
//! * [`modulus`]: first-class moduli and every conversion between SNE, SSNE,
//!   CLD, uniform-monotonicity and supercoercivity moduli.
//! * [`rates`]: the rectangularity bound Θ, approximate-fixed-point bounds Φ
//!   and Ψ, and the asymptotic-regularity rates Γ and Σ.
//! * [`lab`]: seeded falsification of modulus claims, constructive
//!   approximate fixed points, and certified-rate-versus-iteration checks.
//! * [`experiment`]: JSON experiment configs and the report writers used by
//!   the `ssne-lab` binary.

pub mod bound;
pub mod error;
pub mod experiment;
pub mod grid;
pub mod hilbert;
pub mod lab;
pub mod modulus;
pub mod rates;
pub mod sampling;

pub use bound::Bound;
pub use error::{Error, Result};
pub use hilbert::{CertifiedOperator, MonotoneMap, Vector};
pub use modulus::{CldGauge, Modulus, SneModulus};
