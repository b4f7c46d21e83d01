//! Finite-dimensional stand-in for the Hilbert space: vectors, certified
//! operators, and (reflected) resolvents of single-valued monotone maps.
//!
//! Everything here is immutable after construction; evaluation is pure and
//! may be shared across threads.

mod monotone;
mod operator;
mod vector;

pub use monotone::{reflected_resolvent, resolvent, solve_resolvent, MonotoneMap, SolverSettings};
pub use operator::{
    compose, identity, make_averaged, project_ball, project_box, project_halfspace,
    scaled_identity, Certificates, CertifiedOperator,
};
pub use vector::{inner, Vector};
