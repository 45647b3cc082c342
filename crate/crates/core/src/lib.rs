//! Mittag-Leffler oscillatory integrals in two variables.
//!
//! The crate evaluates E_{α,β}, analyses polynomial phases through their
//! Newton polyhedra, integrates I_{α,β}(λ) = ∫ E_{α,β}(iλf(x)) ψ(x) dx, and
//! measures how those integrals and the sublevel sets {|f| ≤ ε} scale.

pub mod decay_lab;
pub mod error;
pub mod integrator;
pub mod interval;
pub mod ml_special;
pub mod par;
pub mod newton_geometry;
pub mod phase_algebra;

pub use error::{Error, Result};
pub use par::Execution;
