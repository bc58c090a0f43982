//! Numerics for weighted polynomial approximation on [-1, 1].
//!
//! The crate provides Gauss-Jacobi quadrature, the weighted spaces
//! L_{p,alpha} with their norms, an asymmetric generalized translation
//! operator evaluated by quadrature, the modulus of smoothness it induces,
//! best polynomial approximation in the weighted metrics, and an empirical
//! verifier for the two-sided direct/inverse approximation inequality.

pub mod error;
pub mod quadrature;

pub use error::{Error, Result};
pub use quadrature::{QuadratureRule, RuleKind};
