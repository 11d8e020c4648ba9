//! Finite-element and quadrature machinery for studying the positive part
//! `u⁺ = max(u, 0)` of functions in the parabolic solution space
//! `W = { u ∈ L²(I; H¹) : ∂ₜu ∈ L²(I; (H¹)*) }` on `Ω = I = (0, 1)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`fem1d`]: P1 discretisation of `H¹ ⊂ L² ⊂ (H¹)*`, the discrete dual
//!   norm via a Riesz solve, and nodal clamping.
//! * [`quadrature`]: composite and adaptive Gauss–Legendre rules.
//! * [`families`]: the cosine modes, rescaled time bumps and test functions
//!   with their closed-form norms.
//! * [`experiments`]: per-mode norm ledger, the series report and its
//!   space-time brute-force oracle.
//! * [`parabolic`]: θ-scheme for the Neumann heat equation, positivity and
//!   integration-by-parts checks.
//! * [`cli`]: configuration, CSV output and the check summary.

pub mod cli;
pub mod error;
pub mod experiments;
pub mod families;
pub mod fem1d;
pub mod parabolic;
pub mod quadrature;

pub use error::{Error, Result};
