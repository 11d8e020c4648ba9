//! P1 finite elements on the unit interval.
//!
//! The Gelfand triple `V = H¹(0,1) ⊂ H = L²(0,1) ⊂ V*` is represented by
//! three symmetric tridiagonal matrices: the mass matrix `M` (the `H`
//! product), the stiffness matrix `K` (the gradient product) and
//! `A = M + K` (the `V` product). No boundary conditions are imposed, so
//! the discrete spaces match the Neumann setting.
//!
//! For an `H`-element `f` the dual norm is computed from its Riesz
//! representative: solve `A z = M f`, then `‖f‖_{V*}² = zᵀ M f = zᵀ A z`.

mod mesh;
mod nodal;
mod operators;
mod tridiag;

pub use mesh::{Mesh1D, MIN_ELEMENTS_PER_MODE};
pub use nodal::NodalFunction;
pub use operators::{FemOperators, MassMode, RieszRepresentative};
pub use tridiag::{solve_tridiagonal, LdltFactor, SymTridiag};
