//! Neumann heat equation `∂ₜu − ∂ₓₓu = f` on `(0,T) × (0,1)` and the
//! discrete counterparts of the positivity argument: testing with the
//! negative part `u⁻ = min(u, 0)` and integrating by parts in time.

mod heat;
mod ibp;
pub mod suite;

pub use heat::{
    check_nonnegativity, discrete_negative_part_energy, heat_solve, HeatProblem, HeatSolution,
    NegativePartEntry, NegativePartLedger, NonnegativityCheck, SourceTerm, ZeroSource,
    NONNEGATIVITY_TOLERANCE,
};
pub use ibp::{ibp_check, FieldFns, IbpResult, SpaceTimeField};
