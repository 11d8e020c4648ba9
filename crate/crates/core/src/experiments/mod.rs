//! Quantitative experiments on the counterexample series
//! `u(t, x) = Σ n⁻³ φ_n(t) ψ_n(x)`.
//!
//! The time supports of the `φ_n` are pairwise disjoint, so every Bochner
//! norm of a partial sum splits into per-mode contributions. [`series`]
//! computes those contributions (the ledger); [`brute`] integrates the
//! assembled field over a space-time grid and must agree with it.

pub mod brute;
pub mod lemmas;
pub mod properties;
pub mod series;

pub use brute::{brute_force_norms, BruteForceNorms, SpaceTimeGrid};
pub use lemmas::{
    lemma21_row, lemma22_lower_bound, lemma23_row, psi_plus_dual_norm, weak_convergence_demo,
    Lemma21Row, Lemma22Outcome, Lemma23Row, WeakDemoRow, LEMMA22_CONSTANT,
};
pub use series::{
    compute_mode_record, series_report, ModeNormRecord, OctaveIncrement, SeriesConfig,
    SeriesExponents, SeriesReport, SeriesVerdict,
};
