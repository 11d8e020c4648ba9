use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::lemmas::psi_plus_dual_norm;
use crate::error::{Error, Result};
use crate::families::{exact_mode_norms, rescale_bump, Bump};
use crate::fem1d::{FemOperators, Mesh1D, MIN_ELEMENTS_PER_MODE};

/// Amplitude exponents of `Σ n^{−a} φ_n ψ_n`, one per ledger column.
///
/// With all three equal to `a` the columns are the three norms of the
/// same series. The default `a = 3` is the counterexample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesExponents {
    pub v: f64,
    pub dual: f64,
    pub plus: f64,
}

impl Default for SeriesExponents {
    fn default() -> Self {
        Self {
            v: 3.0,
            dual: 3.0,
            plus: 3.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    pub exponents: SeriesExponents,
    pub elements_per_mode: usize,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self {
            exponents: SeriesExponents::default(),
            elements_per_mode: MIN_ELEMENTS_PER_MODE,
        }
    }
}

/// Contributions of mode `n` to the three norms of the partial sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeNormRecord {
    pub n: usize,
    /// `n^{−2a} ‖φ_n‖²_{L²} ‖ψ_n‖²_V`, contribution to `‖u_N‖²_{L²(I;V)}`
    pub c_v: f64,
    /// `n^{−2a} ‖φ_n′‖²_{L²} ‖ψ_n‖²_{V*}`, contribution to `‖∂ₜu_N‖²_{L²(I;V*)}`
    pub c_dual: f64,
    /// `n^{−a} ‖φ_n′‖_{L¹} ‖ψ_n⁺‖_{V*,h}`, contribution to `‖∂ₜu_N⁺‖_{L¹(I;V*)}`
    pub c_plus: f64,
    pub psi_plus_dual: f64,
    pub mesh_elements: usize,
    /// Relative change of `psi_plus_dual` when `h` is halved.
    pub refinement_change: f64,
}

pub fn compute_mode_record(
    n: usize,
    bump: &dyn Bump,
    config: &SeriesConfig,
) -> Result<ModeNormRecord> {
    let phi_n = rescale_bump(bump, n)?.exact_norms();
    let psi = exact_mode_norms(n)?;

    let mesh = Arc::new(Mesh1D::for_mode(n, config.elements_per_mode)?);
    let psi_plus_dual = psi_plus_dual_norm(n, &FemOperators::assemble(&mesh))?;
    let fine = Arc::new(Mesh1D::new(2 * mesh.num_elements())?);
    let psi_plus_fine = psi_plus_dual_norm(n, &FemOperators::assemble(&fine))?;

    let nf = n as f64;
    let e = config.exponents;
    Ok(ModeNormRecord {
        n,
        c_v: nf.powf(-2.0 * e.v) * phi_n.l2.powi(2) * psi.v.powi(2),
        c_dual: nf.powf(-2.0 * e.dual) * phi_n.deriv_l2.powi(2) * psi.dual.powi(2),
        c_plus: nf.powf(-e.plus) * phi_n.deriv_l1 * psi_plus_dual,
        psi_plus_dual,
        mesh_elements: mesh.num_elements(),
        refinement_change: ((psi_plus_fine - psi_plus_dual) / psi_plus_fine).abs(),
    })
}

/// `S_plus(2k) − S_plus(k)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OctaveIncrement {
    pub k: usize,
    pub increment: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesVerdict {
    /// `(S_V(N) − S_V(⌊N/2⌋)) / S_V(N)`
    pub v_last_octave: f64,
    pub dual_last_octave: f64,
    /// `max |increment − mean| / mean` over the octave table.
    pub plus_octave_spread: f64,
    pub v_cauchy: bool,
    pub dual_cauchy: bool,
    pub plus_harmonic: bool,
}

pub const CAUCHY_TOLERANCE: f64 = 0.05;
pub const OCTAVE_SPREAD_TOLERANCE: f64 = 0.25;

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesReport {
    pub records: Vec<ModeNormRecord>,
    /// Partial sums indexed by `N − 1`.
    pub s_v: Vec<f64>,
    pub s_dual: Vec<f64>,
    pub s_plus: Vec<f64>,
    pub octaves: Vec<OctaveIncrement>,
    pub verdict: SeriesVerdict,
}

impl SeriesReport {
    pub fn n_max(&self) -> usize {
        self.records.len()
    }

    /// `(S_V(N), S_dual(N), S_plus(N))` for `1 ≤ N ≤ n_max`.
    pub fn partial_sums(&self, n: usize) -> (f64, f64, f64) {
        (self.s_v[n - 1], self.s_dual[n - 1], self.s_plus[n - 1])
    }

    /// `S_plus(to) / S_plus(from)`.
    pub fn plus_growth(&self, from: usize, to: usize) -> f64 {
        self.s_plus[to - 1] / self.s_plus[from - 1]
    }
}

fn running_sum(values: impl Iterator<Item = f64>) -> Vec<f64> {
    values
        .scan(0.0, |acc, v| {
            *acc += v;
            Some(*acc)
        })
        .collect()
}

/// Ledger for `n = 1..=n_max` with growth verdicts. Records are computed in
/// parallel; sums are reduced sequentially in ascending `n`.
pub fn series_report(n_max: usize, bump: &dyn Bump, config: &SeriesConfig) -> Result<SeriesReport> {
    if n_max < 8 {
        return Err(Error::SeriesTooShort(n_max));
    }
    let records = (1..=n_max)
        .into_par_iter()
        .map(|n| compute_mode_record(n, bump, config))
        .collect::<Result<Vec<_>>>()?;

    let s_v = running_sum(records.iter().map(|r| r.c_v));
    let s_dual = running_sum(records.iter().map(|r| r.c_dual));
    let s_plus = running_sum(records.iter().map(|r| r.c_plus));

    let octaves: Vec<OctaveIncrement> = std::iter::successors(Some(8usize), |k| Some(2 * k))
        .take_while(|k| 2 * k <= n_max)
        .map(|k| OctaveIncrement {
            k,
            increment: s_plus[2 * k - 1] - s_plus[k - 1],
        })
        .collect();

    let last_octave = |s: &[f64]| (s[n_max - 1] - s[n_max / 2 - 1]) / s[n_max - 1];
    let v_last_octave = last_octave(&s_v);
    let dual_last_octave = last_octave(&s_dual);
    let plus_octave_spread = if octaves.is_empty() {
        f64::NAN
    } else {
        let mean = octaves.iter().map(|o| o.increment).sum::<f64>() / octaves.len() as f64;
        octaves
            .iter()
            .map(|o| ((o.increment - mean) / mean).abs())
            .fold(0.0, f64::max)
    };

    let verdict = SeriesVerdict {
        v_last_octave,
        dual_last_octave,
        plus_octave_spread,
        v_cauchy: v_last_octave <= CAUCHY_TOLERANCE,
        dual_cauchy: dual_last_octave <= CAUCHY_TOLERANCE,
        plus_harmonic: plus_octave_spread <= OCTAVE_SPREAD_TOLERANCE,
    };

    Ok(SeriesReport {
        records,
        s_v,
        s_dual,
        s_plus,
        octaves,
        verdict,
    })
}
