use std::f64::consts::FRAC_1_PI;
use std::sync::Arc;

use crate::error::Result;
use crate::families::{
    exact_mode_norms, rescale_bump, Bump, BumpNorms, CosineMode, SineMode, TestFunctions,
};
use crate::fem1d::{FemOperators, Mesh1D, NodalFunction};

/// `1/π − 1/√12 ≈ 0.02963`: lower bound for `(ψ_n⁺, v_e)_H`.
pub const LEMMA22_CONSTANT: f64 = FRAC_1_PI - 0.288_675_134_594_812_9;

/// FEM versus closed-form norms of `ψ_n = cos(nπx)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma21Row {
    pub n: usize,
    pub norm_v_fem: f64,
    pub norm_v_exact: f64,
    pub norm_h_fem: f64,
    pub norm_h_exact: f64,
    pub dual_fem: f64,
    pub dual_exact: f64,
    pub rel_err_max: f64,
}

pub fn lemma21_row(n: usize, elements_per_mode: usize) -> Result<Lemma21Row> {
    let mesh = Arc::new(Mesh1D::for_mode(n, elements_per_mode)?);
    mesh.check_resolves_mode(n)?;
    let ops = FemOperators::assemble(&mesh);
    let mode = CosineMode::new(n)?;
    let psi = NodalFunction::interpolate(&mesh, |x| mode.value(x))?;
    let exact = exact_mode_norms(n)?;
    let norm_v_fem = ops.norm_v(&psi)?;
    let norm_h_fem = ops.norm_h(&psi)?;
    let dual_fem = ops.dual_norm_value(&psi)?;
    let rel = |a: f64, b: f64| ((a - b) / b).abs();
    let rel_err_max = rel(norm_v_fem, exact.v)
        .max(rel(norm_h_fem, exact.h))
        .max(rel(dual_fem, exact.dual));
    Ok(Lemma21Row {
        n,
        norm_v_fem,
        norm_v_exact: exact.v,
        norm_h_fem,
        norm_h_exact: exact.h,
        dual_fem,
        dual_exact: exact.dual,
        rel_err_max,
    })
}

/// Discrete pairing `(ψ_n⁺)ᵀ M v_e` against its lower bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma22Outcome {
    pub n: usize,
    pub pairing: f64,
    /// `1/π − 1/√12 − 10h`
    pub threshold: f64,
    pub bound_holds: bool,
}

pub fn lemma22_lower_bound(n: usize, ops: &FemOperators) -> Result<Lemma22Outcome> {
    let mesh = ops.mesh();
    mesh.check_resolves_mode(n)?;
    let mode = CosineMode::new(n)?;
    let psi_plus = NodalFunction::interpolate(mesh, |x| mode.value(x))?.positive_part();
    let tf = TestFunctions;
    let v_e = NodalFunction::interpolate(mesh, |x| tf.v_e(x))?;
    let pairing = ops.inner_h(&psi_plus, &v_e)?;
    let threshold = LEMMA22_CONSTANT - 10.0 * mesh.h();
    Ok(Lemma22Outcome {
        n,
        pairing,
        threshold,
        bound_holds: pairing >= threshold,
    })
}

/// Discrete `‖ψ_n⁺‖_{V*}` on the mesh of `ops`.
pub fn psi_plus_dual_norm(n: usize, ops: &FemOperators) -> Result<f64> {
    ops.mesh().check_resolves_mode(n)?;
    let mode = CosineMode::new(n)?;
    let psi_plus = NodalFunction::interpolate(ops.mesh(), |x| mode.value(x))?.positive_part();
    ops.dual_norm_value(&psi_plus)
}

/// Quadrature versus exact norms of `φ_n`, plus a support check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma23Row {
    pub n: usize,
    pub quadrature: BumpNorms,
    pub exact: BumpNorms,
    pub rel_err_max: f64,
    pub support: (f64, f64),
    /// `φ_n` vanishes at sample points just outside `[1/(n+1), 1/n]`.
    pub support_ok: bool,
}

pub fn lemma23_row(base: &dyn Bump, n: usize) -> Result<Lemma23Row> {
    let phi_n = rescale_bump(base, n)?;
    let quadrature = phi_n.quadrature_norms(64);
    let exact = phi_n.exact_norms();
    let (lo, hi) = phi_n.support();
    let width = hi - lo;
    let outside = (1..=32).flat_map(|k| {
        let d = width * k as f64 / 32.0;
        [lo - d, hi + d]
    });
    let support_ok = outside.into_iter().all(|t| phi_n.value(t) == 0.0)
        && (1..64).all(|k| phi_n.value(lo + width * k as f64 / 64.0) >= 0.0);
    Ok(Lemma23Row {
        n,
        quadrature,
        exact,
        rel_err_max: quadrature.max_rel_diff(&exact),
        support: (lo, hi),
        support_ok,
    })
}

/// `sin(2πnx)` and its positive part measured in `V*`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakDemoRow {
    pub n: usize,
    pub sin_dual: f64,
    pub sin_dual_exact: f64,
    pub sin_plus_dual: f64,
    pub sin_plus_integral: f64,
}

/// Every `n` in `n_list` must be resolved by `ops` as a mode of index `2n`
/// (`sin(2πnx)` oscillates like `cos(2nπx)`).
pub fn weak_convergence_demo(n_list: &[usize], ops: &FemOperators) -> Result<Vec<WeakDemoRow>> {
    n_list
        .iter()
        .map(|&n| {
            let mode = SineMode::new(n)?;
            ops.mesh().check_resolves_mode(2 * n)?;
            let s = NodalFunction::interpolate(ops.mesh(), |x| mode.value(x))?;
            Ok(WeakDemoRow {
                n,
                sin_dual: ops.dual_norm_value(&s)?,
                sin_dual_exact: mode.exact_dual_norm(),
                sin_plus_dual: ops.dual_norm_value(&s.positive_part())?,
                sin_plus_integral: mode.positive_integral(),
            })
        })
        .collect()
}
