use crate::error::{Error, Result};
use crate::fem1d::{FemOperators, MassMode, NodalFunction};

/// A space-time field with an analytic time derivative.
pub trait SpaceTimeField {
    fn value(&self, t: f64, x: f64) -> f64;
    fn time_derivative(&self, t: f64, x: f64) -> f64;
}

/// Field given by a pair of closures `(u, ∂ₜu)`.
pub struct FieldFns<U, D>(pub U, pub D);

impl<U, D> SpaceTimeField for FieldFns<U, D>
where
    U: Fn(f64, f64) -> f64,
    D: Fn(f64, f64) -> f64,
{
    fn value(&self, t: f64, x: f64) -> f64 {
        (self.0)(t, x)
    }

    fn time_derivative(&self, t: f64, x: f64) -> f64 {
        (self.1)(t, x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IbpResult {
    /// `Σ_j τ (∂ₜu(t_{j+½}))ᵀ M u⁺(t_{j+½})`
    pub lhs: f64,
    /// `½‖u⁺(T)‖² − ½‖u⁺(0)‖²`
    pub rhs: f64,
    pub residual: f64,
}

/// Compares `∫₀ᵀ ⟨∂ₜu, u⁺⟩ dt` (midpoint rule, `T/τ` cells) with
/// `½‖u⁺(T)‖² − ½‖u⁺(0)‖²`.
///
/// With [`MassMode::Lumped`] the pairing is diagonal, so the nodal chain
/// rule `∂ₜ(u⁺)ᵢ = 1[uᵢ > 0] ∂ₜuᵢ` makes the semi-discrete identity exact
/// and the residual is pure time-quadrature error. The consistent mass
/// couples neighbouring nodes across the zero set and leaves an `O(h)`
/// spatial defect for fields that change sign in `x`.
pub fn ibp_check(
    field: &dyn SpaceTimeField,
    ops: &FemOperators,
    tau: f64,
    t_final: f64,
    mass_mode: MassMode,
) -> Result<IbpResult> {
    if tau.is_nan() || tau <= 0.0 || t_final.is_nan() || t_final <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "tau",
            reason: format!("tau = {tau} and T = {t_final} must be positive"),
        });
    }
    let cells = (t_final / tau).round();
    if cells < 1.0 || ((cells * tau - t_final) / t_final).abs() > 1e-9 {
        return Err(Error::InvalidParameter {
            name: "tau",
            reason: format!("T = {t_final} is not a whole number of steps of {tau}"),
        });
    }
    let cells = cells as usize;
    let step = t_final / cells as f64;
    let mass = ops.mass_matrix(mass_mode);
    let mesh = ops.mesh();

    let mut lhs = 0.0;
    for j in 0..cells {
        let t = (j as f64 + 0.5) * step;
        let du = NodalFunction::interpolate(mesh, |x| field.time_derivative(t, x))?;
        let plus = NodalFunction::interpolate(mesh, |x| field.value(t, x))?.positive_part();
        lhs += step * mass.bilinear(du.values(), plus.values());
    }
    let half_sq = |t: f64| -> Result<f64> {
        let plus = NodalFunction::interpolate(mesh, |x| field.value(t, x))?.positive_part();
        Ok(0.5 * mass.quad_form(plus.values()))
    };
    let rhs = half_sq(t_final)? - half_sq(0.0)?;
    Ok(IbpResult {
        lhs,
        rhs,
        residual: (lhs - rhs).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fem1d::Mesh1D;
    use std::f64::consts::PI;
    use std::sync::Arc;

    fn ops(m: usize) -> FemOperators {
        FemOperators::assemble(&Arc::new(Mesh1D::new(m).unwrap()))
    }

    #[test]
    fn ramp_through_zero() {
        let f = FieldFns(|t: f64, _x: f64| 2.0 * t - 1.0, |_t: f64, _x: f64| 2.0);
        for mode in [MassMode::Consistent, MassMode::Lumped] {
            let r = ibp_check(&f, &ops(8), 1e-4, 1.0, mode).unwrap();
            assert!((r.lhs - 0.5).abs() < 1e-9);
            assert!((r.rhs - 0.5).abs() < 1e-12);
            assert!(r.residual <= 1e-6);
        }
    }

    #[test]
    fn ramp_with_kink_mid_cell() {
        // odd cell count puts t = 1/2 at a cell midpoint; the kink cell
        // contributes τ²/2 of error
        let f = FieldFns(|t: f64, _x: f64| 2.0 * t - 1.0, |_t: f64, _x: f64| 2.0);
        let tau = 1.0 / 101.0;
        let r = ibp_check(&f, &ops(4), tau, 1.0, MassMode::Lumped).unwrap();
        assert!((r.residual - 0.5 * tau * tau).abs() < 1e-12);
    }

    #[test]
    fn nonpositive_field() {
        let f = FieldFns(|t: f64, _x: f64| -1.0 - t, |_t: f64, _x: f64| -1.0);
        let r = ibp_check(&f, &ops(8), 1e-3, 1.0, MassMode::Consistent).unwrap();
        assert_eq!((r.lhs, r.rhs, r.residual), (0.0, 0.0, 0.0));
    }

    #[test]
    fn positive_field_reduces_to_classical_formula() {
        let f = FieldFns(
            |t: f64, x: f64| 2.0 + t * t * (PI * x).cos(),
            |t: f64, x: f64| 2.0 * t * (PI * x).cos(),
        );
        let o = ops(32);
        let r = ibp_check(&f, &o, 1e-3, 1.0, MassMode::Consistent).unwrap();
        let at = |t: f64| NodalFunction::interpolate(o.mesh(), |x| f.value(t, x)).unwrap();
        let classical =
            0.5 * o.norm_h(&at(1.0)).unwrap().powi(2) - 0.5 * o.norm_h(&at(0.0)).unwrap().powi(2);
        assert!((r.rhs - classical).abs() < 1e-14);
        assert!(r.residual < 1e-6);
    }

    #[test]
    fn first_order_or_better_in_time() {
        // sign change along the curve t = 0.37 + 0.2 cos(πx)
        let f = FieldFns(
            |t: f64, x: f64| t - 0.37 - 0.2 * (PI * x).cos(),
            |_t: f64, _x: f64| 1.0,
        );
        let o = ops(64);
        let res: Vec<f64> = [1e-2, 1e-3, 1e-4]
            .iter()
            .map(|&tau| {
                ibp_check(&f, &o, tau, 1.0, MassMode::Lumped)
                    .unwrap()
                    .residual
            })
            .collect();
        for w in res.windows(2) {
            let order = (w[0] / w[1]).log10();
            assert!(order >= 0.9, "{res:?}");
        }
    }

    #[test]
    fn mismatched_sampling() {
        let f = FieldFns(|t: f64, _x: f64| t, |_t: f64, _x: f64| 1.0);
        assert!(ibp_check(&f, &ops(4), 0.3, 1.0, MassMode::Lumped).is_err());
        assert!(ibp_check(&f, &ops(4), 0.0, 1.0, MassMode::Lumped).is_err());
        assert!(ibp_check(&f, &ops(4), 2.0, 1.0, MassMode::Lumped).is_err());
    }
}
