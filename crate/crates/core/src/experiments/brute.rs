use std::sync::Arc;

use super::series::SeriesExponents;
use crate::error::{Error, Result};
use crate::families::{rescale_bump, Bump, CosineMode};
use crate::fem1d::{FemOperators, Mesh1D, NodalFunction, MIN_ELEMENTS_PER_MODE};

/// Largest `N` the brute-force oracle accepts.
pub const BRUTE_FORCE_MAX_MODES: usize = 8;

/// Tensor grid on `(0,1)_t × (0,1)_x` with uniform time step `τ`.
///
/// The field itself is sampled on demand at the cell midpoints
/// `t_j + τ/2` rather than stored.
#[derive(Debug, Clone)]
pub struct SpaceTimeGrid {
    ops: FemOperators,
    num_steps: usize,
    samples_per_slab: usize,
}

impl SpaceTimeGrid {
    pub fn new(space_elements: usize, num_steps: usize, samples_per_slab: usize) -> Result<Self> {
        if num_steps == 0 || samples_per_slab == 0 {
            return Err(Error::InvalidParameter {
                name: "num_steps",
                reason: "time steps and samples per slab must be positive".into(),
            });
        }
        let mesh = Arc::new(Mesh1D::new(space_elements)?);
        Ok(Self {
            ops: FemOperators::assemble(&mesh),
            num_steps,
            samples_per_slab,
        })
    }

    /// Grid resolving modes `1..=n_max`: `64 n_max` elements in space and
    /// `τ = 1/(4 n_max(n_max+1) samples_per_slab)`.
    pub fn for_modes(n_max: usize, samples_per_slab: usize) -> Result<Self> {
        let n = n_max.max(1);
        Self::new(
            MIN_ELEMENTS_PER_MODE * n,
            4 * n * (n + 1) * samples_per_slab,
            samples_per_slab,
        )
    }

    pub fn ops(&self) -> &FemOperators {
        &self.ops
    }

    pub fn num_steps(&self) -> usize {
        self.num_steps
    }

    pub fn tau(&self) -> f64 {
        1.0 / self.num_steps as f64
    }

    pub fn samples_per_slab(&self) -> usize {
        self.samples_per_slab
    }

    fn check_resolves(&self, n_max: usize) -> Result<()> {
        self.ops.mesh().check_resolves_mode(n_max)?;
        let required = 1.0 / (4 * n_max * (n_max + 1) * self.samples_per_slab) as f64;
        if self.tau() > required * (1.0 + 1e-12) {
            return Err(Error::TimeUnderResolved {
                n: n_max,
                tau: self.tau(),
                samples: self.samples_per_slab,
            });
        }
        Ok(())
    }
}

/// `(‖u_N‖²_{L²(I;V)}, ‖∂ₜu_N‖²_{L²(I;V*)}, ‖∂ₜu_N⁺‖_{L¹(I;V*)})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BruteForceNorms {
    pub s_v: f64,
    pub s_dual: f64,
    pub s_plus: f64,
}

/// Integrates the assembled partial sum `u_N` over the grid with the
/// midpoint rule in time. Time derivatives use the analytic `φ_n′`. The
/// derivative of `u_N⁺` is formed nodally: `∂ₜu` where `u > 0`, else `0`.
pub fn brute_force_norms(
    n_max: usize,
    bump: &dyn Bump,
    exponents: &SeriesExponents,
    grid: &SpaceTimeGrid,
) -> Result<BruteForceNorms> {
    let zero = BruteForceNorms {
        s_v: 0.0,
        s_dual: 0.0,
        s_plus: 0.0,
    };
    if n_max == 0 {
        return Ok(zero);
    }
    if n_max > BRUTE_FORCE_MAX_MODES {
        return Err(Error::BruteForceTooLarge(n_max));
    }
    grid.check_resolves(n_max)?;

    let ops = grid.ops();
    let mesh = ops.mesh();
    let bumps = (1..=n_max)
        .map(|n| rescale_bump(bump, n))
        .collect::<Result<Vec<_>>>()?;
    let modes = (1..=n_max)
        .map(|n| {
            let c = CosineMode::new(n)?;
            NodalFunction::interpolate(mesh, |x| c.value(x))
        })
        .collect::<Result<Vec<_>>>()?;

    let tau = grid.tau();
    let first_active = 1.0 / (n_max + 1) as f64;
    let nodes = mesh.num_nodes();
    let mut out = zero;

    for j in 0..grid.num_steps() {
        let t = (j as f64 + 0.5) * tau;
        if t < first_active {
            continue;
        }
        let mut u_v = vec![0.0; nodes];
        let mut du_dual = vec![0.0; nodes];
        let mut u_plus = vec![0.0; nodes];
        let mut du_plus = vec![0.0; nodes];
        let mut active = false;
        for (k, (phi, psi)) in bumps.iter().zip(&modes).enumerate() {
            let (p, dp) = (phi.value(t), phi.derivative(t));
            if p == 0.0 && dp == 0.0 {
                continue;
            }
            active = true;
            let n = (k + 1) as f64;
            let (av, ad, ap) = (
                n.powf(-exponents.v),
                n.powf(-exponents.dual),
                n.powf(-exponents.plus),
            );
            for (i, &s) in psi.values().iter().enumerate() {
                u_v[i] += av * p * s;
                du_dual[i] += ad * dp * s;
                u_plus[i] += ap * p * s;
                du_plus[i] += ap * dp * s;
            }
        }
        if !active {
            continue;
        }
        let clamped_derivative: Vec<f64> = u_plus
            .iter()
            .zip(&du_plus)
            .map(|(&u, &du)| if u > 0.0 { du } else { 0.0 })
            .collect();

        let u_v = NodalFunction::from_values(Arc::clone(mesh), u_v)?;
        let du_dual = NodalFunction::from_values(Arc::clone(mesh), du_dual)?;
        let dplus = NodalFunction::from_values(Arc::clone(mesh), clamped_derivative)?;

        out.s_v += tau * ops.norm_v(&u_v)?.powi(2);
        out.s_dual += tau * ops.dual_norm_value(&du_dual)?.powi(2);
        out.s_plus += tau * ops.dual_norm_value(&dplus)?;
    }
    Ok(out)
}
