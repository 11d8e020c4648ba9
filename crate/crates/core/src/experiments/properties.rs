//! Seeded randomized checks of the discrete structure: norm ordering,
//! behaviour of nodal clamping, conservation and reproducibility.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::series::{compute_mode_record, SeriesConfig};
use crate::error::Result;
use crate::families::make_default_bump;
use crate::fem1d::{FemOperators, MassMode, Mesh1D, NodalFunction};
use crate::parabolic::{heat_solve, suite, HeatProblem, ZeroSource};

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub cases: usize,
    /// Largest violation seen; `≤ 0` means every case held.
    pub worst_violation: f64,
    pub holds: bool,
}

impl PropertyOutcome {
    fn from_violations(name: &'static str, violations: impl Iterator<Item = f64>) -> Self {
        let (cases, worst) = violations.fold((0, f64::NEG_INFINITY), |(c, w), v| (c + 1, w.max(v)));
        Self {
            name,
            cases,
            worst_violation: worst,
            holds: worst <= 0.0,
        }
    }
}

fn random_function(rng: &mut ChaCha8Rng) -> Result<NodalFunction> {
    let mesh = Arc::new(Mesh1D::new(rng.gen_range(2..=64))?);
    let scale = 10f64.powf(rng.gen_range(-2.0..2.0));
    let values = (0..mesh.num_nodes())
        .map(|_| scale * rng.gen_range(-1.0..1.0))
        .collect();
    NodalFunction::from_values(mesh, values)
}

/// `‖f‖_{V*} ≤ ‖f‖_H ≤ ‖f‖_V`.
pub fn duality_ordering(seed: u64, cases: usize) -> Result<PropertyOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = (0..cases)
        .map(|_| {
            let f = random_function(&mut rng)?;
            let ops = FemOperators::assemble(f.mesh());
            let (d, h, v) = (ops.dual_norm_value(&f)?, ops.norm_h(&f)?, ops.norm_v(&f)?);
            let slack = 1e-12 * v;
            Ok((d - h - slack).max(h - v - slack))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(PropertyOutcome::from_violations(
        "duality_ordering",
        v.into_iter(),
    ))
}

/// `(f⁺)ᵀ K f⁺ ≤ fᵀ K f`.
pub fn clamp_stiffness_monotone(seed: u64, cases: usize) -> Result<PropertyOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = (0..cases)
        .map(|_| {
            let f = random_function(&mut rng)?;
            let ops = FemOperators::assemble(f.mesh());
            let (before, after) = (
                ops.dirichlet_energy(&f)?,
                ops.dirichlet_energy(&f.positive_part())?,
            );
            Ok(after - before - 1e-12 * before)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(PropertyOutcome::from_violations(
        "clamp_stiffness_monotone",
        v.into_iter(),
    ))
}

/// `‖f⁺ − g⁺‖_{M_L} ≤ ‖f − g‖_{M_L}`.
pub fn clamp_lumped_nonexpansive(seed: u64, cases: usize) -> Result<PropertyOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = (0..cases)
        .map(|_| {
            let f = random_function(&mut rng)?;
            let g = NodalFunction::from_values(
                Arc::clone(f.mesh()),
                (0..f.len()).map(|_| rng.gen_range(-1.0..1.0)).collect(),
            )?;
            let ops = FemOperators::assemble(f.mesh());
            let lhs = ops.norm_lumped(&f.positive_part().sub(&g.positive_part())?)?;
            let rhs = ops.norm_lumped(&f.sub(&g)?)?;
            Ok(lhs - rhs - 1e-14 * rhs)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(PropertyOutcome::from_violations(
        "clamp_lumped_nonexpansive",
        v.into_iter(),
    ))
}

/// Idempotence and positive homogeneity of nodal clamping.
pub fn clamp_algebra(seed: u64, cases: usize) -> Result<PropertyOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = (0..cases)
        .map(|_| {
            let f = random_function(&mut rng)?;
            let lambda = rng.gen_range(0.0..5.0);
            let p = f.positive_part();
            let idem: f64 = if p.positive_part() == p { 0.0 } else { 1.0 };
            let hom = f
                .scaled(lambda)
                .positive_part()
                .values()
                .iter()
                .zip(p.scaled(lambda).values())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            Ok(idem.max(
                hom - 1e-15 * lambda * f.values().iter().fold(0.0, |m: f64, x| m.max(x.abs())),
            ))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(PropertyOutcome::from_violations(
        "clamp_algebra",
        v.into_iter(),
    ))
}

/// Source-free runs keep `Σ (M_L u)ᵢ` fixed to `1e−12`.
pub fn mass_conservation(seed: u64, cases: usize) -> Result<PropertyOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = (0..cases)
        .map(|_| {
            let mesh = Arc::new(Mesh1D::new(rng.gen_range(2..=64))?);
            let u0 = suite::PiecewiseLinear::random_nonnegative(&mut rng);
            let initial = NodalFunction::interpolate(&mesh, |x| u0.eval(x) - 0.5)?;
            let theta = [1.0, 0.5][rng.gen_range(0..2)];
            let mode = [MassMode::Lumped, MassMode::Consistent][rng.gen_range(0..2)];
            let problem = HeatProblem::new(
                initial,
                Arc::new(ZeroSource),
                rng.gen_range(0.01..1.0),
                rng.gen_range(1..=40),
                theta,
                mode,
            )?;
            let s = heat_solve(&problem)?;
            let m0 = s.total_mass[0];
            Ok(s.total_mass
                .iter()
                .map(|m| (m - m0).abs())
                .fold(0.0, f64::max)
                - 1e-12)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(PropertyOutcome::from_violations(
        "mass_conservation",
        v.into_iter(),
    ))
}

/// Repeated seeded computations are bit-identical.
pub fn determinism(seed: u64, cases: usize) -> Result<PropertyOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bump = make_default_bump();
    let cfg = SeriesConfig::default();
    let v = (0..cases)
        .map(|_| {
            let n = rng.gen_range(1..=16);
            let same_record =
                compute_mode_record(n, &bump, &cfg)? == compute_mode_record(n, &bump, &cfg)?;
            let s = rng.gen::<u64>();
            let same_suite = suite::positivity_suite(s, 1, 1.0, MassMode::Lumped)?
                == suite::positivity_suite(s, 1, 1.0, MassMode::Lumped)?;
            Ok(if same_record && same_suite { -1.0 } else { 1.0 })
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(PropertyOutcome::from_violations(
        "determinism",
        v.into_iter(),
    ))
}

/// All property suites with `cases` cases each.
pub fn run_all(seed: u64, cases: usize) -> Result<Vec<PropertyOutcome>> {
    Ok(vec![
        duality_ordering(seed, cases)?,
        clamp_stiffness_monotone(seed.wrapping_add(1), cases)?,
        clamp_lumped_nonexpansive(seed.wrapping_add(2), cases)?,
        clamp_algebra(seed.wrapping_add(3), cases)?,
        mass_conservation(seed.wrapping_add(4), cases)?,
        determinism(seed.wrapping_add(5), cases)?,
    ])
}
