//! Reusable parabolic experiments: manufactured-solution convergence, the
//! randomized positivity suite and a Crank–Nicolson counter-instance.

use std::f64::consts::PI;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::heat::{
    check_nonnegativity, discrete_negative_part_energy, heat_solve, HeatProblem, SourceTerm,
    ZeroSource,
};
use crate::error::Result;
use crate::fem1d::{MassMode, Mesh1D, NodalFunction};

/// `‖u_h(T) − I_h u(T)‖_H` for `u = e^{−π²t} cos(πx)`, `f = 0`.
pub fn manufactured_error(
    elements: usize,
    num_steps: usize,
    t_final: f64,
    theta: f64,
    mass_mode: MassMode,
) -> Result<f64> {
    let mesh = Arc::new(Mesh1D::new(elements)?);
    let initial = NodalFunction::interpolate(&mesh, |x| (PI * x).cos())?;
    let problem = HeatProblem::new(
        initial,
        Arc::new(ZeroSource),
        t_final,
        num_steps,
        theta,
        mass_mode,
    )?;
    let solution = heat_solve(&problem)?;
    let decay = (-PI * PI * t_final).exp();
    let exact = NodalFunction::interpolate(&mesh, |x| decay * (PI * x).cos())?;
    solution.ops.norm_h(&solution.last().sub(&exact)?)
}

/// `log₂(e_k / e_{k+1})` for errors on successively halved steps.
pub fn observed_orders(errors: &[f64]) -> Vec<f64> {
    errors.windows(2).map(|w| (w[0] / w[1]).log2()).collect()
}

/// Continuous piecewise-linear function through `(x_k, y_k)`, clamped to
/// the end values outside the breakpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinear {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl PiecewiseLinear {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Self {
        assert_eq!(xs.len(), ys.len());
        assert!(xs.windows(2).all(|w| w[0] < w[1]));
        Self { xs, ys }
    }

    /// Random nonnegative profile on `[0,1]` with `2..=6` interior
    /// breakpoints; roughly a third of the values are exactly zero.
    pub fn random_nonnegative(rng: &mut impl Rng) -> Self {
        let k = rng.gen_range(2..=6);
        let mut xs: Vec<f64> = (0..k).map(|_| rng.gen_range(0.0..1.0)).collect();
        xs.push(0.0);
        xs.push(1.0);
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        let ys = xs
            .iter()
            .map(|_| (rng.gen_range(-1.0..2.0_f64)).max(0.0))
            .collect();
        Self::new(xs, ys)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x <= self.xs[0] {
            return self.ys[0];
        }
        if x >= self.xs[n - 1] {
            return self.ys[n - 1];
        }
        let i = self.xs.partition_point(|&p| p <= x) - 1;
        let s = (x - self.xs[i]) / (self.xs[i + 1] - self.xs[i]);
        self.ys[i] + s * (self.ys[i + 1] - self.ys[i])
    }
}

/// `f(t, x) = g(x) (1 + rate·t)` with `g ≥ 0`, `rate ≥ 0`.
#[derive(Debug, Clone)]
struct GrowingProfile {
    profile: PiecewiseLinear,
    rate: f64,
}

impl SourceTerm for GrowingProfile {
    fn sample(&self, t: f64, x: f64) -> f64 {
        self.profile.eval(x) * (1.0 + self.rate * t)
    }
}

/// One randomized nonnegative-data run.
#[derive(Debug, Clone, PartialEq)]
pub struct PositivityOutcome {
    pub index: usize,
    pub elements: usize,
    pub num_steps: usize,
    pub t_final: f64,
    pub min_value: f64,
    pub ledger_max: f64,
}

/// Random problem with nonnegative piecewise-linear `u₀` and `f`.
pub fn random_nonnegative_problem(
    rng: &mut impl Rng,
    theta: f64,
    mass_mode: MassMode,
) -> Result<HeatProblem> {
    let elements = rng.gen_range(4..=128);
    let num_steps = rng.gen_range(2..=200);
    let t_final = rng.gen_range(0.01..2.0);
    let mesh = Arc::new(Mesh1D::new(elements)?);
    let u0 = PiecewiseLinear::random_nonnegative(rng);
    let initial = NodalFunction::interpolate(&mesh, |x| u0.eval(x))?;
    let source: Arc<dyn SourceTerm> = if rng.gen_bool(0.25) {
        Arc::new(ZeroSource)
    } else {
        Arc::new(GrowingProfile {
            profile: PiecewiseLinear::random_nonnegative(rng),
            rate: rng.gen_range(0.0..3.0),
        })
    };
    HeatProblem::new(initial, source, t_final, num_steps, theta, mass_mode)
}

/// `count` seeded instances solved with the given scheme.
pub fn positivity_suite(
    seed: u64,
    count: usize,
    theta: f64,
    mass_mode: MassMode,
) -> Result<Vec<PositivityOutcome>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|index| {
            let problem = random_nonnegative_problem(&mut rng, theta, mass_mode)?;
            let solution = heat_solve(&problem)?;
            Ok(PositivityOutcome {
                index,
                elements: problem.mesh.num_elements(),
                num_steps: problem.num_steps,
                t_final: problem.t_final,
                min_value: check_nonnegativity(&solution).min_value,
                ledger_max: discrete_negative_part_energy(&solution).max,
            })
        })
        .collect()
}

/// First Crank–Nicolson/consistent-mass run from a sweep over spike
/// widths, meshes and step sizes whose minimum drops below `−1e−8`.
pub fn crank_nicolson_violation() -> Result<Option<HeatProblem>> {
    for elements in [16, 32, 64] {
        for steps in [1, 2, 5, 10, 50] {
            for width in [0.05, 0.1, 0.25] {
                let mesh = Arc::new(Mesh1D::new(elements)?);
                let initial = NodalFunction::interpolate(&mesh, |x| {
                    (1.0 - (x - 0.5).abs() / width).max(0.0)
                })?;
                let problem = HeatProblem::new(
                    initial,
                    Arc::new(ZeroSource),
                    0.5,
                    steps,
                    0.5,
                    MassMode::Consistent,
                )?;
                let solution = heat_solve(&problem)?;
                if check_nonnegativity(&solution).min_value < -1e-8 {
                    return Ok(Some(problem));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn piecewise_linear_eval() {
        let p = PiecewiseLinear::new(vec![0.0, 0.5, 1.0], vec![0.0, 2.0, 1.0]);
        assert_eq!(p.eval(0.25), 1.0);
        assert_eq!(p.eval(0.75), 1.5);
        assert_eq!(p.eval(1.0), 1.0);
        assert_eq!(p.eval(-1.0), 0.0);
    }

    #[test]
    fn random_profiles_are_nonnegative() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let p = PiecewiseLinear::random_nonnegative(&mut rng);
            assert!((0..=100).all(|i| p.eval(i as f64 / 100.0) >= 0.0));
        }
    }

    #[test]
    fn implicit_lumped_suite_is_nonnegative() {
        for out in positivity_suite(11, 10, 1.0, MassMode::Lumped).unwrap() {
            assert!(out.min_value >= -1e-12, "{out:?}");
            assert!(out.ledger_max <= 1e-20);
        }
    }

    #[test]
    fn suite_is_deterministic() {
        let a = positivity_suite(5, 4, 1.0, MassMode::Lumped).unwrap();
        let b = positivity_suite(5, 4, 1.0, MassMode::Lumped).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn crank_nicolson_counter_instance_exists() {
        let p = crank_nicolson_violation()
            .unwrap()
            .expect("sweep finds a violation");
        let s = heat_solve(&p).unwrap();
        assert!(check_nonnegativity(&s).min_value < -1e-8);
        assert!(discrete_negative_part_energy(&s).max > 0.0);
    }

    #[test]
    fn temporal_first_order() {
        let errs: Vec<f64> = [10, 20, 40]
            .iter()
            .map(|&k| manufactured_error(256, k, 0.1, 1.0, MassMode::Consistent).unwrap())
            .collect();
        assert!(observed_orders(&errs).iter().all(|&p| p >= 0.9), "{errs:?}");
    }
}
