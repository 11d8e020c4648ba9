use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fem1d::{FemOperators, MassMode, Mesh1D, NodalFunction, SymTridiag};

/// Smallest nodal value still counted as nonnegative.
pub const NONNEGATIVITY_TOLERANCE: f64 = 1e-12;

/// Right-hand side `f(t, x)`, sampled at mesh nodes.
pub trait SourceTerm: Send + Sync {
    fn sample(&self, t: f64, x: f64) -> f64;
}

impl<F> SourceTerm for F
where
    F: Fn(f64, f64) -> f64 + Send + Sync,
{
    fn sample(&self, t: f64, x: f64) -> f64 {
        self(t, x)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ZeroSource;

impl SourceTerm for ZeroSource {
    fn sample(&self, _t: f64, _x: f64) -> f64 {
        0.0
    }
}

#[derive(Clone)]
pub struct HeatProblem {
    pub mesh: Arc<Mesh1D>,
    pub t_final: f64,
    pub num_steps: usize,
    pub theta: f64,
    pub initial: NodalFunction,
    pub source: Arc<dyn SourceTerm>,
    pub mass_mode: MassMode,
}

impl fmt::Debug for HeatProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HeatProblem")
            .field("elements", &self.mesh.num_elements())
            .field("t_final", &self.t_final)
            .field("num_steps", &self.num_steps)
            .field("theta", &self.theta)
            .field("mass_mode", &self.mass_mode)
            .finish_non_exhaustive()
    }
}

impl HeatProblem {
    pub fn new(
        initial: NodalFunction,
        source: Arc<dyn SourceTerm>,
        t_final: f64,
        num_steps: usize,
        theta: f64,
        mass_mode: MassMode,
    ) -> Result<Self> {
        let problem = Self {
            mesh: Arc::clone(initial.mesh()),
            t_final,
            num_steps,
            theta,
            initial,
            source,
            mass_mode,
        };
        problem.validate()?;
        Ok(problem)
    }

    pub fn tau(&self) -> f64 {
        self.t_final / self.num_steps as f64
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_final > 0.0 && self.t_final.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "t_final",
                reason: format!("must be positive, got {}", self.t_final),
            });
        }
        if self.num_steps == 0 {
            return Err(Error::InvalidParameter {
                name: "num_steps",
                reason: "must be positive".into(),
            });
        }
        if !(0.0..=1.0).contains(&self.theta) {
            return Err(Error::InvalidParameter {
                name: "theta",
                reason: format!("must lie in [0, 1], got {}", self.theta),
            });
        }
        if self.initial.len() != self.mesh.num_nodes() {
            return Err(Error::ShapeMismatch {
                expected: self.mesh.num_nodes(),
                actual: self.initial.len(),
            });
        }
        Ok(())
    }
}

/// Discrete trajectory of a [`HeatProblem`].
#[derive(Debug, Clone)]
pub struct HeatSolution {
    pub ops: FemOperators,
    pub mass_mode: MassMode,
    pub tau: f64,
    /// `u^k` at `t_k = kτ`, `k = 0..=num_steps`.
    pub snapshots: Vec<NodalFunction>,
    /// Source sampled at `t_k + θτ` for step `k → k+1`.
    pub sources: Vec<NodalFunction>,
    pub min_nodal: Vec<f64>,
    /// `‖u^k‖²_H` with the consistent mass matrix.
    pub energy: Vec<f64>,
    /// `Σᵢ (M_L u^k)ᵢ`
    pub total_mass: Vec<f64>,
}

impl HeatSolution {
    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.snapshots.len()).map(|k| k as f64 * self.tau)
    }

    pub fn last(&self) -> &NodalFunction {
        self.snapshots
            .last()
            .expect("at least the initial snapshot")
    }
}

/// θ-scheme
/// `(M̃/τ + θK) u^{k+1} = (M̃/τ − (1−θ)K) u^k + M̃ f(t_k + θτ)`
/// with natural Neumann conditions.
pub fn heat_solve(problem: &HeatProblem) -> Result<HeatSolution> {
    problem.validate()?;
    let ops = FemOperators::assemble(&problem.mesh);
    let mass = ops.mass_matrix(problem.mass_mode);
    let tau = problem.tau();
    let theta = problem.theta;

    let lhs = mass.combine(1.0 / tau, ops.stiffness(), theta);
    let explicit: SymTridiag = mass.combine(1.0 / tau, ops.stiffness(), -(1.0 - theta));
    let factor = lhs.factor()?;

    let mut snapshots = Vec::with_capacity(problem.num_steps + 1);
    let mut sources = Vec::with_capacity(problem.num_steps);
    snapshots.push(problem.initial.clone());

    for k in 0..problem.num_steps {
        let t = (k as f64 + theta) * tau;
        let f = NodalFunction::interpolate(&problem.mesh, |x| problem.source.sample(t, x))
            .map_err(|_| Error::NonFiniteSource { t })?;
        let u = snapshots.last().expect("nonempty").values();
        let mut rhs = explicit.matvec(u);
        for (r, mf) in rhs.iter_mut().zip(mass.matvec(f.values())) {
            *r += mf;
        }
        let next = factor.solve(&rhs)?;
        snapshots.push(NodalFunction::from_values(Arc::clone(&problem.mesh), next)?);
        sources.push(f);
    }

    let min_nodal = snapshots.iter().map(NodalFunction::min).collect();
    let energy = snapshots
        .iter()
        .map(|u| ops.mass().quad_form(u.values()))
        .collect();
    let total_mass = snapshots
        .iter()
        .map(|u| {
            u.values()
                .iter()
                .zip(ops.lumped_mass())
                .map(|(a, m)| a * m)
                .sum()
        })
        .collect();

    Ok(HeatSolution {
        ops,
        mass_mode: problem.mass_mode,
        tau,
        snapshots,
        sources,
        min_nodal,
        energy,
        total_mass,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonnegativityCheck {
    pub min_value: f64,
    pub holds: bool,
}

pub fn check_nonnegativity(solution: &HeatSolution) -> NonnegativityCheck {
    let min_value = solution
        .min_nodal
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    NonnegativityCheck {
        min_value,
        holds: min_value >= -NONNEGATIVITY_TOLERANCE,
    }
}

/// Terms of the negative-part energy chain at `t_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegativePartEntry {
    pub step: usize,
    pub t: f64,
    /// `Σ_{1≤j≤k} τ (f^{j−1})ᵀ M̃ u⁻_j`, nonpositive for `f ≥ 0`.
    pub source_pairing: f64,
    /// `½ ‖u⁻(t_k)‖²`
    pub half_norm_sq: f64,
    /// `Σ_{1≤j≤k} τ (u⁻_j)ᵀ K u⁻_j`
    pub dissipation: f64,
    /// `half_norm_sq + dissipation`
    pub ledger: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NegativePartLedger {
    pub entries: Vec<NegativePartEntry>,
    pub max: f64,
}

/// Negative-part ledger of a trajectory, all `H` norms taken with the
/// scheme's mass matrix.
pub fn discrete_negative_part_energy(solution: &HeatSolution) -> NegativePartLedger {
    let mass = solution.ops.mass_matrix(solution.mass_mode);
    let stiffness = solution.ops.stiffness();
    let tau = solution.tau;

    let mut entries = Vec::with_capacity(solution.snapshots.len());
    let mut dissipation = 0.0;
    let mut source_pairing = 0.0;
    for (k, u) in solution.snapshots.iter().enumerate() {
        let neg = u.negative_part();
        if k > 0 {
            dissipation += tau * stiffness.quad_form(neg.values());
            source_pairing += tau * mass.bilinear(solution.sources[k - 1].values(), neg.values());
        }
        let half_norm_sq = 0.5 * mass.quad_form(neg.values());
        entries.push(NegativePartEntry {
            step: k,
            t: k as f64 * tau,
            source_pairing,
            half_norm_sq,
            dissipation,
            ledger: half_norm_sq + dissipation,
        });
    }
    let max = entries.iter().map(|e| e.ledger).fold(0.0, f64::max);
    NegativePartLedger { entries, max }
}
