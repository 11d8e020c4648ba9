use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{LdltFactor, Mesh1D, NodalFunction, SymTridiag};
use crate::error::{Error, Result};

/// Which mass matrix a computation uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum MassMode {
    Consistent,
    Lumped,
}

/// Mass, stiffness and `V`-product matrices of a P1 mesh.
#[derive(Debug, Clone)]
pub struct FemOperators {
    mesh: Arc<Mesh1D>,
    mass: SymTridiag,
    stiffness: SymTridiag,
    v_product: SymTridiag,
    lumped_mass: Vec<f64>,
    v_factor: LdltFactor,
}

/// Solution of the discrete Riesz problem `A z = M f`.
#[derive(Debug, Clone)]
pub struct RieszRepresentative {
    pub source: NodalFunction,
    pub z: NodalFunction,
    /// `√(zᵀ M f)`
    pub dual_norm_value: f64,
    /// `zᵀ A z`; equals `dual_norm_value²` up to solver round-off.
    pub energy: f64,
}

impl FemOperators {
    pub fn assemble(mesh: &Arc<Mesh1D>) -> Self {
        let n = mesh.num_nodes();
        let h = mesh.h();

        let mut m_diag = vec![2.0 * h / 3.0; n];
        m_diag[0] = h / 3.0;
        m_diag[n - 1] = h / 3.0;
        let mass = SymTridiag::new(m_diag, vec![h / 6.0; n - 1]).expect("consistent shapes");

        let mut k_diag = vec![2.0 / h; n];
        k_diag[0] = 1.0 / h;
        k_diag[n - 1] = 1.0 / h;
        let stiffness = SymTridiag::new(k_diag, vec![-1.0 / h; n - 1]).expect("consistent shapes");

        let v_product = mass.combine(1.0, &stiffness, 1.0);
        let lumped_mass = mass.row_sums();
        let v_factor = v_product
            .factor()
            .expect("M + K is positive definite on any valid mesh");

        Self {
            mesh: Arc::clone(mesh),
            mass,
            stiffness,
            v_product,
            lumped_mass,
            v_factor,
        }
    }

    pub fn mesh(&self) -> &Arc<Mesh1D> {
        &self.mesh
    }

    pub fn mass(&self) -> &SymTridiag {
        &self.mass
    }

    pub fn stiffness(&self) -> &SymTridiag {
        &self.stiffness
    }

    pub fn v_product(&self) -> &SymTridiag {
        &self.v_product
    }

    pub fn lumped_mass(&self) -> &[f64] {
        &self.lumped_mass
    }

    /// Mass matrix for `mode`, with the lumped one as a diagonal matrix.
    pub fn mass_matrix(&self, mode: MassMode) -> SymTridiag {
        match mode {
            MassMode::Consistent => self.mass.clone(),
            MassMode::Lumped => SymTridiag::from_diagonal(self.lumped_mass.clone()),
        }
    }

    fn check(&self, f: &NodalFunction) -> Result<()> {
        if f.len() != self.mesh.num_nodes() {
            return Err(Error::ShapeMismatch {
                expected: self.mesh.num_nodes(),
                actual: f.len(),
            });
        }
        Ok(())
    }

    /// `(f, g)_H = fᵀ M g`.
    pub fn inner_h(&self, f: &NodalFunction, g: &NodalFunction) -> Result<f64> {
        self.check(f)?;
        self.check(g)?;
        Ok(self.mass.bilinear(f.values(), g.values()))
    }

    pub fn norm_h(&self, f: &NodalFunction) -> Result<f64> {
        self.check(f)?;
        Ok(self.mass.quad_form(f.values()).max(0.0).sqrt())
    }

    pub fn norm_v(&self, f: &NodalFunction) -> Result<f64> {
        self.check(f)?;
        Ok(self.v_product.quad_form(f.values()).max(0.0).sqrt())
    }

    /// `√(fᵀ M_L f)`.
    pub fn norm_lumped(&self, f: &NodalFunction) -> Result<f64> {
        self.check(f)?;
        let s: f64 = f
            .values()
            .iter()
            .zip(&self.lumped_mass)
            .map(|(v, m)| m * v * v)
            .sum();
        Ok(s.sqrt())
    }

    /// `fᵀ K f`.
    pub fn dirichlet_energy(&self, f: &NodalFunction) -> Result<f64> {
        self.check(f)?;
        Ok(self.stiffness.quad_form(f.values()))
    }

    /// Dual norm of `f ∈ H` in `V*` via its Riesz representative.
    pub fn dual_norm(&self, f: &NodalFunction) -> Result<RieszRepresentative> {
        self.check(f)?;
        let rhs = self.mass.matvec(f.values());
        let z = self.v_factor.solve(&rhs)?;
        let pairing: f64 = z.iter().zip(&rhs).map(|(a, b)| a * b).sum();
        let energy = self.v_product.quad_form(&z);
        Ok(RieszRepresentative {
            source: f.clone(),
            z: NodalFunction::from_values(Arc::clone(&self.mesh), z)?,
            dual_norm_value: pairing.max(0.0).sqrt(),
            energy,
        })
    }

    /// Shorthand for `dual_norm(f)?.dual_norm_value`.
    pub fn dual_norm_value(&self, f: &NodalFunction) -> Result<f64> {
        Ok(self.dual_norm(f)?.dual_norm_value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn ops(m: usize) -> FemOperators {
        FemOperators::assemble(&Arc::new(Mesh1D::new(m).unwrap()))
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn two_element_matrices() {
        let o = ops(2);
        let k = o.stiffness();
        assert!(k
            .diag()
            .iter()
            .zip([2.0, 4.0, 2.0])
            .all(|(a, b)| close(*a, b, 1e-14)));
        assert!(k.off().iter().all(|&v| close(v, -2.0, 1e-14)));
        let m = o.mass();
        assert!(m
            .diag()
            .iter()
            .zip([1.0 / 6.0, 1.0 / 3.0, 1.0 / 6.0])
            .all(|(a, b)| close(*a, b, 1e-15)));
        assert!(m.off().iter().all(|&v| close(v, 1.0 / 12.0, 1e-15)));
    }

    #[test]
    fn structural_identities() {
        for m in [2, 3, 10, 257] {
            let o = ops(m);
            let one = vec![1.0; m + 1];
            assert!(o.stiffness().matvec(&one).iter().all(|v| v.abs() < 1e-9));
            let total: f64 =
                o.mass().diag().iter().sum::<f64>() + 2.0 * o.mass().off().iter().sum::<f64>();
            assert!(close(total, 1.0, 1e-12));
            assert!(o.lumped_mass().iter().all(|&v| v > 0.0));
            assert!(close(o.lumped_mass().iter().sum(), 1.0, 1e-12));
            assert!(o.stiffness().off().iter().all(|&v| v <= 0.0));
        }
    }

    #[test]
    fn constants() {
        let o = ops(16);
        let one = NodalFunction::interpolate(o.mesh(), |_| 1.0).unwrap();
        assert!(close(o.norm_h(&one).unwrap(), 1.0, 1e-13));
        assert!(close(o.norm_v(&one).unwrap(), 1.0, 1e-13));
        let r = o.dual_norm(&one).unwrap();
        assert!(close(r.dual_norm_value, 1.0, 1e-12));
        assert!(r.z.values().iter().all(|v| close(*v, 1.0, 1e-12)));
    }

    #[test]
    fn zero_function() {
        let o = ops(8);
        let z = NodalFunction::zeros(Arc::clone(o.mesh()));
        assert_eq!(o.norm_h(&z).unwrap(), 0.0);
        assert_eq!(o.norm_v(&z).unwrap(), 0.0);
        assert_eq!(o.dual_norm_value(&z).unwrap(), 0.0);
    }

    #[test]
    fn cosine_norms_on_fine_mesh() {
        let o = ops(64);
        let f = NodalFunction::interpolate(o.mesh(), |x| (PI * x).cos()).unwrap();
        let rel = |a: f64, b: f64| ((a - b) / b).abs();
        assert!(rel(o.norm_h(&f).unwrap(), 0.5f64.sqrt()) < 1e-3);
        // ((π²+1)/2)^{1/2}
        assert!(rel(o.norm_v(&f).unwrap(), 2.331_266_2) < 1e-3);
        // (2(π²+1))^{-1/2}
        let r = o.dual_norm(&f).unwrap();
        assert!(rel(r.dual_norm_value, 0.214_475_7) < 1e-3);
        assert!(close(r.energy, r.dual_norm_value.powi(2), 1e-12));
    }

    #[test]
    fn wrong_shape_is_rejected() {
        let o = ops(4);
        let f = NodalFunction::zeros(Arc::new(Mesh1D::new(5).unwrap()));
        assert!(o.norm_h(&f).is_err());
        assert!(o.dual_norm(&f).is_err());
    }
}
