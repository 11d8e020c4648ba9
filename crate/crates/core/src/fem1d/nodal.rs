use std::sync::Arc;

use super::Mesh1D;
use crate::error::{Error, Result};

/// Coefficient vector of a continuous piecewise-linear function.
#[derive(Debug, Clone, PartialEq)]
pub struct NodalFunction {
    mesh: Arc<Mesh1D>,
    values: Vec<f64>,
}

impl NodalFunction {
    pub fn from_values(mesh: Arc<Mesh1D>, values: Vec<f64>) -> Result<Self> {
        if values.len() != mesh.num_nodes() {
            return Err(Error::ShapeMismatch {
                expected: mesh.num_nodes(),
                actual: values.len(),
            });
        }
        Ok(Self { mesh, values })
    }

    pub fn zeros(mesh: Arc<Mesh1D>) -> Self {
        let values = vec![0.0; mesh.num_nodes()];
        Self { mesh, values }
    }

    /// Nodal interpolant `values[i] = f(x_i)`. Non-finite samples are an
    /// error.
    pub fn interpolate(mesh: &Arc<Mesh1D>, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = mesh
            .nodes()
            .iter()
            .map(|&x| {
                let v = f(x);
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(Error::NonFiniteValue { x })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            mesh: Arc::clone(mesh),
            values,
        })
    }

    pub fn mesh(&self) -> &Arc<Mesh1D> {
        &self.mesh
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            mesh: Arc::clone(&self.mesh),
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Nodal clamp `max(u_i, 0)`, i.e. the interpolant of `u⁺`.
    pub fn positive_part(&self) -> Self {
        self.map(|v| v.max(0.0))
    }

    /// `u⁻ = −(−u)⁺ = min(u, 0)`, so that `u = u⁺ + u⁻`.
    pub fn negative_part(&self) -> Self {
        self.map(|v| v.min(0.0))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        self.map(|v| factor * v)
    }

    pub fn sub(&self, other: &NodalFunction) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Self {
            mesh: Arc::clone(&self.mesh),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub(crate) fn check_same_shape(&self, other: &NodalFunction) -> Result<()> {
        if self.values.len() != other.values.len() {
            return Err(Error::ShapeMismatch {
                expected: self.values.len(),
                actual: other.values.len(),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn mesh(m: usize) -> Arc<Mesh1D> {
        Arc::new(Mesh1D::new(m).unwrap())
    }

    #[test]
    fn interpolate_constant_and_identity() {
        let m = mesh(5);
        let one = NodalFunction::interpolate(&m, |_| 1.0).unwrap();
        assert!(one.values().iter().all(|&v| v == 1.0));
        let x = NodalFunction::interpolate(&m, |x| x).unwrap();
        assert_eq!(x.values(), m.nodes());
    }

    #[test]
    fn interpolate_cosine_on_two_elements() {
        let f = NodalFunction::interpolate(&mesh(2), |x| (PI * x).cos()).unwrap();
        assert!((f.values()[0] - 1.0).abs() < 1e-15);
        assert!(f.values()[1].abs() < 1e-15);
        assert!((f.values()[2] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn interpolate_propagates_failure() {
        let r = NodalFunction::interpolate(&mesh(2), |x| 1.0 / (x - 0.5));
        assert!(matches!(r, Err(Error::NonFiniteValue { .. })));
    }

    #[test]
    fn positive_part_examples() {
        let m = mesh(4);
        let neg = NodalFunction::interpolate(&m, |_| -1.0).unwrap();
        assert!(neg.positive_part().values().iter().all(|&v| v == 0.0));

        let pos = NodalFunction::interpolate(&m, |x| x * x).unwrap();
        assert_eq!(pos.positive_part(), pos);

        let c = NodalFunction::interpolate(&m, |x| (PI * x).cos()).unwrap();
        let expected = [1.0, 2f64.sqrt() / 2.0, 0.0, 0.0, 0.0];
        for (a, b) in c.positive_part().values().iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn negative_part_splits() {
        let m = mesh(8);
        let f = NodalFunction::interpolate(&m, |x| (3.0 * PI * x).sin()).unwrap();
        let (p, n) = (f.positive_part(), f.negative_part());
        for i in 0..f.len() {
            assert_eq!(p.values()[i] + n.values()[i], f.values()[i]);
            assert!(n.values()[i] <= 0.0);
        }
    }

    #[test]
    fn shape_mismatch() {
        assert!(NodalFunction::from_values(mesh(3), vec![0.0; 3]).is_err());
        let a = NodalFunction::zeros(mesh(3));
        let b = NodalFunction::zeros(mesh(4));
        assert!(a.sub(&b).is_err());
    }
}
