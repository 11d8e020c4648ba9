use crate::error::{Error, Result};

/// Fewest elements per unit of mode index that count as resolving
/// `cos(nπx)`: `h ≤ 1/(64 n)`.
pub const MIN_ELEMENTS_PER_MODE: usize = 64;

/// Uniform mesh of `(0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh1D {
    num_elements: usize,
    h: f64,
    nodes: Vec<f64>,
}

impl Mesh1D {
    pub fn new(num_elements: usize) -> Result<Self> {
        if num_elements < 2 {
            return Err(Error::MeshTooCoarse(num_elements));
        }
        let h = 1.0 / num_elements as f64;
        // i / M rather than i * h keeps the last node exactly at 1.
        let nodes = (0..=num_elements)
            .map(|i| i as f64 / num_elements as f64)
            .collect();
        Ok(Self {
            num_elements,
            h,
            nodes,
        })
    }

    /// Mesh with `elements_per_mode * n` elements.
    pub fn for_mode(n: usize, elements_per_mode: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroMode);
        }
        Self::new(n * elements_per_mode)
    }

    pub fn num_elements(&self) -> usize {
        self.num_elements
    }

    pub fn num_nodes(&self) -> usize {
        self.num_elements + 1
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Errors unless `h ≤ 1/(64 n)`.
    pub fn check_resolves_mode(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::ZeroMode);
        }
        if self.num_elements < MIN_ELEMENTS_PER_MODE * n {
            return Err(Error::UnderResolved {
                n,
                h: self.h,
                required: 1.0 / (MIN_ELEMENTS_PER_MODE * n) as f64,
            });
        }
        Ok(())
    }
}
