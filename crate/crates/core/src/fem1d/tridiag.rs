use crate::error::{Error, Result};

/// Symmetric tridiagonal matrix stored as its diagonal and first
/// off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiag {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl SymTridiag {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(Error::ShapeMismatch {
                expected: diag.len().saturating_sub(1),
                actual: off.len(),
            });
        }
        Ok(Self { diag, off })
    }

    pub fn from_diagonal(diag: Vec<f64>) -> Self {
        let off = vec![0.0; diag.len().saturating_sub(1)];
        Self { diag, off }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off(&self) -> &[f64] {
        &self.off
    }

    /// `alpha * self + beta * other`.
    pub fn combine(&self, alpha: f64, other: &SymTridiag, beta: f64) -> SymTridiag {
        assert_eq!(self.dim(), other.dim());
        let lin = |a: &[f64], b: &[f64]| -> Vec<f64> {
            a.iter().zip(b).map(|(x, y)| alpha * x + beta * y).collect()
        };
        SymTridiag {
            diag: lin(&self.diag, &other.diag),
            off: lin(&self.off, &other.off),
        }
    }

    pub fn row_sums(&self) -> Vec<f64> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i];
                if i > 0 {
                    s += self.off[i - 1];
                }
                if i + 1 < n {
                    s += self.off[i];
                }
                s
            })
            .collect()
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim());
        let n = self.dim();
        let mut y: Vec<f64> = self.diag.iter().zip(x).map(|(d, v)| d * v).collect();
        for i in 0..n - 1 {
            y[i] += self.off[i] * x[i + 1];
            y[i + 1] += self.off[i] * x[i];
        }
        y
    }

    /// `xᵀ S y`.
    pub fn bilinear(&self, x: &[f64], y: &[f64]) -> f64 {
        let sy = self.matvec(y);
        x.iter().zip(&sy).map(|(a, b)| a * b).sum()
    }

    pub fn quad_form(&self, x: &[f64]) -> f64 {
        self.bilinear(x, x)
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.dim();
        let mut a = vec![vec![0.0; n]; n];
        for i in 0..n {
            a[i][i] = self.diag[i];
            if i + 1 < n {
                a[i][i + 1] = self.off[i];
                a[i + 1][i] = self.off[i];
            }
        }
        a
    }

    pub fn factor(&self) -> Result<LdltFactor> {
        LdltFactor::new(self)
    }
}

/// `S = L D Lᵀ` with unit lower-bidiagonal `L`. No pivoting: only valid
/// for positive definite `S`, which is checked pivot by pivot.
#[derive(Debug, Clone)]
pub struct LdltFactor {
    d: Vec<f64>,
    // l[i] is the subdiagonal entry L[i+1][i]
    l: Vec<f64>,
}

impl LdltFactor {
    pub fn new(s: &SymTridiag) -> Result<Self> {
        let n = s.dim();
        let mut d = Vec::with_capacity(n);
        let mut l = Vec::with_capacity(n.saturating_sub(1));
        d.push(s.diag[0]);
        for i in 1..n {
            let prev = d[i - 1];
            if !prev.is_finite() || prev <= 0.0 {
                return Err(Error::NonPositivePivot {
                    row: i - 1,
                    pivot: prev,
                });
            }
            let li = s.off[i - 1] / prev;
            l.push(li);
            d.push(s.diag[i] - li * s.off[i - 1]);
        }
        let last = d[n - 1];
        if !last.is_finite() || last <= 0.0 {
            return Err(Error::NonPositivePivot {
                row: n - 1,
                pivot: last,
            });
        }
        Ok(Self { d, l })
    }

    pub fn dim(&self) -> usize {
        self.d.len()
    }

    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        let n = self.dim();
        if rhs.len() != n {
            return Err(Error::ShapeMismatch {
                expected: n,
                actual: rhs.len(),
            });
        }
        let mut x = rhs.to_vec();
        for i in 1..n {
            x[i] -= self.l[i - 1] * x[i - 1];
        }
        for (xi, di) in x.iter_mut().zip(&self.d) {
            *xi /= di;
        }
        for i in (0..n - 1).rev() {
            x[i] -= self.l[i] * x[i + 1];
        }
        Ok(x)
    }
}

/// Solves `matrix · x = rhs` for symmetric positive definite tridiagonal
/// `matrix`.
pub fn solve_tridiagonal(matrix: &SymTridiag, rhs: &[f64]) -> Result<Vec<f64>> {
    matrix.factor()?.solve(rhs)
}
