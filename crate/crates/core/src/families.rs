//! Closed-form function families on the unit interval and their norms.
//!
//! * [`CosineMode`] `ψ_n(x) = cos(nπx)`, an eigenfunction of the Neumann
//!   Laplacian, so all three norms (`V`, `H`, `V*`) are explicit.
//! * [`SineMode`] `sin(2πnx)`, which tends weakly to zero while its positive
//!   part tends weakly to the constant `1/π`.
//! * [`Bump`] profiles `φ ∈ H¹₀(0,1)`, `φ ≥ 0`, and their rescalings
//!   [`RescaledBump`] `φ_n(t) = n(n+1) φ(n(n+1)t − n)` supported in
//!   `(1/(n+1), 1/n)`.
//! * [`TestFunctions`] `e ≡ 1` and the trapezoid `v_e = min(4x, 1, 4(1−x))`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quadrature::{composite_gauss_legendre, SUBINTERVALS_PER_PERIOD};

/// `(‖ψ_n‖_V, ‖ψ_n‖_H, ‖ψ_n‖_{V*})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeNorms {
    pub v: f64,
    pub h: f64,
    pub dual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CosineMode {
    n: usize,
}

impl CosineMode {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroMode);
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn freq(&self) -> f64 {
        self.n as f64 * PI
    }

    pub fn value(&self, x: f64) -> f64 {
        (self.freq() * x).cos()
    }

    pub fn derivative(&self, x: f64) -> f64 {
        -self.freq() * (self.freq() * x).sin()
    }

    /// Exact norms. `ψ_n` solves `−z'' + z = (n²π² + 1) z` with Neumann
    /// conditions, so its Riesz representative is `ψ_n / (n²π² + 1)`.
    pub fn exact_norms(&self) -> ModeNorms {
        let lambda = self.freq().powi(2) + 1.0;
        let v = (lambda / 2.0).sqrt();
        ModeNorms {
            v,
            h: std::f64::consts::FRAC_1_SQRT_2,
            dual: v / lambda,
        }
    }

    /// `∫₀¹ (cos nπx)⁺ dx` by composite quadrature; 16n subintervals put
    /// every zero `(2k+1)/(2n)` on a subinterval boundary.
    pub fn positive_lobe_integral(&self) -> f64 {
        let m = self.n * SUBINTERVALS_PER_PERIOD / 2;
        composite_gauss_legendre(|x| self.value(x).max(0.0), 0.0, 1.0, m)
    }
}

/// Closed-form `(‖ψ_n‖_V, ‖ψ_n‖_H, ‖ψ_n‖_{V*})` for `ψ_n = cos(nπx)`.
pub fn exact_mode_norms(n: usize) -> Result<ModeNorms> {
    Ok(CosineMode::new(n)?.exact_norms())
}

/// `∫₀¹ (cos nπx)⁺ dx`, equal to `1/π` for every `n`.
pub fn positive_lobe_integral(n: usize) -> Result<f64> {
    Ok(CosineMode::new(n)?.positive_lobe_integral())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SineMode {
    n: usize,
}

impl SineMode {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroMode);
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn value(&self, x: f64) -> f64 {
        (2.0 * PI * self.n as f64 * x).sin()
    }

    /// `∫₀¹ (sin 2πnx)⁺ dx` with zeros `k/(2n)` on subinterval boundaries.
    pub fn positive_integral(&self) -> f64 {
        let m = self.n * SUBINTERVALS_PER_PERIOD;
        composite_gauss_legendre(|x| self.value(x).max(0.0), 0.0, 1.0, m)
    }

    /// Exact `‖sin(2πnx)‖_{V*}` for `V = H¹(0,1)`.
    ///
    /// The Riesz representative solves `z − z'' = sin(kx)`, `z'(0) = z'(1) = 0`
    /// with `k = 2πn`. It is `sin(kx)/(1+k²)` plus a `cosh`/`sinh` boundary
    /// correction cancelling the slope `k/(1+k²)` at both ends, which gives
    /// `‖·‖² = 1/(2(1+k²)) + 2 tanh(1/2) k²/(1+k²)²`.
    pub fn exact_dual_norm(&self) -> f64 {
        let k = 2.0 * PI * self.n as f64;
        let d = 1.0 + k * k;
        (0.5 / d + 2.0 * 0.5f64.tanh() * k * k / (d * d)).sqrt()
    }
}

/// `‖φ‖_{L¹}`, `‖φ′‖_{L¹}`, `‖φ‖_{L²}`, `‖φ′‖_{L²}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BumpNorms {
    pub l1: f64,
    pub deriv_l1: f64,
    pub l2: f64,
    pub deriv_l2: f64,
}

impl BumpNorms {
    /// Largest relative deviation from `other`, component-wise.
    pub fn max_rel_diff(&self, other: &BumpNorms) -> f64 {
        [
            (self.l1, other.l1),
            (self.deriv_l1, other.deriv_l1),
            (self.l2, other.l2),
            (self.deriv_l2, other.deriv_l2),
        ]
        .iter()
        .map(|(a, b)| ((a - b) / b).abs())
        .fold(0.0, f64::max)
    }
}

/// A nonnegative profile in `H¹₀(0,1)` with known norms.
///
/// `value`/`derivative` are only consulted on `[0, 1]`.
pub trait Bump: Send + Sync {
    fn value(&self, t: f64) -> f64;
    fn derivative(&self, t: f64) -> f64;
    fn norms(&self) -> BumpNorms;
}

/// `φ(t) = sin²(πt)`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SineSquaredBump;

impl Bump for SineSquaredBump {
    fn value(&self, t: f64) -> f64 {
        (PI * t).sin().powi(2)
    }

    fn derivative(&self, t: f64) -> f64 {
        PI * (2.0 * PI * t).sin()
    }

    fn norms(&self) -> BumpNorms {
        BumpNorms {
            l1: 0.5,
            deriv_l1: 2.0,
            l2: (3.0f64 / 8.0).sqrt(),
            deriv_l2: PI / 2f64.sqrt(),
        }
    }
}

pub fn make_default_bump() -> SineSquaredBump {
    SineSquaredBump
}

/// Quadrature norms of `base` on `[0, 1]` with `subintervals` panels.
pub fn quadrature_bump_norms(base: &dyn Bump, subintervals: usize) -> BumpNorms {
    let q = |f: &dyn Fn(f64) -> f64| composite_gauss_legendre(f, 0.0, 1.0, subintervals);
    BumpNorms {
        l1: q(&|t| base.value(t).abs()),
        deriv_l1: q(&|t| base.derivative(t).abs()),
        l2: q(&|t| base.value(t).powi(2)).sqrt(),
        deriv_l2: q(&|t| base.derivative(t).powi(2)).sqrt(),
    }
}

/// `φ_n(t) = n(n+1) φ(n(n+1)t − n)`, zero outside `[1/(n+1), 1/n]`.
#[derive(Clone, Copy)]
pub struct RescaledBump<'a> {
    n: usize,
    base: &'a dyn Bump,
}

impl std::fmt::Debug for RescaledBump<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RescaledBump").field("n", &self.n).finish()
    }
}

pub fn rescale_bump(base: &dyn Bump, n: usize) -> Result<RescaledBump<'_>> {
    if n == 0 {
        return Err(Error::ZeroMode);
    }
    Ok(RescaledBump { n, base })
}

impl<'a> RescaledBump<'a> {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `n(n+1)`
    pub fn scale(&self) -> f64 {
        (self.n * (self.n + 1)) as f64
    }

    /// Closed support `[1/(n+1), 1/n]`.
    pub fn support(&self) -> (f64, f64) {
        (1.0 / (self.n + 1) as f64, 1.0 / self.n as f64)
    }

    fn local(&self, t: f64) -> Option<f64> {
        let s = self.scale() * t - self.n as f64;
        (0.0..=1.0).contains(&s).then_some(s)
    }

    pub fn value(&self, t: f64) -> f64 {
        self.local(t)
            .map_or(0.0, |s| self.scale() * self.base.value(s))
    }

    pub fn derivative(&self, t: f64) -> f64 {
        self.local(t)
            .map_or(0.0, |s| self.scale().powi(2) * self.base.derivative(s))
    }

    /// Norms from the change of variables `s = n(n+1)t − n`.
    pub fn exact_norms(&self) -> BumpNorms {
        let k = self.scale();
        let b = self.base.norms();
        BumpNorms {
            l1: b.l1,
            deriv_l1: k * b.deriv_l1,
            l2: k.sqrt() * b.l2,
            deriv_l2: k.powf(1.5) * b.deriv_l2,
        }
    }

    /// Norms by composite quadrature over the support.
    pub fn quadrature_norms(&self, subintervals: usize) -> BumpNorms {
        let (lo, hi) = self.support();
        let q = |f: &dyn Fn(f64) -> f64| composite_gauss_legendre(f, lo, hi, subintervals);
        BumpNorms {
            l1: q(&|t| self.value(t).abs()),
            deriv_l1: q(&|t| self.derivative(t).abs()),
            l2: q(&|t| self.value(t).powi(2)).sqrt(),
            deriv_l2: q(&|t| self.derivative(t).powi(2)).sqrt(),
        }
    }
}

/// `e ≡ 1` and `v_e(x) = min(4x, 1, 4(1−x))`.
#[derive(Debug, Clone, Copy, Default)]
pub struct TestFunctions;

impl TestFunctions {
    /// `‖v_e − e‖²_H`
    pub const VE_MINUS_E_H_SQ: f64 = 1.0 / 6.0;
    /// `‖v_e‖²_V`
    pub const VE_V_SQ: f64 = 26.0 / 3.0;

    pub fn e(&self, _x: f64) -> f64 {
        1.0
    }

    pub fn v_e(&self, x: f64) -> f64 {
        (4.0 * x).min(1.0).min(4.0 * (1.0 - x))
    }

    pub fn v_e_derivative(&self, x: f64) -> f64 {
        if x < 0.25 {
            4.0
        } else if x > 0.75 {
            -4.0
        } else {
            0.0
        }
    }
}
