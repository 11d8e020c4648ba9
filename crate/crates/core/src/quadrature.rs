//! Gauss–Legendre quadrature on intervals.
//!
//! The composite rule uses 4 points per subinterval, exact for
//! polynomials of degree 7. Integrands with kinks (positive parts,
//! absolute values of derivatives) are integrated accurately when the
//! kinks fall on subinterval boundaries; callers choose subinterval counts
//! that make this so.

/// Minimum subintervals per period of the fastest oscillation.
pub const SUBINTERVALS_PER_PERIOD: usize = 32;

const NODES: [f64; 4] = [
    -0.861_136_311_594_052_6,
    -0.339_981_043_584_856_3,
    0.339_981_043_584_856_3,
    0.861_136_311_594_052_6,
];
const WEIGHTS: [f64; 4] = [
    0.347_854_845_137_453_8,
    0.652_145_154_862_546_1,
    0.652_145_154_862_546_1,
    0.347_854_845_137_453_8,
];

/// 4-point Gauss–Legendre on a single interval.
pub fn gauss_legendre_4(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    NODES
        .iter()
        .zip(WEIGHTS)
        .map(|(x, w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

/// Composite 4-point Gauss–Legendre with `subintervals` equal pieces.
pub fn composite_gauss_legendre(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    subintervals: usize,
) -> f64 {
    let m = subintervals.max(1);
    let width = (b - a) / m as f64;
    (0..m)
        .map(|k| {
            let lo = a + k as f64 * width;
            let hi = if k + 1 == m { b } else { lo + width };
            gauss_legendre_4(&f, lo, hi)
        })
        .sum()
}

/// Adaptive bisection driven by the difference between one 4-point panel
/// and its two halves. `rel_tol` is relative to the magnitude of the
/// single-panel estimate on `[a, b]`. Like any node-based rule it can be
/// fooled by a kink lying between a panel end and its outermost node, so
/// callers split at known kinks.
pub fn adaptive_gauss_legendre(f: impl Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> f64 {
    fn recurse(f: &impl Fn(f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let mid = 0.5 * (a + b);
        let left = gauss_legendre_4(f, a, mid);
        let right = gauss_legendre_4(f, mid, b);
        let refined = left + right;
        if depth == 0 || (refined - whole).abs() <= tol {
            return refined;
        }
        recurse(f, a, mid, left, 0.5 * tol, depth - 1)
            + recurse(f, mid, b, right, 0.5 * tol, depth - 1)
    }
    let whole = gauss_legendre_4(&f, a, b);
    let tol = rel_tol * whole.abs().max(f64::MIN_POSITIVE);
    recurse(&f, a, b, whole, tol, 50)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn exact_for_degree_seven() {
        let p = |x: f64| 3.0 * x.powi(7) - x.powi(4) + 2.0 * x - 1.0;
        // ∫₀² p = 3·2⁸/8 − 2⁵/5 + 4 − 2
        let exact = 96.0 - 6.4 + 4.0 - 2.0;
        assert!((gauss_legendre_4(&p, 0.0, 2.0) - exact).abs() < 1e-12);
    }

    #[test]
    fn weights_sum_to_two() {
        assert!((WEIGHTS.iter().sum::<f64>() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn oscillatory_integrand() {
        // ∫₀¹ sin²(20πx) = 1/2
        let v = composite_gauss_legendre(
            |x| (20.0 * PI * x).sin().powi(2),
            0.0,
            1.0,
            20 * SUBINTERVALS_PER_PERIOD,
        );
        assert!((v - 0.5).abs() < 1e-12);
    }

    #[test]
    fn adaptive_handles_kink() {
        let c = 0.3;
        let v = adaptive_gauss_legendre(|x| (x - c).abs(), 0.0, 1.0, 1e-12);
        let exact = 0.5 * c * c + 0.5 * (1.0 - c) * (1.0 - c);
        assert!((v - exact).abs() < 1e-10, "{v} vs {exact}");
    }
}
