use std::f64::consts::PI;

use crate::error::{invalid, Result};
use crate::numerics::equispaced_points;

#[derive(Debug, Clone, PartialEq)]
pub struct LemmaTReport {
    pub r: usize,
    pub interval: (f64, f64),
    /// Sup error of the Chebyshev-zero interpolant on the fine grid.
    pub error: f64,
    /// `(2/r!) ((b-a)/4)^r ||f^{(r)}||`.
    pub bound: f64,
    pub derivative_sup: f64,
    pub within_bound: bool,
    pub within_factor_two: bool,
}

/// Interpolates `f` by a polynomial of degree `r - 1` at the zeros of the
/// Chebyshev polynomial `T_r` mapped to `[a, b]`, measures the sup error on a
/// `fine`-point grid and compares it with the best-approximation bound
/// `E_{r-1}(f) <= (2/r!) ((b-a)/4)^r ||f^{(r)}||_[a,b]`.
///
/// `deriv_r` is the `r`-th derivative of `f`; its sup is taken on the same
/// grid.
pub fn lemma_t_check(
    f: impl Fn(f64) -> f64,
    deriv_r: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    r: usize,
    fine: usize,
) -> Result<LemmaTReport> {
    if r == 0 {
        return invalid("lemma_t_check needs r >= 1");
    }
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return invalid("need a finite interval with a < b");
    }
    if fine < 2 {
        return invalid("fine grid needs at least two points");
    }
    let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
    let angles: Vec<f64> = (0..r).map(|j| (2 * j + 1) as f64 * PI / (2 * r) as f64).collect();
    let nodes: Vec<f64> = angles.iter().map(|t| mid + half * t.cos()).collect();
    let weights: Vec<f64> = angles
        .iter()
        .enumerate()
        .map(|(j, t)| if j % 2 == 0 { t.sin() } else { -t.sin() })
        .collect();
    let values: Vec<f64> = nodes.iter().map(|&x| f(x)).collect();
    let interp = |x: f64| -> f64 {
        let (mut num, mut den) = (0.0, 0.0);
        for ((&xj, &wj), &fj) in nodes.iter().zip(&weights).zip(&values) {
            let d = x - xj;
            if d == 0.0 {
                return fj;
            }
            num += wj * fj / d;
            den += wj / d;
        }
        num / den
    };

    let grid: Vec<f64> = equispaced_points::<f64>(fine)
        .into_iter()
        .map(|t| mid + half * t)
        .collect();
    let mut error = 0.0f64;
    let mut f_sup = 0.0f64;
    let mut derivative_sup = 0.0f64;
    for &x in &grid {
        let fx = f(x);
        f_sup = f_sup.max(fx.abs());
        error = error.max((fx - interp(x)).abs());
        derivative_sup = derivative_sup.max(deriv_r(x).abs());
    }
    let log_fact: f64 = (1..=r).map(|i| (i as f64).ln()).sum();
    let bound = 2.0 * (r as f64 * ((b - a) / 4.0).ln() - log_fact).exp() * derivative_sup;
    let rounding = 64.0 * f64::EPSILON * f_sup;
    Ok(LemmaTReport {
        r,
        interval: (a, b),
        error,
        bound,
        derivative_sup,
        within_bound: error <= bound * (1.0 + 1e-9) + rounding,
        within_factor_two: error <= 2.0 * bound + rounding,
    })
}
