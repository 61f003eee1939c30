use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::oracle::golden_max;
use crate::error::{invalid, Result};
use crate::numerics::{legendre_deriv_eval, legendre_series};
use crate::scalar::Real;

/// Constant in the pointwise Markov bound.
pub const MARKOV_CONSTANT: f64 = 1.251;

/// `D_{n,k}(x)`, the sharp pointwise bound on `|p^{(k)}(x)|` for
/// `||p||_[-1,1] <= 1`, from its closed form
/// `D^2 = n^2 sum_{m<k} c_{m,k} (n^2-(m+1)^2)...(n^2-(k-1)^2) / (1-x^2)^{k+m}`.
///
/// The terms are accumulated as logarithms so large `n` and `k` do not
/// overflow.
pub fn schaeffer_duffin<T: Real>(n: usize, k: usize, x: T) -> Result<T> {
    if k == 0 || k > n {
        return invalid(format!("need 1 <= k <= n, got n = {n}, k = {k}"));
    }
    if !(x.abs() < T::one()) {
        return invalid("schaeffer_duffin needs |x| < 1");
    }
    let nn = T::count(n) * T::count(n);
    let log_w = (T::one() - x * x).ln();
    // log of (n^2-(m+1)^2)...(n^2-(k-1)^2) for each m, built from the top.
    let mut log_tail = vec![T::zero(); k];
    for m in (0..k - 1).rev() {
        let j = T::count(m + 1);
        log_tail[m] = log_tail[m + 1] + (nn - j * j).ln();
    }
    let logs: Vec<T> = (0..k)
        .map(|m| log_c::<T>(m, k) + log_tail[m] - T::count(k + m) * log_w)
        .collect();
    let top = logs.iter().fold(T::neg_infinity(), |a, &b| a.max(b));
    let sum = logs.iter().fold(T::zero(), |a, &l| a + (l - top).exp());
    Ok(T::count(n) * ((top + sum.ln()) / T::two()).exp())
}

/// `ln c_{m,k}` with `c_{0,k} = 1`, `c_{m,k} = C(k-1+m, 2m) ((2m-1)!!)^2`.
fn log_c<T: Real>(m: usize, k: usize) -> T {
    let mut acc = T::zero();
    for i in 0..2 * m {
        // C(k-1+m, 2m) = prod_{i<2m} (k-1+m-i)/(i+1)
        acc = acc + (T::count(k - 1 + m - i) / T::count(i + 1)).ln();
    }
    for j in 1..=m {
        acc = acc + T::two() * T::count(2 * j - 1).ln();
    }
    acc
}

/// `1.251 n^k / (1-x^2)^{k/2}`.
pub fn markov_bound(n: usize, k: usize, x: f64) -> f64 {
    MARKOV_CONSTANT * (n as f64).powi(k as i32) / (1.0 - x * x).powf(k as f64 / 2.0)
}

/// Whether `k < n sqrt((1 - delta^2)/2)` with `0 < delta < 1`.
pub fn markov_hypothesis_holds(n: usize, k: usize, delta: f64) -> bool {
    delta > 0.0 && delta < 1.0 && (k as f64) < n as f64 * ((1.0 - delta * delta) / 2.0).sqrt()
}

/// One evaluation of both inequalities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointCheck {
    pub x: f64,
    /// `|p^{(k)}(x)| / ||p||`.
    pub derivative: f64,
    pub sharp_bound: f64,
    pub markov_bound: f64,
}

impl PointCheck {
    /// Evaluates a Legendre series `p` at `x` against both bounds, with
    /// `sup_norm` the supremum of `|p|` on `[-1, 1]`.
    pub fn new(coeffs: &[f64], sup_norm: f64, k: usize, x: f64) -> Result<Self> {
        let n = coeffs.len() - 1;
        let d: f64 = legendre_deriv_eval(n, k, x)
            .iter()
            .zip(coeffs)
            .map(|(p, c)| p * c)
            .sum();
        Ok(Self {
            x,
            derivative: d.abs() / sup_norm,
            sharp_bound: schaeffer_duffin(n, k, x)?,
            markov_bound: markov_bound(n, k, x),
        })
    }

    /// Relative slack used to absorb rounding in the derivative.
    const SLACK: f64 = 1e-9;

    pub fn violates_sharp(&self) -> bool {
        self.derivative > self.sharp_bound * (1.0 + Self::SLACK)
    }

    pub fn violates_markov(&self) -> bool {
        self.derivative > self.markov_bound * (1.0 + Self::SLACK)
    }

    /// `D_{n,k}(x) <= 1.251 n^k / (1-x^2)^{k/2}`.
    pub fn sharp_within_markov(&self) -> bool {
        self.sharp_bound <= self.markov_bound
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MarkovReport {
    pub n: usize,
    pub k: usize,
    pub delta: f64,
    pub trials: usize,
    pub markov_violations: usize,
    pub sharp_violations: usize,
    /// Points where `D_{n,k}(x)` exceeded the Markov bound.
    pub bound_order_violations: usize,
    /// Largest `|p^{(k)}(x)| / (1.251 n^k (1-x^2)^{-k/2} ||p||)`.
    pub max_markov_ratio: f64,
    /// Largest `|p^{(k)}(x)| / (D_{n,k}(x) ||p||)`.
    pub max_sharp_ratio: f64,
    /// Largest `D_{n,k}(x) / (1.251 n^k (1-x^2)^{-k/2})`.
    pub max_bound_ratio: f64,
}

impl MarkovReport {
    pub fn violations(&self) -> usize {
        self.markov_violations + self.sharp_violations + self.bound_order_violations
    }
}

/// Sup norm of a Legendre series on `[-1, 1]`: Chebyshev-point sampling
/// followed by golden-section refinement around the sampled maxima.
pub(crate) fn legendre_sup_norm(coeffs: &[f64]) -> f64 {
    let n = coeffs.len().max(2);
    let count = 40 * n;
    let pts: Vec<f64> = (0..=count)
        .map(|i| -(std::f64::consts::PI * i as f64 / count as f64).cos())
        .collect();
    let vals: Vec<f64> = pts.iter().map(|&x| legendre_series(coeffs, x).abs()).collect();
    let mut best = vals.iter().fold(0.0f64, |a, &b| a.max(b));
    let f = |x: f64| legendre_series(coeffs, x).abs();
    for i in 1..count {
        if vals[i] >= vals[i - 1] && vals[i] >= vals[i + 1] && vals[i] > 0.5 * best {
            let (_, v) = golden_max(&f, pts[i - 1], pts[i + 1]);
            best = best.max(v);
        }
    }
    best
}

/// Random-polynomial check of the pointwise Markov inequality on
/// `[-delta, delta]` and of the sharper bound `|p^{(k)}(x)| <= D_{n,k}(x) ||p||`.
///
/// Each trial draws Legendre coefficients uniformly from `[-1, 1]` and a point
/// `x` uniformly from `[-delta, delta]`.
pub fn markov_check(n: usize, k: usize, delta: f64, trials: usize, seed: u64) -> Result<MarkovReport> {
    if k == 0 || k > n {
        return invalid(format!("need 1 <= k <= n, got n = {n}, k = {k}"));
    }
    if !markov_hypothesis_holds(n, k, delta) {
        return invalid(format!(
            "hypothesis k < n sqrt((1 - delta^2)/2) fails for n = {n}, k = {k}, delta = {delta}"
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = MarkovReport {
        n,
        k,
        delta,
        trials,
        markov_violations: 0,
        sharp_violations: 0,
        bound_order_violations: 0,
        max_markov_ratio: 0.0,
        max_sharp_ratio: 0.0,
        max_bound_ratio: 0.0,
    };
    for _ in 0..trials {
        let coeffs: Vec<f64> = (0..=n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let x = rng.gen_range(-delta..=delta);
        let norm = legendre_sup_norm(&coeffs);
        let check = PointCheck::new(&coeffs, norm, k, x)?;
        report.markov_violations += check.violates_markov() as usize;
        report.sharp_violations += check.violates_sharp() as usize;
        report.bound_order_violations += !check.sharp_within_markov() as usize;
        report.max_markov_ratio = report.max_markov_ratio.max(check.derivative / check.markov_bound);
        report.max_sharp_ratio = report.max_sharp_ratio.max(check.derivative / check.sharp_bound);
        report.max_bound_ratio = report
            .max_bound_ratio
            .max(check.sharp_bound / check.markov_bound);
    }
    Ok(report)
}
