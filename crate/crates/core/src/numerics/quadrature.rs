use crate::error::{failure, invalid, Result};
use crate::scalar::Real;

/// Gauss–Legendre nodes and weights on `[a, b]`.
#[derive(Debug, Clone)]
pub struct QuadratureRule<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
    pub interval: (T, T),
}

impl<T: Real> QuadratureRule<T> {
    pub fn integrate(&self, mut f: impl FnMut(T) -> T) -> T {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(T::zero(), |acc, (&x, &w)| acc + w * f(x))
    }
}

const MAX_NEWTON: usize = 100;

/// `count`-point Gauss–Legendre rule mapped to `[a, b]`.
///
/// Roots of `P_count` are found by Newton's method from Chebyshev-like initial
/// guesses; each root pair is mirrored so the rule is exactly symmetric.
pub fn gauss_legendre<T: Real>(count: usize, a: T, b: T) -> Result<QuadratureRule<T>> {
    if count == 0 {
        return invalid("quadrature needs at least one node");
    }
    if !(a < b) {
        return invalid("quadrature interval must satisfy a < b");
    }
    let mut ref_nodes = vec![T::zero(); count];
    let mut ref_weights = vec![T::zero(); count];
    let half_count = count.div_ceil(2);
    let tol = T::epsilon() * T::lit(4.0);
    let fc = T::count(count);
    for i in 0..half_count {
        // largest root first
        let guess = (std::f64::consts::PI * (i as f64 + 0.75) / (count as f64 + 0.5)).cos();
        let mut x = T::lit(guess);
        let mut converged = false;
        let mut dp = T::one();
        for _ in 0..MAX_NEWTON {
            let (p, pm1) = legendre_pair(count, x);
            dp = fc * (x * p - pm1) / (x * x - T::one());
            let dx = p / dp;
            x = x - dx;
            if dx.abs() <= tol {
                let (p, pm1) = legendre_pair(count, x);
                dp = fc * (x * p - pm1) / (x * x - T::one());
                converged = true;
                break;
            }
        }
        if !converged {
            return failure(format!(
                "Newton iteration for Gauss-Legendre root {i} of {count} did not converge"
            ));
        }
        if count % 2 == 1 && i == half_count - 1 {
            x = T::zero();
            let (p, pm1) = legendre_pair(count, x);
            dp = fc * (x * p - pm1) / (x * x - T::one());
        }
        let w = T::two() / ((T::one() - x * x) * dp * dp);
        ref_nodes[count - 1 - i] = x;
        ref_nodes[i] = -x;
        ref_weights[count - 1 - i] = w;
        ref_weights[i] = w;
    }
    let half_len = (b - a) / T::two();
    let mid = (a + b) / T::two();
    Ok(QuadratureRule {
        nodes: ref_nodes.iter().map(|&x| mid + half_len * x).collect(),
        weights: ref_weights.iter().map(|&w| w * half_len).collect(),
        interval: (a, b),
    })
}

/// `(P_n(x), P_{n-1}(x))`.
fn legendre_pair<T: Real>(n: usize, x: T) -> (T, T) {
    let (mut prev, mut cur) = (T::zero(), T::one());
    for i in 0..n {
        let fi = T::count(i);
        let next = ((fi + fi + T::one()) * x * cur - fi * prev) / (fi + T::one());
        prev = cur;
        cur = next;
    }
    (cur, prev)
}
