use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{failure, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy)]
pub struct PowerIterationConfig {
    pub max_iterations: usize,
    /// Relative change of the Rayleigh quotient that counts as converged.
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for PowerIterationConfig {
    fn default() -> Self {
        Self {
            max_iterations: 200,
            tolerance: 1e-8,
            seed: 0x5eed_f4a3,
        }
    }
}

/// Largest eigenvalue of a symmetric positive semidefinite operator of size
/// `dim`, given by its action `apply(x, y): y = K x`.
pub fn largest_eigenvalue<T: Real>(
    dim: usize,
    mut apply: impl FnMut(&[T], &mut [T]),
    config: PowerIterationConfig,
) -> Result<T> {
    if dim == 0 {
        return Ok(T::zero());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut x: Vec<T> = (0..dim).map(|_| T::lit(rng.gen_range(0.5..1.5))).collect();
    normalize(&mut x);
    let mut y = vec![T::zero(); dim];
    let tol = T::lit(config.tolerance);
    let mut lambda = T::zero();
    for iter in 0..config.max_iterations {
        apply(&x, &mut y);
        let next: T = x.iter().zip(&y).fold(T::zero(), |a, (&p, &q)| a + p * q);
        if !next.is_finite() {
            return failure("power iteration produced a non-finite value");
        }
        let norm = y.iter().fold(T::zero(), |a, &v| a + v * v).sqrt();
        if norm == T::zero() {
            return Ok(T::zero());
        }
        for (xi, &yi) in x.iter_mut().zip(&y) {
            *xi = yi / norm;
        }
        if iter > 0 && (next - lambda).abs() <= tol * next.abs() {
            return Ok(next.max(lambda));
        }
        lambda = next;
    }
    failure(format!(
        "power iteration stagnated after {} iterations",
        config.max_iterations
    ))
}

fn normalize<T: Real>(x: &mut [T]) {
    let n = x.iter().fold(T::zero(), |a, &v| a + v * v).sqrt();
    for v in x {
        *v = *v / n;
    }
}
