use crate::error::{invalid, Result};
use crate::scalar::Real;

/// Linear oversampling rule `m = ceil(36 n log(1/ε) / sqrt(γ² - 1))`.
pub fn scaling_m_of_n<T: Real>(n: usize, epsilon: T, gamma: T) -> Result<usize> {
    if !(gamma > T::one()) {
        return invalid("oversampling rule needs gamma > 1");
    }
    if !(epsilon > T::zero()) || epsilon > T::one() / T::E() {
        return invalid("oversampling rule needs 0 < epsilon <= 1/e");
    }
    let m = T::lit(36.0) * T::count(n) * (T::one() / epsilon).ln() / (gamma * gamma - T::one()).sqrt();
    m.ceil()
        .to_usize()
        .map_or_else(|| invalid("oversampling rule overflowed"), Ok)
}

/// Rescaled truncation threshold `ε' = ε (n + 1) / sqrt(γ)`.
pub fn epsilon_prime<T: Real>(epsilon: T, n: usize, gamma: T) -> T {
    epsilon * T::count(n + 1) / gamma.sqrt()
}
