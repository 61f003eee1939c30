use num_complex::Complex;

use crate::scalar::Real;

/// Discrete sup norm and the grid-weighted discrete L² norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscreteNorms<T> {
    pub sup: T,
    pub l2: T,
}

/// `sup = max |g_i|`, `l2 = sqrt(2/(m+1) * sum |g_i|^2)` for `m + 1` values.
pub fn discrete_norms<T: Real>(values: &[Complex<T>]) -> DiscreteNorms<T> {
    let mut sup = T::zero();
    let mut sum = T::zero();
    for v in values {
        let a = v.norm();
        if a > sup {
            sup = a;
        }
        sum = sum + v.norm_sqr();
    }
    let weight = if values.is_empty() {
        T::zero()
    } else {
        T::two() / T::count(values.len())
    };
    DiscreteNorms {
        sup,
        l2: (weight * sum).sqrt(),
    }
}
