use crate::error::{invalid, Result};
use crate::scalar::Real;

/// The `m + 1` equispaced nodes `x_i = -1 + 2i/m` on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct EquispacedGrid<T> {
    m: usize,
    nodes: Vec<T>,
}

impl<T: Real> EquispacedGrid<T> {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            return invalid("equispaced grid needs m >= 1");
        }
        Ok(Self {
            m,
            nodes: equispaced_points(m + 1),
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }
}

/// `count` equispaced points on `[-1, 1]` including both endpoints, computed
/// as `(2i - (count-1)) / (count-1)` so the set is exactly symmetric.
/// A single point is placed at the origin.
pub fn equispaced_points<T: Real>(count: usize) -> Vec<T> {
    if count == 1 {
        return vec![T::zero()];
    }
    let m = (count - 1) as i64;
    let denom = T::int(m);
    (0..count as i64)
        .map(|i| T::int(2 * i - m) / denom)
        .collect()
}
