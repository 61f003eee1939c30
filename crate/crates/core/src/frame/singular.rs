use std::sync::Arc;

use crate::error::Result;
use crate::frame::fit::FrameOperator;
use crate::frame::spec::FrameSpec;
use crate::linalg::SvdFactors;
use crate::scalar::Real;

/// Polynomials `xi_i = sum_j V[j][i] psi_j` built from the right singular
/// vectors of the least-squares matrix.
///
/// They are orthonormal on `[-γ, γ]` and orthogonal in the discrete
/// grid inner product with `<xi_j, xi_k>_m = σ_j² δ_jk`.
#[derive(Debug, Clone)]
pub struct SingularPolynomials<T> {
    pub spec: FrameSpec<T>,
    pub m: usize,
    pub svd: Arc<SvdFactors<T>>,
}

impl<T: Real> SingularPolynomials<T> {
    pub fn from_operator(op: &FrameOperator<T>) -> Self {
        Self {
            spec: op.spec().clone(),
            m: op.m(),
            svd: Arc::new(op.svd().clone()),
        }
    }

    /// `xi_0(x) .. xi_n(x)`.
    pub fn eval_all(&self, x: T) -> Vec<T> {
        let row = self.spec.frame_row(x);
        (0..self.spec.dim())
            .map(|i| {
                self.svd
                    .v
                    .col(i)
                    .iter()
                    .zip(&row)
                    .fold(T::zero(), |a, (&v, &p)| a + v * p)
            })
            .collect()
    }

    pub fn eval(&self, i: usize, x: T) -> T {
        self.spec.series_real(self.svd.v.col(i), x)
    }
}

pub fn singular_polynomials<T: Real>(spec: &FrameSpec<T>, m: usize) -> Result<SingularPolynomials<T>> {
    Ok(SingularPolynomials::from_operator(&FrameOperator::new(spec.clone(), m)?))
}
