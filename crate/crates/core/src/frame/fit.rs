use std::sync::Arc;

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::frame::spec::FrameSpec;
use crate::linalg::{svd, Matrix, SvdFactors};
use crate::numerics::{equispaced_points, EquispacedGrid};
use crate::scalar::Real;

/// Least-squares matrix `A[i][j] = sqrt(2/(m+1)) psi_j(x_i)` on the
/// equispaced grid with `m + 1` nodes.
pub fn assemble<T: Real>(spec: &FrameSpec<T>, m: usize) -> Result<(Matrix<T>, EquispacedGrid<T>)> {
    let grid = EquispacedGrid::new(m)?;
    let weight = (T::two() / T::count(m + 1)).sqrt();
    let mut a = Matrix::zeros(m + 1, spec.dim());
    let mut row = vec![T::zero(); spec.dim()];
    for (i, &x) in grid.nodes().iter().enumerate() {
        spec.frame_row_into(x, &mut row);
        for (j, &v) in row.iter().enumerate() {
            a[(i, j)] = weight * v;
        }
    }
    Ok((a, grid))
}

/// The assembled and factored least-squares problem for one `(spec, m)` pair.
///
/// Solving for several right-hand sides or thresholds reuses the factors.
#[derive(Debug, Clone)]
pub struct FrameOperator<T> {
    spec: FrameSpec<T>,
    grid: EquispacedGrid<T>,
    svd: Arc<SvdFactors<T>>,
}

impl<T: Real> FrameOperator<T> {
    pub fn new(spec: FrameSpec<T>, m: usize) -> Result<Self> {
        let (a, grid) = assemble(&spec, m)?;
        if a.rows() < a.cols() {
            // pad with zero rows; the extra rows do not change the normal equations
            let padded = Matrix::from_fn(a.cols(), a.cols(), |i, j| {
                if i < a.rows() { a[(i, j)] } else { T::zero() }
            });
            let mut f = svd(&padded)?;
            f.u = Matrix::from_fn(a.rows(), a.cols(), |i, j| f.u[(i, j)]);
            return Ok(Self { spec, grid, svd: Arc::new(f) });
        }
        let f = svd(&a)?;
        Ok(Self {
            spec,
            grid,
            svd: Arc::new(f),
        })
    }

    pub fn spec(&self) -> &FrameSpec<T> {
        &self.spec
    }

    pub fn m(&self) -> usize {
        self.grid.m()
    }

    pub fn grid(&self) -> &EquispacedGrid<T> {
        &self.grid
    }

    pub fn svd(&self) -> &SvdFactors<T> {
        &self.svd
    }

    /// `c = V Σ^{ε,†} Uᵀ b` with `b = sqrt(2/(m+1)) samples`; singular values
    /// `σ_i <= ε` are discarded.
    pub fn fit(&self, epsilon: T, samples: &[Complex<T>]) -> Result<RegularizedFit<T>> {
        if samples.len() != self.grid.len() {
            return invalid(format!(
                "expected {} samples, got {}",
                self.grid.len(),
                samples.len()
            ));
        }
        if !(epsilon >= T::zero()) {
            return invalid("epsilon must be nonnegative");
        }
        let weight = (T::two() / T::count(self.grid.len())).sqrt();
        let rank = self.svd.rank_above(epsilon);
        let dim = self.spec.dim();
        let mut coeffs = vec![Complex::new(T::zero(), T::zero()); dim];
        for i in 0..rank {
            let u = self.svd.u.col(i);
            let (mut re, mut im) = (T::zero(), T::zero());
            for (&uk, s) in u.iter().zip(samples) {
                re = re + uk * s.re;
                im = im + uk * s.im;
            }
            let y = Complex::new(re, im) * (weight / self.svd.sigma[i]);
            for (c, &vj) in coeffs.iter_mut().zip(self.svd.v.col(i)) {
                *c = *c + y * vj;
            }
        }
        Ok(RegularizedFit {
            spec: self.spec.clone(),
            m: self.m(),
            epsilon,
            svd: Arc::clone(&self.svd),
            rank,
            coeffs,
        })
    }

    /// Samples `f` on the grid and fits.
    pub fn fit_fn(&self, epsilon: T, f: impl Fn(T) -> Complex<T>) -> Result<RegularizedFit<T>> {
        let samples: Vec<_> = self.grid.nodes().iter().map(|&x| f(x)).collect();
        self.fit(epsilon, &samples)
    }
}

/// One-shot assemble, factor and solve.
pub fn fit<T: Real>(
    spec: &FrameSpec<T>,
    m: usize,
    epsilon: T,
    samples: &[Complex<T>],
) -> Result<RegularizedFit<T>> {
    FrameOperator::new(spec.clone(), m)?.fit(epsilon, samples)
}

/// Coefficients of the regularised approximation together with the factors
/// that produced them.
#[derive(Debug, Clone)]
pub struct RegularizedFit<T> {
    pub spec: FrameSpec<T>,
    pub m: usize,
    pub epsilon: T,
    pub svd: Arc<SvdFactors<T>>,
    /// Kept indices are `0..rank` (singular values sorted, strict `σ_i > ε`).
    pub rank: usize,
    pub coeffs: Vec<Complex<T>>,
}

/// Sup and L² errors on a fine equispaced grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitErrors<T> {
    pub inf: T,
    pub l2: T,
}

impl<T: Real> RegularizedFit<T> {
    pub fn kept(&self) -> std::ops::Range<usize> {
        0..self.rank
    }

    /// The approximant at one point.
    pub fn value_at(&self, x: T) -> Complex<T> {
        self.spec.series(&self.coeffs, x)
    }

    pub fn evaluate(&self, points: &[T]) -> Vec<Complex<T>> {
        points.par_iter().map(|&x| self.value_at(x)).collect()
    }

    /// `max |f - p|` and `sqrt(2/N sum |f - p|^2)` over `grid_size` equispaced
    /// points of `[-1, 1]`.
    pub fn errors_on_fine_grid(
        &self,
        f: impl Fn(T) -> Complex<T> + Sync,
        grid_size: usize,
    ) -> Result<FitErrors<T>> {
        if grid_size < 2 {
            return invalid("fine grid needs at least two points");
        }
        let pts: Vec<T> = equispaced_points(grid_size);
        let diffs: Vec<T> = pts
            .par_iter()
            .map(|&x| (f(x) - self.value_at(x)).norm())
            .collect();
        let inf = diffs.iter().fold(T::zero(), |m, &d| m.max(d));
        let sum = diffs.iter().fold(T::zero(), |s, &d| s + d * d);
        Ok(FitErrors {
            inf,
            l2: (T::two() / T::count(grid_size) * sum).sqrt(),
        })
    }
}

/// Free-function form of [`RegularizedFit::evaluate`].
pub fn evaluate<T: Real>(fit: &RegularizedFit<T>, points: &[T]) -> Vec<Complex<T>> {
    fit.evaluate(points)
}
