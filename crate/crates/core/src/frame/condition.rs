use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::frame::fit::FrameOperator;
use crate::frame::spec::FrameSpec;
use crate::linalg::{largest_eigenvalue, qr_r, Matrix, PowerIterationConfig};
use crate::numerics::equispaced_points;
use crate::scalar::Real;

/// Triangular factor `R` of the frame sampled on a fine equispaced grid,
/// `E[j][i] = psi_i(t_j) = (QR)[j][i]`, so `||E x|| = ||R x||`. Depends only
/// on the frame and the grid, so it can be shared across many `(m, ε)`
/// evaluations.
#[derive(Debug, Clone)]
pub struct FineGridFactor<T> {
    pub grid_size: usize,
    pub r: Matrix<T>,
}

const CHUNK: usize = 1024;

impl<T: Real> FineGridFactor<T> {
    pub fn new(spec: &FrameSpec<T>, grid_size: usize) -> Result<Self> {
        if grid_size < 2 {
            return invalid("fine grid needs at least two points");
        }
        let dim = spec.dim();
        let pts: Vec<T> = equispaced_points(grid_size);
        // fixed-size chunks keep the result independent of thread count
        let blocks: Vec<Matrix<T>> = pts
            .par_chunks(CHUNK)
            .map(|chunk| {
                let mut e = Matrix::zeros(chunk.len(), dim);
                let mut row = vec![T::zero(); dim];
                for (j, &t) in chunk.iter().enumerate() {
                    spec.frame_row_into(t, &mut row);
                    for (i, &v) in row.iter().enumerate() {
                        e[(j, i)] = v;
                    }
                }
                compress(e)
            })
            .collect::<Result<_>>()?;
        let mut acc = Matrix::zeros(0, dim);
        for blk in &blocks {
            acc = compress(stack(&acc, blk))?;
        }
        if acc.rows() < dim {
            acc = stack(&acc, &Matrix::zeros(dim - acc.rows(), dim));
        }
        Ok(Self { grid_size, r: acc })
    }

    /// The factor for the first `dim` frame functions. `psi_i` does not
    /// depend on the degree and the leading block of `R` only sees the
    /// leading columns of `E`, so one factor built for the largest degree
    /// serves a whole sweep over `n`.
    pub fn leading(&self, dim: usize) -> Result<Self> {
        if dim > self.r.cols() {
            return invalid("leading block larger than the fine-grid factor");
        }
        Ok(Self {
            grid_size: self.grid_size,
            r: Matrix::from_fn(dim, dim, |i, j| self.r[(i, j)]),
        })
    }
}

fn compress<T: Real>(e: Matrix<T>) -> Result<Matrix<T>> {
    if e.rows() > e.cols() {
        qr_r(&e)
    } else {
        Ok(e)
    }
}

fn stack<T: Real>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let top = a.rows();
    Matrix::from_fn(top + b.rows(), a.cols(), |i, j| {
        if i < top {
            a[(i, j)]
        } else {
            b[(i - top, j)]
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionNumbers<T> {
    /// Discrete-L² condition number on the fine grid.
    pub cond_2: T,
    /// Fine-grid discretisation of the sup-norm condition number; a lower
    /// bound on the continuum value.
    pub cond_inf: T,
}

const BLOCK: usize = 32;

impl<T: Real> FrameOperator<T> {
    /// `sqrt(2/N) ||E V Σ^{ε,†} Uᵀ||_2`.
    ///
    /// Since `U` has orthonormal columns and `E = QR`, the spectral norm
    /// equals that of the small matrix `B = R V_r Σ_r^{-1}`. Power iteration
    /// runs on `BᵀB` applied as two products; when the two leading singular
    /// values are too close for it to settle (parity often pairs them), a
    /// dense SVD of `B` is used instead.
    pub fn cond_2(&self, epsilon: T, factor: &FineGridFactor<T>) -> Result<T> {
        let svd = self.svd();
        let rank = svd.rank_above(epsilon);
        if rank == 0 {
            return Ok(T::zero());
        }
        let dim = self.spec().dim();
        if factor.r.cols() != dim {
            return invalid("fine-grid factor does not match the frame dimension");
        }
        let vr = Matrix::from_fn(dim, rank, |i, j| svd.v[(i, j)] / svd.sigma[j]);
        let b = factor.r.mul(&vr);
        let power = largest_eigenvalue(
            rank,
            |x, y| {
                let r = b.tr_mul_vec(&b.mul_vec(x));
                y.copy_from_slice(&r);
            },
            PowerIterationConfig::default(),
        );
        let norm = match power {
            Ok(l) => l.max(T::zero()).sqrt(),
            Err(Error::NumericalFailure(_)) => crate::linalg::svd(&b)?.sigma[0],
            Err(e) => return Err(e),
        };
        Ok((T::two() / T::count(factor.grid_size)).sqrt() * norm)
    }

    /// `sqrt(2/(m+1)) max_j sum_k |M[j][k]|` with `M = E V Σ^{ε,†} Uᵀ`: the
    /// exact operator norm from discrete-sup samples to fine-grid sup values.
    pub fn cond_inf(&self, epsilon: T, grid_size: usize) -> Result<T> {
        if grid_size < 2 {
            return invalid("fine grid needs at least two points");
        }
        let svd = self.svd();
        let rank = svd.rank_above(epsilon);
        if rank == 0 {
            return Ok(T::zero());
        }
        let samples = svd.u.rows();
        // row-major copy of the kept columns of U
        let mut ur = vec![T::zero(); samples * rank];
        for i in 0..rank {
            for (k, &v) in svd.u.col(i).iter().enumerate() {
                ur[k * rank + i] = v;
            }
        }
        let spec = self.spec();
        let dim = spec.dim();
        let pts: Vec<T> = equispaced_points(grid_size);
        let best = pts
            .par_chunks(BLOCK)
            .map(|chunk| {
                let mut row = vec![T::zero(); dim];
                let mut ys = vec![T::zero(); BLOCK * rank];
                for (b, &t) in chunk.iter().enumerate() {
                    spec.frame_row_into(t, &mut row);
                    for i in 0..rank {
                        let vi = svd.v.col(i);
                        let s = vi.iter().zip(&row).fold(T::zero(), |a, (&p, &q)| a + p * q);
                        ys[b * rank + i] = s / svd.sigma[i];
                    }
                }
                let mut sums = vec![T::zero(); chunk.len()];
                for k in 0..samples {
                    let uk = &ur[k * rank..(k + 1) * rank];
                    for (b, acc) in sums.iter_mut().enumerate() {
                        let y = &ys[b * rank..(b + 1) * rank];
                        let d = uk.iter().zip(y).fold(T::zero(), |a, (&p, &q)| a + p * q);
                        *acc = *acc + d.abs();
                    }
                }
                sums.into_iter().fold(T::zero(), T::max)
            })
            .reduce(T::zero, T::max);
        Ok((T::two() / T::count(self.m() + 1)).sqrt() * best)
    }

    pub fn condition_numbers(&self, epsilon: T, grid_size: usize) -> Result<ConditionNumbers<T>> {
        let factor = FineGridFactor::new(self.spec(), grid_size)?;
        Ok(ConditionNumbers {
            cond_2: self.cond_2(epsilon, &factor)?,
            cond_inf: self.cond_inf(epsilon, grid_size)?,
        })
    }
}

/// Both condition numbers of the operator for `(spec, m, ε)`.
pub fn condition_numbers<T: Real>(
    spec: &FrameSpec<T>,
    m: usize,
    epsilon: T,
    fine_grid_size: usize,
) -> Result<ConditionNumbers<T>> {
    FrameOperator::new(spec.clone(), m)?.condition_numbers(epsilon, fine_grid_size)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_operator_has_zero_condition() {
        let op = FrameOperator::new(FrameSpec::new(1.5, 6).unwrap(), 20).unwrap();
        let s0 = op.svd().sigma[0];
        let c = op.condition_numbers(s0 * 1.01, 500).unwrap();
        assert_eq!((c.cond_2, c.cond_inf), (0.0, 0.0));
    }

    /// Brute-force Lebesgue constant of quadratic interpolation at {-1, 0, 1}.
    fn lebesgue_three_nodes() -> f64 {
        let l = |x: f64| {
            let l0 = x * (x - 1.0) / 2.0;
            let l1 = 1.0 - x * x;
            let l2 = x * (x + 1.0) / 2.0;
            l0.abs() + l1.abs() + l2.abs()
        };
        (0..=200_000).map(|i| l(-1.0 + 2.0 * i as f64 / 200_000.0)).fold(0.0, f64::max)
    }

    #[test]
    fn interpolation_condition_is_lebesgue_constant() {
        let oracle = lebesgue_three_nodes();
        assert!((oracle - 1.25).abs() < 1e-9);
        let c = condition_numbers(&FrameSpec::new(1.0, 2).unwrap(), 2, 0.0, 50_000).unwrap();
        assert!((c.cond_inf - oracle).abs() < 1e-3, "{}", c.cond_inf);
    }

    #[test]
    fn well_sampled_basis_is_well_conditioned() {
        let c = condition_numbers(&FrameSpec::new(1.0, 5).unwrap(), 400, 0.0, 4000).unwrap();
        assert!(c.cond_2 >= 1.0 - 1e-6 && c.cond_2 < 1.2, "{}", c.cond_2);
        assert!(c.cond_inf >= 1.0 - 1e-9);
    }

    /// cond_2 against a dense spectral norm of the explicit fine-grid matrix.
    fn explicit_cond_2(gamma: f64, n: usize, m: usize, eps: f64, n_fine: usize) -> (f64, f64) {
        let spec = FrameSpec::new(gamma, n).unwrap();
        let op = FrameOperator::new(spec.clone(), m).unwrap();
        let got = op.cond_2(eps, &FineGridFactor::new(&spec, n_fine).unwrap()).unwrap();

        let svd = op.svd();
        let r = svd.rank_above(eps);
        let pts: Vec<f64> = equispaced_points(n_fine);
        let mut m_mat = nalgebra::DMatrix::<f64>::zeros(n_fine, m + 1);
        for (j, &t) in pts.iter().enumerate() {
            let row = spec.frame_row(t);
            for k in 0..=m {
                let mut s = 0.0;
                for i in 0..r {
                    let vi: f64 = (0..spec.dim()).map(|q| svd.v[(q, i)] * row[q]).sum();
                    s += vi / svd.sigma[i] * svd.u[(k, i)];
                }
                m_mat[(j, k)] = s;
            }
        }
        let expected = (2.0 / n_fine as f64).sqrt() * m_mat.singular_values().max();
        (got, expected)
    }

    #[test]
    fn cond_2_matches_explicit_matrix() {
        // the second case has a nearly double top eigenvalue; the third keeps
        // singular values near 1e-14
        for (gamma, n, m, eps) in [(1.3, 6, 15, 1e-3), (1.2, 5, 20, 1e-14), (1.25, 24, 60, 1e-14)] {
            let (got, expected) = explicit_cond_2(gamma, n, m, eps, 300);
            assert!(((got - expected) / expected).abs() < 1e-7, "{got} vs {expected}");
        }
    }

    #[test]
    fn factor_reproduces_gram() {
        let spec = FrameSpec::new(1.3f64, 9).unwrap();
        let f = FineGridFactor::new(&spec, 2500).unwrap();
        let pts: Vec<f64> = equispaced_points(2500);
        let mut e = Matrix::zeros(2500, 10);
        for (j, &t) in pts.iter().enumerate() {
            for (i, v) in spec.frame_row(t).into_iter().enumerate() {
                e[(j, i)] = v;
            }
        }
        let rel = f.r.gram().sub(&e.gram()).max_abs() / e.gram().max_abs();
        assert!(rel < 1e-13, "{rel}");
        // fewer grid points than frame functions
        let few = FineGridFactor::new(&spec, 4).unwrap();
        assert_eq!((few.r.rows(), few.r.cols()), (10, 10));
    }

    #[test]
    fn leading_block_matches_smaller_frame() {
        let big = FineGridFactor::new(&FrameSpec::new(1.3f64, 9).unwrap(), 3777).unwrap();
        let small = FineGridFactor::new(&FrameSpec::new(1.3f64, 4).unwrap(), 3777).unwrap();
        let lead = big.leading(5).unwrap();
        let diff = lead.r.gram().sub(&small.r.gram()).max_abs();
        assert!(diff < 1e-9 * small.r.gram().max_abs(), "{diff}");
        assert!(big.leading(11).is_err());
    }
}
