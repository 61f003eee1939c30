use crate::error::{failure, invalid, Result};
use crate::linalg::matrix::{dot, Matrix};
use crate::scalar::Real;

/// Thin SVD `A = U diag(sigma) Vᵀ` of a tall matrix.
#[derive(Debug, Clone)]
pub struct SvdFactors<T> {
    /// `rows × cols`, orthonormal columns.
    pub u: Matrix<T>,
    /// Nonincreasing, nonnegative.
    pub sigma: Vec<T>,
    /// `cols × cols`, orthogonal.
    pub v: Matrix<T>,
}

impl<T: Real> SvdFactors<T> {
    /// Indices `i` with `sigma[i] > epsilon`. Since `sigma` is sorted this is a
    /// prefix `0..rank`.
    pub fn rank_above(&self, epsilon: T) -> usize {
        self.sigma.iter().take_while(|&&s| s > epsilon).count()
    }

    /// `U diag(sigma) Vᵀ`.
    pub fn reconstruct(&self) -> Matrix<T> {
        let mut us = self.u.clone();
        for (j, &s) in self.sigma.iter().enumerate() {
            for v in us.col_mut(j) {
                *v = *v * s;
            }
        }
        us.mul(&self.v.transpose())
    }
}

const MAX_SWEEPS: usize = 80;

/// Singular values smaller than this are treated as exact zeros.
const FLUSH_BELOW: f64 = 1e-300;

/// Thin SVD of a matrix with at least as many rows as columns.
///
/// A Householder QR reduces the problem to the square triangular factor `R`;
/// one-sided (Hestenes) Jacobi then orthogonalises the columns of `R`, which
/// resolves tiny singular values to high relative accuracy.
pub fn svd<T: Real>(a: &Matrix<T>) -> Result<SvdFactors<T>> {
    let (rows, cols) = (a.rows(), a.cols());
    if rows < cols {
        return invalid(format!("svd expects rows >= cols, got {rows}x{cols}"));
    }
    if cols == 0 {
        return Ok(SvdFactors {
            u: Matrix::zeros(rows, 0),
            sigma: Vec::new(),
            v: Matrix::zeros(0, 0),
        });
    }
    if a.max_abs().is_nan() || !a.max_abs().is_finite() {
        return failure("svd input contains non-finite entries");
    }

    let (reflectors, r) = householder_qr(a);
    // Columns this small are rounding noise: rotating them against the rest
    // only reshuffles noise and never converges, so they count as zero.
    let negligible = T::epsilon() * frobenius(&r);
    let (mut w, mut v) = (r, Matrix::identity(cols));
    jacobi_sweeps(&mut w, &mut v, negligible)?;

    let mut sigma: Vec<T> = (0..cols).map(|j| norm(w.col(j))).collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&i, &j| sigma[j].partial_cmp(&sigma[i]).unwrap_or(std::cmp::Ordering::Equal));

    let flush = T::lit(FLUSH_BELOW).max(negligible);
    let mut u_small = Matrix::zeros(cols, cols);
    let mut v_sorted = Matrix::zeros(cols, cols);
    let mut sorted_sigma = Vec::with_capacity(cols);
    let mut missing = Vec::new();
    for (dst, &src) in order.iter().enumerate() {
        let s = sigma[src];
        v_sorted.col_mut(dst).copy_from_slice(v.col(src));
        if s > flush {
            for (d, &x) in u_small.col_mut(dst).iter_mut().zip(w.col(src)) {
                *d = x / s;
            }
            sorted_sigma.push(s);
        } else {
            sorted_sigma.push(T::zero());
            missing.push(dst);
        }
    }
    sigma = sorted_sigma;
    complete_orthonormal(&mut u_small, &missing);

    // U = Q [U_small; 0]
    let mut u = Matrix::zeros(rows, cols);
    for j in 0..cols {
        let col = u.col_mut(j);
        col[..cols].copy_from_slice(u_small.col(j));
        for (k, h) in reflectors.iter().enumerate().rev() {
            h.apply(&mut col[k..]);
        }
    }
    Ok(SvdFactors {
        u,
        sigma,
        v: v_sorted,
    })
}

struct Reflector<T> {
    /// Householder vector; `H = I - beta v vᵀ`.
    v: Vec<T>,
    beta: T,
}

impl<T: Real> Reflector<T> {
    fn apply(&self, x: &mut [T]) {
        if self.beta == T::zero() {
            return;
        }
        let s = self.beta * dot(&self.v, x);
        for (xi, &vi) in x.iter_mut().zip(&self.v) {
            *xi = *xi - s * vi;
        }
    }
}

/// Upper-triangular factor `R` of a thin QR factorisation of a tall matrix.
pub fn qr_r<T: Real>(a: &Matrix<T>) -> Result<Matrix<T>> {
    if a.rows() < a.cols() {
        return invalid("QR needs rows >= cols");
    }
    Ok(householder_qr(a).1)
}

fn householder_qr<T: Real>(a: &Matrix<T>) -> (Vec<Reflector<T>>, Matrix<T>) {
    let (rows, cols) = (a.rows(), a.cols());
    let mut work = a.clone();
    let mut reflectors = Vec::with_capacity(cols);
    for k in 0..cols {
        let x = &work.col(k)[k..];
        let alpha_norm = norm(x);
        let mut v = x.to_vec();
        let beta;
        if alpha_norm == T::zero() {
            beta = T::zero();
        } else {
            let alpha = if x[0] >= T::zero() { -alpha_norm } else { alpha_norm };
            v[0] = v[0] - alpha;
            let vv = dot(&v, &v);
            beta = if vv == T::zero() { T::zero() } else { T::two() / vv };
        }
        let h = Reflector { v, beta };
        for j in k..cols {
            h.apply(&mut work.col_mut(j)[k..]);
        }
        for i in k + 1..rows {
            work[(i, k)] = T::zero();
        }
        reflectors.push(h);
    }
    let r = Matrix::from_fn(cols, cols, |i, j| if i <= j { work[(i, j)] } else { T::zero() });
    (reflectors, r)
}

/// Rotates column pairs of `w` (and accumulates into `v`) until all columns
/// are mutually orthogonal to working precision.
fn jacobi_sweeps<T: Real>(w: &mut Matrix<T>, v: &mut Matrix<T>, negligible: T) -> Result<()> {
    let n = w.cols();
    let tol = T::epsilon() * T::count(w.rows()).sqrt();
    let floor = negligible * negligible;
    let mut norms: Vec<T> = (0..n).map(|j| dot(w.col(j), w.col(j))).collect();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..n {
            for j in i + 1..n {
                let (alpha, beta) = (norms[i], norms[j]);
                if alpha <= floor || beta <= floor {
                    continue;
                }
                let (wi, wj) = w.col_pair_mut(i, j);
                let gamma = dot(wi, wj);
                if gamma.abs() <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (T::two() * gamma);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                rotate(wi, wj, c, s);
                let (vi, vj) = v.col_pair_mut(i, j);
                rotate(vi, vj, c, s);
                norms[i] = dot(wi, wi);
                norms[j] = dot(wj, wj);
            }
        }
        if !rotated {
            return Ok(());
        }
    }
    failure(format!("one-sided Jacobi SVD did not converge in {MAX_SWEEPS} sweeps"))
}

#[inline]
fn rotate<T: Real>(a: &mut [T], b: &mut [T], c: T, s: T) {
    for (x, y) in a.iter_mut().zip(b.iter_mut()) {
        let (p, q) = (*x, *y);
        *x = c * p - s * q;
        *y = s * p + c * q;
    }
}

fn frobenius<T: Real>(a: &Matrix<T>) -> T {
    (0..a.cols())
        .map(|j| norm(a.col(j)))
        .fold(T::zero(), |acc, c| acc.hypot(c))
}

fn norm<T: Real>(x: &[T]) -> T {
    // scaled to avoid underflow for tiny columns
    let scale = x.iter().fold(T::zero(), |m, &v| m.max(v.abs()));
    if scale == T::zero() {
        return T::zero();
    }
    let s = x.iter().fold(T::zero(), |acc, &v| {
        let r = v / scale;
        acc + r * r
    });
    scale * s.sqrt()
}

/// Fills the listed columns with unit vectors orthogonal to all others.
fn complete_orthonormal<T: Real>(u: &mut Matrix<T>, missing: &[usize]) {
    let n = u.rows();
    let mut filled: Vec<bool> = (0..u.cols()).map(|j| !missing.contains(&j)).collect();
    for &target in missing {
        let mut best: Option<(T, Vec<T>)> = None;
        for e in 0..n {
            let mut cand = vec![T::zero(); n];
            cand[e] = T::one();
            for _ in 0..2 {
                for j in 0..u.cols() {
                    if filled[j] {
                        let p = dot(u.col(j), &cand);
                        for (c, &q) in cand.iter_mut().zip(u.col(j)) {
                            *c = *c - p * q;
                        }
                    }
                }
            }
            let nn = norm(&cand);
            if best.as_ref().map_or(true, |(b, _)| nn > *b) {
                best = Some((nn, cand));
            }
        }
        let (nn, cand) = best.expect("nonempty basis");
        for (d, c) in u.col_mut(target).iter_mut().zip(cand) {
            *d = c / nn;
        }
        filled[target] = true;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn orthonormality_defect(m: &Matrix<f64>) -> f64 {
        m.gram().sub(&Matrix::identity(m.cols())).max_abs()
    }

    #[test]
    fn identity() {
        let f = svd(&Matrix::<f64>::identity(3)).unwrap();
        assert!(f.sigma.iter().all(|&s| (s - 1.0).abs() < 1e-15));
    }

    #[test]
    fn padded_diagonal() {
        let a = Matrix::from_fn(4, 3, |i, j| if i == j { [1.0, 3.0, 2.0][i] } else { 0.0 });
        let f = svd(&a).unwrap();
        for (s, e) in f.sigma.iter().zip([3.0f64, 2.0, 1.0]) {
            assert!((s - e).abs() < 1e-15);
        }
        assert!(f.reconstruct().sub(&a).max_abs() < 1e-15);
    }

    #[test]
    fn rank_deficient_gets_complete_u() {
        let a = Matrix::from_fn(5, 3, |i, j| if j == 2 { 0.0 } else { (i + j) as f64 });
        let f = svd(&a).unwrap();
        assert_eq!(f.sigma[2], 0.0);
        assert!(orthonormality_defect(&f.u) < 1e-13);
        assert!(f.reconstruct().sub(&a).max_abs() < 1e-13);
    }

    #[test]
    fn random_tall_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = Matrix::from_fn(50, 20, |_, _| rng.gen_range(-1.0..1.0));
        let f = svd(&a).unwrap();
        assert!(orthonormality_defect(&f.u) < 1e-12);
        assert!(orthonormality_defect(&f.v) < 1e-12);
        assert!(f.sigma.windows(2).all(|w| w[0] >= w[1]));
        assert!(f.reconstruct().sub(&a).max_abs() < 1e-12 * f.sigma[0]);
    }

    #[test]
    fn rejects_wide() {
        assert!(svd(&Matrix::<f64>::zeros(2, 3)).is_err());
    }

    #[test]
    fn rank_above_is_strict() {
        let a = Matrix::from_fn(3, 3, |i, j| if i == j { [4.0, 2.0, 1.0][i] } else { 0.0 });
        let f = svd(&a).unwrap();
        assert_eq!(f.rank_above(2.0), 1);
        assert_eq!(f.rank_above(0.0), 3);
        assert_eq!(f.rank_above(4.0), 0);
    }
}
