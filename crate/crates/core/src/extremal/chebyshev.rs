use crate::error::{invalid, Result};
use crate::scalar::{cos_accurate, Real};

/// Truncated Chebyshev expansion `p = sum_{k<=n} c_k T_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebyshevTruncation<T> {
    pub coeffs: Vec<T>,
    pub quad_size: usize,
}

impl<T: Real> ChebyshevTruncation<T> {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Clenshaw evaluation of the truncated series.
    pub fn eval(&self, x: T) -> T {
        let two_x = T::two() * x;
        let (mut b1, mut b2) = (T::zero(), T::zero());
        for &c in self.coeffs.iter().skip(1).rev() {
            let b0 = c + two_x * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        self.coeffs[0] + x * b1 - b2
    }

    /// Geometric decay rate `rho` of `|c_k| ~ C rho^k`, from a least-squares
    /// fit of `log |c_k|` over `k_lo..=k_hi`.
    ///
    /// Coefficients at roundoff level relative to the largest one are
    /// skipped, which also removes the structural zeros of even or odd
    /// functions. Returns `None` with fewer than two usable coefficients.
    pub fn decay_rate(&self, k_lo: usize, k_hi: usize) -> Option<f64> {
        let scale = self
            .coeffs
            .iter()
            .fold(0.0f64, |a, c| a.max(c.to_f64_lossy().abs()));
        let floor = scale * 1e3 * T::epsilon().to_f64_lossy();
        let pts: Vec<(f64, f64)> = (k_lo..=k_hi.min(self.degree()))
            .filter_map(|k| {
                let c = self.coeffs[k].to_f64_lossy().abs();
                (c > floor).then(|| (k as f64, c.ln()))
            })
            .collect();
        if pts.len() < 2 {
            return None;
        }
        let len = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / len;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / len;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
        Some((sxy / sxx).exp())
    }
}

/// Chebyshev coefficients `c_0 .. c_n` of `f` by Gauss-Chebyshev quadrature
/// with `quad_size` points, `c_k = (2 - [k = 0]) / N sum_j f(x_j) T_k(x_j)`.
///
/// Node pairs `±x_j` are combined before weighting so that the parity of `f`
/// is preserved exactly, and `cos(k theta_j)` is read from a table indexed by
/// the exact integer angle.
pub fn chebyshev_truncation<T: Real>(
    f: impl Fn(T) -> T,
    n: usize,
    quad_size: usize,
) -> Result<ChebyshevTruncation<T>> {
    if quad_size < 4 * n.max(1) {
        return invalid(format!("quad_size must be at least 4n = {}", 4 * n.max(1)));
    }
    let big = quad_size;
    // cos(pi i / (2N)) for i < 4N; theta_j = pi (2j+1) / (2N).
    let period = 4 * big;
    let table: Vec<T> = (0..period)
        .map(|i| cos_accurate(T::PI() * T::count(i) / T::count(2 * big)))
        .collect();
    let half = big / 2;
    let mut plus = Vec::with_capacity(half + 1);
    let mut minus = Vec::with_capacity(half + 1);
    for j in 0..half {
        let x = table[2 * j + 1];
        let (a, b) = (f(x), f(-x));
        plus.push(a + b);
        minus.push(a - b);
    }
    // Odd N has the node x = 0 in the middle.
    let centre = (big % 2 == 1).then(|| f(T::zero()));

    let scale = T::two() / T::count(big);
    let coeffs = (0..=n)
        .map(|k| {
            let pair = if k % 2 == 0 { &plus } else { &minus };
            let mut acc = T::zero();
            for (j, &s) in pair.iter().enumerate() {
                acc = acc + s * table[(k * (2 * j + 1)) % period];
            }
            if let Some(c) = centre {
                acc = acc + c * table[(k * (2 * half + 1)) % period];
            }
            let c = acc * scale;
            if k == 0 {
                c * T::half()
            } else {
                c
            }
        })
        .collect();
    Ok(ChebyshevTruncation {
        coeffs,
        quad_size,
    })
}
