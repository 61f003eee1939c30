use num_complex::Complex;

use crate::error::{invalid, Result};
use crate::numerics::legendre_eval_into;
use crate::scalar::Real;

/// Extension parameter `gamma` and maximal degree `n` of the frame
/// `psi_i(x) = sqrt(i + 1/2) P_i(x / gamma) / sqrt(gamma)`, `i = 0..=n`.
///
/// The `psi_i` are orthonormal on `[-gamma, gamma]`; with `gamma = 1` they are
/// the orthonormal Legendre basis of `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameSpec<T> {
    gamma: T,
    n: usize,
    scales: Vec<T>,
}

impl<T: Real> FrameSpec<T> {
    pub fn new(gamma: T, n: usize) -> Result<Self> {
        if !(gamma >= T::one()) || !gamma.is_finite() {
            return invalid(format!("gamma must be finite and >= 1, got {gamma:?}"));
        }
        let root_gamma = gamma.sqrt();
        let scales = (0..=n)
            .map(|i| (T::count(i) + T::half()).sqrt() / root_gamma)
            .collect();
        Ok(Self { gamma, n, scales })
    }

    pub fn gamma(&self) -> T {
        self.gamma
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of frame elements, `n + 1`.
    pub fn dim(&self) -> usize {
        self.n + 1
    }

    /// `psi_0(x) .. psi_n(x)`.
    pub fn frame_row(&self, x: T) -> Vec<T> {
        let mut out = vec![T::zero(); self.dim()];
        self.frame_row_into(x, &mut out);
        out
    }

    pub fn frame_row_into(&self, x: T, out: &mut [T]) {
        legendre_eval_into(x / self.gamma, out);
        for (v, &s) in out.iter_mut().zip(&self.scales) {
            *v = *v * s;
        }
    }

    /// `sum_i coeffs[i] psi_i(x)`, evaluated by recurrence without allocation.
    pub fn series(&self, coeffs: &[Complex<T>], x: T) -> Complex<T> {
        let t = x / self.gamma;
        let mut acc = Complex::new(T::zero(), T::zero());
        let (mut prev, mut cur) = (T::zero(), T::one());
        for (i, (c, &s)) in coeffs.iter().zip(&self.scales).enumerate() {
            acc = acc + *c * (cur * s);
            let fi = T::count(i);
            let next = ((fi + fi + T::one()) * t * cur - fi * prev) / (fi + T::one());
            prev = cur;
            cur = next;
        }
        acc
    }

    /// Real-coefficient variant of [`FrameSpec::series`].
    pub fn series_real(&self, coeffs: &[T], x: T) -> T {
        let t = x / self.gamma;
        let mut acc = T::zero();
        let (mut prev, mut cur) = (T::zero(), T::one());
        for (i, (&c, &s)) in coeffs.iter().zip(&self.scales).enumerate() {
            acc = acc + c * cur * s;
            let fi = T::count(i);
            let next = ((fi + fi + T::one()) * t * cur - fi * prev) / (fi + T::one());
            prev = cur;
            cur = next;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::gauss_legendre;

    #[test]
    fn psi0_constant() {
        for &g in &[1.0, 1.3, 2.0, 5.0] {
            let s = FrameSpec::new(g, 4).unwrap();
            for &x in &[-1.0, 0.1, 0.9] {
                assert!((s.frame_row(x)[0] - 1.0 / (2.0 * g as f64).sqrt()).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn endpoint_values() {
        let s = FrameSpec::new(1.0, 3).unwrap();
        assert!((s.frame_row(1.0)[1] - 1.5f64.sqrt()).abs() < 1e-15);
        let s = FrameSpec::new(2.0, 6).unwrap();
        for (i, v) in s.frame_row(2.0).into_iter().enumerate() {
            assert!((v - ((i as f64 + 0.5) / 2.0).sqrt()).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_gamma_below_one() {
        assert!(FrameSpec::new(0.9, 3).is_err());
        assert!(FrameSpec::new(f64::NAN, 3).is_err());
    }

    #[test]
    fn series_matches_row() {
        let s = FrameSpec::new(1.4, 7).unwrap();
        let c: Vec<_> = (0..8).map(|i| Complex::new(i as f64 * 0.3 - 1.0, 0.1 * i as f64)).collect();
        let x = 0.77;
        let row = s.frame_row(x);
        let direct = c.iter().zip(&row).fold(Complex::new(0.0, 0.0), |a, (c, &r)| a + c * r);
        assert!((s.series(&c, x) - direct).norm() < 1e-14);
        let re: Vec<f64> = c.iter().map(|z| z.re).collect();
        assert!((s.series_real(&re, x) - direct.re).abs() < 1e-14);
    }

    #[test]
    fn orthonormal_on_extended_interval() {
        // k >= n + 1 quadrature nodes integrate psi_i psi_j exactly
        for &g in &[1.0, 1.5, 3.0] {
            let n = 25;
            let s = FrameSpec::new(g, n).unwrap();
            let q = gauss_legendre(n + 1, -g, g).unwrap();
            let rows: Vec<_> = q.nodes.iter().map(|&x| s.frame_row(x)).collect();
            for i in 0..=n {
                for j in 0..=n {
                    let v: f64 = rows.iter().zip(&q.weights).map(|(r, w)| w * r[i] * r[j]).sum();
                    let e = if i == j { 1.0 } else { 0.0 };
                    assert!((v - e).abs() < 1e-12, "gamma {g} ({i},{j}) {v}");
                }
            }
        }
    }
}
