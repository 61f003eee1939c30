use crate::scalar::Real;

/// `P_0(x) .. P_n(x)` for the Legendre polynomials normalised by `P_i(1) = 1`.
pub fn legendre_eval<T: Real>(n: usize, x: T) -> Vec<T> {
    let mut out = vec![T::zero(); n + 1];
    legendre_eval_into(x, &mut out);
    out
}

/// Fills `out[i] = P_i(x)` for `i < out.len()`.
pub fn legendre_eval_into<T: Real>(x: T, out: &mut [T]) {
    if out.is_empty() {
        return;
    }
    out[0] = T::one();
    if out.len() == 1 {
        return;
    }
    out[1] = x;
    for i in 1..out.len() - 1 {
        let fi = T::count(i);
        out[i + 1] = ((fi + fi + T::one()) * x * out[i] - fi * out[i - 1]) / (fi + T::one());
    }
}

/// `sum_i coeffs[i] * P_i(x)` by forward recurrence.
pub fn legendre_series<T: Real>(coeffs: &[T], x: T) -> T {
    let mut acc = T::zero();
    let (mut prev, mut cur) = (T::zero(), T::one());
    for (i, &c) in coeffs.iter().enumerate() {
        acc = acc + c * cur;
        let fi = T::count(i);
        let next = ((fi + fi + T::one()) * x * cur - fi * prev) / (fi + T::one());
        prev = cur;
        cur = next;
    }
    acc
}

/// `k`-th derivatives `P_0^{(k)}(x) .. P_n^{(k)}(x)`.
///
/// Uses the recurrence obtained by differentiating the three-term recurrence
/// `j` times:
/// `(i+1) P_{i+1}^{(j)} = (2i+1) (x P_i^{(j)} + j P_i^{(j-1)}) - i P_{i-1}^{(j)}`,
/// climbing from `j = 0` to `k`. Entries with `i < k` are exactly zero.
pub fn legendre_deriv_eval<T: Real>(n: usize, k: usize, x: T) -> Vec<T> {
    let mut lower = legendre_eval(n, x);
    if k == 0 {
        return lower;
    }
    let mut cur = vec![T::zero(); n + 1];
    for j in 1..=k {
        let fj = T::count(j);
        cur[0] = T::zero();
        if n >= 1 {
            cur[1] = if j == 1 { T::one() } else { T::zero() };
        }
        for i in 1..n {
            let fi = T::count(i);
            cur[i + 1] = ((fi + fi + T::one()) * (x * cur[i] + fj * lower[i]) - fi * cur[i - 1])
                / (fi + T::one());
        }
        std::mem::swap(&mut lower, &mut cur);
    }
    lower
}

/// Chebyshev polynomials of the first kind `T_0(x) .. T_n(x)`.
pub fn chebyshev_eval<T: Real>(n: usize, x: T) -> Vec<T> {
    let mut out = vec![T::zero(); n + 1];
    out[0] = T::one();
    if n >= 1 {
        out[1] = x;
    }
    for i in 1..n {
        out[i + 1] = T::two() * x * out[i] - out[i - 1];
    }
    out
}
