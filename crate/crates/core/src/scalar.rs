use std::fmt::Debug;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar the numerical core is generic over.
///
/// Implemented for `f32`, `f64` and any other type providing the `num-traits`
/// float interface (extended types such as `f128::f128` work).
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Send + Sync + 'static {
    /// Converts an `f64` literal. Panics only if the type cannot represent
    /// finite `f64` values at all.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal not representable")
    }

    #[inline]
    fn count(n: usize) -> Self {
        Self::from_usize(n).expect("integer not representable")
    }

    #[inline]
    fn int(n: i64) -> Self {
        Self::from_i64(n).expect("integer not representable")
    }

    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }

    #[inline]
    fn half() -> Self {
        Self::one() / Self::two()
    }

    /// Lossy conversion used for reporting.
    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Real for T where T: Float + FloatConst + FromPrimitive + Debug + Send + Sync + 'static {}

/// Cosine accurate to the working precision of `T`.
///
/// `Float::cos` of some extended-precision types is only accurate to
/// double precision; this evaluates a reduced Taylor series in `T` instead.
/// Arguments are reduced with the working-precision value of `pi`, so large
/// arguments lose accuracy in proportion to their magnitude.
pub fn cos_accurate<T: Real>(x: T) -> T {
    let (q, r) = quadrant(x);
    match q {
        0 => taylor_cos(r),
        1 => -taylor_sin(r),
        2 => -taylor_cos(r),
        _ => taylor_sin(r),
    }
}

/// Sine accurate to the working precision of `T`.
pub fn sin_accurate<T: Real>(x: T) -> T {
    let (q, r) = quadrant(x);
    match q {
        0 => taylor_sin(r),
        1 => taylor_cos(r),
        2 => -taylor_sin(r),
        _ => -taylor_cos(r),
    }
}

/// `x = k pi/2 + r` with `|r| <= pi/4`; returns `(k mod 4, r)`.
fn quadrant<T: Real>(x: T) -> (u8, T) {
    let half_pi = T::FRAC_PI_2();
    let k = (x / half_pi).round();
    let r = x - k * half_pi;
    let q = k.to_i64().unwrap_or(0).rem_euclid(4) as u8;
    (q, r)
}

fn taylor_cos<T: Real>(r: T) -> T {
    let r2 = r * r;
    let mut term = T::one();
    let mut sum = T::one();
    let mut k = 0usize;
    loop {
        term = -term * r2 / T::count((2 * k + 1) * (2 * k + 2));
        sum = sum + term;
        k += 1;
        if term.abs() <= T::epsilon() * sum.abs() * T::lit(1e-3) || k > 60 {
            return sum;
        }
    }
}

fn taylor_sin<T: Real>(r: T) -> T {
    let r2 = r * r;
    let mut term = r;
    let mut sum = r;
    let mut k = 1usize;
    loop {
        term = -term * r2 / T::count((2 * k) * (2 * k + 1));
        sum = sum + term;
        k += 1;
        if term.abs() <= T::epsilon() * sum.abs() * T::lit(1e-3) || k > 60 {
            return sum;
        }
    }
}
