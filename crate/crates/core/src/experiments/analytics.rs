use num_complex::Complex64;

use crate::error::{invalid, Result};

/// `τ = γ + sqrt(γ² - 1)`, the Bernstein parameter of the ellipse through `±γ`.
pub fn tau_of_gamma(gamma: f64) -> Result<f64> {
    if !(gamma >= 1.0) || !gamma.is_finite() {
        return invalid("tau needs a finite gamma >= 1");
    }
    Ok(gamma + (gamma * gamma - 1.0).sqrt())
}

/// `log θ / log τ(γ)`.
pub fn breakpoint_exponent(theta: f64, gamma: f64) -> Result<f64> {
    let tau = tau_of_gamma(gamma)?;
    if !(theta > 1.0) {
        return invalid("breakpoint needs theta > 1");
    }
    if theta >= tau {
        return invalid(format!(
            "theta = {theta} >= tau = {tau}: the ellipse contains [-gamma, gamma] and there is no breakpoint"
        ));
    }
    Ok(theta.ln() / tau.ln())
}

/// Error level `ε^{log θ / log τ}` below which the `θ^{-n}` decay stops.
pub fn breakpoint(epsilon: f64, theta: f64, gamma: f64) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return invalid("breakpoint needs 0 < epsilon < 1");
    }
    Ok(epsilon.powf(breakpoint_exponent(theta, gamma)?))
}

/// Per-sample rate `ρ = θ^{c*}`, `c* = sqrt(γ² - 1) / (36 log(1/ε))`.
pub fn rho_rate(theta: f64, epsilon: f64, gamma: f64) -> Result<f64> {
    if !(theta > 1.0) || !(gamma > 1.0) {
        return invalid("rho needs theta > 1 and gamma > 1");
    }
    if !(epsilon > 0.0) || epsilon > (-1.0f64).exp() {
        return invalid("rho needs 0 < epsilon <= 1/e");
    }
    let c = (gamma * gamma - 1.0).sqrt() / (36.0 * (1.0 / epsilon).ln());
    Ok(theta.powf(c))
}

/// Degree `n₀ = π γ ω` at which `exp(i ω π x)` starts to be resolved.
pub fn resolution_point(omega: f64, gamma: f64) -> Result<f64> {
    if !(omega > 0.0) || !(gamma >= 1.0) {
        return invalid("resolution point needs omega > 0 and gamma >= 1");
    }
    Ok(std::f64::consts::PI * gamma * omega)
}

/// Max of `|f|` over `samples` equally spaced points of the boundary of the
/// Bernstein ellipse `E_θ`, `z = (w + 1/w)/2` with `w = θ e^{iφ}`.
pub fn ellipse_sup_norm(f: impl Fn(Complex64) -> Complex64, theta: f64, samples: usize) -> f64 {
    (0..samples)
        .map(|i| {
            let phi = 2.0 * std::f64::consts::PI * i as f64 / samples as f64;
            let w = Complex64::from_polar(theta, phi);
            f((w + w.inv()) / 2.0).norm()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn tau_examples() {
        assert_eq!(tau_of_gamma(1.0).unwrap(), 1.0);
        assert!((tau_of_gamma(1.8).unwrap() - 3.30).abs() < 5e-3);
        assert!((tau_of_gamma(2f64.sqrt()).unwrap() - (2f64.sqrt() + 1.0)).abs() < 1e-15);
        assert!(tau_of_gamma(0.9).is_err());
    }

    #[test]
    fn breakpoint_examples() {
        let s = 2f64.sqrt() + 1.0;
        assert!((breakpoint_exponent(s, 1.8).unwrap() - 0.738842869).abs() < 1e-9);
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        let want = golden.ln() / (2.0 + 3f64.sqrt()).ln();
        assert!((breakpoint_exponent(golden, 2.0).unwrap() - want).abs() < 1e-15);
        assert!((want - 0.365396514).abs() < 1e-9);
        let b = breakpoint(1e-10, golden, 2.0).unwrap();
        assert!((b - 2.21837446e-4).abs() < 1e-12);
        let tau = tau_of_gamma(1.5).unwrap();
        let near = breakpoint(1e-8, tau * (1.0 - 1e-12), 1.5).unwrap();
        assert!((near / 1e-8 - 1.0).abs() < 1e-9);
        assert!(breakpoint(1e-8, 4.0, 1.8).is_err());
    }

    #[test]
    fn rho_examples() {
        let e = 1f64.exp();
        assert!((rho_rate(36f64.exp(), 1.0 / e, 2f64.sqrt()).unwrap() - e).abs() < 1e-12);
        let r = rho_rate(2f64.sqrt() + 1.0, 1e-14, 1.4).unwrap();
        assert!((r - 1.00074440797786).abs() < 1e-13);
        assert!((rho_rate(3.0, 1e-8, 1.0 + 1e-14).unwrap() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn resolution_examples() {
        let pi = std::f64::consts::PI;
        assert!((resolution_point(40.0, 1.25).unwrap() - 50.0 * pi).abs() < 1e-12);
        assert_eq!(resolution_point(7.0, 1.0).unwrap(), 7.0 * pi);
        assert!((resolution_point(10.0, 2.0).unwrap() - 20.0 * pi).abs() < 1e-12);
    }

    #[test]
    fn ellipse_norm_of_exponential() {
        // max |e^z| on E_θ is e^{(θ + 1/θ)/2}, attained at the right vertex
        let v = ellipse_sup_norm(|z| z.exp(), 2.0, 4000);
        assert!((v - 1.25f64.exp()).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn breakpoint_monotone(eps in 1e-14f64..1e-2, g in 1.05f64..3.0, t in 0.01f64..0.99) {
            let tau = tau_of_gamma(g).unwrap();
            let theta = 1.0 + t * (tau - 1.0);
            let b = breakpoint(eps, theta, g).unwrap();
            // increases with ε and γ, decreases with θ
            prop_assert!(breakpoint(eps * 1.5, theta, g).unwrap() > b);
            let theta2 = 1.0 + (t + 0.5 * (1.0 - t)) * (tau - 1.0);
            prop_assert!(breakpoint(eps, theta2, g).unwrap() < b);
            prop_assert!(breakpoint(eps, theta, g * 1.1).unwrap() > b);
        }

        #[test]
        fn rho_monotone(theta in 1.01f64..10.0, eps in 1e-14f64..0.3, g in 1.01f64..3.0) {
            let r = rho_rate(theta, eps, g).unwrap();
            prop_assert!(r > 1.0);
            prop_assert!(rho_rate(theta * 1.1, eps, g).unwrap() > r);
            prop_assert!(rho_rate(theta, eps * 1.1, g).unwrap() > r);
            prop_assert!(rho_rate(theta, eps, g * 1.1).unwrap() > r);
        }
    }
}
