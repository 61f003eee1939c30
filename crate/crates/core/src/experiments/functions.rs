use std::fmt;

use num_complex::Complex64;

use crate::error::{invalid, Result};

/// Regularity class of a test function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothness {
    /// Analytic in a Bernstein ellipse of finite parameter.
    Analytic,
    Entire,
    /// `k` continuous derivatives.
    Ck(u32),
}

impl fmt::Display for Smoothness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Smoothness::Analytic => write!(f, "analytic"),
            Smoothness::Entire => write!(f, "entire"),
            Smoothness::Ck(k) => write!(f, "C^{k}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Kind {
    /// `1 / (1 + a^2 x^2)`.
    Lorentzian(f64),
    /// `1 / (a - b x)`.
    Pole { a: f64, b: f64 },
    /// `25 sqrt(9x^2 - 10)`, continued from `[-1, 1]` as `25 i sqrt(10 - 9x^2)`.
    Branch,
    /// `exp(i omega pi x)`.
    Oscillatory(f64),
}

/// A named function on `[-1, 1]` with its analyticity data.
#[derive(Debug, Clone, PartialEq)]
pub struct TestFunction {
    pub name: String,
    /// Largest Bernstein-ellipse parameter of analyticity, `inf` if entire.
    pub theta_star: f64,
    pub omega: Option<f64>,
    pub smoothness: Smoothness,
    kind: Kind,
}

impl TestFunction {
    fn lorentzian(name: &str, a: f64) -> Self {
        // poles at ±i/a: theta = 1/a + sqrt(1 + 1/a^2)
        let y = 1.0 / a;
        Self {
            name: name.into(),
            theta_star: y + (1.0 + y * y).sqrt(),
            omega: None,
            smoothness: Smoothness::Analytic,
            kind: Kind::Lorentzian(a),
        }
    }

    fn pole(name: &str, a: f64, b: f64) -> Self {
        let x0 = a / b;
        Self {
            name: name.into(),
            theta_star: x0 + (x0 * x0 - 1.0).sqrt(),
            omega: None,
            smoothness: Smoothness::Analytic,
            kind: Kind::Pole { a, b },
        }
    }

    pub fn runge1() -> Self {
        Self::lorentzian("runge1", 1.0)
    }

    pub fn fig2_f1() -> Self {
        Self::lorentzian("fig2_f1", 2.0)
    }

    pub fn fig2_f2() -> Self {
        Self::pole("fig2_f2", 10.0, 9.0)
    }

    pub fn fig2_f3() -> Self {
        Self {
            name: "fig2_f3".into(),
            theta_star: (10.0f64 / 9.0).sqrt() + 1.0 / 3.0,
            omega: None,
            smoothness: Smoothness::Analytic,
            kind: Kind::Branch,
        }
    }

    pub fn fig4_f1() -> Self {
        Self::lorentzian("fig4_f1", 4.0)
    }

    pub fn fig4_f2() -> Self {
        Self::pole("fig4_f2", 30.0, 29.0)
    }

    pub fn osc(omega: f64) -> Self {
        Self {
            name: format!("osc({omega})"),
            theta_star: f64::INFINITY,
            omega: Some(omega),
            smoothness: Smoothness::Entire,
            kind: Kind::Oscillatory(omega),
        }
    }

    /// Looks a function up by name. `osc(ω)` and `osc:ω` are both accepted.
    pub fn by_name(name: &str) -> Result<Self> {
        let name = name.trim();
        if let Some(rest) = name.strip_prefix("osc") {
            let arg = rest
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .or_else(|| rest.strip_prefix(':'));
            return match arg.map(|a| a.trim().parse::<f64>()) {
                Some(Ok(w)) if w.is_finite() && w > 0.0 => Ok(Self::osc(w)),
                _ => invalid(format!("cannot read a positive frequency from `{name}`")),
            };
        }
        registry()
            .into_iter()
            .find(|f| f.name == name)
            .map_or_else(
                || {
                    let known: Vec<String> = registry().into_iter().map(|f| f.name).collect();
                    invalid(format!(
                        "unknown function `{name}`; known: {}, osc(OMEGA)",
                        known.join(", ")
                    ))
                },
                Ok,
            )
    }

    /// Value at a complex point, on the branch continued from `[-1, 1]`.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        match self.kind {
            Kind::Lorentzian(a) => (1.0 + a * a * z * z).inv(),
            Kind::Pole { a, b } => (a - b * z).inv(),
            Kind::Branch => Complex64::i() * 25.0 * (10.0 - 9.0 * z * z).sqrt(),
            Kind::Oscillatory(w) => (Complex64::i() * w * std::f64::consts::PI * z).exp(),
        }
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        self.eval_complex(Complex64::new(x, 0.0))
    }
}

/// The fixed test functions. `osc(ω)` is parametric and available through
/// [`TestFunction::osc`] and [`TestFunction::by_name`]; the registry lists it
/// at `ω = 10`.
pub fn registry() -> Vec<TestFunction> {
    vec![
        TestFunction::runge1(),
        TestFunction::fig2_f1(),
        TestFunction::fig2_f2(),
        TestFunction::fig2_f3(),
        TestFunction::osc(10.0),
        TestFunction::fig4_f1(),
        TestFunction::fig4_f2(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_star_values() {
        let s5 = 5f64.sqrt();
        let cases = [
            (TestFunction::runge1(), 2f64.sqrt() + 1.0),
            (TestFunction::fig2_f1(), (1.0 + s5) / 2.0),
            (TestFunction::fig2_f2(), (10.0 + 19f64.sqrt()) / 9.0),
            (TestFunction::fig2_f3(), (10.0f64 / 9.0).sqrt() + 1.0 / 3.0),
            (TestFunction::fig4_f1(), (17f64.sqrt() + 1.0) / 4.0),
            (TestFunction::fig4_f2(), (30.0 + 59f64.sqrt()) / 29.0),
        ];
        for (f, want) in cases {
            assert!((f.theta_star - want).abs() < 1e-14, "{}", f.name);
        }
        assert!(TestFunction::osc(3.0).theta_star.is_infinite());
    }

    #[test]
    fn singularities_lie_on_the_critical_ellipse() {
        // J(theta* i) and J(theta*) hit the pole/branch point of each function.
        let j = |z: Complex64| (z + z.inv()) / 2.0;
        let runge = TestFunction::runge1();
        let p = j(Complex64::new(0.0, runge.theta_star));
        assert!((p - Complex64::i()).norm() < 1e-14);
        let f2 = TestFunction::fig2_f2();
        assert!((j(Complex64::new(f2.theta_star, 0.0)).re - 10.0 / 9.0).abs() < 1e-14);
        let f3 = TestFunction::fig2_f3();
        let x = j(Complex64::new(f3.theta_star, 0.0)).re;
        assert!((9.0 * x * x - 10.0).abs() < 1e-13);
    }

    #[test]
    fn real_line_values() {
        assert!((TestFunction::runge1().eval(0.5).re - 0.8).abs() < 1e-15);
        let v = TestFunction::fig2_f3().eval(0.5);
        // 25 sqrt(9/4 - 10) = 25 i sqrt(7.75)
        assert!(v.re.abs() < 1e-15 && (v.im - 25.0 * 7.75f64.sqrt()).abs() < 1e-12);
        let o = TestFunction::osc(2.0).eval(0.25);
        assert!((o - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        for f in registry() {
            for i in 0..=100 {
                let x = -1.0 + i as f64 / 50.0;
                assert!(f.eval(x).norm().is_finite());
            }
        }
    }

    #[test]
    fn names_round_trip() {
        for f in registry() {
            assert_eq!(TestFunction::by_name(&f.name).unwrap(), f);
        }
        assert_eq!(TestFunction::by_name("osc:40").unwrap().name, "osc(40)");
        assert_eq!(TestFunction::by_name("osc(2.5)").unwrap().omega, Some(2.5));
        assert!(TestFunction::by_name("osc(-1)").is_err());
        assert!(TestFunction::by_name("sinc").is_err());
    }
}
