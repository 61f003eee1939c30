use rayon::prelude::*;

use super::functions::TestFunction;
use super::sweep::{check_common, measure, RecordFlag, SweepConfig, SweepRecord};
use crate::error::{invalid, Error, Result};
use crate::frame::{FineGridFactor, FrameOperator, FrameSpec};

/// Truncation threshold as a function of the degree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EpsilonMode {
    Fixed(f64),
    /// `ε = max(θ^{-n}, floor)`.
    Varying { theta: f64, floor: f64 },
}

impl EpsilonMode {
    pub fn epsilon(&self, n: usize) -> f64 {
        match *self {
            EpsilonMode::Fixed(e) => e,
            EpsilonMode::Varying { theta, floor } => theta.powi(-(n as i32)).max(floor),
        }
    }
}

/// The schemes compared in the scaling experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Fig4Scheme {
    /// Least squares in orthonormal Legendre polynomials on `[-1, 1]`:
    /// `γ = 1`, `ε = 0`.
    Pls,
    /// Frame approximation with a fixed threshold.
    Pff { gamma: f64, epsilon: f64 },
    /// Frame approximation with `ε = max(θ^{-n}, floor)`.
    Pfv { gamma: f64, theta: f64, floor: f64 },
}

impl Fig4Scheme {
    pub fn gamma(&self) -> f64 {
        match *self {
            Fig4Scheme::Pls => 1.0,
            Fig4Scheme::Pff { gamma, .. } | Fig4Scheme::Pfv { gamma, .. } => gamma,
        }
    }

    pub fn epsilon_mode(&self) -> EpsilonMode {
        match *self {
            Fig4Scheme::Pls => EpsilonMode::Fixed(0.0),
            Fig4Scheme::Pff { epsilon, .. } => EpsilonMode::Fixed(epsilon),
            Fig4Scheme::Pfv { theta, floor, .. } => EpsilonMode::Varying { theta, floor },
        }
    }

    /// Short label, e.g. `PLS`, `PFF`, `PFV(1.5)`.
    pub fn label(&self) -> String {
        match self {
            Fig4Scheme::Pls => "PLS".into(),
            Fig4Scheme::Pff { .. } => "PFF".into(),
            Fig4Scheme::Pfv { theta, .. } => format!("PFV({theta})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fig4Config {
    /// Largest admissible discrete-L² condition number.
    pub kappa_star: f64,
    /// Largest `m` tried before a degree is declared unsatisfiable.
    pub m_max: usize,
    pub sweep: SweepConfig,
}

impl Default for Fig4Config {
    fn default() -> Self {
        Self {
            kappa_star: 100.0,
            m_max: 20_000,
            sweep: SweepConfig::default(),
        }
    }
}

/// Smallest `m` in `[lo, hi]` with `kappa(m) <= target`, or `None`.
///
/// Bisection assumes `kappa` is nonincreasing in `m`. Every evaluated pair is
/// kept; if they contradict monotonicity the bracket is rescanned linearly
/// from `lo`.
pub fn smallest_admissible_m(
    lo: usize,
    hi: usize,
    target: f64,
    mut kappa: impl FnMut(usize) -> Result<f64>,
) -> Result<Option<usize>> {
    if lo > hi {
        return Ok(None);
    }
    let mut seen: Vec<(usize, f64)> = Vec::new();
    let mut eval = |m: usize, seen: &mut Vec<(usize, f64)>| -> Result<f64> {
        let k = kappa(m)?;
        seen.push((m, k));
        Ok(k)
    };
    if eval(lo, &mut seen)? <= target {
        return Ok(Some(lo));
    }
    if eval(hi, &mut seen)? > target {
        return Ok(None);
    }
    let (mut a, mut b) = (lo, hi);
    while b - a > 1 {
        let mid = a + (b - a) / 2;
        if eval(mid, &mut seen)? <= target {
            b = mid;
        } else {
            a = mid;
        }
    }
    seen.sort_by_key(|p| p.0);
    let monotone = seen
        .windows(2)
        .all(|w| w[1].1 <= w[0].1 * (1.0 + 1e-9) + 1e-12);
    if monotone {
        return Ok(Some(b));
    }
    for m in lo..=hi {
        if kappa(m)? <= target {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// For each degree, the smallest `m >= n` whose discrete-L² condition number
/// is at most `kappa_star`, with errors and condition numbers recorded at
/// that `m`. Degrees with no admissible `m <= m_max` are flagged
/// [`RecordFlag::Unsatisfiable`].
pub fn sweep_fig4(
    function: &TestFunction,
    gamma: f64,
    mode: EpsilonMode,
    n_list: &[usize],
    config: &Fig4Config,
) -> Result<Vec<SweepRecord>> {
    check_common(gamma, mode.epsilon(0), &config.sweep)?;
    if !(config.kappa_star >= 1.0) || config.m_max == 0 {
        return invalid("need kappa_star >= 1 and m_max >= 1");
    }
    if let EpsilonMode::Varying { theta, floor } = mode {
        if !(theta > 1.0) || !(floor >= 0.0) {
            return invalid("varying epsilon needs theta > 1 and floor >= 0");
        }
    }
    let Some(&n_max) = n_list.iter().max() else {
        return Ok(Vec::new());
    };
    let factor = FineGridFactor::new(&FrameSpec::new(gamma, n_max)?, config.sweep.fine_grid)?;
    n_list
        .par_iter()
        .map(|&n| -> Result<SweepRecord> {
            let epsilon = mode.epsilon(n);
            let spec = FrameSpec::new(gamma, n)?;
            let g = factor.leading(n + 1)?;
            let outcome = smallest_admissible_m(n.max(1), config.m_max, config.kappa_star, |m| {
                FrameOperator::new(spec.clone(), m)?.cond_2(epsilon, &g)
            })
            .and_then(|found| match found {
                None => Ok(None),
                Some(m) => {
                    let op = FrameOperator::new(spec.clone(), m)?;
                    measure(function, &op, epsilon, &g, &config.sweep).map(|v| Some((m, v)))
                }
            });
            let make_failed = |m: usize, flag| SweepRecord {
                function: function.name.clone(),
                n,
                m,
                gamma,
                epsilon,
                eta: m as f64 / n.max(1) as f64,
                error_inf: f64::NAN,
                error_l2: f64::NAN,
                cond_2: f64::NAN,
                cond_inf: f64::NAN,
                flag,
            };
            Ok(match outcome {
                Ok(Some((m, [error_inf, error_l2, cond_2, cond_inf]))) => SweepRecord {
                    error_inf,
                    error_l2,
                    cond_2,
                    cond_inf,
                    flag: RecordFlag::Ok,
                    ..make_failed(m, RecordFlag::Ok)
                },
                Ok(None) => make_failed(config.m_max, RecordFlag::Unsatisfiable),
                Err(Error::NumericalFailure(_)) => make_failed(0, RecordFlag::Failed),
                Err(e) => return Err(e),
            })
        })
        .collect()
}

/// [`sweep_fig4`] for one of the named schemes.
pub fn sweep_fig4_scheme(
    function: &TestFunction,
    scheme: Fig4Scheme,
    n_list: &[usize],
    config: &Fig4Config,
) -> Result<Vec<SweepRecord>> {
    sweep_fig4(function, scheme.gamma(), scheme.epsilon_mode(), n_list, config)
}

/// Least-squares slope of `log y` against `log x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.0 > 0.0 && p.1 > 0.0)
        .map(|p| (p.0.ln(), p.1.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let len = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / len;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / len;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> Fig4Config {
        Fig4Config {
            kappa_star: 100.0,
            m_max: 5000,
            sweep: SweepConfig {
                fine_grid: 5001,
                cond_grid: 501,
                noise: None,
            },
        }
    }

    #[test]
    fn bisection_finds_threshold() {
        let f = |m: usize| Ok(1000.0 / m as f64);
        assert_eq!(smallest_admissible_m(1, 1000, 10.0, f).unwrap(), Some(100));
        assert_eq!(smallest_admissible_m(1, 50, 10.0, f).unwrap(), None);
        assert_eq!(smallest_admissible_m(200, 1000, 10.0, f).unwrap(), Some(200));
    }

    #[test]
    fn non_monotone_falls_back_to_scan() {
        // a window that passes, then a rise above the starting value
        let f = |m: usize| {
            Ok(match m {
                0..=29 => 99.0,
                30..=39 => 5.0,
                40..=89 => 200.0,
                _ => 1.0,
            })
        };
        assert_eq!(smallest_admissible_m(1, 100, 10.0, f).unwrap(), Some(30));
    }

    #[test]
    fn varying_epsilon_has_a_floor() {
        let mode = EpsilonMode::Varying {
            theta: 2.0,
            floor: 1e-14,
        };
        assert_eq!(mode.epsilon(3), 0.125);
        assert_eq!(mode.epsilon(100), 1e-14);
    }

    #[test]
    fn found_m_meets_target_and_predecessor_does_not() {
        let f = TestFunction::fig4_f1();
        let cfg = quick();
        let recs = sweep_fig4(&f, 1.0, EpsilonMode::Fixed(0.0), &[18, 26], &cfg).unwrap();
        for r in &recs {
            assert_eq!(r.flag, RecordFlag::Ok);
            assert!(r.cond_2 <= 100.0);
            let spec = FrameSpec::new(1.0, r.n).unwrap();
            let g = FineGridFactor::new(&spec, cfg.sweep.fine_grid).unwrap();
            let before = FrameOperator::new(spec, r.m - 1).unwrap().cond_2(0.0, &g).unwrap();
            assert!(before > 100.0, "n = {}: m - 1 = {} has cond {before}", r.n, r.m - 1);
        }
        assert!(recs[1].m > recs[0].m);
    }

    #[test]
    fn unit_target_is_unsatisfiable() {
        let f = TestFunction::fig4_f2();
        let mut cfg = quick();
        cfg.kappa_star = 1.0;
        cfg.m_max = 300;
        let recs = sweep_fig4(&f, 1.25, EpsilonMode::Fixed(1e-14), &[8], &cfg).unwrap();
        assert_eq!(recs[0].flag, RecordFlag::Unsatisfiable);
    }

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<(f64, f64)> = (1..10).map(|i| (i as f64, 3.0 * (i as f64).powi(2))).collect();
        assert!((log_log_slope(&pts).unwrap() - 2.0).abs() < 1e-12);
    }
}
