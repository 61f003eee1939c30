use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::functions::TestFunction;
use crate::error::{invalid, Error, Result};
use crate::frame::{epsilon_prime, scaling_m_of_n, FineGridFactor, FrameOperator, FrameSpec, DEFAULT_FINE_GRID};

/// Outcome of one sweep point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecordFlag {
    Ok,
    /// The fit or a condition number failed numerically; the measured fields
    /// are NaN.
    Failed,
    /// No admissible `m` met the condition-number target.
    Unsatisfiable,
}

impl fmt::Display for RecordFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RecordFlag::Ok => "ok",
            RecordFlag::Failed => "failed",
            RecordFlag::Unsatisfiable => "unsatisfiable",
        })
    }
}

impl FromStr for RecordFlag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "ok" => Ok(RecordFlag::Ok),
            "failed" => Ok(RecordFlag::Failed),
            "unsatisfiable" => Ok(RecordFlag::Unsatisfiable),
            other => Err(format!("unknown flag `{other}`")),
        }
    }
}

/// One row of a sweep: parameters, errors on the fine grid and condition
/// numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub function: String,
    pub n: usize,
    pub m: usize,
    pub gamma: f64,
    pub epsilon: f64,
    pub eta: f64,
    pub error_inf: f64,
    pub error_l2: f64,
    pub cond_2: f64,
    pub cond_inf: f64,
    pub flag: RecordFlag,
}

impl SweepRecord {
    fn failed(function: &str, n: usize, m: usize, gamma: f64, epsilon: f64, eta: f64, flag: RecordFlag) -> Self {
        Self {
            function: function.to_string(),
            n,
            m,
            gamma,
            epsilon,
            eta,
            error_inf: f64::NAN,
            error_l2: f64::NAN,
            cond_2: f64::NAN,
            cond_inf: f64::NAN,
            flag,
        }
    }
}

/// How the number of samples follows from the degree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sampling {
    /// `m = ceil(η n)`, truncation at `ε`.
    Eta(f64),
    /// A fixed `m`, truncation at `ε`.
    Fixed(usize),
    /// `m = ceil(36 n log(1/ε) / sqrt(γ² - 1))`, truncation at
    /// `ε' = ε (n + 1) / sqrt(γ)`.
    Scaling,
}

impl Sampling {
    pub fn m_of_n(&self, n: usize, epsilon: f64, gamma: f64) -> Result<usize> {
        match *self {
            Sampling::Eta(eta) => Ok(((eta * n as f64).ceil() as usize).max(1)),
            Sampling::Fixed(m) => Ok(m),
            Sampling::Scaling => scaling_m_of_n(n, epsilon, gamma).map(|m| m.max(1)),
        }
    }

    pub fn truncation(&self, n: usize, epsilon: f64, gamma: f64) -> f64 {
        match self {
            Sampling::Scaling => epsilon_prime(epsilon, n, gamma),
            _ => epsilon,
        }
    }

    fn eta_field(&self, n: usize, m: usize) -> f64 {
        match *self {
            Sampling::Eta(eta) => eta,
            _ => m as f64 / n.max(1) as f64,
        }
    }
}

/// Uniform perturbation of the samples, for stability probes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Noise {
    pub amplitude: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    /// Equispaced points for the error norms and for `cond_2`.
    pub fine_grid: usize,
    /// Equispaced points for `cond_inf`. The cost of `cond_inf` is
    /// proportional to this times `m` times `n`.
    pub cond_grid: usize,
    pub noise: Option<Noise>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            fine_grid: DEFAULT_FINE_GRID,
            cond_grid: DEFAULT_FINE_GRID,
            noise: None,
        }
    }
}

pub(crate) fn check_common(gamma: f64, epsilon: f64, config: &SweepConfig) -> Result<()> {
    if !(gamma >= 1.0) || !gamma.is_finite() {
        return invalid("gamma must be finite and >= 1");
    }
    if !(epsilon >= 0.0) || !epsilon.is_finite() {
        return invalid("epsilon must be finite and >= 0");
    }
    if config.fine_grid < 2 || config.cond_grid < 2 {
        return invalid("fine grids need at least two points");
    }
    if let Some(noise) = config.noise {
        if !(noise.amplitude >= 0.0) || !noise.amplitude.is_finite() {
            return invalid("noise amplitude must be finite and >= 0");
        }
    }
    Ok(())
}

/// Samples of `f` on the `m + 1` equispaced nodes, with optional noise.
pub(crate) fn samples(function: &TestFunction, op: &FrameOperator<f64>, n: usize, noise: Option<Noise>) -> Vec<Complex64> {
    let mut values: Vec<Complex64> = op.grid().nodes().iter().map(|&x| function.eval(x)).collect();
    if let Some(noise) = noise {
        if noise.amplitude > 0.0 {
            let mut rng = ChaCha8Rng::seed_from_u64(noise.seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            for v in &mut values {
                v.re += noise.amplitude * rng.gen_range(-1.0..=1.0);
            }
        }
    }
    values
}

/// Fit at one `(n, m)` and measure everything a record holds.
pub(crate) fn measure(
    function: &TestFunction,
    op: &FrameOperator<f64>,
    truncation: f64,
    factor: &FineGridFactor<f64>,
    config: &SweepConfig,
) -> Result<[f64; 4]> {
    let n = op.spec().n();
    let fit = op.fit(truncation, &samples(function, op, n, config.noise))?;
    let errors = fit.errors_on_fine_grid(|x| function.eval(x), config.fine_grid)?;
    let cond_2 = op.cond_2(truncation, factor)?;
    let cond_inf = op.cond_inf(truncation, config.cond_grid)?;
    let out = [errors.inf, errors.l2, cond_2, cond_inf];
    if out.iter().all(|v| v.is_finite()) {
        Ok(out)
    } else {
        Err(Error::NumericalFailure("non-finite error or condition number".into()))
    }
}

/// Errors and condition numbers of the frame approximation of `function`
/// for each degree in `n_list`.
///
/// Numerical failures at one degree produce a record flagged
/// [`RecordFlag::Failed`] and do not stop the sweep. Records come back in
/// the order of `n_list`.
pub fn sweep_error_vs_n(
    function: &TestFunction,
    gamma: f64,
    epsilon: f64,
    sampling: Sampling,
    n_list: &[usize],
    config: &SweepConfig,
) -> Result<Vec<SweepRecord>> {
    check_common(gamma, epsilon, config)?;
    match sampling {
        Sampling::Eta(eta) if !(eta >= 1.0) || !eta.is_finite() => {
            return invalid("eta must be finite and >= 1")
        }
        Sampling::Fixed(0) => return invalid("need m >= 1"),
        Sampling::Scaling => {
            if !(gamma > 1.0) || !(epsilon > 0.0) || epsilon > (-1.0f64).exp() {
                return invalid("the scaling rule needs gamma > 1 and 0 < epsilon <= 1/e");
            }
        }
        _ => {}
    }
    let Some(&n_max) = n_list.iter().max() else {
        return Ok(Vec::new());
    };
    let factor = FineGridFactor::new(&FrameSpec::new(gamma, n_max)?, config.fine_grid)?;
    n_list
        .par_iter()
        .map(|&n| -> Result<SweepRecord> {
            let m = sampling.m_of_n(n, epsilon, gamma)?;
            let eta = sampling.eta_field(n, m);
            let truncation = sampling.truncation(n, epsilon, gamma);
            let result = FrameSpec::new(gamma, n)
                .and_then(|spec| FrameOperator::new(spec, m))
                .and_then(|op| measure(function, &op, truncation, &factor.leading(n + 1)?, config));
            Ok(match result {
                Ok([error_inf, error_l2, cond_2, cond_inf]) => SweepRecord {
                    function: function.name.clone(),
                    n,
                    m,
                    gamma,
                    epsilon,
                    eta,
                    error_inf,
                    error_l2,
                    cond_2,
                    cond_inf,
                    flag: RecordFlag::Ok,
                },
                Err(Error::NumericalFailure(_)) => {
                    SweepRecord::failed(&function.name, n, m, gamma, epsilon, eta, RecordFlag::Failed)
                }
                Err(e) => return Err(e),
            })
        })
        .collect()
}

/// A single record at explicit `(n, m)` or via a sampling rule.
pub fn approximate(
    function: &TestFunction,
    gamma: f64,
    epsilon: f64,
    n: usize,
    sampling: Sampling,
    config: &SweepConfig,
) -> Result<SweepRecord> {
    let mut recs = sweep_error_vs_n(function, gamma, epsilon, sampling, &[n], config)?;
    Ok(recs.remove(0))
}

/// `a, a + step, ..., <= b`.
pub fn n_range(a: usize, b: usize, step: usize) -> Vec<usize> {
    if step == 0 {
        return vec![a];
    }
    (a..=b).step_by(step).collect()
}
