use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::oracle::{bmn_oracle, ExtremalResult, MAX_ORACLE_DEGREE, MAX_ORACLE_M};
use crate::error::{invalid, Result};
use crate::numerics::{equispaced_points, legendre_eval};

/// Points on the interval grids used to measure `||p||_[-1,1]` and
/// `||p||_[-γ,γ]` during the search.
const INTERVAL_GRID: usize = 10_001;
/// The final witness is rescaled against a finer extended-interval grid.
const CERTIFY_GRID: usize = 100_001;

#[derive(Debug, Clone, Copy)]
pub struct SearchBudget {
    pub restarts: usize,
    /// Coordinate sweeps per restart.
    pub sweeps: usize,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            restarts: 50,
            sweeps: 60,
            seed: 0xc0ffee,
        }
    }
}

/// Values of `P_0 .. P_n` on a point set, stored per basis function.
struct Basis {
    cols: Vec<Vec<f64>>,
}

impl Basis {
    fn new(n: usize, pts: &[f64]) -> Self {
        let mut cols = vec![Vec::with_capacity(pts.len()); n + 1];
        for &x in pts {
            for (c, v) in cols.iter_mut().zip(legendre_eval(n, x)) {
                c.push(v);
            }
        }
        Self { cols }
    }

    fn values(&self, coeffs: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.cols[0].len()];
        for (c, col) in coeffs.iter().zip(&self.cols) {
            for (o, &v) in out.iter_mut().zip(col) {
                *o += c * v;
            }
        }
        out
    }
}

fn sup(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, &x| m.max(x.abs()))
}

struct Problem {
    epsilon: f64,
    nodes: Basis,
    inner: Basis,
    outer: Basis,
}

impl Problem {
    /// Scale-invariant objective: `||p||_[-1,1]` after rescaling `p` to
    /// satisfy both constraints.
    fn ratio(&self, at_nodes: &[f64], inner: &[f64], outer: &[f64]) -> f64 {
        let denom = sup(at_nodes).max(self.epsilon * sup(outer));
        if denom == 0.0 {
            0.0
        } else {
            sup(inner) / denom
        }
    }
}

/// A lower bound on
/// `C(m, n, γ, ε) = sup { ||p||_[-1,1] : p in P_n, ||p||_m <= 1, ||p||_[-γ,γ] <= 1/ε }`.
///
/// Pattern search over Legendre coefficients with the constraints enforced by
/// rescaling, started from the constant polynomial, the `B(m, n)` witness when
/// it is computable, and random polynomials. The returned witness satisfies
/// the node constraints exactly and the extended-interval constraint on a
/// 100,001-point grid, so `value` is attained by a feasible polynomial.
pub fn cmn_lower_bound(
    m: usize,
    n: usize,
    gamma: f64,
    epsilon: f64,
    budget: SearchBudget,
) -> Result<ExtremalResult> {
    if m == 0 {
        return invalid("need m >= 1");
    }
    if !(gamma >= 1.0) || !gamma.is_finite() {
        return invalid("gamma must be finite and >= 1");
    }
    if !(0.0..=1.0).contains(&epsilon) {
        return invalid("epsilon must lie in [0, 1]");
    }
    let nodes: Vec<f64> = equispaced_points(m + 1);
    let inner_pts: Vec<f64> = equispaced_points(INTERVAL_GRID);
    let outer_pts: Vec<f64> = inner_pts.iter().map(|&x| gamma * x).collect();
    let problem = Problem {
        epsilon,
        nodes: Basis::new(n, &nodes),
        inner: Basis::new(n, &inner_pts),
        outer: Basis::new(n, &outer_pts),
    };

    let mut starts: Vec<Vec<f64>> = Vec::new();
    let mut constant = vec![0.0; n + 1];
    constant[0] = 1.0;
    starts.push(constant);
    if m <= MAX_ORACLE_M && n <= MAX_ORACLE_DEGREE && n <= m {
        starts.push(bmn_oracle(m, n, 2001)?.witness_coeffs);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    for _ in 0..budget.restarts {
        starts.push((0..=n).map(|_| rng.gen_range(-1.0..1.0)).collect());
    }

    let mut best: Option<(f64, Vec<f64>)> = None;
    for start in starts {
        let (val, coeffs) = pattern_search(&problem, start, budget.sweeps);
        if best.as_ref().map_or(true, |b| val > b.0) {
            best = Some((val, coeffs));
        }
    }
    let (_, coeffs) = best.expect("at least one start");
    Ok(certify(&problem, coeffs, gamma))
}

fn pattern_search(problem: &Problem, mut coeffs: Vec<f64>, sweeps: usize) -> (f64, Vec<f64>) {
    let mut at_nodes = problem.nodes.values(&coeffs);
    let mut inner = problem.inner.values(&coeffs);
    let mut outer = problem.outer.values(&coeffs);
    let mut value = problem.ratio(&at_nodes, &inner, &outer);
    let mut step = 0.5 * coeffs.iter().fold(0.0f64, |a, &c| a.max(c.abs())).max(1e-3);
    let mut trial = (Vec::new(), Vec::new(), Vec::new());
    for _ in 0..sweeps {
        let mut improved = false;
        for k in 0..coeffs.len() {
            for &dir in &[1.0, -1.0] {
                let delta = dir * step;
                shifted(&at_nodes, &problem.nodes.cols[k], delta, &mut trial.0);
                shifted(&inner, &problem.inner.cols[k], delta, &mut trial.1);
                shifted(&outer, &problem.outer.cols[k], delta, &mut trial.2);
                let v = problem.ratio(&trial.0, &trial.1, &trial.2);
                if v > value * (1.0 + 1e-12) {
                    value = v;
                    coeffs[k] += delta;
                    std::mem::swap(&mut at_nodes, &mut trial.0);
                    std::mem::swap(&mut inner, &mut trial.1);
                    std::mem::swap(&mut outer, &mut trial.2);
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            step *= 0.5;
            if step < 1e-12 {
                break;
            }
        }
    }
    (value, coeffs)
}

fn shifted(base: &[f64], col: &[f64], delta: f64, out: &mut Vec<f64>) {
    out.clear();
    out.extend(base.iter().zip(col).map(|(&b, &c)| b + delta * c));
}

/// Rescales `coeffs` onto the feasible set and reports its attained value.
fn certify(problem: &Problem, coeffs: Vec<f64>, gamma: f64) -> ExtremalResult {
    let node_sup = sup(&problem.nodes.values(&coeffs));
    let outer_sup = if problem.epsilon > 0.0 {
        let fine: Vec<f64> = equispaced_points::<f64>(CERTIFY_GRID)
            .into_iter()
            .map(|x| gamma * x)
            .collect();
        fine.iter()
            .map(|&x| crate::numerics::legendre_series(&coeffs, x).abs())
            .fold(0.0, f64::max)
    } else {
        0.0
    };
    let scale = 1.0 / node_sup.max(problem.epsilon * outer_sup);
    let witness: Vec<f64> = coeffs.iter().map(|c| c * scale).collect();
    let inner = problem.inner.values(&witness);
    let (idx, value) = inner
        .iter()
        .map(|v| v.abs())
        .enumerate()
        .fold((0, 0.0), |b, (i, v)| if v > b.1 { (i, v) } else { b });
    let witness_x = equispaced_points::<f64>(INTERVAL_GRID)[idx];
    ExtremalResult {
        value,
        witness_coeffs: witness,
        witness_x,
    }
}
