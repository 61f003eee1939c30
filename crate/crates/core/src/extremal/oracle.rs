use crate::error::{invalid, Result};
use crate::linalg::Matrix;
use crate::numerics::{equispaced_points, legendre_eval, legendre_series};

pub const MAX_ORACLE_M: usize = 12;
pub const MAX_ORACLE_DEGREE: usize = 6;

/// Node feasibility slack for `|p(x_i)| <= 1`.
const NODE_TOL: f64 = 1e-10;

/// An extremal value together with a polynomial that attains (or
/// approaches) it.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalResult {
    pub value: f64,
    /// Coefficients in the Legendre basis `P_0 .. P_n` (normalised `P_i(1) = 1`).
    pub witness_coeffs: Vec<f64>,
    pub witness_x: f64,
}

impl ExtremalResult {
    pub fn witness_value_at(&self, x: f64) -> f64 {
        legendre_series(&self.witness_coeffs, x)
    }
}

/// Lagrange basis of `support` evaluated at `x`.
pub fn lagrange_basis(support: &[f64], x: f64) -> Vec<f64> {
    support
        .iter()
        .enumerate()
        .map(|(s, &xs)| {
            support
                .iter()
                .enumerate()
                .filter(|&(t, _)| t != s)
                .fold(1.0, |acc, (_, &xt)| acc * (x - xt) / (xs - xt))
        })
        .collect()
}

struct Vertex {
    grid_max: f64,
    argmax: usize,
    subset: Vec<usize>,
    signs: Vec<f64>,
}

/// `B(m, n) = sup { ||p||_[-1,1] : p in P_n, |p(x_i)| <= 1 on the m+1 nodes }`
/// by linear-programming vertex enumeration.
///
/// For a fixed evaluation point the maximum of `|p(x)|` over the polytope
/// `{|p(x_i)| <= 1}` sits at a vertex, i.e. at a polynomial interpolating
/// `±1` on some `n + 1` of the nodes. All subsets and sign patterns are
/// enumerated, infeasible vertices dropped, and the best vertices refined
/// locally between probe points.
pub fn bmn_oracle(m: usize, n: usize, probe_grid_size: usize) -> Result<ExtremalResult> {
    if n > m {
        return invalid(format!("bmn oracle needs n <= m, got n = {n}, m = {m}"));
    }
    if m > MAX_ORACLE_M || n > MAX_ORACLE_DEGREE || m == 0 {
        return invalid(format!(
            "bmn oracle enumerates C(m+1, n+1) * 2^n vertices and is limited to \
             1 <= m <= {MAX_ORACLE_M}, n <= {MAX_ORACLE_DEGREE}; got m = {m}, n = {n}"
        ));
    }
    if probe_grid_size < 2 {
        return invalid("probe grid needs at least two points");
    }
    let nodes: Vec<f64> = equispaced_points(m + 1);
    let probes: Vec<f64> = equispaced_points(probe_grid_size);
    let k = n + 1;

    let mut vertices: Vec<Vertex> = Vec::new();
    for subset in combinations(m + 1, k) {
        let support: Vec<f64> = subset.iter().map(|&i| nodes[i]).collect();
        let at_nodes: Vec<Vec<f64>> = nodes.iter().map(|&x| lagrange_basis(&support, x)).collect();
        let mut at_probes: Option<Vec<Vec<f64>>> = None;
        // p and -p share the same modulus, so the first sign is fixed
        for pattern in 0..(1usize << n) {
            let signs: Vec<f64> = (0..k)
                .map(|s| if s > 0 && (pattern >> (s - 1)) & 1 == 1 { -1.0 } else { 1.0 })
                .collect();
            let feasible = at_nodes.iter().all(|l| {
                let v: f64 = l.iter().zip(&signs).map(|(a, b)| a * b).sum();
                v.abs() <= 1.0 + NODE_TOL
            });
            if !feasible {
                continue;
            }
            let basis = at_probes
                .get_or_insert_with(|| probes.iter().map(|&x| lagrange_basis(&support, x)).collect());
            let (argmax, grid_max) = basis
                .iter()
                .map(|l| l.iter().zip(&signs).map(|(a, b)| a * b).sum::<f64>().abs())
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |best, (j, v)| if v > best.1 { (j, v) } else { best });
            vertices.push(Vertex {
                grid_max,
                argmax,
                subset: subset.clone(),
                signs,
            });
        }
    }
    vertices.sort_by(|a, b| b.grid_max.partial_cmp(&a.grid_max).unwrap());
    let top = vertices[0].grid_max;
    let h = 2.0 / (probe_grid_size - 1) as f64;

    let mut best: Option<(f64, f64, &Vertex)> = None;
    for v in vertices.iter().take_while(|v| v.grid_max >= top * (1.0 - 1e-2)).take(64) {
        let support: Vec<f64> = v.subset.iter().map(|&i| nodes[i]).collect();
        let p = |x: f64| -> f64 {
            lagrange_basis(&support, x)
                .iter()
                .zip(&v.signs)
                .map(|(a, b)| a * b)
                .sum::<f64>()
                .abs()
        };
        let x0 = probes[v.argmax];
        let (x, val) = golden_max(&p, (x0 - h).max(-1.0), (x0 + h).min(1.0));
        let (x, val) = if val >= v.grid_max { (x, val) } else { (x0, v.grid_max) };
        if best.map_or(true, |b| val > b.0) {
            best = Some((val, x, v));
        }
    }
    let (_, x, v) = best.expect("at least the constant vertex is feasible");
    let support: Vec<f64> = v.subset.iter().map(|&i| nodes[i]).collect();
    let coeffs = legendre_interpolant(&support, &v.signs)?;
    Ok(ExtremalResult {
        value: legendre_series(&coeffs, x).abs(),
        witness_coeffs: coeffs,
        witness_x: x,
    })
}

/// Legendre coefficients of the polynomial through `(support[i], values[i])`.
pub(crate) fn legendre_interpolant(support: &[f64], values: &[f64]) -> Result<Vec<f64>> {
    let n = support.len() - 1;
    let rows: Vec<Vec<f64>> = support.iter().map(|&x| legendre_eval(n, x)).collect();
    Matrix::from_rows(&rows)
        .solve(values)
        .ok_or_else(|| crate::Error::NumericalFailure("singular interpolation system".into()))
}

/// Maximises a unimodal function on `[a, b]` by golden-section search.
pub(crate) fn golden_max(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() < 1e-15 {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    let x = (a + b) / 2.0;
    (x, f(x))
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combination_counts() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(13, 7).len(), 1716);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(4, 1).len(), 4);
    }

    #[test]
    fn quadratic_interpolation_constant() {
        let r = bmn_oracle(2, 2, 2001).unwrap();
        assert!((r.value - 1.25).abs() < 1e-9);
        assert!((r.witness_x.abs() - 0.5).abs() < 1e-6);
    }

    #[test]
    fn constants_have_unit_growth() {
        for m in 1..=6 {
            let r = bmn_oracle(m, 0, 101).unwrap();
            assert!((r.value - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn more_nodes_never_increase_growth() {
        let b44 = bmn_oracle(4, 4, 2001).unwrap().value;
        let b84 = bmn_oracle(8, 4, 2001).unwrap().value;
        assert!(b84 <= b44 + 1e-9);
        assert!(b84 >= 1.0);
    }

    #[test]
    fn witness_is_feasible_and_consistent() {
        let r = bmn_oracle(9, 5, 1001).unwrap();
        let nodes: Vec<f64> = equispaced_points(10);
        for &x in &nodes {
            assert!(r.witness_value_at(x).abs() <= 1.0 + 1e-9);
        }
        let again = r.witness_value_at(r.witness_x).abs();
        assert!(((again - r.value) / r.value).abs() < 1e-9);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(bmn_oracle(13, 3, 100).is_err());
        assert!(bmn_oracle(10, 7, 100).is_err());
        assert!(bmn_oracle(3, 4, 100).is_err());
    }
}
