use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use super::analytics::{breakpoint, resolution_point, tau_of_gamma};
use super::csv_io::{format_float, write_csv, CsvDocument};
use super::fig4::{sweep_fig4_scheme, Fig4Config, Fig4Scheme};
use super::functions::TestFunction;
use super::sweep::{n_range, sweep_error_vs_n, Sampling, SweepConfig, SweepRecord};
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
}

impl FigureId {
    pub const ALL: [FigureId; 4] = [FigureId::Fig1, FigureId::Fig2, FigureId::Fig3, FigureId::Fig4];
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
        };
        f.write_str(s)
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig1" => Ok(FigureId::Fig1),
            "fig2" => Ok(FigureId::Fig2),
            "fig3" => Ok(FigureId::Fig3),
            "fig4" => Ok(FigureId::Fig4),
            _ => invalid(format!("unknown figure {s:?} (expected fig1..fig4)")),
        }
    }
}

/// `Desk` runs in minutes on one core; `Paper` uses the full degree ranges,
/// frequencies and 50,000-point grids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scale {
    #[default]
    Desk,
    Paper,
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scale::Desk => "desk",
            Scale::Paper => "paper",
        })
    }
}

impl FromStr for Scale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "desk" => Ok(Scale::Desk),
            "paper" => Ok(Scale::Paper),
            _ => invalid(format!("unknown scale {s:?} (expected desk or paper)")),
        }
    }
}

pub const FIG1_GAMMAS: [f64; 3] = [1.2, 1.4, 1.8];
/// Row order of the panels: top to bottom.
pub const FIG1_EPSILONS: [f64; 3] = [1e-14, 1e-10, 1e-6];
pub const FIG1_ETAS: [f64; 3] = [2.0, 4.0, 8.0];
pub const FIG23_GAMMAS: [f64; 3] = [1.25, 1.5, 2.0];
pub const FIG23_EPSILONS: [f64; 3] = [1e-6, 1e-10, 1e-14];
pub const FIG23_ETA: f64 = 4.0;
pub const FIG4_GAMMA: f64 = 1.25;
pub const FIG4_EPSILON: f64 = 1e-14;
pub const FIG4_THETAS: [f64; 3] = [1.1, 1.3, 2.0];

/// What one CSV file holds.
#[derive(Debug, Clone, PartialEq)]
pub enum JobKind {
    /// Error against `n`, one series per `(ε, sampling)` pair.
    ErrorVsN {
        gamma: f64,
        series: Vec<(f64, Sampling)>,
    },
    Scaling {
        scheme: Fig4Scheme,
    },
}

/// One output file of a figure: what to sweep and the metadata that goes
/// with it.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureJob {
    pub file_name: String,
    pub function: TestFunction,
    pub kind: JobKind,
    pub n_list: Vec<usize>,
    pub metadata: Vec<(String, String)>,
}

impl FigureJob {
    pub fn run(&self, sweep: &SweepConfig, kappa_star: f64) -> Result<Vec<SweepRecord>> {
        match &self.kind {
            JobKind::ErrorVsN { gamma, series } => {
                let mut out = Vec::new();
                for &(epsilon, sampling) in series {
                    out.extend(sweep_error_vs_n(
                        &self.function,
                        *gamma,
                        epsilon,
                        sampling,
                        &self.n_list,
                        sweep,
                    )?);
                }
                Ok(out)
            }
            JobKind::Scaling { scheme } => {
                let config = Fig4Config {
                    kappa_star,
                    sweep: *sweep,
                    ..Fig4Config::default()
                };
                sweep_fig4_scheme(&self.function, *scheme, &self.n_list, &config)
            }
        }
    }

    pub fn document(&self, records: Vec<SweepRecord>) -> CsvDocument {
        let mut doc = CsvDocument::new(records);
        doc.metadata = self.metadata.clone();
        doc
    }
}

/// Grid sizes and the condition threshold a figure is run with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigurePlan {
    pub sweep: SweepConfig,
    pub kappa_star: f64,
}

impl FigurePlan {
    pub fn for_scale(scale: Scale) -> Self {
        let sweep = match scale {
            // cond_inf costs grid * m * n per record
            Scale::Desk => SweepConfig {
                cond_grid: 2001,
                ..SweepConfig::default()
            },
            Scale::Paper => SweepConfig::default(),
        };
        Self {
            sweep,
            kappa_star: 100.0,
        }
    }
}

fn num(x: f64) -> String {
    format_float(x)
}

fn common_meta(id: FigureId, scale: Scale, f: &TestFunction, plan: &FigurePlan) -> Vec<(String, String)> {
    vec![
        ("figure".into(), id.to_string()),
        ("scale".into(), scale.to_string()),
        ("function".into(), f.name.clone()),
        ("theta_star".into(), num(f.theta_star)),
        ("fine_grid".into(), plan.sweep.fine_grid.to_string()),
        ("cond_grid".into(), plan.sweep.cond_grid.to_string()),
    ]
}

/// `eps=value` pairs of the breakpoints, `none` where `θ >= τ`.
fn breakpoints(epsilons: &[f64], theta: f64, gamma: f64) -> String {
    epsilons
        .iter()
        .map(|&e| {
            let b = breakpoint(e, theta, gamma).map(num).unwrap_or_else(|_| "none".into());
            format!("{}={b}", num(e))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn tag(x: f64) -> String {
    // 1e-14 -> 1e-14, 1.25 -> 1.25
    let s = format!("{x}");
    if s.len() > 6 {
        format!("{x:e}")
    } else {
        s
    }
}

/// All output files of a figure at the given scale.
pub fn figure_jobs(id: FigureId, scale: Scale) -> Result<Vec<FigureJob>> {
    let plan = FigurePlan::for_scale(scale);
    let paper = scale == Scale::Paper;
    let mut jobs = Vec::new();
    match id {
        FigureId::Fig1 => {
            let f = TestFunction::runge1();
            let theta = std::f64::consts::SQRT_2 + 1.0;
            let n_list = if paper { n_range(4, 200, 4) } else { n_range(10, 150, 10) };
            for (row, &epsilon) in FIG1_EPSILONS.iter().enumerate() {
                for (col, &gamma) in FIG1_GAMMAS.iter().enumerate() {
                    let mut meta = common_meta(id, scale, &f, &plan);
                    meta.extend([
                        ("panel".into(), format!("{row},{col}")),
                        ("gamma".into(), num(gamma)),
                        ("epsilon".into(), num(epsilon)),
                        ("theta".into(), num(theta)),
                        ("tau".into(), num(tau_of_gamma(gamma)?)),
                        ("breakpoints".into(), breakpoints(&[epsilon], theta, gamma)),
                        (
                            "eta_values".into(),
                            FIG1_ETAS.iter().map(|e| tag(*e)).collect::<Vec<_>>().join(" "),
                        ),
                        (
                            "note".into(),
                            "eta values and n range are artifact choices; the source figure does not state them"
                                .into(),
                        ),
                    ]);
                    jobs.push(FigureJob {
                        file_name: format!("fig1_gamma{}_eps{}.csv", tag(gamma), tag(epsilon)),
                        function: f.clone(),
                        kind: JobKind::ErrorVsN {
                            gamma,
                            series: FIG1_ETAS.iter().map(|&eta| (epsilon, Sampling::Eta(eta))).collect(),
                        },
                        n_list: n_list.clone(),
                        metadata: meta,
                    });
                }
            }
        }
        FigureId::Fig2 | FigureId::Fig3 => {
            let functions: Vec<TestFunction> = if id == FigureId::Fig2 {
                vec![TestFunction::fig2_f1(), TestFunction::fig2_f2(), TestFunction::fig2_f3()]
            } else if paper {
                [40.0, 60.0, 80.0].map(TestFunction::osc).to_vec()
            } else {
                [10.0, 20.0].map(TestFunction::osc).to_vec()
            };
            for (row, f) in functions.iter().enumerate() {
                for (col, &gamma) in FIG23_GAMMAS.iter().enumerate() {
                    let mut meta = common_meta(id, scale, f, &plan);
                    meta.extend([
                        ("panel".into(), format!("{row},{col}")),
                        ("gamma".into(), num(gamma)),
                        ("eta".into(), tag(FIG23_ETA)),
                        ("tau".into(), num(tau_of_gamma(gamma)?)),
                        ("theta".into(), num(f.theta_star)),
                    ]);
                    let n_list = match f.omega {
                        None if paper => n_range(4, 200, 4),
                        None => n_range(5, 150, 5),
                        Some(omega) => {
                            let n0 = resolution_point(omega, gamma)?;
                            meta.push(("omega".into(), num(omega)));
                            meta.push(("n0".into(), num(n0)));
                            let cap = if paper { usize::MAX } else { 300 };
                            let top = ((1.6 * n0).ceil() as usize).min(cap);
                            let step = (top / 40).max(1);
                            n_range(step, top, step)
                        }
                    };
                    if f.omega.is_none() {
                        meta.push(("breakpoints".into(), breakpoints(&FIG23_EPSILONS, f.theta_star, gamma)));
                    }
                    jobs.push(FigureJob {
                        file_name: format!("{id}_{}_gamma{}.csv", f.name, tag(gamma)),
                        function: f.clone(),
                        kind: JobKind::ErrorVsN {
                            gamma,
                            series: FIG23_EPSILONS.iter().map(|&e| (e, Sampling::Eta(FIG23_ETA))).collect(),
                        },
                        n_list,
                        metadata: meta,
                    });
                }
            }
        }
        FigureId::Fig4 => {
            let functions = [TestFunction::fig4_f1(), TestFunction::fig4_f2(), TestFunction::osc(40.0)];
            let n_list = if paper { n_range(4, 200, 4) } else { n_range(4, 60, 4) };
            let mut schemes = vec![
                Fig4Scheme::Pls,
                Fig4Scheme::Pff {
                    gamma: FIG4_GAMMA,
                    epsilon: FIG4_EPSILON,
                },
            ];
            schemes.extend(FIG4_THETAS.iter().map(|&theta| Fig4Scheme::Pfv {
                gamma: FIG4_GAMMA,
                theta,
                floor: FIG4_EPSILON,
            }));
            for (col, f) in functions.iter().enumerate() {
                for scheme in &schemes {
                    let mut meta = common_meta(id, scale, f, &plan);
                    meta.extend([
                        ("panel".into(), format!("0,{col}")),
                        ("scheme".into(), scheme.label()),
                        ("gamma".into(), num(scheme.gamma())),
                        ("kappa_star".into(), num(plan.kappa_star)),
                    ]);
                    if let Fig4Scheme::Pfv { theta, floor, .. } = scheme {
                        meta.push(("theta".into(), num(*theta)));
                        meta.push(("epsilon_floor".into(), num(*floor)));
                    }
                    let slug = match scheme {
                        Fig4Scheme::Pfv { theta, .. } => format!("pfv{}", tag(*theta)),
                        other => other.label().to_lowercase(),
                    };
                    jobs.push(FigureJob {
                        file_name: format!("fig4_{}_{slug}.csv", f.name),
                        function: f.clone(),
                        kind: JobKind::Scaling { scheme: *scheme },
                        n_list: n_list.clone(),
                        metadata: meta,
                    });
                }
            }
        }
    }
    Ok(jobs)
}

/// Runs every job of a figure and writes one CSV per job into `out_dir`.
/// Returns the written paths in job order.
pub fn run_figure(id: FigureId, scale: Scale, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let plan = FigurePlan::for_scale(scale);
    run_jobs(&figure_jobs(id, scale)?, &plan, out_dir)
}

pub fn run_jobs(jobs: &[FigureJob], plan: &FigurePlan, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let mut paths = Vec::with_capacity(jobs.len());
    for job in jobs {
        let records = job.run(&plan.sweep, plan.kappa_star)?;
        let path = out_dir.join(&job.file_name);
        write_csv(&job.document(records), &path)?;
        paths.push(path);
    }
    Ok(paths)
}
