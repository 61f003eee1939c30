//! Grids, norms, orthogonal-polynomial recurrences and quadrature.

mod grid;
mod norms;
mod poly;
mod quadrature;

pub use grid::{equispaced_points, EquispacedGrid};
pub use norms::{discrete_norms, DiscreteNorms};
pub use poly::{
    chebyshev_eval, legendre_deriv_eval, legendre_eval, legendre_eval_into, legendre_series,
};
pub use quadrature::{gauss_legendre, QuadratureRule};
