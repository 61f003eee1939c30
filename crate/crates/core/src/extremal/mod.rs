//! Extremal polynomial quantities and inequality checks.
//!
//! * [`bmn_oracle`]: exact vertex enumeration for the maximal growth of a
//!   polynomial bounded at equispaced nodes (desk-scale parameters only).
//! * [`cmn_lower_bound`]: a searched lower bound for the same growth when the
//!   polynomial is additionally bounded on an extended interval.
//! * [`schaeffer_duffin`], [`markov_check`]: pointwise derivative bounds.
//! * [`lemma_t_check`]: best-approximation bound via Chebyshev-zero
//!   interpolation.
//! * [`chebyshev_truncation`]: Chebyshev coefficients and truncation.

mod best_approx;
mod chebyshev;
mod markov;
mod oracle;
mod search;

pub use best_approx::{lemma_t_check, LemmaTReport};
pub use chebyshev::{chebyshev_truncation, ChebyshevTruncation};
pub use markov::{
    markov_bound, markov_check, markov_hypothesis_holds, schaeffer_duffin, MarkovReport,
    PointCheck,
};
pub use oracle::{bmn_oracle, lagrange_basis, ExtremalResult, MAX_ORACLE_DEGREE, MAX_ORACLE_M};
pub use search::{cmn_lower_bound, SearchBudget};
