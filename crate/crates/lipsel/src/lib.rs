//! Lipschitz selections of convex set-valued mappings in the plane.
//!
//! A finite pseudometric space `(M, rho)` and a mapping `F` assigning each
//! point a convex subset of the plane are given. A selection is a choice
//! `f(x) in F(x)` for every `x`; its seminorm is the smallest `L` with
//! `|f(x) - f(y)|_inf <= L * rho(x, y)` for all pairs. This crate decides
//! whether a selection with a prescribed seminorm exists, constructs nearly
//! optimal ones, and computes the exact optimum by linear programming.
//!
//! The distance on the plane is the max norm throughout; its unit ball is
//! the square `[-1, 1]^2`.

pub mod geom;
pub mod halfplane;
pub mod instance;
pub mod lp;
pub mod metric;
pub mod one_dim;
pub mod oracle;
pub mod refine;
pub mod sample;
pub mod select;

/// Slack for comparisons against a requested seminorm bound, so that a
/// bound computed by the library is accepted back despite rounding.
pub fn lambda_slack(lambda: f64) -> f64 {
    1e-9 * (1.0 + lambda)
}
