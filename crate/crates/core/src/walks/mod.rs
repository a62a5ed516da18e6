//! Corner-weighted square-lattice walks.
//!
//! A corner is an `NW` or `ES` factor and carries the weight `a`. Loop
//! series in the quarter plane are indexed by half-length (`u`), with `s`
//! marking `E` steps in the refined version. Unconfined and half-plane
//! series use `s` for horizontal and `t` for vertical steps.

pub mod brute;
pub mod closed;
pub mod dp;
mod loops;
mod projection;
mod unconfined;

pub use closed::{closed_form, ClosedForm};
pub use dp::{Region, WalkQuery};
pub use loops::{
    kernel_residual_check, primitive_quarter_loop_series, primitive_quarter_loop_series_by_dp,
    primitive_quarter_loop_series_refined, primitive_quarter_loop_series_refined_by_dp,
    quarter_loop_series, quarter_loop_series_refined,
    quarter_loop_values_at, quarter_loop_values_f64, quarter_walks_by_endpoint, to_a_plus_one,
};
pub use projection::{
    endpoint_polynomial, fixed_projection_series, shuffle_class_polynomial, Confinement,
};
pub use unconfined::{
    constant_term_lemma_sides, constant_term_lemma_check, halfplane_series, halfplane_series_by_dp,
    t_series_and_a, unconfined_series, unconfined_series_by_dp, w00j,
};
