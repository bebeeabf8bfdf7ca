//! Nabla discrete fractional calculus at desk scale.
//!
//! The crate computes backward fractional sums and differences on finite
//! integer grids, evaluates the discrete two-parameter Mittag-Leffler
//! function, solves scalar linear fractional difference systems
//! `caputo_diff(y) = λy + u` in the time domain (exact recursion and
//! explicit Mittag-Leffler superposition, each certifiable by a plug-back
//! residual), and classifies zero-input behavior from the pole geometry of
//! the associated discrete Laplace transform.
//!
//! Everything is pure and reentrant: signals, coefficient tables and solver
//! outputs are immutable after construction, so calls may run concurrently.
//! Parameter sweeps in [`scenario`] use a worker pool with output ordered by
//! sweep index, never by completion order.

pub mod chart;
pub mod classifier;
pub mod csv;
pub mod error;
mod extended;
pub mod mittag_leffler;
pub mod operators;
pub mod scenario;
pub mod signal;
pub mod solver;
pub mod special;
pub mod transform;

pub use classifier::{
    classify_zero_input, critical_radius, empirical_classify, principal_pole, region_test,
    BehaviorClass, EmpiricalClass, EmpiricalVerdict, PoleRegion, Verdict,
};
pub use error::{Error, Result};
pub use mittag_leffler::{
    ml_alpha1_closed, ml_boundary_values, ml_eval, ml_eval_sequence, ml_transform_point, MlQuery,
    MlResult,
};
pub use operators::{backward_diff, caputo_diff, frac_sum};
pub use scenario::{run_scenario, MethodChoice, Scenario, ScenarioOutput, SweepSummary};
pub use signal::SampledSignal;
pub use solver::{
    initial_history, residual, solve_explicit, solve_recursive, InputSignal, Response,
    SolveMethod, SystemSpec,
};
pub use special::{
    binom_general, log_gamma_signed, reciprocal_gamma, rising_factorial, sum_coefficients,
    CoefficientTable,
};
pub use transform::{
    diff_rule_residual, final_value_estimate, initial_value, n_transform_partial,
    response_transform_eval, FinalValueEstimate, ResponseTransform,
};
