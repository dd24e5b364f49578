//! Oracle-query cost formulas for the HHL, Fourier-LCU, Chebyshev-LCU and QSVT linear solvers.
//!
//! Counts are reported as `log10` reals. All unsubscripted logarithms are natural; the
//! Chebyshev truncation parameters use `log2`.

pub mod error;
pub mod halftail;
pub mod hamsim;
pub mod qaa;
pub mod scalar;
pub mod solvers;

pub use error::{CostError, Result};
pub use halftail::{alpha_sum, halftail, halftail_beta, halftail_exact, ln_halftail_seq, ExactTails};
pub use hamsim::{qubitization_queries, r_tilde, QUBITIZATION_FACTOR};
pub use qaa::{mean_success, qaa_expected, schedule_cap, schedule_m};
pub use scalar::{Neumaier, Real};
pub use solvers::{
    chebyshev_alpha, chebyshev_cost, chebyshev_params, chebyshev_params_effective, cost_all,
    fourier_alpha, fourier_cost, fourier_grid, hhl_cost, hhl_time_constant, n_exp, qsvt_cost,
    qsvt_degrees, rect_degree, sign_sharpness, solver_cost, ChebParams, CostInputs, CostReport,
    Degrees, QsvtDegrees, Solver, SolverParams, Warning,
};

pub type CostReportF64 = CostReport<f64>;
pub type CostReportF32 = CostReport<f32>;
pub type CostInputsF64 = CostInputs<f64>;
pub type CostInputsF32 = CostInputs<f32>;
pub type SolverParamsF64 = SolverParams<f64>;
pub type SolverParamsF32 = SolverParams<f32>;
pub type QsvtDegreesF64 = QsvtDegrees<f64>;
