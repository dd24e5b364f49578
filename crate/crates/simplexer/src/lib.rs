//! Simplex-derived benchmark systems: MPS input, a two-phase revised simplex that records
//! every basis, a condition-number filter and Hermitian dilation into solver instances.

pub mod dilation;
pub mod error;
pub mod filter;
pub mod lp;
pub mod mps;
pub mod simplex;

pub use dilation::{dilate, min_pivot, to_qls_instance, SystemKind, MIN_PIVOT};
pub use error::{Result, SimplexError};
pub use filter::{filter_wellconditioned, ConditionPolicy};
pub use lp::{to_standard_form, ColumnOrigin, LpColumn, LpProblem, LpRow, RowKind, StandardForm};
pub use mps::{parse_mps, parse_mps_file};
pub use simplex::{condition_number, run_simplex, BasisSnapshot, SimplexRun, Status, MAX_ROWS};

/// Fixtures shipped with the crate.
pub mod fixtures {
    /// `max 3 x1 + 2 x2` over `x1 + x2 <= 4`, `x1 + 3 x2 <= 6`; optimum `-12` at `(4, 0)`.
    pub const TOY: &str = include_str!("../fixtures/toy.mps");
    /// Beale's cycling example; optimum `-0.05`.
    pub const DEGENERATE: &str = include_str!("../fixtures/degenerate.mps");
    /// Integer markers and bounds; relaxation optimum `4.75`.
    pub const INTORG: &str = include_str!("../fixtures/intorg.mps");
    pub const MISSING_ENDATA: &str = include_str!("../fixtures/missing_endata.mps");
    /// Two plants, three markets, one capacity bound; optimum `1707.5`.
    pub const TRANSPORT: &str = include_str!("../fixtures/transport.mps");

    pub const ALL: [(&str, &str); 4] = [("toy", TOY), ("degenerate", DEGENERATE), ("intorg", INTORG), ("transport", TRANSPORT)];
}
