//! The configuration linear programs bounding `κ`, their exact solution, and
//! checks on candidate flip parameters.

mod analysis;
mod program;
pub mod simplex;

pub use analysis::{
    canonical, check_trips, enumerate_extremal, size_hypotheses, strictly_below, worst_configuration, ExtremalConfig,
    TripsCheck,
};
pub use program::{
    check_feasible, config_label, gen_config_constraints, gen_full, gen_program, gen_reduced, realizable, solve_exact,
    FeasibilityReport, LinearConstraint, LpProgram, LpSolution, ProgramKind, Provenance, RowSlack, MAX_SIZE,
};
