//! Service-firm advertisement planning when demand follows a reputation that
//! word-of-mouth about past service keeps updating.
//!
//! The building blocks are [`params::Scenario`] (a validated parameter set),
//! [`policy::AdPolicy`] (one advertisement level per period) and
//! [`model::simulate`]. Solvers for a firm that anticipates the reputation
//! dynamics ("aware") and for one that optimizes each period in isolation
//! ("naive") live in [`variable`] and [`constant`], one per capacity regime.

pub mod constant;
pub mod error;
pub mod experiments;
pub mod format;
pub mod model;
pub mod output;
pub mod params;
pub mod policy;
pub mod roots;
pub mod states;
pub mod thresholds;
pub mod variable;

pub use constant::{
    lemma1_upper_bound, prop4_applies, prop5_check, solve_aware_constant_exact,
    solve_aware_constant_grid, solve_naive_constant, Prop5Report,
};
pub use error::{Error, Result};
pub use experiments::{run_sweep, run_values, sample_params, voi, Mode, SweepRow, SweepSpec};
pub use model::{
    simulate, simulate_default, CapacityRule, FixedCapacity, MatchDemand, PeriodRecord, Trajectory,
};
pub use params::{AdLevel, ParamKey, Scenario, ScenarioParams};
pub use policy::AdPolicy;
pub use states::{
    classify_by_thresholds, classify_state, omega, thresholds, MarketState, OmegaSet,
    StateThresholds,
};
pub use thresholds::{
    constant_thresholds, variable_thresholds, ConstantThresholds, VariableThresholds,
};
pub use variable::{
    check_capacity_optimality, exhaustive_variable, solve_aware_variable, solve_naive_variable,
    SolveMethod, SolveResult,
};
