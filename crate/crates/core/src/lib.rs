//! Fiscal-stabiliser analytics: structural/cyclical decomposition of the
//! budget balance (aggregate and disaggregate methods), fiscal-rule
//! compliance, a predicate taxonomy of stabiliser instruments, the GDP
//! volatility model in cube-root coordinates, and logistic effectiveness
//! dynamics.
//!
//! All operations are pure functions over immutable inputs and are safe
//! to call concurrently.

pub mod balance;
pub mod disaggregate;
pub mod effectiveness;
pub mod error;
pub mod numeric;
pub mod taxonomy;
pub mod volatility;

pub use balance::{
    conventional_balance, cyclical_balance, decompose, fp_compliance, output_gap, sfa_from_deltas,
    structural_balance_aggregate, BalanceDecomposition, ComplianceLimits, ComplianceVerdict,
    Elasticities, FiscalObservation,
};
pub use disaggregate::{
    adjust_expenditure_unemployment, adjust_revenue_category, structural_balance_disaggregate,
    structural_balance_disaggregate_level, DisaggregateInputs, RevenueCategory,
};
pub use effectiveness::{
    base_logistic_analytic, base_logistic_numeric, base_logistic_numeric_with_tol, effectiveness,
    effectiveness_logistic_rhs, effectiveness_trajectory, marginal_rate_substitution,
    optimality_condition_check, optimum_search, rate_from_base, sample_grid, EffectivenessPath,
    LogisticSolution, OptimalitySample, Optimum, OptimumKind, OptimumScan,
};
pub use error::{Error, Result};
pub use taxonomy::{
    classify_stabiliser, satisfies, ActionContinuity, ActionMode, ControlShape, StabiliserClass,
    StabiliserDescriptor, Target,
};
pub use volatility::{
    classify_stationary, classify_stationary_with_tol, equilibrium_residual, vol_gradient,
    vol_gradient_chain_rule, vol_value, DifferentialSign, StationaryReport, VolParams,
};
