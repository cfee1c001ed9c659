//! Aggregate-method budget-balance decomposition.
//!
//! The conventional balance V − C splits into a structural part, obtained
//! by rescaling revenue and expenditure to potential output with power-law
//! elasticities, and a cyclical remainder. The cyclical balance is always
//! computed as the residual `conventional − structural`, so the additivity
//! identity holds by construction; the closed-form shortcuts for the
//! simplified elasticities (1, 0) are cross-checks, not the definition.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, ensure_non_negative, ensure_positive, Error, Result};

/// One period's national-accounts snapshot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiscalObservation {
    /// Calendar year the snapshot refers to.
    pub period: i32,
    /// Current nominal GDP (currency units).
    pub y_current: f64,
    /// Potential nominal GDP (same units).
    pub y_potential: f64,
    /// Nominal budgetary revenue V.
    pub revenue: f64,
    /// Nominal budgetary expenditure C.
    pub expenditure: f64,
}

impl FiscalObservation {
    pub fn new(
        period: i32,
        y_current: f64,
        y_potential: f64,
        revenue: f64,
        expenditure: f64,
    ) -> Result<Self> {
        let obs = Self {
            period,
            y_current,
            y_potential,
            revenue,
            expenditure,
        };
        obs.validate()?;
        Ok(obs)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_positive("y_current", self.y_current)?;
        ensure_positive("y_potential", self.y_potential)?;
        ensure_non_negative("revenue", self.revenue)?;
        ensure_non_negative("expenditure", self.expenditure)?;
        Ok(())
    }
}

/// Revenue/expenditure elasticities with respect to the output gap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Elasticities {
    /// Revenue elasticity εv.
    pub revenue: f64,
    /// Expenditure elasticity εc.
    pub expenditure: f64,
}

impl Elasticities {
    pub fn new(revenue: f64, expenditure: f64) -> Result<Self> {
        ensure_finite("revenue elasticity", revenue)?;
        ensure_finite("expenditure elasticity", expenditure)?;
        Ok(Self {
            revenue,
            expenditure,
        })
    }
}

/// The simplification used when nothing better is known: revenue moves
/// one-for-one with the cycle, expenditure not at all.
impl Default for Elasticities {
    fn default() -> Self {
        Self {
            revenue: 1.0,
            expenditure: 0.0,
        }
    }
}

/// Conventional, structural, and cyclical balances for one observation.
///
/// `conventional == structural + cyclical` holds by construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BalanceDecomposition {
    /// Conventional balance SBC = V − C.
    pub conventional: f64,
    /// Structural (cyclically-adjusted) balance SBS.
    pub structural: f64,
    /// Cyclical balance SBc = SBC − SBS.
    pub cyclical: f64,
}

/// Relative output gap (Y − Yp)/Yp.
pub fn output_gap(obs: &FiscalObservation) -> Result<f64> {
    obs.validate()?;
    Ok((obs.y_current - obs.y_potential) / obs.y_potential)
}

/// Conventional balance V − C at actual activity levels.
pub fn conventional_balance(obs: &FiscalObservation) -> Result<f64> {
    obs.validate()?;
    Ok(obs.revenue - obs.expenditure)
}

/// Rescales `amount` by (Yp/Y)^elasticity. Exponents 0 and 1 short-circuit
/// so the identities they imply hold exactly, not just to rounding.
fn cyclically_adjust(amount: f64, ratio: f64, elasticity: f64) -> f64 {
    if elasticity == 0.0 {
        amount
    } else if elasticity == 1.0 {
        amount * ratio
    } else {
        amount * ratio.powf(elasticity)
    }
}

/// Structural balance by the aggregate method:
/// SBS = V·(Yp/Y)^εv − C·(Yp/Y)^εc.
pub fn structural_balance_aggregate(obs: &FiscalObservation, el: &Elasticities) -> Result<f64> {
    obs.validate()?;
    let ratio = obs.y_potential / obs.y_current;
    let adjusted_revenue = cyclically_adjust(obs.revenue, ratio, el.revenue);
    let adjusted_expenditure = cyclically_adjust(obs.expenditure, ratio, el.expenditure);
    let sbs = adjusted_revenue - adjusted_expenditure;
    if !sbs.is_finite() {
        return Err(Error::NumericOverflow {
            context: "structural balance (aggregate)",
        });
    }
    Ok(sbs)
}

/// Cyclical balance as the residual SBC − SBS.
pub fn cyclical_balance(obs: &FiscalObservation, el: &Elasticities) -> Result<f64> {
    Ok(conventional_balance(obs)? - structural_balance_aggregate(obs, el)?)
}

/// Full decomposition of one observation.
///
/// ```
/// use fiscalis_core::{decompose, Elasticities, FiscalObservation};
///
/// let obs = FiscalObservation::new(2014, 105.0, 100.0, 30.0, 35.0)?;
/// let d = decompose(&obs, &Elasticities::default())?;
/// assert_eq!(d.conventional, -5.0);
/// assert_eq!(d.conventional, d.structural + d.cyclical);
/// # Ok::<(), fiscalis_core::Error>(())
/// ```
pub fn decompose(obs: &FiscalObservation, el: &Elasticities) -> Result<BalanceDecomposition> {
    let conventional = conventional_balance(obs)?;
    let structural = structural_balance_aggregate(obs, el)?;
    Ok(BalanceDecomposition {
        conventional,
        structural,
        cyclical: conventional - structural,
    })
}

/// Automatic-stabiliser contribution between two periods:
/// ΔSBc = ΔSBC − ΔSBS.
pub fn sfa_from_deltas(delta_conventional: f64, delta_structural: f64) -> f64 {
    delta_conventional - delta_structural
}

/// Deficit ceiling: 3% of GDP.
pub const DEFICIT_CEILING: f64 = 0.03;
/// Structural-balance ceiling: 0.5% of GDP.
pub const STRUCTURAL_CEILING: f64 = 0.005;
/// Relaxed structural ceiling: 1% of GDP, available under low debt.
pub const STRUCTURAL_CEILING_RELAXED: f64 = 0.01;
/// Debt ratio below which the relaxed structural ceiling applies.
pub const DEBT_RELAXATION_THRESHOLD: f64 = 0.60;

/// Fiscal-rule thresholds, all expressed as ratios of GDP.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplianceLimits {
    /// Maximum deficit magnitude.
    pub deficit_ceiling: f64,
    /// Maximum structural-balance magnitude.
    pub structural_ceiling: f64,
    /// Structural ceiling when debt is below `relaxation_threshold`.
    pub structural_ceiling_relaxed: f64,
    /// Debt/GDP level under which the relaxed ceiling applies.
    pub relaxation_threshold: f64,
}

impl Default for ComplianceLimits {
    fn default() -> Self {
        Self {
            deficit_ceiling: DEFICIT_CEILING,
            structural_ceiling: STRUCTURAL_CEILING,
            structural_ceiling_relaxed: STRUCTURAL_CEILING_RELAXED,
            relaxation_threshold: DEBT_RELAXATION_THRESHOLD,
        }
    }
}

/// Outcome of the fiscal-rule checks for one decomposition.
///
/// Interval conventions: a balance sitting exactly on a ceiling still
/// complies (closed bound); the debt relaxation requires debt strictly
/// below the threshold (open bound).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplianceVerdict {
    /// Conventional balance over GDP (negative in deficit).
    pub deficit_ratio: f64,
    /// Structural balance over GDP.
    pub structural_ratio: f64,
    /// Public debt over GDP.
    pub debt_ratio: f64,
    /// Whether the deficit magnitude is within the ceiling.
    pub deficit_ok: bool,
    /// Whether the structural balance is within its applicable ceiling.
    pub structural_ok: bool,
}

/// Checks a decomposition against the fiscal-rule ceilings.
///
/// Balances are signed (deficit negative); the deficit rule bounds the
/// magnitude of a negative conventional balance.
pub fn fp_compliance(
    decomp: &BalanceDecomposition,
    y_current: f64,
    debt_ratio: f64,
    limits: &ComplianceLimits,
) -> Result<ComplianceVerdict> {
    ensure_positive("y_current", y_current)?;
    ensure_non_negative("debt_ratio", debt_ratio)?;
    let deficit_ratio = decomp.conventional / y_current;
    let structural_ratio = decomp.structural / y_current;
    let structural_limit = if debt_ratio < limits.relaxation_threshold {
        limits.structural_ceiling_relaxed
    } else {
        limits.structural_ceiling
    };
    Ok(ComplianceVerdict {
        deficit_ratio,
        structural_ratio,
        debt_ratio,
        deficit_ok: deficit_ratio >= -limits.deficit_ceiling,
        structural_ok: structural_ratio.abs() <= structural_limit,
    })
}
