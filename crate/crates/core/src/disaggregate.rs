//! Disaggregate-method structural balance: four cyclically-adjusted
//! revenue categories, one unemployment-adjusted expenditure term, and a
//! net non-fiscal term, expressed as a ratio of potential GDP.
//!
//! The four categories follow the conventional ordering: personal income
//! tax, corporate income tax, social-assistance contributions, parafiscal
//! levies. Unemployment may be a rate or a level; only the ratio of the
//! structural to the current value enters, so units just have to match.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_non_negative, ensure_positive, Error, Result};

/// Number of cycle-sensitive revenue categories.
pub const REVENUE_CATEGORIES: usize = 4;

/// One revenue category: current amount and its gap elasticity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RevenueCategory {
    pub amount: f64,
    pub elasticity: f64,
}

/// Inputs for the disaggregate structural balance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DisaggregateInputs {
    /// The four cycle-sensitive revenue categories.
    pub revenues: [RevenueCategory; REVENUE_CATEGORIES],
    /// Current cycle-sensitive expenditure.
    pub expenditure: f64,
    /// Expenditure elasticity w.r.t. the unemployment ratio.
    pub expenditure_elasticity: f64,
    /// Non-fiscal revenue net of capital expenditure.
    pub x_term: f64,
    pub y_current: f64,
    pub y_potential: f64,
    pub u_current: f64,
    pub u_structural: f64,
}

impl DisaggregateInputs {
    pub fn validate(&self) -> Result<()> {
        ensure_positive("y_current", self.y_current)?;
        ensure_positive("y_potential", self.y_potential)?;
        ensure_positive("u_current", self.u_current)?;
        ensure_positive("u_structural", self.u_structural)?;
        for (i, cat) in self.revenues.iter().enumerate() {
            ensure_non_negative(category_field(i), cat.amount)?;
        }
        ensure_non_negative("expenditure", self.expenditure)?;
        Ok(())
    }
}

fn category_field(i: usize) -> &'static str {
    ["t1", "t2", "t3", "t4"][i]
}

fn power_adjust(amount: f64, ratio: f64, elasticity: f64) -> f64 {
    if elasticity == 0.0 {
        amount
    } else if elasticity == 1.0 {
        amount * ratio
    } else {
        amount * ratio.powf(elasticity)
    }
}

/// Cyclically-adjusted revenue for one category: T·(Yp/Y)^ε.
pub fn adjust_revenue_category(
    amount: f64,
    elasticity: f64,
    y_current: f64,
    y_potential: f64,
) -> Result<f64> {
    ensure_positive("y_current", y_current)?;
    ensure_positive("y_potential", y_potential)?;
    ensure_non_negative("revenue category", amount)?;
    Ok(power_adjust(amount, y_potential / y_current, elasticity))
}

/// Unemployment-adjusted expenditure: C·(U*/U)^ε.
pub fn adjust_expenditure_unemployment(
    expenditure: f64,
    elasticity: f64,
    u_structural: f64,
    u_current: f64,
) -> Result<f64> {
    ensure_positive("u_structural", u_structural)?;
    ensure_positive("u_current", u_current)?;
    ensure_non_negative("expenditure", expenditure)?;
    Ok(power_adjust(
        expenditure,
        u_structural / u_current,
        elasticity,
    ))
}

/// Cyclically-adjusted balance level: ΣT_i(Yp/Y)^ε_i − C(U*/U)^ε + X.
pub fn structural_balance_disaggregate_level(inputs: &DisaggregateInputs) -> Result<f64> {
    inputs.validate()?;
    let gdp_ratio = inputs.y_potential / inputs.y_current;
    let mut adjusted_revenue = 0.0;
    for cat in &inputs.revenues {
        adjusted_revenue += power_adjust(cat.amount, gdp_ratio, cat.elasticity);
    }
    let adjusted_expenditure = power_adjust(
        inputs.expenditure,
        inputs.u_structural / inputs.u_current,
        inputs.expenditure_elasticity,
    );
    let level = adjusted_revenue - adjusted_expenditure + inputs.x_term;
    if !level.is_finite() {
        return Err(Error::NumericOverflow {
            context: "structural balance (disaggregate)",
        });
    }
    Ok(level)
}

/// Disaggregate structural balance as a ratio of potential GDP.
pub fn structural_balance_disaggregate(inputs: &DisaggregateInputs) -> Result<f64> {
    Ok(structural_balance_disaggregate_level(inputs)? / inputs.y_potential)
}
