//! Stabiliser taxonomy: a decidable classifier over a predicate vector.
//!
//! Classes form a genus/species hierarchy; an instrument's class is the
//! finest node whose full predicate conjunction it satisfies:
//!
//! | class  | requires                                                        |
//! |--------|-----------------------------------------------------------------|
//! | S      | institutional device, counters change, overproportional, narrows the actual/desired gap |
//! | SM     | S + controls GDP change + aims to reduce GDP volatility          |
//! | SF     | SM + formal normative action                                     |
//! | SFnA   | SF + explicit action                                             |
//! | SFnAv  | SFnA + linear control + discrete action + revenue target         |
//! | SFnAc  | SFnA + linear control + discrete action + expenditure target     |
//! | SFA    | SF + implicit action                                             |
//! | SFAv   | SFA + nonlinear control + discrete action + revenue target       |
//! | SFAc   | SFA + nonlinear control + discrete action + expenditure target   |
//!
//! Every formal-normative stabiliser acts either explicitly or implicitly,
//! so SF itself is an abstract node: it is realised only through its two
//! branches. A descriptor that reaches a branch but fails the species
//! predicates (wrong control shape, continuous action, or no target)
//! stays at the genus.

use serde::{Deserialize, Serialize};

/// How the instrument's action is triggered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ActionMode {
    /// Requires a case-by-case formal decision.
    Explicit,
    /// Operates without a case-by-case decision.
    Implicit,
}

/// Shape of the control the instrument exerts on its target variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ControlShape {
    Linear,
    Nonlinear,
}

/// Whether the instrument acts in discrete events or continuously.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ActionContinuity {
    Discrete,
    Continuous,
}

/// Budget side the instrument operates on, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Revenue,
    Expenditure,
    None,
}

/// Predicate vector describing one fiscal instrument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabiliserDescriptor {
    /// Controls change via a normative institutional device.
    pub institutional_device: bool,
    /// Its action opposes the change.
    pub counters_change: bool,
    /// Its action is overproportional relative to the change.
    pub overproportional: bool,
    /// Aims to reduce the gap between actual and desired change.
    pub narrows_actual_desired_gap: bool,
    /// Controls the quantitative change of GDP.
    pub controls_gdp_change: bool,
    /// Aims to reduce GDP volatility.
    pub aims_reduce_gdp_volatility: bool,
    /// Acts through a formal normative device.
    pub formal_normative: bool,
    pub action_mode: ActionMode,
    pub control_shape: ControlShape,
    pub action_continuity: ActionContinuity,
    pub target: Target,
}

/// Classification outcome, finest first in the hierarchy above.
#[allow(clippy::upper_case_acronyms)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StabiliserClass {
    NotStabiliser,
    S,
    SM,
    SF,
    SFnA,
    SFnAv,
    SFnAc,
    SFA,
    SFAv,
    SFAc,
}

impl StabiliserClass {
    /// All classes, coarsest to finest branch order.
    pub const ALL: [StabiliserClass; 10] = [
        StabiliserClass::NotStabiliser,
        StabiliserClass::S,
        StabiliserClass::SM,
        StabiliserClass::SF,
        StabiliserClass::SFnA,
        StabiliserClass::SFnAv,
        StabiliserClass::SFnAc,
        StabiliserClass::SFA,
        StabiliserClass::SFAv,
        StabiliserClass::SFAc,
    ];

    /// The class one step up the hierarchy, if any.
    pub fn parent(self) -> Option<StabiliserClass> {
        use StabiliserClass::*;
        match self {
            NotStabiliser | S => None,
            SM => Some(S),
            SF => Some(SM),
            SFnA | SFA => Some(SF),
            SFnAv | SFnAc => Some(SFnA),
            SFAv | SFAc => Some(SFA),
        }
    }

    /// Name as printed by the CLI.
    pub fn name(self) -> &'static str {
        use StabiliserClass::*;
        match self {
            NotStabiliser => "NotStabiliser",
            S => "S",
            SM => "SM",
            SF => "SF",
            SFnA => "SFnA",
            SFnAv => "SFnAv",
            SFnAc => "SFnAc",
            SFA => "SFA",
            SFAv => "SFAv",
            SFAc => "SFAc",
        }
    }
}

impl std::fmt::Display for StabiliserClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

fn is_stabiliser(d: &StabiliserDescriptor) -> bool {
    d.institutional_device
        && d.counters_change
        && d.overproportional
        && d.narrows_actual_desired_gap
}

fn is_macroeconomic(d: &StabiliserDescriptor) -> bool {
    is_stabiliser(d) && d.controls_gdp_change && d.aims_reduce_gdp_volatility
}

fn is_fiscal(d: &StabiliserDescriptor) -> bool {
    is_macroeconomic(d) && d.formal_normative
}

fn species_predicates(d: &StabiliserDescriptor, shape: ControlShape, target: Target) -> bool {
    d.control_shape == shape
        && d.action_continuity == ActionContinuity::Discrete
        && d.target == target
}

/// Re-evaluates the full predicate conjunction of `class` against `d`.
///
/// `classify_stabiliser(d)` always returns the finest class for which this
/// holds, and the conjunction of every ancestor holds as well.
pub fn satisfies(class: StabiliserClass, d: &StabiliserDescriptor) -> bool {
    use StabiliserClass::*;
    match class {
        NotStabiliser => !is_stabiliser(d),
        S => is_stabiliser(d),
        SM => is_macroeconomic(d),
        SF => is_fiscal(d),
        SFnA => is_fiscal(d) && d.action_mode == ActionMode::Explicit,
        SFA => is_fiscal(d) && d.action_mode == ActionMode::Implicit,
        SFnAv => satisfies(SFnA, d) && species_predicates(d, ControlShape::Linear, Target::Revenue),
        SFnAc => {
            satisfies(SFnA, d) && species_predicates(d, ControlShape::Linear, Target::Expenditure)
        }
        SFAv => {
            satisfies(SFA, d) && species_predicates(d, ControlShape::Nonlinear, Target::Revenue)
        }
        SFAc => {
            satisfies(SFA, d) && species_predicates(d, ControlShape::Nonlinear, Target::Expenditure)
        }
    }
}

/// Maps a descriptor to the finest class it satisfies.
pub fn classify_stabiliser(d: &StabiliserDescriptor) -> StabiliserClass {
    use StabiliserClass::*;
    if !is_stabiliser(d) {
        return NotStabiliser;
    }
    if !(d.controls_gdp_change && d.aims_reduce_gdp_volatility) {
        return S;
    }
    if !d.formal_normative {
        return SM;
    }
    match d.action_mode {
        ActionMode::Explicit => {
            if species_predicates(d, ControlShape::Linear, Target::Revenue) {
                SFnAv
            } else if species_predicates(d, ControlShape::Linear, Target::Expenditure) {
                SFnAc
            } else {
                SFnA
            }
        }
        ActionMode::Implicit => {
            if species_predicates(d, ControlShape::Nonlinear, Target::Revenue) {
                SFAv
            } else if species_predicates(d, ControlShape::Nonlinear, Target::Expenditure) {
                SFAc
            } else {
                SFA
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn full_descriptor(
        mode: ActionMode,
        shape: ControlShape,
        continuity: ActionContinuity,
        target: Target,
    ) -> StabiliserDescriptor {
        StabiliserDescriptor {
            institutional_device: true,
            counters_change: true,
            overproportional: true,
            narrows_actual_desired_gap: true,
            controls_gdp_change: true,
            aims_reduce_gdp_volatility: true,
            formal_normative: true,
            action_mode: mode,
            control_shape: shape,
            action_continuity: continuity,
            target,
        }
    }

    #[test]
    fn automatic_revenue_species() {
        let d = full_descriptor(
            ActionMode::Implicit,
            ControlShape::Nonlinear,
            ActionContinuity::Discrete,
            Target::Revenue,
        );
        assert_eq!(classify_stabiliser(&d), StabiliserClass::SFAv);
    }

    #[test]
    fn discretionary_expenditure_species() {
        let d = full_descriptor(
            ActionMode::Explicit,
            ControlShape::Linear,
            ActionContinuity::Discrete,
            Target::Expenditure,
        );
        assert_eq!(classify_stabiliser(&d), StabiliserClass::SFnAc);
    }

    #[test]
    fn failing_a_base_predicate_is_not_a_stabiliser() {
        let mut d = full_descriptor(
            ActionMode::Implicit,
            ControlShape::Nonlinear,
            ActionContinuity::Discrete,
            Target::Revenue,
        );
        d.counters_change = false;
        assert_eq!(classify_stabiliser(&d), StabiliserClass::NotStabiliser);
    }

    #[test]
    fn wrong_shape_falls_back_to_genus() {
        let d = full_descriptor(
            ActionMode::Implicit,
            ControlShape::Linear,
            ActionContinuity::Discrete,
            Target::Revenue,
        );
        assert_eq!(classify_stabiliser(&d), StabiliserClass::SFA);
        let d = full_descriptor(
            ActionMode::Explicit,
            ControlShape::Nonlinear,
            ActionContinuity::Discrete,
            Target::Expenditure,
        );
        assert_eq!(classify_stabiliser(&d), StabiliserClass::SFnA);
    }

    #[test]
    fn continuous_action_falls_back_to_genus() {
        let d = full_descriptor(
            ActionMode::Implicit,
            ControlShape::Nonlinear,
            ActionContinuity::Continuous,
            Target::Revenue,
        );
        assert_eq!(classify_stabiliser(&d), StabiliserClass::SFA);
    }

    #[test]
    fn no_target_classifies_as_genus() {
        let d = full_descriptor(
            ActionMode::Implicit,
            ControlShape::Nonlinear,
            ActionContinuity::Discrete,
            Target::None,
        );
        assert_eq!(classify_stabiliser(&d), StabiliserClass::SFA);
    }

    #[test]
    fn partial_predicates_stop_at_s_and_sm() {
        let mut d = full_descriptor(
            ActionMode::Explicit,
            ControlShape::Linear,
            ActionContinuity::Discrete,
            Target::Revenue,
        );
        d.formal_normative = false;
        assert_eq!(classify_stabiliser(&d), StabiliserClass::SM);
        d.controls_gdp_change = false;
        assert_eq!(classify_stabiliser(&d), StabiliserClass::S);
    }

    #[test]
    fn classification_satisfies_its_own_and_ancestor_conjunctions() {
        let d = full_descriptor(
            ActionMode::Implicit,
            ControlShape::Nonlinear,
            ActionContinuity::Discrete,
            Target::Expenditure,
        );
        let mut class = classify_stabiliser(&d);
        assert_eq!(class, StabiliserClass::SFAc);
        loop {
            assert!(satisfies(class, &d), "{class} conjunction must hold");
            match class.parent() {
                Some(p) => class = p,
                None => break,
            }
        }
    }

    #[test]
    fn branches_are_exclusive() {
        for mode in [ActionMode::Explicit, ActionMode::Implicit] {
            let d = full_descriptor(
                mode,
                ControlShape::Linear,
                ActionContinuity::Discrete,
                Target::Revenue,
            );
            assert!(
                !(satisfies(StabiliserClass::SFnA, &d) && satisfies(StabiliserClass::SFA, &d)),
                "a descriptor cannot sit in both branches"
            );
        }
    }
}
