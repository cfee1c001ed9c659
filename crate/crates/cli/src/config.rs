//! Run configuration: defaults, a flat key=value override file, and the
//! output-format switch.

use std::path::Path;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(format!("unknown format '{other}' (expected json or csv)")),
        }
    }
}

/// Defaults plus everything a config file may override.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    /// Revenue elasticity used by balance/comply when no flag is given.
    pub eps_v: f64,
    /// Expenditure elasticity used by balance/comply when no flag is given.
    pub eps_c: f64,
    /// Deficit ceiling as a share of GDP.
    pub deficit_ceiling: f64,
    /// Structural-balance ceiling as a share of GDP.
    pub structural_ceiling: f64,
    /// Structural ceiling available under low debt.
    pub structural_ceiling_relaxed: f64,
    /// Debt/GDP level under which the relaxed ceiling applies.
    pub relaxation_threshold: f64,
    /// Tolerance when comparing two gradient routes.
    pub gradient_tol: f64,
    /// Step-acceptance tolerance of the numeric logistic solver.
    pub ode_tol: f64,
    /// Absolute tolerance on each partial for stationarity calls.
    pub stationarity_tol: f64,
    /// Report format for table and trajectory commands.
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            eps_v: 1.0,
            eps_c: 0.0,
            deficit_ceiling: fiscalis_core::balance::DEFICIT_CEILING,
            structural_ceiling: fiscalis_core::balance::STRUCTURAL_CEILING,
            structural_ceiling_relaxed: fiscalis_core::balance::STRUCTURAL_CEILING_RELAXED,
            relaxation_threshold: fiscalis_core::balance::DEBT_RELAXATION_THRESHOLD,
            gradient_tol: 1e-5,
            ode_tol: 1e-8,
            stationarity_tol: 1e-9,
            format: OutputFormat::Json,
        }
    }
}

impl RunConfig {
    /// Applies `key=value` overrides from a flat config file. Lines that
    /// are empty or start with `#` are skipped; unknown keys are usage
    /// errors.
    pub fn load_overrides(&mut self, path: &Path) -> CliResult<()> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Domain(format!("cannot read config {}: {e}", path.display())))?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!(
                    "config line {}: expected key=value, got '{line}'",
                    lineno + 1
                ))
            })?;
            self.apply(key.trim(), value.trim(), lineno + 1)?;
        }
        self.validate()
    }

    fn apply(&mut self, key: &str, value: &str, lineno: usize) -> CliResult<()> {
        let parse = |v: &str| -> CliResult<f64> {
            v.parse::<f64>().map_err(|_| {
                CliError::Usage(format!("config line {lineno}: '{v}' is not a number"))
            })
        };
        match key {
            "eps_v" => self.eps_v = parse(value)?,
            "eps_c" => self.eps_c = parse(value)?,
            "deficit_ceiling" => self.deficit_ceiling = parse(value)?,
            "structural_ceiling" => self.structural_ceiling = parse(value)?,
            "structural_ceiling_relaxed" => self.structural_ceiling_relaxed = parse(value)?,
            "relaxation_threshold" => self.relaxation_threshold = parse(value)?,
            "gradient_tol" => self.gradient_tol = parse(value)?,
            "ode_tol" => self.ode_tol = parse(value)?,
            "stationarity_tol" => self.stationarity_tol = parse(value)?,
            "format" => {
                self.format = value.parse().map_err(CliError::Usage)?;
            }
            other => {
                return Err(CliError::Usage(format!(
                    "config line {lineno}: unknown key '{other}'"
                )))
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> CliResult<()> {
        let thresholds = [
            ("deficit_ceiling", self.deficit_ceiling),
            ("structural_ceiling", self.structural_ceiling),
            (
                "structural_ceiling_relaxed",
                self.structural_ceiling_relaxed,
            ),
            ("relaxation_threshold", self.relaxation_threshold),
            ("gradient_tol", self.gradient_tol),
            ("ode_tol", self.ode_tol),
            ("stationarity_tol", self.stationarity_tol),
        ];
        for (name, v) in thresholds {
            if !(v > 0.0) || !v.is_finite() {
                return Err(CliError::Usage(format!("{name} must be positive, got {v}")));
            }
        }
        if !self.eps_v.is_finite() || !self.eps_c.is_finite() {
            return Err(CliError::Usage("elasticities must be finite".into()));
        }
        Ok(())
    }

    pub fn compliance_limits(&self) -> fiscalis_core::ComplianceLimits {
        fiscalis_core::ComplianceLimits {
            deficit_ceiling: self.deficit_ceiling,
            structural_ceiling: self.structural_ceiling,
            structural_ceiling_relaxed: self.structural_ceiling_relaxed,
            relaxation_threshold: self.relaxation_threshold,
        }
    }
}
