//! Subcommand grammar and execution. Every command renders its report to
//! a string; `run` decides where it goes and which exit code applies.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

use fiscalis_core as core;
use fiscalis_core::{
    classify_stabiliser, decompose, effectiveness_trajectory, fp_compliance, optimum_search,
    output_gap, rate_from_base, sfa_from_deltas, ActionContinuity, ActionMode, ControlShape,
    DisaggregateInputs, Elasticities, FiscalObservation, LogisticSolution, OptimalitySample,
    OptimumScan, RevenueCategory, StabiliserDescriptor, StationaryReport, Target, VolParams,
};

use crate::config::{OutputFormat, RunConfig};
use crate::error::{CliError, CliResult};
use crate::ingest::{ingest_csv, ObservationRow, ObservationTable};
use crate::report::{emit, float_cell, optional_float_cell, render_csv, render_json, Report};

const RESIDUAL_NOTE: &str =
    "cyclical balance is the residual conventional - structural; closed-form shortcuts are cross-checks only";
const CHAIN_RULE_NOTE: &str =
    "time-quotient gradient matches the direct partials only where the other variable is momentarily stationary; the direct gradient is authoritative";
const DEGENERATE_VOL_NOTE: &str =
    "revenue and expenditure deviations coincide: volatility vanishes identically and derivatives are reported as zero";
const SHIFTED_FORM_NOTE: &str =
    "logistic constants are derived from the initial condition in shifted-exponential form anchored at t0";

#[derive(Debug, Parser)]
#[command(
    name = "fiscalis",
    version,
    about = "Budget-balance decomposition, stabiliser taxonomy, and effectiveness dynamics"
)]
pub struct Cli {
    /// Flat key=value config file applied before flag overrides
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Report format for table and trajectory commands
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,

    /// Write the report to a file instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Output gap (y - yp)/yp, printed as a bare number
    Gap {
        /// Current GDP
        #[arg(long)]
        y: f64,
        /// Potential GDP
        #[arg(long)]
        yp: f64,
    },
    /// Aggregate-method decomposition of a CSV of observations
    Balance {
        #[arg(long, value_name = "CSV")]
        input: PathBuf,
        /// Revenue elasticity override
        #[arg(long)]
        eps_v: Option<f64>,
        /// Expenditure elasticity override
        #[arg(long)]
        eps_c: Option<f64>,
    },
    /// Disaggregate-method structural balance of a CSV of observations
    Disagg {
        #[arg(long, value_name = "CSV")]
        input: PathBuf,
    },
    /// Automatic-stabiliser delta: delta_sbc - delta_sbs, printed bare
    Sfa {
        #[arg(long)]
        delta_sbc: f64,
        #[arg(long)]
        delta_sbs: f64,
    },
    /// Fiscal-rule compliance per observation (needs a debt_ratio column)
    Comply {
        #[arg(long, value_name = "CSV")]
        input: PathBuf,
        #[arg(long)]
        eps_v: Option<f64>,
        #[arg(long)]
        eps_c: Option<f64>,
        /// Debt/GDP level under which the relaxed ceiling applies
        #[arg(long)]
        relaxation_threshold: Option<f64>,
    },
    /// Classify a stabiliser descriptor given as key=value pairs
    #[command(after_help = CLASSIFY_HELP)]
    Classify {
        /// Descriptor fields, e.g. action_mode=implicit target=revenue
        #[arg(value_name = "KEY=VALUE")]
        fields: Vec<String>,
    },
    /// Volatility value, gradient, Hessian, and stationarity report
    Vol {
        /// Rate of action K
        #[arg(long)]
        k: f64,
        /// Base of action B
        #[arg(long)]
        b: f64,
        /// Revenue deviation N = |Va - Vp|
        #[arg(long)]
        n: f64,
        /// Expenditure deviation M = |Ca - Cp|
        #[arg(long)]
        m: f64,
        /// Current GDP (with --yp, adds the equilibrium residual)
        #[arg(long)]
        y: Option<f64>,
        /// Potential GDP
        #[arg(long)]
        yp: Option<f64>,
        /// Time derivative of Vol for the quotient gradient form
        #[arg(long, requires = "dk_dt", requires = "db_dt")]
        dvol_dt: Option<f64>,
        /// Time derivative of K*
        #[arg(long, requires = "dvol_dt")]
        dk_dt: Option<f64>,
        /// Time derivative of b
        #[arg(long, requires = "dvol_dt")]
        db_dt: Option<f64>,
    },
    /// Effectiveness trajectory E = -K·B over the closed-form base
    Effect {
        /// Base value at t0
        #[arg(long)]
        b0: f64,
        #[arg(long)]
        t0: f64,
        /// End of the sample grid (not needed with --k-csv)
        #[arg(long)]
        t1: Option<f64>,
        /// Grid spacing
        #[arg(long, default_value_t = 0.5)]
        step: f64,
        /// Tie the rate to the base through K = c/B
        #[arg(long, value_name = "C")]
        coupling_c: Option<f64>,
        /// Constant rate samples
        #[arg(long, value_name = "K")]
        k_const: Option<f64>,
        /// Rate samples from a CSV with columns t,K (defines the grid)
        #[arg(long, value_name = "CSV")]
        k_csv: Option<PathBuf>,
        /// Also evaluate the closed-form optimality conditions per sample
        #[arg(long)]
        check_optimality: bool,
    },
    /// Numeric logistic base trajectory dB/dt = B(1 - B)
    Simulate {
        /// Base value at t0
        #[arg(long)]
        b0: f64,
        #[arg(long)]
        t0: f64,
        #[arg(long)]
        t1: f64,
        /// Grid spacing
        #[arg(long, default_value_t = 0.5)]
        step: f64,
    },
}

const CLASSIFY_HELP: &str = "\
Required keys (booleans take true/false):
  institutional_device, counters_change, overproportional,
  narrows_actual_desired_gap, controls_gdp_change,
  aims_reduce_gdp_volatility, formal_normative,
  action_mode=explicit|implicit, control_shape=linear|nonlinear,
  action_continuity=discrete|continuous, target=revenue|expenditure|none";

/// Parses argv, runs the command, and maps errors onto exit codes:
/// 0 success, 1 domain error, 2 usage error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
        }
    };
    match execute(&cli) {
        Ok(text) => match emit(cli.out.as_deref(), &text) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("{e}");
                e.exit_code()
            }
        },
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

/// Runs the command and renders its report.
pub fn execute(cli: &Cli) -> CliResult<String> {
    let mut config = RunConfig::default();
    if let Some(path) = &cli.config {
        config.load_overrides(path)?;
    }
    if let Some(format) = cli.format {
        config.format = format;
    }
    config.validate()?;

    match &cli.command {
        Command::Gap { y, yp } => {
            let obs = FiscalObservation::new(0, *y, *yp, 0.0, 0.0)?;
            Ok(format!("{}\n", output_gap(&obs)?))
        }
        Command::Sfa {
            delta_sbc,
            delta_sbs,
        } => {
            ensure_finite_flag("delta-sbc", *delta_sbc)?;
            ensure_finite_flag("delta-sbs", *delta_sbs)?;
            Ok(format!("{}\n", sfa_from_deltas(*delta_sbc, *delta_sbs)))
        }
        Command::Balance {
            input,
            eps_v,
            eps_c,
        } => balance_command(input, *eps_v, *eps_c, &config),
        Command::Disagg { input } => disagg_command(input, &config),
        Command::Comply {
            input,
            eps_v,
            eps_c,
            relaxation_threshold,
        } => comply_command(input, *eps_v, *eps_c, *relaxation_threshold, &config),
        Command::Classify { fields } => {
            let descriptor = parse_descriptor(fields)?;
            Ok(format!("{}\n", classify_stabiliser(&descriptor)))
        }
        Command::Vol {
            k,
            b,
            n,
            m,
            y,
            yp,
            dvol_dt,
            dk_dt,
            db_dt,
        } => vol_command(*k, *b, *n, *m, *y, *yp, *dvol_dt, *dk_dt, *db_dt, &config),
        Command::Effect {
            b0,
            t0,
            t1,
            step,
            coupling_c,
            k_const,
            k_csv,
            check_optimality,
        } => effect_command(
            *b0,
            *t0,
            *t1,
            *step,
            *coupling_c,
            *k_const,
            k_csv.as_deref(),
            *check_optimality,
            &config,
        ),
        Command::Simulate { b0, t0, t1, step } => simulate_command(*b0, *t0, *t1, *step, &config),
    }
}

fn ensure_finite_flag(name: &str, value: f64) -> CliResult<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(CliError::Domain(format!("--{name} must be finite")))
    }
}

// ---------------------------------------------------------------------
// balance
// ---------------------------------------------------------------------

#[derive(Serialize)]
struct BalanceInputs {
    input: String,
    eps_v: f64,
    eps_c: f64,
}

#[derive(Serialize)]
struct BalanceRow {
    year: i32,
    gap: f64,
    conventional: f64,
    structural: f64,
    cyclical: f64,
    /// Change in the cyclical balance vs the previous year; absent on the
    /// first row.
    sfa: Option<f64>,
}

fn observation(row: &ObservationRow) -> CliResult<FiscalObservation> {
    FiscalObservation::new(
        row.year,
        row.y_current,
        row.y_potential,
        row.revenue,
        row.expenditure,
    )
    .map_err(|e| CliError::Domain(format!("row {} (year {}): {e}", row.line, row.year)))
}

fn balance_command(
    input: &std::path::Path,
    eps_v: Option<f64>,
    eps_c: Option<f64>,
    config: &RunConfig,
) -> CliResult<String> {
    let table = ingest_csv(input)?;
    let el = Elasticities::new(eps_v.unwrap_or(config.eps_v), eps_c.unwrap_or(config.eps_c))?;

    let mut rows = Vec::with_capacity(table.rows.len());
    let mut previous: Option<(f64, f64)> = None;
    for row in &table.rows {
        let obs = observation(row)?;
        let d = decompose(&obs, &el)
            .map_err(|e| CliError::Domain(format!("row {} (year {}): {e}", row.line, row.year)))?;
        let gap = output_gap(&obs)?;
        let sfa = previous.map(|(prev_sbc, prev_sbs)| {
            sfa_from_deltas(d.conventional - prev_sbc, d.structural - prev_sbs)
        });
        previous = Some((d.conventional, d.structural));
        rows.push(BalanceRow {
            year: row.year,
            gap,
            conventional: d.conventional,
            structural: d.structural,
            cyclical: d.cyclical,
            sfa,
        });
    }

    match config.format {
        OutputFormat::Json => render_json(&Report {
            inputs: BalanceInputs {
                input: input.display().to_string(),
                eps_v: el.revenue,
                eps_c: el.expenditure,
            },
            results: rows,
            warnings: vec![RESIDUAL_NOTE.to_string()],
        }),
        OutputFormat::Csv => Ok(render_csv(
            &[
                "year",
                "gap",
                "conventional",
                "structural",
                "cyclical",
                "sfa",
            ],
            &rows
                .iter()
                .map(|r| {
                    vec![
                        r.year.to_string(),
                        float_cell(r.gap),
                        float_cell(r.conventional),
                        float_cell(r.structural),
                        float_cell(r.cyclical),
                        optional_float_cell(r.sfa),
                    ]
                })
                .collect::<Vec<_>>(),
        )),
    }
}

// ---------------------------------------------------------------------
// disagg
// ---------------------------------------------------------------------

#[derive(Serialize)]
struct DisaggInputs {
    input: String,
}

#[derive(Serialize)]
struct DisaggRow {
    year: i32,
    /// Structural balance as a share of potential GDP.
    structural_ratio: f64,
    /// The same balance in currency units (the ratio's numerator).
    structural_level: f64,
}

fn disagg_command(input: &std::path::Path, config: &RunConfig) -> CliResult<String> {
    let table = ingest_csv(input)?;
    let mut rows = Vec::with_capacity(table.rows.len());
    for row in &table.rows {
        let mut revenues = [RevenueCategory {
            amount: 0.0,
            elasticity: 1.0,
        }; 4];
        for (i, slot) in revenues.iter_mut().enumerate() {
            let name = ["t1", "t2", "t3", "t4"][i];
            slot.amount = ObservationTable::require(row, row.revenue_categories[i], name)?;
            slot.elasticity = row.revenue_elasticities[i].unwrap_or(1.0);
        }
        let inputs = DisaggregateInputs {
            revenues,
            expenditure: row.expenditure,
            expenditure_elasticity: row.eps_c_u.unwrap_or(0.0),
            x_term: row.x_term.unwrap_or(0.0),
            y_current: row.y_current,
            y_potential: row.y_potential,
            u_current: ObservationTable::require(row, row.u_current, "u_current")?,
            u_structural: ObservationTable::require(row, row.u_structural, "u_structural")?,
        };
        let level = core::structural_balance_disaggregate_level(&inputs)
            .map_err(|e| CliError::Domain(format!("row {} (year {}): {e}", row.line, row.year)))?;
        rows.push(DisaggRow {
            year: row.year,
            structural_ratio: level / inputs.y_potential,
            structural_level: level,
        });
    }

    match config.format {
        OutputFormat::Json => render_json(&Report {
            inputs: DisaggInputs {
                input: input.display().to_string(),
            },
            results: rows,
            warnings: Vec::new(),
        }),
        OutputFormat::Csv => Ok(render_csv(
            &["year", "structural_ratio", "structural_level"],
            &rows
                .iter()
                .map(|r| {
                    vec![
                        r.year.to_string(),
                        float_cell(r.structural_ratio),
                        float_cell(r.structural_level),
                    ]
                })
                .collect::<Vec<_>>(),
        )),
    }
}

// ---------------------------------------------------------------------
// comply
// ---------------------------------------------------------------------

#[derive(Serialize)]
struct ComplyInputs {
    input: String,
    eps_v: f64,
    eps_c: f64,
    deficit_ceiling: f64,
    structural_ceiling: f64,
    structural_ceiling_relaxed: f64,
    relaxation_threshold: f64,
}

#[derive(Serialize)]
struct ComplyRow {
    year: i32,
    deficit_ratio: f64,
    structural_ratio: f64,
    debt_ratio: f64,
    deficit_ok: bool,
    structural_ok: bool,
}

fn comply_command(
    input: &std::path::Path,
    eps_v: Option<f64>,
    eps_c: Option<f64>,
    relaxation_threshold: Option<f64>,
    config: &RunConfig,
) -> CliResult<String> {
    let table = ingest_csv(input)?;
    let el = Elasticities::new(eps_v.unwrap_or(config.eps_v), eps_c.unwrap_or(config.eps_c))?;
    let mut limits = config.compliance_limits();
    if let Some(threshold) = relaxation_threshold {
        if !(threshold > 0.0) || !threshold.is_finite() {
            return Err(CliError::Usage(format!(
                "--relaxation-threshold must be positive, got {threshold}"
            )));
        }
        limits.relaxation_threshold = threshold;
    }

    let mut rows = Vec::with_capacity(table.rows.len());
    for row in &table.rows {
        let obs = observation(row)?;
        let d = decompose(&obs, &el)
            .map_err(|e| CliError::Domain(format!("row {} (year {}): {e}", row.line, row.year)))?;
        let debt = ObservationTable::require(row, row.debt_ratio, "debt_ratio")?;
        let verdict = fp_compliance(&d, obs.y_current, debt, &limits)
            .map_err(|e| CliError::Domain(format!("row {} (year {}): {e}", row.line, row.year)))?;
        rows.push(ComplyRow {
            year: row.year,
            deficit_ratio: verdict.deficit_ratio,
            structural_ratio: verdict.structural_ratio,
            debt_ratio: verdict.debt_ratio,
            deficit_ok: verdict.deficit_ok,
            structural_ok: verdict.structural_ok,
        });
    }

    match config.format {
        OutputFormat::Json => render_json(&Report {
            inputs: ComplyInputs {
                input: input.display().to_string(),
                eps_v: el.revenue,
                eps_c: el.expenditure,
                deficit_ceiling: limits.deficit_ceiling,
                structural_ceiling: limits.structural_ceiling,
                structural_ceiling_relaxed: limits.structural_ceiling_relaxed,
                relaxation_threshold: limits.relaxation_threshold,
            },
            results: rows,
            warnings: vec![RESIDUAL_NOTE.to_string()],
        }),
        OutputFormat::Csv => Ok(render_csv(
            &[
                "year",
                "deficit_ratio",
                "structural_ratio",
                "debt_ratio",
                "deficit_ok",
                "structural_ok",
            ],
            &rows
                .iter()
                .map(|r| {
                    vec![
                        r.year.to_string(),
                        float_cell(r.deficit_ratio),
                        float_cell(r.structural_ratio),
                        float_cell(r.debt_ratio),
                        r.deficit_ok.to_string(),
                        r.structural_ok.to_string(),
                    ]
                })
                .collect::<Vec<_>>(),
        )),
    }
}

// ---------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------

fn parse_descriptor(fields: &[String]) -> CliResult<StabiliserDescriptor> {
    let mut seen = std::collections::BTreeMap::new();
    for field in fields {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("expected KEY=VALUE, got '{field}'")))?;
        if seen.insert(key.to_string(), value.to_string()).is_some() {
            return Err(CliError::Usage(format!("duplicate key '{key}'")));
        }
    }

    let mut take = |key: &str| -> CliResult<String> {
        seen.remove(key)
            .ok_or_else(|| CliError::Usage(format!("missing key '{key}'")))
    };
    let parse_bool = |key: &str, v: String| -> CliResult<bool> {
        match v.as_str() {
            "true" => Ok(true),
            "false" => Ok(false),
            other => Err(CliError::Usage(format!(
                "{key}: expected true or false, got '{other}'"
            ))),
        }
    };

    let descriptor = StabiliserDescriptor {
        institutional_device: parse_bool("institutional_device", take("institutional_device")?)?,
        counters_change: parse_bool("counters_change", take("counters_change")?)?,
        overproportional: parse_bool("overproportional", take("overproportional")?)?,
        narrows_actual_desired_gap: parse_bool(
            "narrows_actual_desired_gap",
            take("narrows_actual_desired_gap")?,
        )?,
        controls_gdp_change: parse_bool("controls_gdp_change", take("controls_gdp_change")?)?,
        aims_reduce_gdp_volatility: parse_bool(
            "aims_reduce_gdp_volatility",
            take("aims_reduce_gdp_volatility")?,
        )?,
        formal_normative: parse_bool("formal_normative", take("formal_normative")?)?,
        action_mode: match take("action_mode")?.as_str() {
            "explicit" => ActionMode::Explicit,
            "implicit" => ActionMode::Implicit,
            other => {
                return Err(CliError::Usage(format!(
                    "action_mode: expected explicit or implicit, got '{other}'"
                )))
            }
        },
        control_shape: match take("control_shape")?.as_str() {
            "linear" => ControlShape::Linear,
            "nonlinear" => ControlShape::Nonlinear,
            other => {
                return Err(CliError::Usage(format!(
                    "control_shape: expected linear or nonlinear, got '{other}'"
                )))
            }
        },
        action_continuity: match take("action_continuity")?.as_str() {
            "discrete" => ActionContinuity::Discrete,
            "continuous" => ActionContinuity::Continuous,
            other => {
                return Err(CliError::Usage(format!(
                    "action_continuity: expected discrete or continuous, got '{other}'"
                )))
            }
        },
        target: match take("target")?.as_str() {
            "revenue" => Target::Revenue,
            "expenditure" => Target::Expenditure,
            "none" => Target::None,
            other => {
                return Err(CliError::Usage(format!(
                    "target: expected revenue, expenditure, or none, got '{other}'"
                )))
            }
        },
    };

    if let Some(stray) = seen.keys().next() {
        return Err(CliError::Usage(format!("unknown key '{stray}'")));
    }
    Ok(descriptor)
}

// ---------------------------------------------------------------------
// vol
// ---------------------------------------------------------------------

#[derive(Serialize)]
struct VolInputs {
    k: f64,
    b: f64,
    n: f64,
    m: f64,
    y: Option<f64>,
    yp: Option<f64>,
}

#[derive(Serialize)]
struct ChainRuleReport {
    gradient: (f64, f64),
    agrees_with_direct: bool,
}

#[derive(Serialize)]
struct VolResults {
    value: f64,
    k_star: f64,
    b_root: f64,
    equilibrium_residual: Option<f64>,
    stationary: StationaryReport,
    chain_rule: Option<ChainRuleReport>,
}

#[allow(clippy::too_many_arguments)]
fn vol_command(
    k: f64,
    b: f64,
    n: f64,
    m: f64,
    y: Option<f64>,
    yp: Option<f64>,
    dvol_dt: Option<f64>,
    dk_dt: Option<f64>,
    db_dt: Option<f64>,
    config: &RunConfig,
) -> CliResult<String> {
    let params = VolParams::new(k, b, n, m)?;
    let stationary = core::classify_stationary_with_tol(&params, config.stationarity_tol);
    let value = core::vol_value(&params);

    let equilibrium_residual = match (y, yp) {
        (Some(y), Some(yp)) => Some(core::equilibrium_residual(y, yp, &params)),
        (None, None) => None,
        _ => {
            return Err(CliError::Usage(
                "--y and --yp must be given together".into(),
            ))
        }
    };

    let mut warnings = Vec::new();
    if stationary.degenerate {
        warnings.push(DEGENERATE_VOL_NOTE.to_string());
    }

    let chain_rule = match (dvol_dt, dk_dt, db_dt) {
        (Some(dv), Some(dk), Some(db)) => {
            let gradient = core::vol_gradient_chain_rule(dv, dk, db)?;
            let direct = stationary.gradient;
            let close = |a: f64, b: f64| {
                (a - b).abs() <= config.gradient_tol * a.abs().max(b.abs()).max(1.0)
            };
            warnings.push(CHAIN_RULE_NOTE.to_string());
            Some(ChainRuleReport {
                agrees_with_direct: close(gradient.0, direct.0) && close(gradient.1, direct.1),
                gradient,
            })
        }
        (None, None, None) => None,
        _ => {
            return Err(CliError::Usage(
                "--dvol-dt, --dk-dt, and --db-dt must be given together".into(),
            ))
        }
    };

    let results = VolResults {
        value,
        k_star: params.k_star(),
        b_root: params.b_root(),
        equilibrium_residual,
        stationary,
        chain_rule,
    };
    let inputs = VolInputs { k, b, n, m, y, yp };

    match config.format {
        OutputFormat::Json => render_json(&Report {
            inputs,
            results,
            warnings,
        }),
        OutputFormat::Csv => {
            let r = &results;
            let mut rows = vec![
                vec!["value".to_string(), float_cell(r.value)],
                vec!["k_star".to_string(), float_cell(r.k_star)],
                vec!["b_root".to_string(), float_cell(r.b_root)],
                vec![
                    "grad_k_star".to_string(),
                    float_cell(r.stationary.gradient.0),
                ],
                vec!["grad_b".to_string(), float_cell(r.stationary.gradient.1)],
                vec![
                    "hessian_kk".to_string(),
                    float_cell(r.stationary.hessian[0][0]),
                ],
                vec![
                    "hessian_kb".to_string(),
                    float_cell(r.stationary.hessian[0][1]),
                ],
                vec![
                    "hessian_bb".to_string(),
                    float_cell(r.stationary.hessian[1][1]),
                ],
                vec![
                    "is_stationary".to_string(),
                    r.stationary.is_stationary.to_string(),
                ],
                vec![
                    "second_differential_sign".to_string(),
                    format!("{:?}", r.stationary.second_differential_sign).to_lowercase(),
                ],
                vec![
                    "degenerate".to_string(),
                    r.stationary.degenerate.to_string(),
                ],
            ];
            if let Some(res) = r.equilibrium_residual {
                rows.push(vec!["equilibrium_residual".to_string(), float_cell(res)]);
            }
            Ok(render_csv(&["key", "value"], &rows))
        }
    }
}

// ---------------------------------------------------------------------
// effect / simulate
// ---------------------------------------------------------------------

#[derive(Serialize)]
struct EffectInputs {
    b0: f64,
    t0: f64,
    t1: Option<f64>,
    step: f64,
    rate_mode: String,
}

#[derive(Serialize)]
struct PathPoint {
    t: f64,
    b: f64,
    k: f64,
    e: f64,
}

#[derive(Serialize)]
struct EffectResults {
    path: Vec<PathPoint>,
    scan: OptimumScan,
    optimality: Option<Vec<OptimalitySample>>,
}

fn read_rate_csv(path: &std::path::Path) -> CliResult<(Vec<f64>, Vec<f64>)> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::Domain(format!("cannot read {}: {e}", path.display())))?;
    let headers = reader
        .headers()
        .map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))?
        .clone();
    let find = |name: &str| -> CliResult<usize> {
        headers.iter().position(|h| h == name).ok_or_else(|| {
            CliError::Domain(format!(
                "{}: missing required column '{name}'",
                path.display()
            ))
        })
    };
    let t_col = find("t")?;
    let k_col = find("K")?;
    let mut times = Vec::new();
    let mut rates = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let line = i + 2;
        let record = record.map_err(|e| CliError::Domain(format!("row {line}: {e}")))?;
        let parse =
            |col: usize, name: &str| -> CliResult<f64> {
                record.get(col).unwrap_or("").parse::<f64>().map_err(|_| {
                    CliError::Domain(format!("row {line}, column '{name}': not a number"))
                })
            };
        times.push(parse(t_col, "t")?);
        rates.push(parse(k_col, "K")?);
    }
    Ok((times, rates))
}

#[allow(clippy::too_many_arguments)]
fn effect_command(
    b0: f64,
    t0: f64,
    t1: Option<f64>,
    step: f64,
    coupling_c: Option<f64>,
    k_const: Option<f64>,
    k_csv: Option<&std::path::Path>,
    check_optimality: bool,
    config: &RunConfig,
) -> CliResult<String> {
    let mode_count = coupling_c.is_some() as u8 + k_const.is_some() as u8 + k_csv.is_some() as u8;
    if mode_count != 1 {
        return Err(CliError::Usage(
            "exactly one of --coupling-c, --k-const, --k-csv is required".into(),
        ));
    }

    let init = LogisticSolution::new(t0, b0)?;
    let (grid, rates, rate_mode) = if let Some(path) = k_csv {
        let (times, rates) = read_rate_csv(path)?;
        (times, rates, format!("samples from {}", path.display()))
    } else {
        let t1 = t1.ok_or_else(|| CliError::Usage("--t1 is required without --k-csv".into()))?;
        let grid = core::sample_grid(t0, t1, step)?;
        if let Some(c) = coupling_c {
            let rates = grid
                .iter()
                .map(|&t| -> CliResult<f64> {
                    let b = core::base_logistic_analytic(&init, t)?;
                    Ok(rate_from_base(c, b)?)
                })
                .collect::<CliResult<Vec<f64>>>()?;
            (grid, rates, format!("coupled K = {c}/B"))
        } else {
            let k = k_const.expect("mode checked above");
            let rates = vec![k; grid.len()];
            (grid, rates, format!("constant K = {k}"))
        }
    };

    let path = effectiveness_trajectory(&rates, &init, &grid)?;
    let scan = optimum_search(&path)?;
    let optimality = if check_optimality {
        Some(core::optimality_condition_check(&rates, &init, &grid)?)
    } else {
        None
    };

    let points: Vec<PathPoint> = (0..path.len())
        .map(|i| PathPoint {
            t: path.times[i],
            b: path.base[i],
            k: path.rate[i],
            e: path.effectiveness[i],
        })
        .collect();

    match config.format {
        OutputFormat::Json => render_json(&Report {
            inputs: EffectInputs {
                b0,
                t0,
                t1,
                step,
                rate_mode,
            },
            results: EffectResults {
                path: points,
                scan,
                optimality,
            },
            warnings: vec![SHIFTED_FORM_NOTE.to_string()],
        }),
        OutputFormat::Csv => Ok(render_csv(
            &["t", "B", "K", "E"],
            &points
                .iter()
                .map(|p| {
                    vec![
                        float_cell(p.t),
                        float_cell(p.b),
                        float_cell(p.k),
                        float_cell(p.e),
                    ]
                })
                .collect::<Vec<_>>(),
        )),
    }
}

#[derive(Serialize)]
struct SimulateInputs {
    b0: f64,
    t0: f64,
    t1: f64,
    step: f64,
    ode_tol: f64,
}

#[derive(Serialize)]
struct SimulatePoint {
    t: f64,
    b: f64,
}

fn simulate_command(b0: f64, t0: f64, t1: f64, step: f64, config: &RunConfig) -> CliResult<String> {
    let samples = core::base_logistic_numeric_with_tol(b0, t0, t1, step, config.ode_tol)?;
    let points: Vec<SimulatePoint> = samples
        .into_iter()
        .map(|(t, b)| SimulatePoint { t, b })
        .collect();

    match config.format {
        OutputFormat::Json => render_json(&Report {
            inputs: SimulateInputs {
                b0,
                t0,
                t1,
                step,
                ode_tol: config.ode_tol,
            },
            results: points,
            warnings: vec![SHIFTED_FORM_NOTE.to_string()],
        }),
        OutputFormat::Csv => Ok(render_csv(
            &["t", "B"],
            &points
                .iter()
                .map(|p| vec![float_cell(p.t), float_cell(p.b)])
                .collect::<Vec<_>>(),
        )),
    }
}
