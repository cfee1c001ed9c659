//! Stabiliser effectiveness E = −K·B and its dynamics.
//!
//! The base of action B follows the logistic law dB/dt = B(1 − B), solved
//! both in closed form and by adaptive one-step integration. The rate of
//! action K has no law of its own here: it is either supplied as samples
//! or tied to the base through K = c/B, which pins K·B = c and makes E
//! constant. Effectiveness itself follows dE/dt = E(1 − E), whose
//! right-hand side peaks at E = 1/2.
//!
//! Calendar-year times are handled throughout in shifted form e^(t − t0);
//! the unshifted integration constant of the closed-form solution is not
//! representable in f64 for year-scale anchors, so it is exposed as the
//! shifted constant (1 − x0)/x0 instead.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};
use crate::numeric::{
    adaptive_quadrature, bisect, check_grid, integrate_adaptive, three_point_derivatives,
    HermiteInterpolant,
};

/// Default relative tolerance for the numeric logistic solver.
pub const ODE_REL_TOL: f64 = 1e-8;
/// Default absolute tolerance for adaptive quadrature.
pub const QUADRATURE_ABS_TOL: f64 = 1e-9;
/// Below this curvature magnitude an optimum is flagged inconclusive.
pub const CURVATURE_TOL: f64 = 1e-9;

/// Effectiveness E = −K·B.
pub fn effectiveness(k: f64, b: f64) -> f64 {
    -k * b
}

/// Marginal rate of substitution along an indifference curve of E:
/// dK/dB = −K/B.
pub fn marginal_rate_substitution(k: f64, b: f64) -> Result<f64> {
    ensure_finite("k", k)?;
    if b == 0.0 {
        return Err(Error::ZeroValue { field: "b" });
    }
    Ok(-k / b)
}

/// Rate coupled to the base through a conserved product: K = c/B.
pub fn rate_from_base(c: f64, b: f64) -> Result<f64> {
    if c == 0.0 {
        return Err(Error::ZeroValue { field: "c" });
    }
    if b == 0.0 {
        return Err(Error::ZeroValue { field: "b" });
    }
    Ok(c / b)
}

/// Right-hand side of dE/dt = E(1 − E).
pub fn effectiveness_logistic_rhs(e: f64) -> f64 {
    e * (1.0 - e)
}

/// Initial condition (t0, x0) of the logistic base equation.
///
/// x0 = 0 and x0 = 1 are the equation's fixed points; x0 > 1 trajectories
/// exist only after a finite blow-up time in the past.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogisticSolution {
    /// Anchor time (calendar year in the intended use).
    pub t0: f64,
    /// Value of the base at `t0`; must be non-negative.
    pub x0: f64,
}

impl LogisticSolution {
    pub fn new(t0: f64, x0: f64) -> Result<Self> {
        ensure_finite("t0", t0)?;
        ensure_finite("x0", x0)?;
        if x0 < 0.0 {
            return Err(Error::NegativeValue {
                field: "x0",
                value: x0,
            });
        }
        Ok(Self { t0, x0 })
    }

    /// Shifted integration constant: B(t) = e^(t−t0) / (c + e^(t−t0))
    /// with c = (1 − x0)/x0. Infinite when x0 = 0.
    pub fn shifted_constant(&self) -> f64 {
        (1.0 - self.x0) / self.x0
    }

    /// Time before which the solution does not exist (x0 > 1 only).
    pub fn blow_up_time(&self) -> Option<f64> {
        if self.x0 > 1.0 {
            Some(self.t0 + ((self.x0 - 1.0) / self.x0).ln())
        } else {
            None
        }
    }

    /// Closed-form solution through (t0, x0) at time `t`:
    /// B(t) = x0 / (x0 + (1 − x0)·e^(−(t−t0))).
    pub fn value(&self, t: f64) -> Result<f64> {
        ensure_finite("t", t)?;
        if let Some(t_blow) = self.blow_up_time() {
            if t <= t_blow {
                return Err(Error::Singularity {
                    blow_up_time: t_blow,
                });
            }
        }
        if self.x0 == 0.0 {
            return Ok(0.0);
        }
        let decay = (-(t - self.t0)).exp();
        Ok(self.x0 / (self.x0 + (1.0 - self.x0) * decay))
    }
}

/// Closed-form logistic base value at `t`.
pub fn base_logistic_analytic(init: &LogisticSolution, t: f64) -> Result<f64> {
    init.value(t)
}

/// Evenly spaced grid from `t0` to `t1` (inclusive) with spacing `step`;
/// the final point is pinned to `t1`.
pub fn sample_grid(t0: f64, t1: f64, step: f64) -> Result<Vec<f64>> {
    ensure_finite("t0", t0)?;
    ensure_finite("t1", t1)?;
    if !(t1 > t0) {
        return Err(Error::NonMonotonicGrid { index: 1 });
    }
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::NonPositive {
            field: "step",
            value: step,
        });
    }
    let mut grid = Vec::new();
    let mut i = 0u64;
    loop {
        let t = t0 + i as f64 * step;
        if t >= t1 - step * 1e-9 {
            break;
        }
        grid.push(t);
        i += 1;
    }
    grid.push(t1);
    Ok(grid)
}

/// Numeric logistic trajectory on the grid t0, t0+step, …, t1 with the
/// default step-acceptance tolerance.
pub fn base_logistic_numeric(x0: f64, t0: f64, t1: f64, step: f64) -> Result<Vec<(f64, f64)>> {
    base_logistic_numeric_with_tol(x0, t0, t1, step, ODE_REL_TOL)
}

/// Numeric logistic trajectory with an explicit acceptance tolerance:
/// each step is halved until a full step and two half steps agree within
/// `rel_tol` relative.
pub fn base_logistic_numeric_with_tol(
    x0: f64,
    t0: f64,
    t1: f64,
    step: f64,
    rel_tol: f64,
) -> Result<Vec<(f64, f64)>> {
    if x0 < 0.0 {
        return Err(Error::NegativeValue {
            field: "x0",
            value: x0,
        });
    }
    ensure_finite("x0", x0)?;
    let grid = sample_grid(t0, t1, step)?;
    let values = integrate_adaptive(|_, b| b * (1.0 - b), t0, x0, &grid, rel_tol)?;
    Ok(grid.into_iter().zip(values).collect())
}

/// Sampled joint trajectory of base, rate, and effectiveness.
///
/// `effectiveness[i] == −rate[i]·base[i]` holds by construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EffectivenessPath {
    pub times: Vec<f64>,
    pub base: Vec<f64>,
    pub rate: Vec<f64>,
    pub effectiveness: Vec<f64>,
}

impl EffectivenessPath {
    pub fn new(times: Vec<f64>, base: Vec<f64>, rate: Vec<f64>) -> Result<Self> {
        if times.len() != base.len() {
            return Err(Error::LengthMismatch {
                context: "effectiveness path",
                left: times.len(),
                right: base.len(),
            });
        }
        if times.len() != rate.len() {
            return Err(Error::LengthMismatch {
                context: "effectiveness path",
                left: times.len(),
                right: rate.len(),
            });
        }
        check_grid(&times)?;
        for &b in &base {
            if !(b > 0.0) || !b.is_finite() {
                return Err(Error::NonPositive {
                    field: "base sample",
                    value: b,
                });
            }
        }
        for &k in &rate {
            ensure_finite("rate sample", k)?;
        }
        let effectiveness = rate
            .iter()
            .zip(&base)
            .map(|(&k, &b)| effectiveness(k, b))
            .collect();
        Ok(Self {
            times,
            base,
            rate,
            effectiveness,
        })
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// Combines user-supplied rate samples with the closed-form base to
/// produce E(t) = −K(t)·B(t) on the grid.
pub fn effectiveness_trajectory(
    k_samples: &[f64],
    init: &LogisticSolution,
    grid: &[f64],
) -> Result<EffectivenessPath> {
    if k_samples.len() != grid.len() {
        return Err(Error::LengthMismatch {
            context: "rate samples vs grid",
            left: k_samples.len(),
            right: grid.len(),
        });
    }
    check_grid(grid)?;
    let base = grid
        .iter()
        .map(|&t| init.value(t))
        .collect::<Result<Vec<f64>>>()?;
    EffectivenessPath::new(grid.to_vec(), base, k_samples.to_vec())
}

/// Nature of a located stationary point of E(t).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OptimumKind {
    Maximum,
    Minimum,
    /// Curvature too small to call either way.
    Inconclusive,
}

/// One refined stationary point of a sampled trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Optimum {
    pub time: f64,
    pub value: f64,
    pub kind: OptimumKind,
}

/// Result of scanning a trajectory for optima.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimumScan {
    /// The trajectory is constant to rounding: every point is stationary
    /// and no isolated optimum exists.
    pub degenerate_constant: bool,
    pub optima: Vec<Optimum>,
}

/// Locates and classifies interior optima of E(t) from its samples.
///
/// Sign changes of the discrete slope bracket each candidate; the root is
/// refined by bisection on a cubic interpolant and classified by the
/// three-point curvature of the neighbouring samples.
pub fn optimum_search(path: &EffectivenessPath) -> Result<OptimumScan> {
    let n = path.len();
    if n < 5 {
        return Err(Error::TooFewSamples {
            context: "optimum search",
            min: 5,
            got: n,
        });
    }
    let ts = &path.times;
    let es = &path.effectiveness;

    let scale = es.iter().fold(0.0_f64, |a, &e| a.max(e.abs())).max(1.0);
    let spread = es.iter().fold(0.0_f64, |a, &e| a.max((e - es[0]).abs()));
    if spread <= 1e-12 * scale {
        return Ok(OptimumScan {
            degenerate_constant: true,
            optima: Vec::new(),
        });
    }

    let interpolant = HermiteInterpolant::new(ts, es)?;
    let slopes: Vec<f64> = (0..n - 1)
        .map(|i| (es[i + 1] - es[i]) / (ts[i + 1] - ts[i]))
        .collect();
    let midpoints: Vec<f64> = (0..n - 1).map(|i| 0.5 * (ts[i] + ts[i + 1])).collect();

    let mut optima = Vec::new();
    for i in 0..slopes.len() - 1 {
        let (s0, s1) = (slopes[i], slopes[i + 1]);
        if s0 == 0.0 || s1 == 0.0 || (s0 < 0.0) == (s1 < 0.0) {
            continue;
        }
        let span = midpoints[i + 1] - midpoints[i];
        let root = bisect(
            |t| interpolant.derivative(t),
            midpoints[i],
            midpoints[i + 1],
            span * 1e-12,
        );
        // curvature from the three samples around the root
        let j = (i + 1).clamp(1, n - 2);
        let (_, d2) = three_point_derivatives(
            [ts[j - 1], ts[j], ts[j + 1]],
            [es[j - 1], es[j], es[j + 1]],
            root,
        );
        let kind = if d2 < -CURVATURE_TOL {
            OptimumKind::Maximum
        } else if d2 > CURVATURE_TOL {
            OptimumKind::Minimum
        } else {
            OptimumKind::Inconclusive
        };
        optima.push(Optimum {
            time: root,
            value: interpolant.value(root),
            kind,
        });
    }
    Ok(OptimumScan {
        degenerate_constant: false,
        optima,
    })
}

/// Per-sample outcome of the closed-form optimality conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimalitySample {
    pub time: f64,
    /// Rate value the integral condition predicts at this time.
    pub expected_rate: f64,
    /// Supplied rate matches `expected_rate` within 1e-6 relative.
    pub rate_matches_integral: bool,
    /// Assembled second derivative of E at this time.
    pub d2e_dt2: f64,
    /// Whether that second derivative is negative.
    pub second_differential_negative: bool,
}

/// Evaluates the two closed-form optimality conditions on a sampled rate.
///
/// Condition one compares K(t) against exp(−∫ c/(c+e^(s−t0)) ds) with the
/// integral taken from the grid start by adaptive quadrature (c is the
/// shifted constant of `init`). Condition two assembles d²E/dt² from K
/// and its finite-difference derivatives through the closed-form base and
/// reports its sign.
pub fn optimality_condition_check(
    k_samples: &[f64],
    init: &LogisticSolution,
    grid: &[f64],
) -> Result<Vec<OptimalitySample>> {
    let n = grid.len();
    if n < 3 {
        return Err(Error::TooFewSamples {
            context: "optimality check",
            min: 3,
            got: n,
        });
    }
    if k_samples.len() != n {
        return Err(Error::LengthMismatch {
            context: "rate samples vs grid",
            left: k_samples.len(),
            right: n,
        });
    }
    check_grid(grid)?;
    let c = init.shifted_constant();
    ensure_finite("shifted constant", c)?;
    if let Some(t_blow) = init.blow_up_time() {
        if grid[0] <= t_blow {
            return Err(Error::Singularity {
                blow_up_time: t_blow,
            });
        }
    }
    let t0 = init.t0;
    let integrand = move |s: f64| c / (c + (s - t0).exp());

    // cumulative integral of the rate condition from the grid start
    let mut cumulative = vec![0.0_f64; n];
    for i in 1..n {
        let segment = adaptive_quadrature(&integrand, grid[i - 1], grid[i], QUADRATURE_ABS_TOL)?;
        cumulative[i] = cumulative[i - 1] + segment;
    }

    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let expected_rate = (-cumulative[i]).exp();
        let k = k_samples[i];
        let rate_matches_integral =
            (k - expected_rate).abs() <= 1e-6 * expected_rate.abs().max(f64::MIN_POSITIVE);

        let j = i.clamp(1, n - 2);
        let (k1, k2) = three_point_derivatives(
            [grid[j - 1], grid[j], grid[j + 1]],
            [k_samples[j - 1], k_samples[j], k_samples[j + 1]],
            grid[i],
        );
        let d2e_dt2 = second_derivative_of_e(k, k1, k2, c, grid[i] - t0);
        out.push(OptimalitySample {
            time: grid[i],
            expected_rate,
            rate_matches_integral,
            d2e_dt2,
            second_differential_negative: d2e_dt2 < 0.0,
        });
    }
    Ok(out)
}

/// d²E/dt² for E = −K·u/(c+u), u = e^(t−t0), written so the anchor's
/// exponential never appears on its own.
fn second_derivative_of_e(k: f64, k1: f64, k2: f64, c: f64, tau: f64) -> f64 {
    let u = tau.exp();
    let cu = c + u;
    let bracket1 = -(k2 * c) - k2 * u - 2.0 * k1 * c - 2.0 * k1 * u - k * c;
    let bracket2 = k1 * c + k1 * u + k * c;
    (u * cu * cu * bracket1 + 2.0 * u * u * cu * bracket2) / (cu * cu * cu * cu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn effectiveness_products() {
        assert_eq!(effectiveness(0.5, 4.0), -2.0);
        assert_eq!(effectiveness(0.0, 123.0), 0.0);
        assert_eq!(effectiveness(1.0, 1.0), -1.0);
    }

    #[test]
    fn substitution_rate() {
        assert_eq!(marginal_rate_substitution(2.0, 4.0).unwrap(), -0.5);
        assert_eq!(marginal_rate_substitution(0.0, 3.0).unwrap(), 0.0);
        assert!(marginal_rate_substitution(1.0, 0.0).is_err());
    }

    #[test]
    fn substitution_step_preserves_e_to_first_order() {
        // stepping along (db, dk = Rms·db) changes E only at O(db²)
        let (k, b) = (2.0, 4.0);
        let db = 1e-4;
        let dk = marginal_rate_substitution(k, b).unwrap() * db;
        let e0 = effectiveness(k, b);
        let e1 = effectiveness(k + dk, b + db);
        assert!((e1 - e0).abs() < 10.0 * db * db, "diff {}", (e1 - e0).abs());
    }

    #[test]
    fn coupled_rate() {
        assert_eq!(rate_from_base(2.0, 4.0).unwrap(), 0.5);
        assert_eq!(rate_from_base(1.0, 1.0).unwrap(), 1.0);
        assert!(rate_from_base(0.0, 1.0).is_err());
        assert!(rate_from_base(1.0, 0.0).is_err());
        // product conservation
        for b in [0.25, 1.0, 7.5] {
            let k = rate_from_base(2.5, b).unwrap();
            assert_relative_eq!(k * b, 2.5, max_relative = 1e-12);
        }
    }

    #[test]
    fn logistic_rhs_fixed_points_and_vertex() {
        assert_eq!(effectiveness_logistic_rhs(0.0), 0.0);
        assert_eq!(effectiveness_logistic_rhs(1.0), 0.0);
        assert_eq!(effectiveness_logistic_rhs(0.5), 0.25);
        assert_eq!(effectiveness_logistic_rhs(2.0), -2.0);
    }

    #[test]
    fn analytic_symmetric_case() {
        let init = LogisticSolution::new(0.0, 0.5).unwrap();
        assert_eq!(init.value(0.0).unwrap(), 0.5);
        for t in [-3.0_f64, -0.7, 1.2, 6.0] {
            let expected = t.exp() / (1.0 + t.exp());
            assert_relative_eq!(init.value(t).unwrap(), expected, max_relative = 1e-14);
        }
        assert_relative_eq!(init.shifted_constant(), 1.0, max_relative = 1e-15);
    }

    #[test]
    fn analytic_fixed_points_exact() {
        let one = LogisticSolution::new(5.0, 1.0).unwrap();
        for t in [-100.0, 0.0, 5.0, 300.0] {
            assert_eq!(one.value(t).unwrap(), 1.0);
        }
        let zero = LogisticSolution::new(5.0, 0.0).unwrap();
        for t in [-100.0, 5.0, 300.0] {
            assert_eq!(zero.value(t).unwrap(), 0.0);
        }
    }

    #[test]
    fn negative_initial_base_rejected() {
        assert!(matches!(
            LogisticSolution::new(0.0, -0.5),
            Err(Error::NegativeValue { field: "x0", .. })
        ));
        assert!(matches!(
            base_logistic_numeric(-0.5, 0.0, 1.0, 0.5),
            Err(Error::NegativeValue { field: "x0", .. })
        ));
    }

    #[test]
    fn analytic_blow_up_reported() {
        let init = LogisticSolution::new(0.0, 2.0).unwrap();
        let t_blow = init.blow_up_time().unwrap();
        assert_relative_eq!(t_blow, 0.5_f64.ln(), max_relative = 1e-12);
        match init.value(t_blow - 0.1).unwrap_err() {
            Error::Singularity { blow_up_time } => {
                assert_relative_eq!(blow_up_time, t_blow, max_relative = 1e-12)
            }
            other => panic!("unexpected {other:?}"),
        }
        // forward of the blow-up the branch exists and decays toward 1
        assert!(init.value(t_blow + 0.1).unwrap() > 1.0);
    }

    #[test]
    fn numeric_matches_analytic() {
        let init = LogisticSolution::new(0.0, 0.5).unwrap();
        let samples = base_logistic_numeric(0.5, 0.0, 5.0, 0.5).unwrap();
        for (t, b) in samples {
            assert_relative_eq!(b, init.value(t).unwrap(), max_relative = 1e-8);
        }
    }

    #[test]
    fn numeric_fixed_points_exact() {
        for x0 in [0.0, 1.0] {
            let samples = base_logistic_numeric(x0, 0.0, 10.0, 1.0).unwrap();
            assert!(samples.iter().all(|&(_, b)| b == x0));
        }
    }

    #[test]
    fn numeric_handles_large_initial_value() {
        let x0 = 172055.3;
        let init = LogisticSolution::new(2014.0, x0).unwrap();
        let samples = base_logistic_numeric(x0, 2014.0, 2020.0, 0.5).unwrap();
        for (t, b) in &samples {
            let reference = init.value(*t).unwrap();
            assert_relative_eq!(*b, reference, max_relative = 1e-6);
        }
        // strictly decreasing toward 1 from above
        for w in samples.windows(2) {
            assert!(w[1].1 < w[0].1);
            assert!(w[1].1 > 1.0);
        }
    }

    #[test]
    fn grid_ends_exactly_at_t1() {
        let g = sample_grid(0.0, 1.0, 0.3).unwrap();
        assert_eq!(g.first().copied(), Some(0.0));
        assert_eq!(g.last().copied(), Some(1.0));
        let g = sample_grid(2014.0, 2020.0, 0.5).unwrap();
        assert_eq!(g.len(), 13);
        assert_eq!(g.last().copied(), Some(2020.0));
    }

    #[test]
    fn trajectory_identity_and_constant_rate() {
        let init = LogisticSolution::new(0.0, 0.5).unwrap();
        let grid = sample_grid(0.0, 4.0, 0.5).unwrap();
        let k = vec![1.0; grid.len()];
        let path = effectiveness_trajectory(&k, &init, &grid).unwrap();
        for (i, &t) in grid.iter().enumerate() {
            assert_eq!(path.effectiveness[i], -path.rate[i] * path.base[i]);
            let expected = -t.exp() / (1.0 + t.exp());
            assert_relative_eq!(path.effectiveness[i], expected, max_relative = 1e-12);
        }
        // strictly decreasing toward −1
        for w in path.effectiveness.windows(2) {
            assert!(w[1] < w[0]);
        }
    }

    #[test]
    fn trajectory_zero_rate_gives_zero_effectiveness() {
        let init = LogisticSolution::new(0.0, 0.5).unwrap();
        let grid = sample_grid(0.0, 2.0, 0.5).unwrap();
        let path = effectiveness_trajectory(&vec![0.0; grid.len()], &init, &grid).unwrap();
        assert!(path.effectiveness.iter().all(|&e| e == 0.0));
    }

    #[test]
    fn coupled_trajectory_is_constant() {
        let init = LogisticSolution::new(0.0, 0.5).unwrap();
        let grid = sample_grid(0.0, 4.0, 0.25).unwrap();
        let c = 2.5;
        let k: Vec<f64> = grid
            .iter()
            .map(|&t| rate_from_base(c, init.value(t).unwrap()).unwrap())
            .collect();
        let path = effectiveness_trajectory(&k, &init, &grid).unwrap();
        for &e in &path.effectiveness {
            assert_relative_eq!(e, -c, max_relative = 1e-12);
        }
    }

    #[test]
    fn optimum_search_finds_parabola_peak() {
        let ts: Vec<f64> = (0..=12).map(|i| i as f64 * 0.5).collect();
        let base = vec![1.0; ts.len()];
        let rate: Vec<f64> = ts.iter().map(|t| (t - 3.0) * (t - 3.0) - 1.0).collect();
        let path = EffectivenessPath::new(ts, base, rate).unwrap();
        let scan = optimum_search(&path).unwrap();
        assert!(!scan.degenerate_constant);
        assert_eq!(scan.optima.len(), 1);
        let opt = scan.optima[0];
        assert!((opt.time - 3.0).abs() < 1e-9, "time {}", opt.time);
        assert!((opt.value - 1.0).abs() < 1e-9);
        assert_eq!(opt.kind, OptimumKind::Maximum);
    }

    #[test]
    fn optimum_search_reports_constant_as_degenerate() {
        let ts: Vec<f64> = (0..=8).map(|i| i as f64).collect();
        let base = vec![2.0; ts.len()];
        let rate = vec![1.25; ts.len()];
        let path = EffectivenessPath::new(ts, base, rate).unwrap();
        let scan = optimum_search(&path).unwrap();
        assert!(scan.degenerate_constant);
        assert!(scan.optima.is_empty());
    }

    #[test]
    fn optimum_search_monotone_has_no_optima() {
        let init = LogisticSolution::new(0.0, 0.5).unwrap();
        let grid = sample_grid(-5.0, 5.0, 0.5).unwrap();
        let path = effectiveness_trajectory(&vec![1.0; grid.len()], &init, &grid).unwrap();
        let scan = optimum_search(&path).unwrap();
        assert!(!scan.degenerate_constant);
        assert!(scan.optima.is_empty());
    }

    #[test]
    fn optimum_search_needs_five_samples() {
        let path = EffectivenessPath::new(
            vec![0.0, 1.0, 2.0, 3.0],
            vec![1.0; 4],
            vec![1.0, 2.0, 1.5, 0.5],
        )
        .unwrap();
        assert!(matches!(
            optimum_search(&path),
            Err(Error::TooFewSamples { .. })
        ));
    }

    #[test]
    fn optimality_self_consistent_rate_passes() {
        let init = LogisticSolution::new(0.0, 0.5).unwrap();
        let grid = sample_grid(0.0, 5.0, 0.25).unwrap();
        // construct K to satisfy the integral condition, via the closed form
        // of the integral: ∫ c/(c+e^s) ds = (t − a) − ln((c+e^t)/(c+e^a))
        let c = init.shifted_constant();
        let k: Vec<f64> = grid
            .iter()
            .map(|&t| {
                let integral = (t - grid[0]) - ((c + t.exp()) / (c + grid[0].exp())).ln();
                (-integral).exp()
            })
            .collect();
        let report = optimality_condition_check(&k, &init, &grid).unwrap();
        assert!(report.iter().all(|s| s.rate_matches_integral));
    }

    #[test]
    fn optimality_constant_rate_fails_after_start() {
        let init = LogisticSolution::new(0.0, 0.5).unwrap();
        let grid = sample_grid(0.0, 5.0, 0.25).unwrap();
        let k = vec![1.0; grid.len()];
        let report = optimality_condition_check(&k, &init, &grid).unwrap();
        assert!(
            report[0].rate_matches_integral,
            "integral vanishes at the start"
        );
        assert!(report[1..].iter().all(|s| !s.rate_matches_integral));
    }

    #[test]
    fn optimality_check_rejects_grid_before_blow_up() {
        let init = LogisticSolution::new(0.0, 2.0).unwrap();
        let grid: Vec<f64> = (0..6).map(|i| -1.0 + i as f64 * 0.5).collect();
        let k = vec![1.0; grid.len()];
        assert!(matches!(
            optimality_condition_check(&k, &init, &grid),
            Err(Error::Singularity { .. })
        ));
    }

    #[test]
    fn optimality_curvature_sign_matches_direct_differences() {
        // K(t) = e^(−t) with C = 1 gives E = −1/(1+e^t), whose second
        // derivative changes sign at t = 0.
        let init = LogisticSolution::new(0.0, 0.5).unwrap();
        let grid = sample_grid(-2.0, 2.0, 0.1).unwrap();
        let k: Vec<f64> = grid.iter().map(|&t| (-t).exp()).collect();
        let report = optimality_condition_check(&k, &init, &grid).unwrap();

        let e = |t: f64| -1.0 / (1.0 + t.exp());
        for s in &report {
            if s.time.abs() < 0.2 {
                continue; // too close to the inflection for a sign call
            }
            let h = 1e-4;
            let direct = (e(s.time + h) - 2.0 * e(s.time) + e(s.time - h)) / (h * h);
            assert_eq!(
                s.second_differential_negative,
                direct < 0.0,
                "curvature sign at t = {}",
                s.time
            );
        }
    }
}
