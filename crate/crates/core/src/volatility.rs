//! GDP-volatility model: Vol = K·B·|N − M|, written in the cube-root
//! variables K* = K^(1/3), b = B^(1/3) so that Vol = K*³·b³·|N − M|.
//!
//! Two gradient routes are exposed. [`vol_gradient`] differentiates the
//! closed form directly and is the authoritative one. The time-quotient
//! form [`vol_gradient_chain_rule`] divides dVol/dt by dK*/dt and db/dt;
//! it recovers the direct partials only along trajectories where the
//! other variable is momentarily stationary, and is provided for
//! reference alongside the direct route.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, ensure_non_negative, Error, Result};

/// Default absolute tolerance on each partial when testing stationarity.
pub const STATIONARITY_TOL: f64 = 1e-9;

/// Parameters of the volatility function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VolParams {
    /// Rate of action K (≥ 0).
    pub k_rate: f64,
    /// Base of action B (≥ 0, currency units).
    pub b_base: f64,
    /// N = |Va − Vp|, revenue deviation from its potential level.
    pub n_term: f64,
    /// M = |Ca − Cp|, expenditure deviation from its potential level.
    pub m_term: f64,
}

impl VolParams {
    pub fn new(k_rate: f64, b_base: f64, n_term: f64, m_term: f64) -> Result<Self> {
        ensure_non_negative("k_rate", k_rate)?;
        ensure_non_negative("b_base", b_base)?;
        ensure_non_negative("n_term", n_term)?;
        ensure_non_negative("m_term", m_term)?;
        Ok(Self {
            k_rate,
            b_base,
            n_term,
            m_term,
        })
    }

    /// Builds params from the cube-root variables (K*, b).
    pub fn from_cube_roots(k_star: f64, b_root: f64, n_term: f64, m_term: f64) -> Result<Self> {
        ensure_non_negative("k_star", k_star)?;
        ensure_non_negative("b_root", b_root)?;
        Self::new(k_star.powi(3), b_root.powi(3), n_term, m_term)
    }

    /// K* = K^(1/3).
    pub fn k_star(&self) -> f64 {
        self.k_rate.cbrt()
    }

    /// b = B^(1/3).
    pub fn b_root(&self) -> f64 {
        self.b_base.cbrt()
    }

    /// |N − M|.
    pub fn deviation_spread(&self) -> f64 {
        (self.n_term - self.m_term).abs()
    }

    /// The spread N − M vanishes, so Vol is identically zero in (K*, b).
    pub fn is_degenerate(&self) -> bool {
        self.n_term == self.m_term
    }
}

/// Vol = K·B·|N − M|.
pub fn vol_value(p: &VolParams) -> f64 {
    p.k_rate * p.b_base * p.deviation_spread()
}

/// Residual of the equilibrium identity: |Y − Yp| − Vol. Zero means the
/// observed output deviation is fully matched by the model's right side.
pub fn equilibrium_residual(y_current: f64, y_potential: f64, p: &VolParams) -> f64 {
    (y_current - y_potential).abs() - vol_value(p)
}

/// Direct partials of Vol w.r.t. (K*, b):
/// (3K*²·b³·|N−M|, 3K*³·b²·|N−M|).
///
/// Undefined where N = M because the spread's absolute value has a kink
/// there as N and M move in time; the value itself stays available
/// through [`vol_value`].
pub fn vol_gradient(p: &VolParams) -> Result<(f64, f64)> {
    if p.is_degenerate() {
        return Err(Error::NonDifferentiable);
    }
    let spread = p.deviation_spread();
    let (ks, b) = (p.k_star(), p.b_root());
    Ok((
        3.0 * ks * ks * b * b * b * spread,
        3.0 * ks * ks * ks * b * b * spread,
    ))
}

/// Time-quotient gradient: (dVol/dt ÷ dK*/dt, dVol/dt ÷ db/dt).
///
/// Each quotient equals the corresponding direct partial only when the
/// other variable's time derivative vanishes at that instant.
pub fn vol_gradient_chain_rule(dvol_dt: f64, dk_star_dt: f64, db_dt: f64) -> Result<(f64, f64)> {
    ensure_finite("dvol_dt", dvol_dt)?;
    if dk_star_dt == 0.0 {
        return Err(Error::ZeroValue {
            field: "dk_star_dt",
        });
    }
    if db_dt == 0.0 {
        return Err(Error::ZeroValue { field: "db_dt" });
    }
    Ok((dvol_dt / dk_star_dt, dvol_dt / db_dt))
}

/// Sign of the second differential implied by the Hessian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DifferentialSign {
    /// Non-negative everywhere, positive in some direction.
    Positive,
    /// Identically zero.
    Zero,
    /// Non-positive everywhere, negative in some direction.
    Negative,
    /// Takes both signs.
    Indefinite,
}

/// Gradient, Hessian, and stationarity classification at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StationaryReport {
    /// (∂Vol/∂K*, ∂Vol/∂b).
    pub gradient: (f64, f64),
    /// Symmetric second-derivative matrix in (K*, b).
    pub hessian: [[f64; 2]; 2],
    /// Both partials within tolerance of zero.
    pub is_stationary: bool,
    pub second_differential_sign: DifferentialSign,
    /// N = M: Vol vanishes identically and every point is trivially flat.
    pub degenerate: bool,
}

/// Classifies the point (K*, b) of `p` with the default tolerance.
pub fn classify_stationary(p: &VolParams) -> StationaryReport {
    classify_stationary_with_tol(p, STATIONARITY_TOL)
}

/// Classifies with an explicit absolute tolerance on each partial.
pub fn classify_stationary_with_tol(p: &VolParams, tol: f64) -> StationaryReport {
    let spread = p.deviation_spread();
    let (ks, b) = (p.k_star(), p.b_root());
    let gradient = (
        3.0 * ks * ks * b * b * b * spread,
        3.0 * ks * ks * ks * b * b * spread,
    );
    let mixed = 9.0 * ks * ks * b * b * spread;
    let hessian = [
        [6.0 * ks * b * b * b * spread, mixed],
        [mixed, 6.0 * ks * ks * ks * b * spread],
    ];
    StationaryReport {
        gradient,
        hessian,
        is_stationary: gradient.0.abs() <= tol && gradient.1.abs() <= tol,
        second_differential_sign: hessian_sign(&hessian),
        degenerate: p.is_degenerate(),
    }
}

fn hessian_sign(h: &[[f64; 2]; 2]) -> DifferentialSign {
    if h[0][0] == 0.0 && h[1][1] == 0.0 && h[0][1] == 0.0 {
        return DifferentialSign::Zero;
    }
    let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
    let trace = h[0][0] + h[1][1];
    if det < 0.0 {
        DifferentialSign::Indefinite
    } else if trace > 0.0 {
        DifferentialSign::Positive
    } else {
        DifferentialSign::Negative
    }
}
