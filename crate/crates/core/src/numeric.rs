//! Small numerical kernels shared by the model modules: a classical
//! one-step integrator with step-doubling control, adaptive quadrature,
//! three-point finite differences on non-uniform grids, and a cubic
//! Hermite interpolant with bisection root refinement.

use crate::error::{Error, Result};

/// Magnitude above which an ODE trajectory is treated as diverging.
pub const BLOW_UP_LIMIT: f64 = 1e12;

/// One classical 4th-order Runge-Kutta step for dy/dt = f(t, y).
pub fn rk4_step<F>(f: &F, t: f64, y: f64, h: f64) -> f64
where
    F: Fn(f64, f64) -> f64,
{
    let k1 = f(t, y);
    let k2 = f(t + h / 2.0, y + h * k1 / 2.0);
    let k3 = f(t + h / 2.0, y + h * k2 / 2.0);
    let k4 = f(t + h, y + h * k3);
    y + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0
}

fn rel_diff(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Integrates dy/dt = f(t, y) from `(t0, y0)` and samples the solution at
/// every point of `grid` (which must start at `t0` and increase strictly).
///
/// Each step is accepted once a full step and two half steps agree within
/// `rel_tol`; otherwise the step is halved. The accepted value is the
/// half-step result with its leading error term removed, so the returned
/// samples are well inside `rel_tol` of the true solution for smooth
/// right-hand sides.
pub fn integrate_adaptive<F>(f: F, t0: f64, y0: f64, grid: &[f64], rel_tol: f64) -> Result<Vec<f64>>
where
    F: Fn(f64, f64) -> f64,
{
    if grid.is_empty() || grid[0] != t0 {
        return Err(Error::NonMonotonicGrid { index: 0 });
    }
    check_grid(grid)?;

    let mut out = Vec::with_capacity(grid.len());
    out.push(y0);

    let mut t = t0;
    let mut y = y0;
    // Smallest step we are willing to take before declaring divergence.
    let span = grid[grid.len() - 1] - t0;
    let h_min = (span.abs() * 1e-14).max(f64::MIN_POSITIVE);

    for &target in &grid[1..] {
        let mut h = target - t;
        while t < target {
            h = h.min(target - t);
            if t + h == t {
                // remaining interval is below f64 resolution at this scale
                break;
            }
            let full = rk4_step(&f, t, y, h);
            let mid = rk4_step(&f, t, y, h / 2.0);
            let halves = rk4_step(&f, t + h / 2.0, mid, h / 2.0);

            let ok = full.is_finite()
                && halves.is_finite()
                && halves.abs() < BLOW_UP_LIMIT
                && rel_diff(full, halves) <= rel_tol;
            if ok {
                t += h;
                y = halves + (halves - full) / 15.0;
                h *= 2.0;
            } else {
                h /= 2.0;
                if h < h_min {
                    return Err(Error::Singularity { blow_up_time: t });
                }
            }
        }
        out.push(y);
        t = target;
    }
    Ok(out)
}

/// Adaptive quadrature of `f` over `[a, b]` by midpoint-rule refinement:
/// each interval is split until the one-panel and two-panel midpoint
/// estimates agree within the interval's share of `abs_tol`.
pub fn adaptive_quadrature<F>(f: &F, a: f64, b: f64, abs_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if a == b {
        return Ok(0.0);
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let v = quad_recurse(f, lo, hi, abs_tol, 0)?;
    Ok(sign * v)
}

fn quad_recurse<F>(f: &F, a: f64, b: f64, tol: f64, depth: usize) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let h = b - a;
    let m = a + h / 2.0;
    let coarse = h * f(m);
    let fine = h / 2.0 * (f(a + h / 4.0) + f(b - h / 4.0));
    if !fine.is_finite() {
        return Err(Error::NumericOverflow {
            context: "adaptive quadrature",
        });
    }
    if (fine - coarse).abs() <= tol {
        // Richardson step: midpoint rule error halves as h^2.
        return Ok(fine + (fine - coarse) / 3.0);
    }
    if depth >= 60 {
        return Err(Error::NoConvergence {
            context: "adaptive quadrature",
        });
    }
    let left = quad_recurse(f, a, m, tol / 2.0, depth + 1)?;
    let right = quad_recurse(f, m, b, tol / 2.0, depth + 1)?;
    Ok(left + right)
}

/// First and second derivative at `at` of the quadratic through three
/// sample points. Works for interior and one-sided stencils alike.
pub fn three_point_derivatives(ts: [f64; 3], ys: [f64; 3], at: f64) -> (f64, f64) {
    let d01 = (ys[1] - ys[0]) / (ts[1] - ts[0]);
    let d12 = (ys[2] - ys[1]) / (ts[2] - ts[1]);
    let dd = (d12 - d01) / (ts[2] - ts[0]);
    let first = d01 + dd * (2.0 * at - ts[0] - ts[1]);
    (first, 2.0 * dd)
}

pub(crate) fn check_grid(grid: &[f64]) -> Result<()> {
    for i in 1..grid.len() {
        if !(grid[i] > grid[i - 1]) {
            return Err(Error::NonMonotonicGrid { index: i });
        }
    }
    Ok(())
}

/// Piecewise-cubic Hermite interpolant with centered-difference tangents.
/// Reproduces quadratics exactly; used to refine stationary points
/// between samples.
pub struct HermiteInterpolant<'a> {
    ts: &'a [f64],
    ys: &'a [f64],
    tangents: Vec<f64>,
}

impl<'a> HermiteInterpolant<'a> {
    pub fn new(ts: &'a [f64], ys: &'a [f64]) -> Result<Self> {
        if ts.len() != ys.len() {
            return Err(Error::LengthMismatch {
                context: "interpolant",
                left: ts.len(),
                right: ys.len(),
            });
        }
        if ts.len() < 3 {
            return Err(Error::TooFewSamples {
                context: "interpolant",
                min: 3,
                got: ts.len(),
            });
        }
        check_grid(ts)?;
        let n = ts.len();
        let mut tangents = Vec::with_capacity(n);
        for i in 0..n {
            let j = i.clamp(1, n - 2);
            let stencil_t = [ts[j - 1], ts[j], ts[j + 1]];
            let stencil_y = [ys[j - 1], ys[j], ys[j + 1]];
            let (first, _) = three_point_derivatives(stencil_t, stencil_y, ts[i]);
            tangents.push(first);
        }
        Ok(Self { ts, ys, tangents })
    }

    fn segment(&self, t: f64) -> usize {
        match self.ts.binary_search_by(|x| x.partial_cmp(&t).unwrap()) {
            Ok(i) => i.min(self.ts.len() - 2),
            Err(i) => i.saturating_sub(1).min(self.ts.len() - 2),
        }
    }

    /// Interpolated value at `t` (clamped to the sample range).
    pub fn value(&self, t: f64) -> f64 {
        let i = self.segment(t);
        let h = self.ts[i + 1] - self.ts[i];
        let s = ((t - self.ts[i]) / h).clamp(0.0, 1.0);
        let (y0, y1) = (self.ys[i], self.ys[i + 1]);
        let (m0, m1) = (self.tangents[i] * h, self.tangents[i + 1] * h);
        let s2 = s * s;
        let s3 = s2 * s;
        (2.0 * s3 - 3.0 * s2 + 1.0) * y0
            + (s3 - 2.0 * s2 + s) * m0
            + (-2.0 * s3 + 3.0 * s2) * y1
            + (s3 - s2) * m1
    }

    /// Derivative of the interpolant at `t`.
    pub fn derivative(&self, t: f64) -> f64 {
        let i = self.segment(t);
        let h = self.ts[i + 1] - self.ts[i];
        let s = ((t - self.ts[i]) / h).clamp(0.0, 1.0);
        let (y0, y1) = (self.ys[i], self.ys[i + 1]);
        let (m0, m1) = (self.tangents[i] * h, self.tangents[i + 1] * h);
        let s2 = s * s;
        let ds = (6.0 * s2 - 6.0 * s) * y0
            + (3.0 * s2 - 4.0 * s + 1.0) * m0
            + (-6.0 * s2 + 6.0 * s) * y1
            + (3.0 * s2 - 2.0 * s) * m1;
        ds / h
    }
}

/// Bisection for a root of `g` in `[a, b]`, assuming a sign change.
pub fn bisect<G>(g: G, mut a: f64, mut b: f64, tol: f64) -> f64
where
    G: Fn(f64) -> f64,
{
    let mut ga = g(a);
    if ga == 0.0 {
        return a;
    }
    if g(b) == 0.0 {
        return b;
    }
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        let m = 0.5 * (a + b);
        let gm = g(m);
        if gm == 0.0 {
            return m;
        }
        if (ga < 0.0) == (gm < 0.0) {
            a = m;
            ga = gm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}
