//! Radial solutions with a prescribed number of nodal zones.
//!
//! The Henon radial equation transforms, via t = r^{(2+alpha)/2}, into
//!
//! -(t^{M-1} w')' = d^2 t^{M-1} |w|^{p-1} w,   M = 2(N+alpha)/(2+alpha),
//!                                             d = 2/(2+alpha),
//!
//! with w'(0) = 0, w(1) = 0. One initial-value integration from w(0) = 1 up
//! to the m-th zero T_m, followed by the exact rescaling
//! w <- T_m^{2/(p-1)} w(T_m .), produces the unique m-zone solution; its
//! sup-norm is T_m^{2/(p-1)}, which overflows f64 for p near 1, so the
//! profile stores log(sup) and the directly meaningful root
//! sup^{(p-1)/2} = T_m.

use crate::bessel::{self, Order};
use crate::error::{domain, integration, Result};
use crate::ode::{self, StepOutcome};

use serde::{Deserialize, Serialize};

/// Problem data (N, alpha, p, m).
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ProblemParams {
    pub n_dim: u32,
    pub alpha: f64,
    pub p: f64,
    pub m: u32,
}

impl ProblemParams {
    pub fn new(n_dim: u32, alpha: f64, p: f64, m: u32) -> Result<ProblemParams> {
        if n_dim < 2 {
            return Err(domain(format!("dimension N must be >= 2, got {n_dim}")));
        }
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(domain(format!("alpha must be finite and >= 0, got {alpha}")));
        }
        if !p.is_finite() || p <= 1.0 {
            return Err(domain(format!("exponent p must be > 1, got {p}")));
        }
        if m == 0 {
            return Err(domain("nodal zone count m must be >= 1"));
        }
        if n_dim >= 3 {
            let p_max = (n_dim as f64 + 2.0 + 2.0 * alpha) / (n_dim as f64 - 2.0);
            if p >= p_max {
                return Err(domain(format!(
                    "p = {p} outside the existence range (1, {p_max}) for N = {n_dim}, alpha = {alpha}"
                )));
            }
        }
        Ok(ProblemParams { n_dim, alpha, p, m })
    }
}

/// The transformed-equation constants M and d.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct TransformMeta {
    pub m_dim: f64,
    pub d: f64,
}

impl TransformMeta {
    pub fn new(n_dim: u32, alpha: f64) -> TransformMeta {
        TransformMeta {
            m_dim: 2.0 * (n_dim as f64 + alpha) / (2.0 + alpha),
            d: 2.0 / (2.0 + alpha),
        }
    }

    /// Baseline Bessel order (N-2)/(2+alpha) = (M-2)/2.
    pub fn baseline_order(&self) -> f64 {
        0.5 * (self.m_dim - 2.0)
    }
}

/// Raw initial-value run: trajectory of (w, w') in the unscaled variable,
/// the zeros found, and the interior critical points with their w values.
#[derive(Debug)]
pub struct IvpRun {
    pub trajectory: ode::Trajectory,
    pub zeros: Vec<f64>,
    pub extrema: Vec<(f64, f64)>,
    start: SeriesStart,
}

impl IvpRun {
    /// Dense evaluation of (w, w'); below the series handoff point the
    /// startup expansion is used.
    pub fn eval(&self, t: f64) -> [f64; 2] {
        if t < self.start.t0 {
            self.start.eval(t)
        } else {
            self.trajectory.eval(t)
        }
    }
}

/// Startup expansion w = a0 + a2 t^2 + a4 t^4 around the degenerate origin
/// (the coefficient t^{M-1} vanishes there, so the stepper takes over only
/// at t0).
#[derive(Clone, Copy, Debug)]
struct SeriesStart {
    t0: f64,
    a0: f64,
    a2: f64,
    a4: f64,
}

impl SeriesStart {
    fn new(params: &ProblemParams, meta: &TransformMeta, a0: f64, t0: f64) -> SeriesStart {
        let d2 = meta.d * meta.d;
        let mm = meta.m_dim;
        let amp = a0.abs().powf(params.p - 1.0);
        let a2 = -d2 * amp * a0 / (2.0 * mm);
        let a4 = -d2 * amp * params.p * a2 / (4.0 * (mm + 2.0));
        SeriesStart { t0, a0, a2, a4 }
    }

    fn eval(&self, t: f64) -> [f64; 2] {
        let t2 = t * t;
        [
            self.a0 + self.a2 * t2 + self.a4 * t2 * t2,
            2.0 * self.a2 * t + 4.0 * self.a4 * t2 * t,
        ]
    }
}

fn run_ivp(
    params: &ProblemParams,
    meta: &TransformMeta,
    amplitude: f64,
    t_end: f64,
    tol: f64,
    stop_after_zeros: Option<usize>,
) -> Result<IvpRun> {
    let start = SeriesStart::new(params, meta, amplitude, 1e-4);
    let y0 = start.eval(start.t0);
    let mm1 = meta.m_dim - 1.0;
    let d2 = meta.d * meta.d;
    let p = params.p;
    let rhs = move |t: f64, y: &[f64; 2]| -> [f64; 2] {
        let w = y[0];
        [y[1], -mm1 / t * y[1] - d2 * w.abs().powf(p - 1.0) * w]
    };

    let mut zeros: Vec<f64> = Vec::new();
    let mut extrema: Vec<(f64, f64)> = Vec::new();
    let trajectory = ode::integrate(rhs, start.t0, y0, t_end, tol, 1e-14, |step| {
        if step.y0[1] != 0.0 && step.y0[1].signum() != step.y1[1].signum() {
            let t = step.bisect_component_zero(1);
            extrema.push((t, step.eval(t)[0]));
        }
        if step.y0[0].signum() != step.y1[0].signum() {
            let t = step.bisect_component_zero(0);
            zeros.push(t);
            if let Some(wanted) = stop_after_zeros {
                if zeros.len() >= wanted {
                    return StepOutcome::Stop(t);
                }
            }
        }
        StepOutcome::Continue
    })?;
    Ok(IvpRun { trajectory, zeros, extrema, start })
}

/// Integrates the transformed equation from w(0) = 1, w'(0) = 0 up to
/// `t_end`, reporting zeros and critical points found on the way.
pub fn integrate_ivp(
    params: &ProblemParams,
    meta: &TransformMeta,
    t_end: f64,
    tol: f64,
) -> Result<IvpRun> {
    run_ivp(params, meta, 1.0, t_end, tol, None)
}

/// Same run started from w(0) = `amplitude`; by the exact scaling symmetry
/// v(t) = lambda^{2/(p-1)} w(lambda t) the zeros contract by the factor
/// lambda = amplitude^{(p-1)/2}.
pub fn integrate_ivp_scaled(
    params: &ProblemParams,
    meta: &TransformMeta,
    amplitude: f64,
    t_end: f64,
    tol: f64,
) -> Result<IvpRun> {
    if !(amplitude > 0.0) {
        return Err(domain("initial amplitude must be positive"));
    }
    run_ivp(params, meta, amplitude, t_end, tol, None)
}

/// The m-nodal-zone radial profile after rescaling the m-th zero to t = 1.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RadialProfile {
    pub params: ProblemParams,
    pub meta: TransformMeta,
    /// Sample points in [0, 1]: a uniform grid plus all nodal and extremal
    /// points.
    pub grid_t: Vec<f64>,
    /// Normalized profile w_p / ||w_p|| on `grid_t` (equals u_p / ||u_p||
    /// through the change of variable).
    pub w_norm: Vec<f64>,
    /// d(w_norm)/dt on `grid_t`.
    pub dw_norm: Vec<f64>,
    /// log ||u_p||_infty = (2/(p-1)) log T_m.
    pub log_sup_norm: f64,
    /// T_m = ||u_p||_infty^{(p-1)/2}, always representable.
    pub amp_root: f64,
    /// Zeros t_1 < ... < t_m = 1 in the transformed variable.
    pub nodal_t: Vec<f64>,
    /// Nodal radii r_i = t_i^{2/(2+alpha)}.
    pub nodal_r: Vec<f64>,
    /// Normalized extremal values, one per nodal zone, starting with
    /// w_norm(0) = 1; magnitudes strictly decrease.
    pub amplitudes: Vec<f64>,
}

const GRID_POINTS: usize = 1001;

/// Computes the radial solution with exactly m nodal zones.
pub fn solve_radial(params: &ProblemParams) -> Result<RadialProfile> {
    solve_radial_with_tol(params, 1e-10)
}

pub fn solve_radial_with_tol(params: &ProblemParams, tol: f64) -> Result<RadialProfile> {
    let meta = TransformMeta::new(params.n_dim, params.alpha);
    let m = params.m as usize;
    // At p = 1 the m-th zero sits at z_m(baseline)/d; zeros spread out as p
    // grows, so budget generously and extend on demand.
    let z_m = bessel::zero(Order::new(meta.baseline_order())?, m)?;
    let mut budget = z_m / meta.d * (1.5 + params.p);
    let mut run = None;
    for _ in 0..6 {
        let attempt = run_ivp(params, &meta, 1.0, budget, tol, Some(m))?;
        if attempt.zeros.len() >= m {
            run = Some(attempt);
            break;
        }
        budget *= 2.0;
    }
    let run = run.ok_or_else(|| {
        integration(format!(
            "did not reach {m} zeros within t <= {budget:.2} (t_end too small)"
        ))
    })?;

    let t_m = run.zeros[m - 1];
    let mut nodal_t: Vec<f64> = run.zeros[..m].iter().map(|z| z / t_m).collect();
    nodal_t[m - 1] = 1.0;
    let nodal_r: Vec<f64> = nodal_t.iter().map(|t| t.powf(meta.d)).collect();

    let extrema: Vec<(f64, f64)> = run
        .extrema
        .iter()
        .filter(|(t, _)| *t < t_m)
        .map(|(t, w)| (t / t_m, *w))
        .collect();
    let mut amplitudes = vec![1.0];
    amplitudes.extend(extrema.iter().map(|(_, w)| *w));

    let mut grid_t: Vec<f64> = (0..GRID_POINTS)
        .map(|k| k as f64 / (GRID_POINTS - 1) as f64)
        .collect();
    grid_t.extend(nodal_t.iter().copied());
    grid_t.extend(extrema.iter().map(|(t, _)| *t));
    grid_t.sort_by(|a, b| a.partial_cmp(b).unwrap());
    grid_t.dedup_by(|a, b| (*a - *b).abs() < 1e-12);

    let mut w_norm = Vec::with_capacity(grid_t.len());
    let mut dw_norm = Vec::with_capacity(grid_t.len());
    for &t in &grid_t {
        let y = run.eval(t * t_m);
        w_norm.push(y[0]);
        dw_norm.push(y[1] * t_m);
    }
    // pin the exact boundary values
    if let Some(first) = grid_t.first() {
        if *first == 0.0 {
            w_norm[0] = 1.0;
            dw_norm[0] = 0.0;
        }
    }
    let last = grid_t.len() - 1;
    if grid_t[last] >= 1.0 {
        w_norm[last] = 0.0;
    }

    Ok(RadialProfile {
        params: *params,
        meta,
        grid_t,
        w_norm,
        dw_norm,
        log_sup_norm: 2.0 / (params.p - 1.0) * t_m.ln(),
        amp_root: t_m,
        nodal_t,
        nodal_r,
        amplitudes,
    })
}

impl RadialProfile {
    /// ||u_p||_infty; +infinity when it exceeds the f64 range (p near 1).
    pub fn sup_norm(&self) -> f64 {
        self.log_sup_norm.exp()
    }

    /// ||u_p||_infty^{p-1} = T_m^2, always representable.
    pub fn sup_norm_pow_pm1(&self) -> f64 {
        self.amp_root * self.amp_root
    }

    /// Normalized profile at any t in [0, 1] (cubic Hermite between samples).
    pub fn w_at(&self, t: f64) -> f64 {
        self.hermite(t)[0]
    }

    /// Normalized profile as a function of the original radius r in [0, 1].
    pub fn u_normalized_at_r(&self, r: f64) -> f64 {
        self.w_at(r.powf(0.5 * (2.0 + self.params.alpha)))
    }

    fn hermite(&self, t: f64) -> [f64; 2] {
        let n = self.grid_t.len();
        if t <= self.grid_t[0] {
            return [self.w_norm[0], self.dw_norm[0]];
        }
        if t >= self.grid_t[n - 1] {
            return [self.w_norm[n - 1], self.dw_norm[n - 1]];
        }
        let k = self.grid_t.partition_point(|g| *g <= t) - 1;
        let (t0, t1) = (self.grid_t[k], self.grid_t[k + 1]);
        let h = t1 - t0;
        let s = (t - t0) / h;
        let (y0, y1) = (self.w_norm[k], self.w_norm[k + 1]);
        let (d0, d1) = (self.dw_norm[k], self.dw_norm[k + 1]);
        let h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
        let h10 = s * (1.0 - s) * (1.0 - s);
        let h01 = s * s * (3.0 - 2.0 * s);
        let h11 = s * s * (s - 1.0);
        let v = h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1;
        let d00 = 6.0 * s * (s - 1.0) / h;
        let dv = d00 * y0 + (1.0 - s) * (1.0 - 3.0 * s) * d0 - d00 * y1
            + s * (3.0 * s - 2.0) * d1;
        [v, dv]
    }

    /// W_p(t) = p d^2 |w_p(t)|^{p-1}; the sup-norm factor enters as
    /// sup^{p-1} = T_m^2, so no overflow occurs.
    pub fn potential_at(&self, t: f64) -> f64 {
        let scale = self.params.p * self.meta.d * self.meta.d * self.amp_root * self.amp_root;
        scale * self.w_at(t).abs().powf(self.params.p - 1.0)
    }

    /// sup of W_p, attained at the origin where |w_norm| = 1.
    pub fn potential_sup(&self) -> f64 {
        self.params.p * self.meta.d * self.meta.d * self.amp_root * self.amp_root
    }
}

/// W_p sampled on the profile grid.
pub fn potential_w(profile: &RadialProfile) -> Vec<f64> {
    let scale = profile.potential_sup();
    profile
        .w_norm
        .iter()
        .map(|w| scale * w.abs().powf(profile.params.p - 1.0))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn params_validation() {
        assert!(ProblemParams::new(1, 0.0, 2.0, 1).is_err());
        assert!(ProblemParams::new(2, -0.1, 2.0, 1).is_err());
        assert!(ProblemParams::new(2, 0.0, 1.0, 1).is_err());
        assert!(ProblemParams::new(2, 0.0, 2.0, 0).is_err());
        // existence range for N >= 3
        assert!(ProblemParams::new(3, 0.0, 4.9, 1).is_ok());
        assert!(ProblemParams::new(3, 0.0, 5.0, 1).is_err());
        assert!(ProblemParams::new(4, 1.0, 3.9, 1).is_ok());
        assert!(ProblemParams::new(4, 1.0, 4.0, 1).is_err());
    }

    #[test]
    fn transform_meta_bounds() {
        for &(n, a) in &[(2u32, 0.0), (2, 3.0), (3, 0.0), (3, 1.5), (4, 2.0), (7, 0.3)] {
            let meta = TransformMeta::new(n, a);
            assert!(meta.m_dim >= 2.0 - 1e-15 && meta.m_dim <= n as f64 + 1e-15);
            if n == 2 {
                assert_relative_eq!(meta.m_dim, 2.0);
            } else {
                assert!(meta.m_dim > 2.0);
            }
        }
    }

    #[test]
    fn first_zero_approaches_linear_limit() {
        // at p = 1 the equation is linear and T_1 = z_1(baseline)/d
        let params = ProblemParams::new(2, 0.0, 1.0001, 1).unwrap();
        let meta = TransformMeta::new(2, 0.0);
        let run = integrate_ivp(&params, &meta, 4.0, 1e-11).unwrap();
        let expect = 2.4048255576957728 / meta.d;
        assert_relative_eq!(run.zeros[0], expect, max_relative = 1e-3);

        let params = ProblemParams::new(3, 1.0, 1.0001, 1).unwrap();
        let meta = TransformMeta::new(3, 1.0);
        let run = integrate_ivp(&params, &meta, 9.0, 1e-11).unwrap();
        // baseline order 1/3
        let z = bessel::zero(Order::new(1.0 / 3.0).unwrap(), 1).unwrap();
        assert_relative_eq!(run.zeros[0], z / meta.d, max_relative = 1e-3);
    }

    #[test]
    fn scaling_symmetry_contracts_zeros() {
        let params = ProblemParams::new(2, 0.0, 3.0, 1).unwrap();
        let meta = TransformMeta::new(2, 0.0);
        let base = integrate_ivp(&params, &meta, 12.0, 1e-11).unwrap();
        let lambda: f64 = 1.7;
        let amp = lambda.powf(2.0 / (params.p - 1.0));
        let scaled = integrate_ivp_scaled(&params, &meta, amp, 12.0, 1e-11).unwrap();
        assert_relative_eq!(scaled.zeros[0], base.zeros[0] / lambda, max_relative = 1e-8);
    }

    #[test]
    fn fixed_step_rk4_oracle_for_p3() {
        // brute-force RK4 at h = 1e-5 locates the first zero independently
        let params = ProblemParams::new(2, 0.0, 3.0, 1).unwrap();
        let meta = TransformMeta::new(2, 0.0);
        let run = integrate_ivp(&params, &meta, 12.0, 1e-11).unwrap();

        let f = |t: f64, y: [f64; 2]| -> [f64; 2] {
            [y[1], -y[1] / t - y[0].abs().powi(2) * y[0]]
        };
        let h = 1e-5;
        let start = SeriesStart::new(&params, &meta, 1.0, 1e-4);
        let mut t = 1e-4;
        let mut y = start.eval(t);
        let mut zero = None;
        while t < 12.0 {
            let k1 = f(t, y);
            let k2 = f(t + 0.5 * h, [y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]]);
            let k3 = f(t + 0.5 * h, [y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]]);
            let k4 = f(t + h, [y[0] + h * k3[0], y[1] + h * k3[1]]);
            let y1 = [
                y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
                y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
            ];
            if y[0] > 0.0 && y1[0] <= 0.0 {
                zero = Some(t + h * y[0] / (y[0] - y1[0]));
                break;
            }
            y = y1;
            t += h;
        }
        assert_relative_eq!(run.zeros[0], zero.unwrap(), epsilon = 1e-6);
    }

    #[test]
    fn single_zone_profile_is_positive_and_decreasing() {
        let params = ProblemParams::new(2, 0.0, 2.0, 1).unwrap();
        let profile = solve_radial(&params).unwrap();
        assert_eq!(profile.nodal_t.len(), 1);
        assert_eq!(profile.nodal_t[0], 1.0);
        let mut prev = f64::INFINITY;
        for (&t, &w) in profile.grid_t.iter().zip(&profile.w_norm) {
            if t < 1.0 {
                assert!(w > 0.0, "w({t}) = {w}");
            }
            assert!(w <= prev + 1e-12);
            prev = w;
        }
    }

    #[test]
    fn two_zone_profile_structure() {
        let params = ProblemParams::new(2, 0.0, 1.5, 2).unwrap();
        let profile = solve_radial(&params).unwrap();
        assert_eq!(profile.nodal_t.len(), 2);
        assert!(profile.nodal_t[0] > 0.0 && profile.nodal_t[0] < 1.0);
        // one interior sign change
        let crossings = profile
            .w_norm
            .windows(2)
            .filter(|w| w[0].signum() != w[1].signum() && w[1] != 0.0)
            .count();
        assert_eq!(crossings, 1);
        // amplitudes strictly decreasing in magnitude, alternating sign
        assert_eq!(profile.amplitudes.len(), 2);
        assert_eq!(profile.amplitudes[0], 1.0);
        assert!(profile.amplitudes[1] < 0.0);
        assert!(profile.amplitudes[1].abs() < 1.0);
    }

    #[test]
    fn potential_vanishes_at_nodes_and_peaks_at_origin() {
        let params = ProblemParams::new(2, 0.0, 1.5, 2).unwrap();
        let profile = solve_radial(&params).unwrap();
        let w = potential_w(&profile);
        let sup = w.iter().cloned().fold(0.0, f64::max);
        assert_relative_eq!(sup, profile.potential_sup(), max_relative = 1e-12);
        let t1 = profile.nodal_t[0];
        assert!(profile.potential_at(t1) < 1e-8 * sup);
        assert!(w.iter().all(|v| *v >= 0.0));
    }

    #[test]
    fn near_one_overflow_guard() {
        let params = ProblemParams::new(2, 0.0, 1.001, 2).unwrap();
        let profile = solve_radial(&params).unwrap();
        assert!(profile.sup_norm().is_infinite());
        assert!(profile.log_sup_norm > 700.0);
        // T_m close to the linear-limit value z_2(0)/d
        assert_relative_eq!(profile.amp_root, 5.5200781102863106, max_relative = 0.01);
    }
}
