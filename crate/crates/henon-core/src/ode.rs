//! Adaptive Dormand-Prince 5(4) integrator for two-dimensional systems,
//! with per-step cubic Hermite dense output.
//!
//! Both radial solves in this crate are second-order scalar ODEs written as
//! first-order pairs, so the state is a fixed `[f64; 2]`. Steps keep the
//! endpoint values and slopes; the Hermite interpolant between them is what
//! zero location (sign-change bisection on the dense output) runs on.

use crate::error::{integration, Result};

pub type State = [f64; 2];

/// One accepted step with the data needed for dense evaluation.
#[derive(Clone, Copy, Debug)]
pub struct Step {
    pub t0: f64,
    pub t1: f64,
    pub y0: State,
    pub y1: State,
    pub f0: State,
    pub f1: State,
}

impl Step {
    /// Cubic Hermite interpolation at t in [t0, t1].
    pub fn eval(&self, t: f64) -> State {
        let h = self.t1 - self.t0;
        let s = (t - self.t0) / h;
        let h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
        let h10 = s * (1.0 - s) * (1.0 - s);
        let h01 = s * s * (3.0 - 2.0 * s);
        let h11 = s * s * (s - 1.0);
        [
            h00 * self.y0[0] + h10 * h * self.f0[0] + h01 * self.y1[0] + h11 * h * self.f1[0],
            h00 * self.y0[1] + h10 * h * self.f0[1] + h01 * self.y1[1] + h11 * h * self.f1[1],
        ]
    }

    /// Derivative of the interpolant.
    pub fn eval_derivative(&self, t: f64) -> State {
        let h = self.t1 - self.t0;
        let s = (t - self.t0) / h;
        let d00 = 6.0 * s * (s - 1.0) / h;
        let d10 = (1.0 - s) * (1.0 - 3.0 * s);
        let d01 = -d00;
        let d11 = s * (3.0 * s - 2.0);
        [
            d00 * self.y0[0] + d10 * self.f0[0] + d01 * self.y1[0] + d11 * self.f1[0],
            d00 * self.y0[1] + d10 * self.f0[1] + d01 * self.y1[1] + d11 * self.f1[1],
        ]
    }

    /// Locates a sign change of component `comp` inside the step by bisection
    /// on the dense output, assuming opposite signs at the endpoints.
    pub fn bisect_component_zero(&self, comp: usize) -> f64 {
        let mut a = self.t0;
        let mut b = self.t1;
        let mut fa = self.y0[comp];
        for _ in 0..80 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            let fm = self.eval(mid)[comp];
            if fm == 0.0 {
                return mid;
            }
            if fa.signum() == fm.signum() {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        0.5 * (a + b)
    }
}

/// Accepted steps of one integration, in order.
#[derive(Clone, Debug, Default)]
pub struct Trajectory {
    pub steps: Vec<Step>,
}

impl Trajectory {
    pub fn last_t(&self) -> f64 {
        self.steps.last().map_or(f64::NAN, |s| s.t1)
    }

    pub fn last_y(&self) -> State {
        self.steps.last().map_or([f64::NAN; 2], |s| s.y1)
    }

    /// Dense evaluation anywhere inside the covered span.
    pub fn eval(&self, t: f64) -> State {
        let step = self.locate(t);
        step.eval(t)
    }

    pub fn eval_derivative(&self, t: f64) -> State {
        self.locate(t).eval_derivative(t)
    }

    fn locate(&self, t: f64) -> &Step {
        let idx = self
            .steps
            .partition_point(|s| s.t1 < t)
            .min(self.steps.len() - 1);
        &self.steps[idx]
    }
}

/// What the per-step callback tells the driver.
pub enum StepOutcome {
    Continue,
    /// Stop and truncate the trajectory at the given time.
    Stop(f64),
}

// Dormand-Prince 5(4) tableau.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// b - b_hat, for the embedded error estimate
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

#[inline]
fn axpy(y: &State, h: f64, coeffs: &[(f64, &State)]) -> State {
    let mut out = *y;
    for &(c, k) in coeffs {
        out[0] += h * c * k[0];
        out[1] += h * c * k[1];
    }
    out
}

/// Integrates y' = f(t, y) from (t0, y0) to t_end with adaptive steps.
///
/// `on_step` sees every accepted step and may stop the run early (the final
/// step is then truncated to the requested time via the dense output).
pub fn integrate<F, C>(
    f: F,
    t0: f64,
    y0: State,
    t_end: f64,
    rtol: f64,
    atol: f64,
    mut on_step: C,
) -> Result<Trajectory>
where
    F: Fn(f64, &State) -> State,
    C: FnMut(&Step) -> StepOutcome,
{
    if !(t_end > t0) {
        return Err(integration(format!("empty span [{t0}, {t_end}]")));
    }
    let span = t_end - t0;
    let mut h = (span / 100.0).min(1e-2 * (1.0 + t0.abs()));
    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y);
    let mut trajectory = Trajectory::default();
    let mut rejected_in_row = 0usize;

    for _ in 0..2_000_000 {
        if t >= t_end {
            return Ok(trajectory);
        }
        h = h.min(t_end - t);
        if h < 1e-14 * (1.0 + t.abs()) {
            return Err(integration(format!("step size underflow at t = {t:.6e}")));
        }

        let k2 = f(t + 0.2 * h, &axpy(&y, h, &[(A21, &k1)]));
        let k3 = f(t + 0.3 * h, &axpy(&y, h, &[(A31, &k1), (A32, &k2)]));
        let k4 = f(t + 0.8 * h, &axpy(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
        let k5 = f(
            t + 8.0 / 9.0 * h,
            &axpy(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
        );
        let k6 = f(
            t + h,
            &axpy(&y, h, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
        );
        let y1 = axpy(&y, h, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
        let k7 = f(t + h, &y1);

        let scale_all = y[0].abs().max(y[1].abs()).max(y1[0].abs()).max(y1[1].abs());
        let mut err: f64 = 0.0;
        for i in 0..2 {
            let e = h
                * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i]
                    + E7 * k7[i]);
            let sc = atol + rtol * (y[i].abs().max(y1[i].abs()) + 0.01 * scale_all);
            err = err.max((e / sc).abs());
        }

        if err <= 1.0 {
            let step = Step { t0: t, t1: t + h, y0: y, y1, f0: k1, f1: k7 };
            rejected_in_row = 0;
            match on_step(&step) {
                StepOutcome::Continue => trajectory.steps.push(step),
                StepOutcome::Stop(t_stop) => {
                    let mut cut = step;
                    cut.t1 = t_stop.clamp(step.t0, step.t1);
                    cut.y1 = step.eval(cut.t1);
                    cut.f1 = step.eval_derivative(cut.t1);
                    trajectory.steps.push(cut);
                    return Ok(trajectory);
                }
            }
            t += h;
            y = y1;
            k1 = k7; // FSAL
        } else {
            rejected_in_row += 1;
            if rejected_in_row > 60 {
                return Err(integration(format!("persistent step rejection at t = {t:.6e}")));
            }
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        h *= factor;
    }
    Err(integration("step budget exhausted".to_string()))
}
