//! Eigenvalues and eigenfunctions of the weighted problem
//! -Delta w = mu |x|^alpha w on the unit ball, the crossing parameters
//! beta_i, the resonant weight exponents, and the first-order expansion
//! constant c.
//!
//! Everything here is closed-form in terms of Bessel zeros: the (n, i)
//! eigenvalue is ((2+alpha)/2 z_i)^2 where z_i is the i-th zero of J of
//! order (N-2+2n)/(2+alpha), and the radial factor of the eigenfunction is
//! r^{-(N-2)/2} J(z_i r^{(2+alpha)/2}).

use crate::bessel::{self, Order};
use crate::error::{bracket, domain, Result};
use crate::quad;

use serde::{Deserialize, Serialize};

/// One eigenpair of the weighted problem, indexed by angular harmonic degree
/// `angular` and radial index `radial` (1-based).
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct WeightedEigenpair {
    pub n_dim: u32,
    pub alpha: f64,
    pub angular: u32,
    pub radial: u32,
    /// Bessel order (N - 2 + 2 n) / (2 + alpha).
    pub order: f64,
    /// z_radial(order).
    pub zero: f64,
    /// mu = ((2 + alpha) / 2 * zero)^2.
    pub mu: f64,
}

fn check_base(n_dim: u32, alpha: f64) -> Result<()> {
    if n_dim < 2 {
        return Err(domain(format!("dimension N must be >= 2, got {n_dim}")));
    }
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(domain(format!("alpha must be finite and >= 0, got {alpha}")));
    }
    Ok(())
}

/// mu_{n,i} and its data.
pub fn weighted_eigenvalue(n_dim: u32, alpha: f64, angular: u32, radial: u32) -> Result<WeightedEigenpair> {
    check_base(n_dim, alpha)?;
    if radial == 0 {
        return Err(domain("radial index must be >= 1"));
    }
    let order = (n_dim as f64 - 2.0 + 2.0 * angular as f64) / (2.0 + alpha);
    let zero = bessel::zero(Order::new(order)?, radial as usize)?;
    let mu = (0.5 * (2.0 + alpha) * zero).powi(2);
    Ok(WeightedEigenpair { n_dim, alpha, angular, radial, order, zero, mu })
}

/// Radial factor r^{-(N-2)/2} J_order(zero * r^{(2+alpha)/2}) of the
/// eigenfunction, with the removable singularity at r = 0 evaluated by its
/// series limit (the combined power of r is `angular`, so the value at 0 is
/// nonzero only for radial eigenpairs).
pub fn eigenfunction_radial_factor(pair: &WeightedEigenpair, r: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r) {
        return Err(domain(format!("radius must lie in [0, 1], got {r}")));
    }
    if r == 0.0 {
        if pair.angular == 0 {
            return radial_factor_at_origin(pair);
        }
        return Ok(0.0);
    }
    let t = r.powf(0.5 * (2.0 + pair.alpha));
    let j = bessel::eval_j(Order::new(pair.order)?, pair.zero * t)?;
    Ok(r.powf(-0.5 * (pair.n_dim as f64 - 2.0)) * j)
}

/// Limit of the radial factor at r = 0 for angular index 0:
/// (zero/2)^order / Gamma(1 + order).
fn radial_factor_at_origin(pair: &WeightedEigenpair) -> Result<f64> {
    Ok((0.5 * pair.zero).powf(pair.order) / bessel::gamma(1.0 + pair.order)?)
}

/// Radial factor normalized to sup-norm 1 with positive value at the origin.
/// Only defined for radial pairs (angular = 0), whose amplitude envelope
/// decreases outward so the sup is attained at r = 0.
pub fn radial_factor_normalized(pair: &WeightedEigenpair, r: f64) -> Result<f64> {
    if pair.angular != 0 {
        return Err(domain("normalized radial factor requires a radial eigenpair"));
    }
    Ok(eigenfunction_radial_factor(pair, r)? / radial_factor_at_origin(pair)?)
}

/// Interior zeros of the radial factor: (z_k / z_i)^{2/(2+alpha)}, k < i.
pub fn radial_factor_zeros(pair: &WeightedEigenpair) -> Result<Vec<f64>> {
    let table = bessel::zeros(Order::new(pair.order)?, pair.radial as usize)?;
    let d = 2.0 / (2.0 + pair.alpha);
    Ok(table.zeros[..pair.radial as usize - 1]
        .iter()
        .map(|z| (z / pair.zero).powf(d))
        .collect())
}

/// Crossing parameters beta_1 > beta_2 > ... > beta_m = (N-2)/(2+alpha):
/// beta_i is the order whose i-th zero equals the m-th zero of the baseline
/// order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CrossingParams {
    pub n_dim: u32,
    pub alpha: f64,
    pub m: u32,
    /// z_m of the baseline order, the common target of all crossings.
    pub target_zero: f64,
    pub betas: Vec<f64>,
}

/// Solves z_i(beta_i) = z_m((N-2)/(2+alpha)) for i = 1..m by bisection on
/// the order (the map beta -> z_i(beta) is increasing). beta_m is the
/// baseline exactly.
pub fn beta_crossings(n_dim: u32, alpha: f64, m: u32) -> Result<CrossingParams> {
    check_base(n_dim, alpha)?;
    if m == 0 {
        return Err(domain("nodal zone count m must be >= 1"));
    }
    let baseline = (n_dim as f64 - 2.0) / (2.0 + alpha);
    let target = bessel::zero(Order::new(baseline)?, m as usize)?;
    const B_MAX: f64 = 50.0;
    let mut betas = Vec::with_capacity(m as usize);
    for i in 1..m as usize {
        let zi = |beta: f64| bessel::zero(Order::new(beta).unwrap(), i).unwrap();
        let mut lo = baseline;
        let mut hi = B_MAX;
        if zi(hi) < target {
            return Err(bracket(format!(
                "beta bracket [{baseline}, {B_MAX}] does not straddle z_{m} = {target:.6} \
                 for crossing index {i} (B_max too small)"
            )));
        }
        for _ in 0..55 {
            let mid = 0.5 * (lo + hi);
            if zi(mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-11 {
                break;
            }
        }
        betas.push(0.5 * (lo + hi));
    }
    betas.push(baseline);
    Ok(CrossingParams { n_dim, alpha, m, target_zero: target, betas })
}

/// A resonant weight exponent alpha_{l,n} = (2n + N - 2)/beta_l - 2.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Resonance {
    pub ell: u32,
    pub n: u32,
    pub alpha: f64,
}

/// All non-negative resonant exponents built from the crossing table, for
/// l <= m-1 and n <= n_max, sorted ascending. Entries with beta_l = 0 are
/// skipped. The betas are the caller's: they were computed at one reference
/// alpha (in the plane they do not depend on alpha at all, the baseline
/// order being 0).
pub fn resonant_alphas(crossings: &CrossingParams, n_max: u32) -> Vec<Resonance> {
    let n_dim = crossings.n_dim;
    let mut out = Vec::new();
    for (idx, &beta) in crossings.betas.iter().enumerate().take(crossings.m as usize - 1) {
        let ell = idx as u32 + 1;
        if beta <= 1e-12 {
            continue;
        }
        for n in 1..=n_max {
            let alpha = (2.0 * n as f64 + n_dim as f64 - 2.0) / beta - 2.0;
            if alpha >= 0.0 {
                out.push(Resonance { ell, n, alpha });
            }
        }
    }
    out.sort_by(|a, b| a.alpha.partial_cmp(&b.alpha).unwrap());
    out
}

/// Self-consistent resonances: for N >= 3 the crossing parameters depend on
/// alpha, so each candidate is refined by recomputing the beta table at the
/// candidate until the value is stable. In the plane this coincides with
/// `resonant_alphas`.
pub fn resonant_alphas_refined(n_dim: u32, m: u32, n_max: u32, alpha_ref: f64) -> Result<Vec<Resonance>> {
    let seed = resonant_alphas(&beta_crossings(n_dim, alpha_ref, m)?, n_max);
    let mut out = Vec::new();
    'cand: for res in seed {
        let mut alpha = res.alpha;
        for _ in 0..40 {
            let betas = beta_crossings(n_dim, alpha, m)?;
            let beta = betas.betas[res.ell as usize - 1];
            if beta <= 1e-12 {
                continue 'cand;
            }
            let next = (2.0 * res.n as f64 + n_dim as f64 - 2.0) / beta - 2.0;
            if !(0.0..1e3).contains(&next) {
                continue 'cand;
            }
            if (next - alpha).abs() <= 1e-9 {
                out.push(Resonance { ell: res.ell, n: res.n, alpha: next });
                continue 'cand;
            }
            alpha = next;
        }
    }
    out.sort_by(|a, b| a.alpha.partial_cmp(&b.alpha).unwrap());
    Ok(out)
}

/// Expansion constant
/// c = (-int_B |x|^a log|w| w^2) / (int_B |x|^a w^2)
/// for a radial eigenfunction normalized to sup-norm 1, reduced to a 1D
/// quadrature with weight r^{N-1+alpha}. The integrand w^2 log|w| extends
/// by 0 across the zeros of w.
pub fn expansion_constant(pair: &WeightedEigenpair) -> Result<f64> {
    if pair.angular != 0 {
        return Err(domain("expansion constant is defined for radial eigenpairs"));
    }
    let zeros = radial_factor_zeros(pair)?;
    let power = pair.n_dim as f64 - 1.0 + pair.alpha;
    let num = quad::integrate(
        |r| {
            let w = radial_factor_normalized(pair, r).unwrap();
            if w == 0.0 {
                0.0
            } else {
                -r.powf(power) * w * w * w.abs().ln()
            }
        },
        0.0,
        1.0,
        &zeros,
        1e-10,
    )?;
    let den = quad::integrate(
        |r| {
            let w = radial_factor_normalized(pair, r).unwrap();
            r.powf(power) * w * w
        },
        0.0,
        1.0,
        &zeros,
        1e-10,
    )?;
    Ok(num / den)
}
