//! Limit laws for p -> 1 and the classification of planar n-invariant least
//! energy nodal solutions.

use crate::bessel;
use crate::error::{domain, Result};
use crate::morse;
use crate::shooting::{self, RadialProfile, TransformMeta};
use crate::sturm;
use crate::weighted::{self, CrossingParams, WeightedEigenpair};

use serde::{Deserialize, Serialize};

/// Threshold constant of the large-p regime, from the companion analysis of
/// the same symmetry classes. Recorded for commentary output only; nothing
/// here computes it.
pub const KAPPA_LARGE_P: f64 = 5.1869;

/// Limit of ||u_p||^{(p-1)/2}: (2+alpha)/2 z_m((N-2)/(2+alpha)).
pub fn limit_amplitude(n_dim: u32, alpha: f64, m: u32) -> Result<f64> {
    let pair = weighted::weighted_eigenvalue(n_dim, alpha, 0, m)?;
    Ok(pair.mu.sqrt())
}

/// Limit of u_p/||u_p|| as a function of r, normalized to 1 at the origin.
pub fn limit_profile(n_dim: u32, alpha: f64, m: u32, r: f64) -> Result<f64> {
    let pair = weighted::weighted_eigenvalue(n_dim, alpha, 0, m)?;
    weighted::radial_factor_normalized(&pair, r)
}

/// Limits of the nodal radii: (z_i/z_m)^{2/(2+alpha)}, i = 1..m-1.
pub fn limit_nodal_radii(n_dim: u32, alpha: f64, m: u32) -> Result<Vec<f64>> {
    if m < 2 {
        return Err(domain("nodal radii require m >= 2"));
    }
    let pair = weighted::weighted_eigenvalue(n_dim, alpha, 0, m)?;
    weighted::radial_factor_zeros(&pair)
}

/// Limits of the singular eigenvalues: ((N-2)/(2+alpha))^2 - beta_i^2; the
/// last entry is exactly 0.
pub fn nu_limits(crossings: &CrossingParams) -> Vec<f64> {
    let s = (crossings.n_dim as f64 - 2.0) / (2.0 + crossings.alpha);
    let mut out: Vec<f64> = crossings.betas.iter().map(|b| s * s - b * b).collect();
    if let Some(last) = out.last_mut() {
        *last = 0.0;
    }
    out
}

/// First-order expansion check: residual of
/// ||u_p||^{p-1} = mu (1 + c (p-1)) + o(p-1), and the pointwise limit
/// mu^{-1/(p-1)} u_p -> e^c w, evaluated in log space.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ExpansionReport {
    pub mu: f64,
    pub c: f64,
    /// ||u_p||^{p-1} = T_m^2.
    pub lhs: f64,
    /// mu (1 + c (p-1)).
    pub rhs: f64,
    pub residual: f64,
    /// residual / (p-1): must vanish as p -> 1.
    pub residual_ratio: f64,
    /// sup over r in [0, 0.95] of |mu^{-1/(p-1)} u_p - e^c w|.
    pub point_sup_error: f64,
}

pub fn expansion_check(profile: &RadialProfile, pair: &WeightedEigenpair) -> Result<ExpansionReport> {
    if pair.angular != 0 || pair.radial != profile.params.m {
        return Err(domain("expansion check expects the (0, m) radial eigenpair"));
    }
    let p = profile.params.p;
    let c = weighted::expansion_constant(pair)?;
    let lhs = profile.sup_norm_pow_pm1();
    let rhs = pair.mu * (1.0 + c * (p - 1.0));
    let residual = (lhs - rhs).abs();

    // mu^{-1/(p-1)} ||u_p|| = exp(log(T_m^2 / mu) / (p-1)) stays O(1)
    let amp = ((lhs / pair.mu).ln() / (p - 1.0)).exp();
    if !amp.is_finite() {
        return Err(domain("log-space amplitude overflowed".to_string()));
    }
    let scale = c.exp();
    let mut sup_err = 0.0f64;
    for k in 0..=190 {
        let r = 0.005 * k as f64;
        let model = scale * weighted::radial_factor_normalized(pair, r)?;
        let actual = amp * profile.u_normalized_at_r(r);
        sup_err = sup_err.max((model - actual).abs());
    }
    Ok(ExpansionReport {
        mu: pair.mu,
        c,
        lhs,
        rhs,
        residual,
        residual_ratio: residual / (p - 1.0),
        point_sup_error: sup_err,
    })
}

/// Verdict for the planar n-invariant least energy nodal solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Nonradial,
    Radial,
    Ambiguous,
}

/// Classification of U_{p,n} for p near 1 in the plane: nonradial below the
/// threshold (2+alpha)/2 beta, radial above it, undecided at it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NInvariantClassification {
    pub alpha: f64,
    pub n: u32,
    /// (2+alpha)/2 beta with beta from the two-zone crossing.
    pub threshold: f64,
    pub verdict: Verdict,
    /// The limit eigenpair: (n, 1) when nonradial, (0, 2) when radial, both
    /// candidates when ambiguous.
    pub candidates: Vec<WeightedEigenpair>,
    /// ceil(threshold - 1): how many n give nonradial solutions.
    pub nonradial_count: u32,
}

const CLASSIFY_TOL: f64 = 1e-9;

pub fn classify_n_invariant(alpha: f64, n: u32) -> Result<NInvariantClassification> {
    if n == 0 {
        return Err(domain("symmetry order n must be >= 1"));
    }
    let crossings = weighted::beta_crossings(2, alpha, 2)?;
    let beta = crossings.betas[0];
    let threshold = 0.5 * (2.0 + alpha) * beta;
    let nonradial_count = (threshold - 1.0).ceil().max(1.0) as u32;
    let nonradial_pair = weighted::weighted_eigenvalue(2, alpha, n, 1)?;
    let radial_pair = weighted::weighted_eigenvalue(2, alpha, 0, 2)?;
    let (verdict, candidates) = if (n as f64 - threshold).abs() <= CLASSIFY_TOL {
        (Verdict::Ambiguous, vec![nonradial_pair, radial_pair])
    } else if (n as f64) < threshold {
        (Verdict::Nonradial, vec![nonradial_pair])
    } else {
        (Verdict::Radial, vec![radial_pair])
    };
    Ok(NInvariantClassification {
        alpha,
        n,
        threshold,
        verdict,
        candidates,
        nonradial_count,
    })
}

/// Convergence table row at one p.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub p: f64,
    /// |T_m - (2+alpha)/2 z_m| / ((2+alpha)/2 z_m).
    pub amplitude_error: f64,
    /// per-radius relative errors (empty for m = 1).
    pub nodal_radius_errors: Vec<f64>,
    /// |nu_i(p) - nu_i(1)|; the last column is |nu_m(p)| itself.
    pub nu_errors: Vec<f64>,
    /// sup over r in [0, 0.95] of the normalized profile error.
    pub profile_sup_error: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub n_dim: u32,
    pub alpha: f64,
    pub m: u32,
    pub rows: Vec<ConvergenceRow>,
    /// True when every error column is non-increasing along the p list.
    pub monotone: bool,
}

/// Runs the full solve at each p (sorted descending toward 1) and measures
/// all limit-law errors; a non-monotone error column signals a solver
/// tolerance too loose for this p range.
pub fn convergence_report(n_dim: u32, alpha: f64, m: u32, p_list: &[f64]) -> Result<ConvergenceReport> {
    if p_list.windows(2).any(|w| w[0] <= w[1]) {
        return Err(domain("p list must decrease strictly toward 1"));
    }
    let crossings = weighted::beta_crossings(n_dim, alpha, m)?;
    let limits = nu_limits(&crossings);
    let amp_limit = limit_amplitude(n_dim, alpha, m)?;
    let radii_limit = if m >= 2 {
        limit_nodal_radii(n_dim, alpha, m)?
    } else {
        vec![]
    };

    let mut rows = Vec::with_capacity(p_list.len());
    for &p in p_list {
        let params = shooting::ProblemParams::new(n_dim, alpha, p, m)?;
        let profile = shooting::solve_radial(&params)?;
        let spec = sturm::nu_spectrum(&profile, 1e-9)?;
        let amplitude_error = (profile.amp_root - amp_limit).abs() / amp_limit;
        let nodal_radius_errors = profile.nodal_r[..m as usize - 1]
            .iter()
            .zip(&radii_limit)
            .map(|(r, lim)| (r - lim).abs() / lim)
            .collect();
        let nu_errors = spec
            .nus
            .iter()
            .zip(&limits)
            .map(|(nu, lim)| (nu - lim).abs())
            .collect();
        let mut profile_sup_error = 0.0f64;
        for k in 0..=190 {
            let r = 0.005 * k as f64;
            let lim = limit_profile(n_dim, alpha, m, r)?;
            profile_sup_error = profile_sup_error.max((profile.u_normalized_at_r(r) - lim).abs());
        }
        rows.push(ConvergenceRow {
            p,
            amplitude_error,
            nodal_radius_errors,
            nu_errors,
            profile_sup_error,
        });
    }

    let mut monotone = true;
    for w in rows.windows(2) {
        monotone &= w[1].amplitude_error <= w[0].amplitude_error + 1e-14;
        monotone &= w[1].profile_sup_error <= w[0].profile_sup_error + 1e-14;
        for (a, b) in w[0].nodal_radius_errors.iter().zip(&w[1].nodal_radius_errors) {
            monotone &= b <= &(a + 1e-14);
        }
        for (a, b) in w[0].nu_errors.iter().zip(&w[1].nu_errors) {
            monotone &= b <= &(a + 1e-14);
        }
    }
    Ok(ConvergenceReport { n_dim, alpha, m, rows, monotone })
}

/// Asymptotic Morse index straight from (N, alpha, m), resolving the
/// crossing parameters internally.
pub fn morse_limit(n_dim: u32, alpha: f64, m: u32) -> Result<morse::AsymptoticMorse> {
    let crossings = weighted::beta_crossings(n_dim, alpha, m)?;
    Ok(morse::asymptotic_morse(n_dim, alpha, m, &crossings))
}

/// z_1 of the order 2n/(2+alpha), the amplitude datum of the nonradial
/// limit profile.
pub fn nonradial_limit_zero(alpha: f64, n: u32) -> Result<f64> {
    bessel::zero(bessel::Order::new(2.0 * n as f64 / (2.0 + alpha))?, 1)
}

/// Meta helper re-exported for table generation.
pub fn transform_meta(n_dim: u32, alpha: f64) -> TransformMeta {
    TransformMeta::new(n_dim, alpha)
}
