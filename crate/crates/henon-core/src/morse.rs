//! Morse-index arithmetic: spherical-harmonic multiplicities, the index
//! exponents J_i, the exact double-sum formula, the p -> 1 asymptotic
//! formula with resonance detection, planar and Lane-Emden special forms,
//! and the n-invariant index.

use crate::error::{domain, Result};
use crate::shooting::ProblemParams;
use crate::sturm::SingularSpectrum;
use crate::weighted::CrossingParams;

use serde::{Deserialize, Serialize};

/// Multiplicity N_j of the eigenvalue lambda_j = j(N+j-2) of the
/// Laplace-Beltrami operator on the unit sphere in R^N:
/// 1 for j = 0, else (N+2j-2)(N+j-3)!/((N-2)! j!).
pub fn multiplicity_nj(n_dim: u32, j: u32) -> u64 {
    if j == 0 {
        return 1;
    }
    if n_dim == 2 {
        return 2;
    }
    let n = n_dim as u128;
    let j = j as u128;
    let mut num = n + 2 * j - 2;
    for k in (j + 1)..=(n + j - 3) {
        num *= k;
    }
    let mut den: u128 = 1;
    for k in 2..=(n - 2) {
        den *= k;
    }
    (num / den) as u64
}

/// lambda_j = j (N + j - 2).
pub fn lambda_j(n_dim: u32, j: u32) -> f64 {
    (j as f64) * (n_dim as f64 + j as f64 - 2.0)
}

/// J(p) = (2+alpha)/2 (sqrt(((N-2)/(2+alpha))^2 - nu) - (N-2)/(2+alpha)),
/// positive exactly when nu < 0.
pub fn j_index(n_dim: u32, alpha: f64, nu: f64) -> Result<f64> {
    let s = (n_dim as f64 - 2.0) / (2.0 + alpha);
    if nu > s * s {
        return Err(domain(format!("J index undefined: nu = {nu} above {}", s * s)));
    }
    Ok(0.5 * (2.0 + alpha) * ((s * s - nu).sqrt() - s))
}

/// One (i, j) block of the singular-eigenvalue decomposition:
/// Lambda_hat = ((2+alpha)/2)^2 nu_i + lambda_j, counted with the harmonic
/// multiplicity N_j.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Contribution {
    pub i: u32,
    pub j: u32,
    pub lambda_hat: f64,
    pub multiplicity: u64,
}

/// Full Morse-index report at one (N, alpha, p, m).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MorseReport {
    pub params: ProblemParams,
    pub nus: Vec<f64>,
    pub j_values: Vec<f64>,
    pub ceil_values: Vec<i64>,
    pub total: u64,
    pub contributions: Vec<Contribution>,
    pub decomposition_count: u64,
    pub resonant: bool,
    pub interval: Option<(u64, u64)>,
}

const EXACT_RESONANCE_TOL: f64 = 1e-6;

/// Evaluates m(u_p) = sum_i sum_{j=0}^{ceil(J_i - 1)} N_j and the negative
/// singular-eigenvalue decomposition. Flags `resonant` when some J_i sits
/// within 1e-6 of an integer (the ceiling is then unstable under the
/// numerical error in nu) and reports the two possible totals as interval.
pub fn exact_morse(params: &ProblemParams, spectrum: &SingularSpectrum) -> Result<MorseReport> {
    if spectrum.nus.len() != params.m as usize {
        return Err(domain(format!(
            "spectrum holds {} eigenvalues but m = {}",
            spectrum.nus.len(),
            params.m
        )));
    }
    let n_dim = params.n_dim;
    let alpha = params.alpha;
    let q = 0.5 * (2.0 + alpha);

    let mut j_values = Vec::with_capacity(spectrum.nus.len());
    let mut ceil_values = Vec::with_capacity(spectrum.nus.len());
    let mut total = 0u64;
    let mut total_low = 0u64;
    let mut total_high = 0u64;
    let mut resonant = false;
    let mut contributions = Vec::new();

    for (idx, &nu) in spectrum.nus.iter().enumerate() {
        let ji = j_index(n_dim, alpha, nu)?;
        let near_integer = (ji - ji.round()).abs() < EXACT_RESONANCE_TOL;
        resonant |= near_integer;
        let ceil = (ji - 1.0).ceil().max(0.0) as i64;
        let (ceil_low, ceil_high) = if near_integer {
            let k = ji.round() as i64;
            ((k - 1).max(0), k.max(0))
        } else {
            (ceil, ceil)
        };
        j_values.push(ji);
        ceil_values.push(ceil);
        for j in 0..=ceil as u32 {
            total += multiplicity_nj(n_dim, j);
        }
        for j in 0..=ceil_low as u32 {
            total_low += multiplicity_nj(n_dim, j);
        }
        for j in 0..=ceil_high as u32 {
            total_high += multiplicity_nj(n_dim, j);
        }

        // decomposition: all (i, j) with q^2 nu_i + lambda_j < 0
        let mut j = 0u32;
        loop {
            let hat = q * q * nu + lambda_j(n_dim, j);
            if hat >= 0.0 {
                break;
            }
            contributions.push(Contribution {
                i: idx as u32 + 1,
                j,
                lambda_hat: hat,
                multiplicity: multiplicity_nj(n_dim, j),
            });
            j += 1;
        }
    }
    let decomposition_count = contributions.iter().map(|c| c.multiplicity).sum();
    Ok(MorseReport {
        params: *params,
        nus: spectrum.nus.clone(),
        j_values,
        ceil_values,
        total,
        contributions,
        decomposition_count,
        resonant,
        interval: resonant.then_some((total_low, total_high)),
    })
}

/// Outcome of the p -> 1 formula: a single value off resonance, a bracket
/// at a resonant weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AsymptoticMorse {
    Exact(u64),
    Interval(u64, u64),
}

impl AsymptoticMorse {
    pub fn lower(&self) -> u64 {
        match *self {
            AsymptoticMorse::Exact(v) => v,
            AsymptoticMorse::Interval(lo, _) => lo,
        }
    }

    pub fn is_resonant(&self) -> bool {
        matches!(self, AsymptoticMorse::Interval(..))
    }
}

const LIMIT_RESONANCE_TOL: f64 = 1e-9;

/// Limit Morse index 1 + sum_{i<m} sum_{j=0}^{ceil(((2+alpha)beta_i - N)/2)} N_j,
/// or its bracket when some exponent ((2+alpha)beta_l - N)/2 is an integer.
pub fn asymptotic_morse(n_dim: u32, alpha: f64, m: u32, crossings: &CrossingParams) -> AsymptoticMorse {
    let mut base = 1u64;
    let mut extra = 0u64;
    let mut resonant = false;
    for &beta in crossings.betas.iter().take(m as usize - 1) {
        let e = 0.5 * ((2.0 + alpha) * beta - n_dim as f64);
        let near = (e - e.round()).abs() < LIMIT_RESONANCE_TOL;
        let k = if near { e.round() as i64 } else { e.ceil() as i64 };
        for j in 0..=k.max(0) as u32 {
            base += multiplicity_nj(n_dim, j);
        }
        if near {
            resonant = true;
            extra += multiplicity_nj(n_dim, (k + 1).max(0) as u32);
        }
    }
    if resonant {
        AsymptoticMorse::Interval(base, base + extra)
    } else {
        AsymptoticMorse::Exact(base)
    }
}

/// Lane-Emden closed form m + sum_{i=1}^{m-1} (m-i)(N_{2i-1} + N_{2i}),
/// the value the limit formula takes when every crossing parameter falls in
/// the window beta_i - N/2 in (2(m-i)-1, 2(m-i)). The window is confirmed
/// for small m but fails for larger ones (already at N = 2, m = 4, where
/// beta_1 = 7.618 > 7), so this is a reference value, not a theorem.
pub fn lane_emden_closed_form(n_dim: u32, m: u32) -> u64 {
    let mut total = m as u64;
    for i in 1..m {
        total += (m - i) as u64
            * (multiplicity_nj(n_dim, 2 * i - 1) + multiplicity_nj(n_dim, 2 * i));
    }
    total
}

/// Planar two-zone index 2 ceil((2+alpha)/2 beta); at a resonant alpha only
/// the bracket [(2+alpha)beta, (2+alpha)beta + 2] is available.
pub fn planar_two_zone_morse(alpha: f64, beta: f64) -> AsymptoticMorse {
    let x = 0.5 * (2.0 + alpha) * beta;
    if (x - x.round()).abs() < LIMIT_RESONANCE_TOL {
        let k = x.round() as u64;
        AsymptoticMorse::Interval(2 * k, 2 * k + 2)
    } else {
        AsymptoticMorse::Exact(2 * (x.ceil() as u64))
    }
}

/// n-invariant Morse index of the planar two-zone radial solution:
/// 2 + sum_{i=1,2} floor(ceil((2+alpha)/2 sqrt(-nu_i) - 1) / n).
/// The integer-part bracket reads as floor, counting the harmonics j = h n
/// with 1 <= h <= ceil(...)/n.
pub fn n_morse_index(alpha: f64, nu1: f64, nu2: f64, n: u32) -> Result<u64> {
    if n == 0 {
        return Err(domain("symmetry order n must be >= 1"));
    }
    if !(nu1 < nu2 && nu2 < 0.0) {
        return Err(domain(format!("need nu1 < nu2 < 0, got {nu1}, {nu2}")));
    }
    let q = 0.5 * (2.0 + alpha);
    let mut total = 2u64;
    for nu in [nu1, nu2] {
        let c = (q * (-nu).sqrt() - 1.0).ceil().max(0.0) as u64;
        total += c / n as u64;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    const BETA1: f64 = 2.3050010986285542;

    #[test]
    fn harmonic_multiplicities() {
        assert_eq!(multiplicity_nj(2, 0), 1);
        assert_eq!(multiplicity_nj(2, 3), 2);
        assert_eq!(multiplicity_nj(3, 0), 1);
        assert_eq!(multiplicity_nj(3, 1), 3);
        assert_eq!(multiplicity_nj(3, 2), 5);
        assert_eq!(multiplicity_nj(4, 1), 4);
        assert_eq!(multiplicity_nj(4, 2), 9);
        assert_eq!(multiplicity_nj(5, 2), 14);
        // brute force: dimension of degree-j harmonics is
        // C(N+j-1, j) - C(N+j-3, j-2)
        let binom = |n: u64, k: u64| -> u64 {
            let mut v = 1u64;
            for t in 0..k {
                v = v * (n - t) / (t + 1);
            }
            v
        };
        for n in 2..=6u32 {
            for j in 1..=12u32 {
                let lower = if j >= 2 {
                    binom((n + j - 3) as u64, (j - 2) as u64)
                } else {
                    0
                };
                let expect = binom((n + j - 1) as u64, j as u64) - lower;
                assert_eq!(multiplicity_nj(n, j), expect, "N={n}, j={j}");
            }
        }
    }

    #[test]
    fn j_index_planar_reduction() {
        // N = 2 collapses to (2+alpha)/2 sqrt(-nu)
        let j = j_index(2, 0.6, -4.0).unwrap();
        assert!((j - 1.3 * 2.0).abs() < 1e-14);
        assert_eq!(j_index(2, 0.0, 0.0).unwrap(), 0.0);
        assert!(j_index(3, 0.0, 0.3).is_err());
    }

    #[test]
    fn planar_two_zone_values() {
        assert_eq!(planar_two_zone_morse(0.0, BETA1), AsymptoticMorse::Exact(6));
        assert_eq!(planar_two_zone_morse(0.59, BETA1), AsymptoticMorse::Exact(6));
        assert_eq!(planar_two_zone_morse(0.61, BETA1), AsymptoticMorse::Exact(8));
        // forced resonance: (2+alpha) beta / 2 = 3 exactly
        let alpha_res = 6.0 / BETA1 - 2.0;
        assert_eq!(
            planar_two_zone_morse(alpha_res, BETA1),
            AsymptoticMorse::Interval(6, 8)
        );
    }

    #[test]
    fn n_morse_examples() {
        // large n: both floors vanish
        assert_eq!(n_morse_index(0.0, -BETA1 * BETA1, -0.01, 7).unwrap(), 2);
        // n = 1 at the p -> 1 limits: 2 + ceil(beta_1 - 1) + 0 = 4
        assert_eq!(n_morse_index(0.0, -BETA1 * BETA1, -1e-6, 1).unwrap(), 4);
        // non-increasing in n
        let mut prev = u64::MAX;
        for n in 1..=8 {
            let v = n_morse_index(0.3, -7.0, -0.4, n).unwrap();
            assert!(v <= prev);
            prev = v;
        }
        assert!(n_morse_index(0.0, -1.0, -2.0, 1).is_err());
    }

    #[test]
    fn n_morse_nonradial_threshold() {
        // index exceeds 2 exactly when n < (2+alpha)/2 sqrt(-nu_1)
        let alpha = 0.4;
        let nu1 = -BETA1 * BETA1;
        let thr = 0.5 * (2.0 + alpha) * (-nu1 as f64).sqrt();
        for n in 1..=8u32 {
            let v = n_morse_index(alpha, nu1, -1e-9, n).unwrap();
            assert_eq!(v > 2, (n as f64) < thr, "n = {n}");
        }
    }

    #[test]
    fn lane_emden_closed_forms() {
        assert_eq!(lane_emden_closed_form(2, 1), 1);
        assert_eq!(lane_emden_closed_form(2, 2), 6);
        assert_eq!(lane_emden_closed_form(2, 3), 15);
        assert_eq!(lane_emden_closed_form(2, 4), 28);
        assert_eq!(lane_emden_closed_form(3, 2), 10);
        assert_eq!(lane_emden_closed_form(3, 3), 35);
    }
}
