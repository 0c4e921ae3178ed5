//! Radial nodal solutions of the Henon problem -Delta u = |x|^alpha |u|^{p-1} u
//! on the unit ball with Dirichlet boundary, in the almost-linear regime
//! p -> 1.
//!
//! The crate computes, with certified indexing and stated tolerances:
//!
//! - first-kind Bessel functions of real order, their zeros, and the Gamma
//!   function ([`bessel`]);
//! - the closed-form spectrum of the weighted eigenproblem
//!   -Delta w = mu |x|^alpha w, the crossing parameters beta_i, resonant
//!   weight exponents, and the expansion constant c ([`weighted`]);
//! - the m-nodal-zone radial solution via one shooting run of the
//!   transformed equation and its exact rescaling ([`shooting`]);
//! - the negative spectrum of the singular Sturm-Liouville problem that
//!   encodes the angular decomposition of the Morse index, with an
//!   independent finite-difference oracle ([`sturm`]);
//! - exact and asymptotic Morse indices, planar and n-invariant variants
//!   ([`morse`]);
//! - the p -> 1 limit laws and the radial/nonradial classification of
//!   n-invariant least energy solutions ([`asympt`]).

pub mod asympt;
pub mod bessel;
mod dd;
pub mod error;
pub mod morse;
pub mod ode;
pub mod quad;
pub mod shooting;
pub mod sturm;
pub mod weighted;

pub use asympt::{
    classify_n_invariant, convergence_report, expansion_check, limit_amplitude,
    limit_nodal_radii, limit_profile, morse_limit, nu_limits, ConvergenceReport,
    ConvergenceRow, ExpansionReport, NInvariantClassification, Verdict, KAPPA_LARGE_P,
};
pub use bessel::{eval_j, eval_j_with_derivative, gamma, zero as bessel_zero, zeros as bessel_zeros, Order, ZeroTable};
pub use error::{Error, Result};
pub use morse::{
    asymptotic_morse, exact_morse, j_index, lane_emden_closed_form, multiplicity_nj,
    n_morse_index, planar_two_zone_morse, AsymptoticMorse, Contribution, MorseReport,
};
pub use shooting::{
    integrate_ivp, integrate_ivp_scaled, potential_w, solve_radial, solve_radial_with_tol,
    ProblemParams, RadialProfile, TransformMeta,
};
pub use sturm::{
    fd_oracle_spectrum, fd_spectrum_extrapolated, nu_spectrum, nu_spectrum_of, shoot_phi,
    theta_exponent, weighted_inner, ConstPotential, RadialPotential, SingularSpectrum,
};
pub use weighted::{
    beta_crossings, eigenfunction_radial_factor, expansion_constant, radial_factor_normalized,
    resonant_alphas, resonant_alphas_refined, weighted_eigenvalue, CrossingParams, Resonance,
    WeightedEigenpair,
};
