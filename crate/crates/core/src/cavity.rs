//! Single-sided low-Q cavity holding one three-level atom.
//!
//! A photon reflected from the cavity picks up the coupled reflection
//! coefficient r(ω_p) when its polarization drives the atom's occupied
//! ground-state transition and the empty-cavity coefficient r₀(ω_p) otherwise.
//! At ω₀ = ω_c, ω_p = ω_c − κ/2, λ = κ/2, γ = 0 the two phases are π and π/2,
//! which gives the diagonal Faraday gate (−1, i, i, −1).

use core::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use num_traits::Euclid;

use crate::{Error, Result};

/// Default bound on ||r| − 1| for which the pure-phase gate model is accepted.
pub const DEFAULT_TOL_MOD: f64 = 0.02;

/// Cavity and atom parameters, all as angular rates in the same unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityParams {
    pub omega_c: f64,
    pub omega_0: f64,
    pub omega_p: f64,
    pub kappa: f64,
    pub gamma: f64,
    pub lambda: f64,
}

impl CavityParams {
    // the negated comparisons also reject NaN
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> Result<()> {
        if !(self.kappa > 0.0) {
            return Err(Error::InvalidKappa(self.kappa));
        }
        if !(self.gamma >= 0.0) {
            return Err(Error::InvalidCavity("gamma must be non-negative"));
        }
        if !(self.lambda >= 0.0) {
            return Err(Error::InvalidCavity("lambda must be non-negative"));
        }
        Ok(())
    }
}

/// Reflection phases of the coupled (`phi`) and empty (`phi0`) cavity.
///
/// The detuning σ = (φ − φ₀) − π/2 is derived on demand and cannot be set
/// independently.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FaradayPhases {
    phi: f64,
    phi0: f64,
}

impl FaradayPhases {
    pub fn new(phi: f64, phi0: f64) -> Self {
        Self { phi, phi0 }
    }

    /// (π, π/2).
    pub fn ideal() -> Self {
        Self::new(PI, FRAC_PI_2)
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn phi0(&self) -> f64 {
        self.phi0
    }

    /// (φ − φ₀) − π/2, wrapped into (−π, π].
    pub fn sigma(&self) -> f64 {
        wrap_pi(self.phi - self.phi0 - FRAC_PI_2)
    }
}

impl Default for FaradayPhases {
    fn default() -> Self {
        Self::ideal()
    }
}

fn wrap_pi(x: f64) -> f64 {
    let y = Euclid::rem_euclid(&x, &TAU);
    if y > PI {
        y - TAU
    } else {
        y
    }
}

/// Argument of `z` mapped into [0, 2π).
pub fn phase_of(z: Complex64) -> f64 {
    let a = Euclid::rem_euclid(&z.arg(), &TAU);
    // rem_euclid can round up to exactly 2π for tiny negative arguments
    if a >= TAU {
        0.0
    } else {
        a
    }
}

/// Coupled-cavity reflection coefficient r(ω_p).
pub fn reflection(p: &CavityParams) -> Result<Complex64> {
    p.validate()?;
    if p.lambda == 0.0 {
        return empty_reflection(p);
    }
    let i = Complex64::i();
    let half_kappa = p.kappa / 2.0;
    let atom = i * (p.omega_0 - p.omega_p) + p.gamma / 2.0;
    let coupling = p.lambda * p.lambda;
    let num = (i * (p.omega_c - p.omega_p) - half_kappa) * atom + coupling;
    let den = (i * (p.omega_c - p.omega_p) + half_kappa) * atom + coupling;
    Ok(num / den)
}

/// Empty-cavity reflection coefficient r₀(ω_p); always of unit modulus.
pub fn empty_reflection(p: &CavityParams) -> Result<Complex64> {
    p.validate()?;
    let detuning = Complex64::new(0.0, p.omega_c - p.omega_p);
    let half_kappa = p.kappa / 2.0;
    Ok((detuning - half_kappa) / (detuning + half_kappa))
}

/// Phase pair for `p`, rejecting parameters where |r| strays more than
/// [`DEFAULT_TOL_MOD`] from 1.
pub fn phases(p: &CavityParams) -> Result<FaradayPhases> {
    phases_with_tol(p, DEFAULT_TOL_MOD)
}

pub fn phases_with_tol(p: &CavityParams, tol_mod: f64) -> Result<FaradayPhases> {
    let r = reflection(p)?;
    let deviation = (r.norm() - 1.0).abs();
    if deviation > tol_mod {
        return Err(Error::NotPurePhase { deviation, tolerance: tol_mod });
    }
    let r0 = empty_reflection(p)?;
    Ok(FaradayPhases::new(phase_of(r), phase_of(r0)))
}

/// ω₀ = ω_c, ω_p = ω_c − κ/2, λ = κ/2 and γ = 0, with ω_c = 0.
pub fn ideal_params(kappa: f64) -> Result<CavityParams> {
    let p = CavityParams { omega_c: 0.0, omega_0: 0.0, omega_p: -kappa / 2.0, kappa, gamma: 0.0, lambda: kappa / 2.0 };
    p.validate()?;
    Ok(p)
}

/// Faraday gate diagonal over (photon bit, atom bit), ordered
/// (L g_L, R g_L, L g_R, R g_R) = (e^{iφ}, e^{iφ₀}, e^{iφ₀}, e^{iφ}).
pub fn faraday_diag(ph: &FaradayPhases) -> [Complex64; 4] {
    let coupled = Complex64::from_polar(1.0, ph.phi);
    let empty = Complex64::from_polar(1.0, ph.phi0);
    [coupled, empty, empty, coupled]
}

/// Phases with φ − φ₀ = π/2 + σ, keeping φ₀ at π/2.
pub fn detuned_phases(sigma: f64) -> FaradayPhases {
    FaradayPhases::new(PI + sigma, FRAC_PI_2)
}
