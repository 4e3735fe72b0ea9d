//! Stationary two-level density-matrix response: the closed-form solution
//! of the damped Liouville equation under a monochromatic drive, the
//! resonant susceptibility built from it, and the complex dielectric
//! function ε̃(ω) = ε_background + χ_res(ω).
//!
//! Sign convention: fields evolve as e^{−iωt}; with the pole structure
//! used here Im ε is positive at resonance, which is where absorption
//! peaks (equivalently, −Im ε is extremal at ħω = E₂₁).

use num_complex::Complex64;

use crate::constants::COULOMB_FACTOR;
use crate::dipole::TransitionData;
use crate::error::{Error, Result};
use crate::exec;

/// meV per (e·nm)·(V/nm): the energy of a dipole in the drive field.
const MEV_PER_E_VOLT: f64 = 1000.0;

/// Damping, drive amplitude and normalization of the two-level response.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResponseConfig {
    /// ħγ in meV.
    pub gamma: f64,
    /// Drive amplitude E₀ in V/nm (0 for linear spectra).
    pub field: f64,
    /// Normalization volume per electron, nm³.
    pub volume_norm: f64,
    /// 1 + χ⁽¹⁾ of the host (ε_st of the well material by default).
    pub background_eps: f64,
}

impl ResponseConfig {
    /// γ = 0 is admitted (the response then has a real pole and the
    /// density-matrix entries report a singularity error on resonance).
    pub fn new(gamma: f64, field: f64, volume_norm: f64, background_eps: f64) -> Result<Self> {
        if gamma < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "gamma must be ≥ 0, got {gamma}"
            )));
        }
        if !(volume_norm > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "volume_norm must be positive, got {volume_norm}"
            )));
        }
        if background_eps < 1.0 {
            return Err(Error::InvalidConfig(format!(
                "background_eps must be ≥ 1, got {background_eps}"
            )));
        }
        Ok(Self {
            gamma,
            field,
            volume_norm,
            background_eps,
        })
    }

    pub fn for_gan(gamma: f64, volume_norm: f64) -> Self {
        Self {
            gamma,
            field: 0.0,
            volume_norm,
            background_eps: 9.56,
        }
    }
}

/// Oscillation amplitudes of the four density-matrix entries at the drive
/// frequency (the populations ρ₁₁, ρ₂₂ are first-order perturbations on
/// the static occupation ρ₁₁⁽⁰⁾ − ρ₂₂⁽⁰⁾ = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    pub rho11: Complex64,
    pub rho12: Complex64,
    pub rho21: Complex64,
    pub rho22: Complex64,
}

/// E∓ = E₂₁ ∓ ħω + ΔM·E₀ ∓ iħγ.
fn pole_denominators(
    homega: f64,
    t: &TransitionData,
    cfg: &ResponseConfig,
) -> (Complex64, Complex64) {
    let dm = t.delta_diag * cfg.field * MEV_PER_E_VOLT;
    let e_minus = Complex64::new(t.energy_gap - homega + dm, -cfg.gamma);
    let e_plus = Complex64::new(t.energy_gap + homega + dm, cfg.gamma);
    (e_minus, e_plus)
}

/// Closed-form stationary entries with ρ₁₁⁽⁰⁾ − ρ₂₂⁽⁰⁾ = 1.
pub fn stationary_density_matrix(
    homega: f64,
    t: &TransitionData,
    cfg: &ResponseConfig,
) -> Result<DensityMatrix> {
    let (e_minus, e_plus) = pole_denominators(homega, t, cfg);
    let m_e0 = t.dipole_moment * cfg.field * MEV_PER_E_VOLT;
    let pop_denom = Complex64::new(homega, cfg.gamma);
    if e_minus.norm() == 0.0 || e_plus.norm() == 0.0 || (m_e0 != 0.0 && pop_denom.norm() == 0.0) {
        return Err(Error::SingularResponse {
            photon_mev: homega,
            gamma_mev: cfg.gamma,
        });
    }
    let rho21 = m_e0 / e_minus;
    let rho12 = m_e0 / e_plus;
    let rho11 = if m_e0 == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        m_e0 * (rho12 - rho21) / pop_denom
    };
    Ok(DensityMatrix {
        rho11,
        rho12,
        rho21,
        rho22: -rho11,
    })
}

/// χ⁽¹⁾_res(ω): |M₁₂|²/(ε₀V)·[1/E₊ + 1/E₋ + (ΔM·E₀/(ħω+iħγ))(1/E₊ − 1/E₋)].
pub fn resonant_susceptibility(homega: f64, t: &TransitionData, cfg: &ResponseConfig) -> Complex64 {
    let (e_minus, e_plus) = pole_denominators(homega, t, cfg);
    let mut bracket = e_plus.inv() + e_minus.inv();
    let dm_e0 = t.delta_diag * cfg.field * MEV_PER_E_VOLT;
    if dm_e0 != 0.0 {
        bracket += dm_e0 / Complex64::new(homega, cfg.gamma) * (e_plus.inv() - e_minus.inv());
    }
    // e²/ε₀ = 4π·(e²/4πε₀); everything else is already in meV/nm units
    let prefactor = 4.0 * std::f64::consts::PI * COULOMB_FACTOR * t.dipole_moment * t.dipole_moment
        / cfg.volume_norm;
    prefactor * bracket
}

/// Complex response sampled on a photon-energy grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexResponse {
    /// ħω grid in meV, ascending.
    pub grid: Vec<f64>,
    pub chi: Vec<Complex64>,
    pub eps: Vec<Complex64>,
}

/// ε̃(ω) = background + χ_res(ω) over an ascending grid.
pub fn dielectric_function(
    grid: &[f64],
    t: &TransitionData,
    cfg: &ResponseConfig,
) -> Result<ComplexResponse> {
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidConfig(
            "photon-energy grid must be strictly ascending".into(),
        ));
    }
    let chi = exec::map_collect(grid, |&homega| resonant_susceptibility(homega, t, cfg));
    let bg = Complex64::new(cfg.background_eps, 0.0);
    let eps = chi.iter().map(|c| bg + c).collect();
    Ok(ComplexResponse {
        grid: grid.to_vec(),
        chi,
        eps,
    })
}
