//! Dipole matrix elements between subband states under x- or z-polarized
//! light, with the Δℓ = ±1 angular selection rule.

use crate::error::{Error, Result};
use crate::qdot::{qd_dipole, QdState};
use crate::quad::{panel_breaks, GaussRule};
use crate::subband::SubbandState;

/// Transverse polarization of the optical wave. The wave polarized along
/// the free-motion axis is not absorbed and is not represented here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Polarization {
    #[default]
    X,
    Z,
}

/// Structure the transition belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureKind {
    Wire,
    Dot,
}

/// Δℓ = ±1 selection rule for x = r·cosθ coupling.
pub fn selection_allowed(l_i: i32, l_f: i32) -> bool {
    (l_f - l_i).abs() == 1
}

/// |⟨i|e·x|f⟩| between wire states in e·nm: π·∫R_i R_f r² dr when the
/// selection rule allows, zero otherwise. Both polarizations give the
/// same magnitude (the angular factors differ only by a phase).
pub fn dipole_element(
    i: &SubbandState,
    f: &SubbandState,
    _polarization: Polarization,
) -> Result<f64> {
    for state in [i, f] {
        let norm = state.radial_norm();
        if (norm - 1.0).abs() > 1e-3 {
            return Err(Error::NotNormalized((norm - 1.0).abs()));
        }
    }
    if !selection_allowed(i.l, f.l) {
        return Ok(0.0);
    }
    let r0 = i.profile.core_radius;
    let r_max = r0 + 40.0 / i.kappa_b.min(f.kappa_b);
    let rule = GaussRule::new(48);
    let breaks = panel_breaks(0.0, r_max, &[r0, 2.0 * r0, 4.0 * r0]);
    let radial = rule.integrate_panels(&breaks, |r| {
        i.radial_wavefunction(r) * f.radial_wavefunction(r) * r * r
    });
    Ok((std::f64::consts::PI * radial).abs())
}

/// ΔM = M₁₁ − M₂₂ in e·nm. Angular-momentum eigenstates (including the
/// Gaussian-envelope donor states, which keep the e^{iℓθ} factor intact)
/// have ⟨x⟩ = 0 by symmetry, so the difference vanishes identically.
pub fn diagonal_dipole_difference(_i: &SubbandState, _f: &SubbandState) -> f64 {
    0.0
}

/// Scalars of one optical transition, consumed by the response and
/// spectra layers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionData {
    pub kind: StructureKind,
    /// E₂₁ = E_f − E_i in meV, positive for absorption.
    pub energy_gap: f64,
    /// |M₁₂| in e·nm.
    pub dipole_moment: f64,
    /// ΔM = M₁₁ − M₂₂ in e·nm.
    pub delta_diag: f64,
    /// Initial subband edge E_i in meV (DOS reference).
    pub initial_energy: f64,
    pub final_energy: f64,
    /// Effective-mass ratio governing free motion along the wire.
    pub dos_mass: f64,
}

impl TransitionData {
    pub fn from_wire_states(
        i: &SubbandState,
        f: &SubbandState,
        polarization: Polarization,
    ) -> Result<Self> {
        let gap = f.energy - i.energy;
        if gap <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "absorption transition needs E_f > E_i, got gap {gap} meV"
            )));
        }
        Ok(Self {
            kind: StructureKind::Wire,
            energy_gap: gap,
            dipole_moment: dipole_element(i, f, polarization)?,
            delta_diag: diagonal_dipole_difference(i, f),
            initial_energy: i.energy,
            final_energy: f.energy,
            dos_mass: i.profile.mass_well,
        })
    }

    pub fn from_dot_states(i: &QdState, f: &QdState) -> Result<Self> {
        let gap = f.energy - i.energy;
        if gap <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "absorption transition needs E_f > E_i, got gap {gap} meV"
            )));
        }
        for state in [i, f] {
            let norm = state.radial_norm();
            if (norm - 1.0).abs() > 1e-3 {
                return Err(Error::NotNormalized((norm - 1.0).abs()));
            }
        }
        Ok(Self {
            kind: StructureKind::Dot,
            energy_gap: gap,
            dipole_moment: qd_dipole(i, f),
            delta_diag: 0.0,
            initial_energy: i.energy,
            final_energy: f.energy,
            dos_mass: i.profile.mass_well,
        })
    }
}
