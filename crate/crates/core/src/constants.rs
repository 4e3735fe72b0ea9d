//! Physical constants in the internal unit system (meV, nm, K).
//!
//! All downstream energies are meV and all lengths nm; this keeps every
//! quantity of the model between O(1) and O(1e3) and Bessel arguments well
//! away from underflow.

/// ħ²/(2·m₀) in meV·nm², from CODATA 2018 ħ and m₀.
///
/// ħ = 1.054571817e-34 J·s, m₀ = 9.1093837015e-31 kg,
/// 1 J = 6.241509074e21 meV, 1 m² = 1e18 nm².
pub const HBAR2_OVER_2M0: f64 = 38.09982111485961;

/// e²/(4πε₀) in meV·nm, from CODATA 2018 e and ε₀.
pub const COULOMB_FACTOR: f64 = 1439.9645478425668;

/// Boltzmann constant in meV/K (exact since the 2019 SI redefinition).
pub const BOLTZMANN: f64 = 0.08617333262145178;

/// Fixed constants table, meV/nm/K unit system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// ħ²/2m₀ (meV·nm²).
    pub hbar2_over_2m0: f64,
    /// e²/4πε₀ (meV·nm).
    pub coulomb_factor: f64,
    /// k_B (meV/K).
    pub kb: f64,
}

/// Returns the fixed constants table.
pub fn constants() -> PhysicalConstants {
    PhysicalConstants {
        hbar2_over_2m0: HBAR2_OVER_2M0,
        coulomb_factor: COULOMB_FACTOR,
        kb: BOLTZMANN,
    }
}
