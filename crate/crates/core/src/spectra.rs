//! Absorption-rate spectra: Lorentzian lineshape for the dot, 1D-DOS
//! weighted lineshapes for the wire, Fermi–Dirac occupancy and the sheet
//! density that normalizes the wire response.
//!
//! Rates are emitted in arbitrary units; spectra are peak-normalized with
//! the raw peak preserved in the metadata.

use crate::constants::{BOLTZMANN, HBAR2_OVER_2M0};
use crate::dipole::{StructureKind, TransitionData};
use crate::error::{Error, Result};
use crate::exec;
use crate::quad::{panel_breaks, GaussRule};

/// Regularization of the 1D DOS divergence at the subband edge (meV).
/// Below grid resolution; inert once the Lorentzian kernel is applied.
pub const EPSILON_REG: f64 = 0.01;

/// Temperature, Fermi level and cross-section of the wire.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalConfig {
    /// K
    pub temperature: f64,
    /// E_F − E_ground in meV.
    pub fermi_offset: f64,
    /// Normalization area L_w in nm².
    pub l_w: f64,
}

impl ThermalConfig {
    pub fn new(temperature: f64, fermi_offset: f64, l_w: f64) -> Result<Self> {
        if !(temperature > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "temperature must be positive, got {temperature}"
            )));
        }
        if !(l_w > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "normalization area must be positive, got {l_w}"
            )));
        }
        Ok(Self {
            temperature,
            fermi_offset,
            l_w,
        })
    }

    /// 300 K, 10 meV Fermi offset, 4×4 nm² cross-section.
    pub fn room_temperature() -> Self {
        Self {
            temperature: 300.0,
            fermi_offset: 10.0,
            l_w: 16.0,
        }
    }
}

/// Wire lineshape construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LineshapeMode {
    /// Lorentzian at E₂₁ scaled by the occupied line density ∫D·f dE.
    Amplitude,
    /// DOS-resolved: each occupied axial state at energy ε above the
    /// subband edge contributes a Lorentzian detuned to E₂₁ + ε, weighted
    /// by D(ε)·f(ε). The asymmetric blue tail and the extra width both
    /// come from the density of states.
    #[default]
    Detuning,
}

/// One absorption spectrum with its normalization metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// (ħω in meV, peak-normalized rate).
    pub points: Vec<(f64, f64)>,
    pub kind: StructureKind,
    /// ħγ used, meV.
    pub gamma: f64,
    /// Raw (unnormalized) peak value in module units.
    pub raw_peak: f64,
    pub temperature: Option<f64>,
    pub mode: Option<LineshapeMode>,
}

impl Spectrum {
    /// Photon energy of the highest point.
    pub fn peak_energy(&self) -> f64 {
        self.points
            .iter()
            .cloned()
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .map(|p| p.0)
            .unwrap_or(f64::NAN)
    }

    /// Full width at half maximum measured on the grid by linear
    /// interpolation of the half-max crossings.
    pub fn fwhm(&self) -> f64 {
        let (imax, &(_, vmax)) = self
            .points
            .iter()
            .enumerate()
            .max_by(|a, b| a.1 .1.partial_cmp(&b.1 .1).unwrap())
            .unwrap();
        let half = 0.5 * vmax;
        let mut left = self.points[0].0;
        for k in (1..=imax).rev() {
            let (e1, v1) = self.points[k - 1];
            let (e2, v2) = self.points[k];
            if v1 < half && v2 >= half {
                left = e1 + (half - v1) / (v2 - v1) * (e2 - e1);
                break;
            }
        }
        let mut right = self.points.last().unwrap().0;
        for k in imax..self.points.len() - 1 {
            let (e1, v1) = self.points[k];
            let (e2, v2) = self.points[k + 1];
            if v1 >= half && v2 < half {
                right = e1 + (half - v1) / (v2 - v1) * (e2 - e1);
                break;
            }
        }
        right - left
    }
}

/// Overflow-safe Fermi–Dirac occupancy 1/(1 + e^{(E−E_F)/k_BT}).
pub fn fermi_dirac(energy: f64, fermi_level: f64, temperature: f64) -> f64 {
    let x = (energy - fermi_level) / (BOLTZMANN * temperature);
    if x >= 0.0 {
        let e = (-x).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + x.exp())
    }
}

/// 1D density of states D(E, E_i) = √m*/(πħ√(E−E_i)) in 1/(nm·meV).
///
/// This is the form used throughout the model; it carries no √2 relative
/// factor, so it is a factor √2 below the both-directions free-line
/// density (see README).
pub fn dos_1d(energy: f64, subband_edge: f64, mass_ratio: f64) -> Result<f64> {
    let delta = energy - subband_edge;
    if !(delta > 0.0) {
        return Err(Error::Domain {
            function: "dos_1d",
            x: delta,
        });
    }
    Ok((mass_ratio / (2.0 * HBAR2_OVER_2M0 * delta)).sqrt() / std::f64::consts::PI)
}

/// ħω·|M|²/((E₂₁−ħω)² + (ħγ)²), the Lorentzian-limit transition rate.
pub fn lorentzian_rate(homega: f64, t: &TransitionData, gamma: f64) -> f64 {
    let detuning = t.energy_gap - homega;
    homega * t.dipole_moment * t.dipole_moment / (detuning * detuning + gamma * gamma)
}

fn normalized_spectrum(
    grid: &[f64],
    raw: Vec<f64>,
    kind: StructureKind,
    gamma: f64,
    temperature: Option<f64>,
    mode: Option<LineshapeMode>,
) -> Spectrum {
    let raw_peak = raw.iter().cloned().fold(0.0_f64, f64::max);
    let scale = if raw_peak > 0.0 { 1.0 / raw_peak } else { 1.0 };
    Spectrum {
        points: grid.iter().zip(raw).map(|(&e, v)| (e, v * scale)).collect(),
        kind,
        gamma,
        raw_peak,
        temperature,
        mode,
    }
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() || grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidConfig(
            "spectrum grid must be non-empty and strictly ascending".into(),
        ));
    }
    Ok(())
}

/// Dot absorption: the Lorentzian rate over the grid, peak-normalized.
pub fn qd_absorption(grid: &[f64], t: &TransitionData, gamma: f64) -> Result<Spectrum> {
    check_grid(grid)?;
    if !(gamma > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "gamma must be positive, got {gamma}"
        )));
    }
    let raw = exec::map_collect(grid, |&homega| lorentzian_rate(homega, t, gamma));
    Ok(normalized_spectrum(
        grid,
        raw,
        StructureKind::Dot,
        gamma,
        None,
        None,
    ))
}

/// Wire absorption with the DOS weighting applied per `mode`.
pub fn qwr_absorption(
    grid: &[f64],
    t: &TransitionData,
    thermal: &ThermalConfig,
    gamma: f64,
    mode: LineshapeMode,
) -> Result<Spectrum> {
    check_grid(grid)?;
    if !(gamma > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "gamma must be positive, got {gamma}"
        )));
    }
    let e_i = t.initial_energy;
    let fermi_level = e_i + thermal.fermi_offset;
    let e_cut = fermi_level + 40.0 * BOLTZMANN * thermal.temperature;
    let u_max = (e_cut - e_i).max(0.0).sqrt();
    if u_max == 0.0 {
        return Ok(normalized_spectrum(
            grid,
            vec![0.0; grid.len()],
            StructureKind::Wire,
            gamma,
            Some(thermal.temperature),
            Some(mode),
        ));
    }
    let rule = GaussRule::new(48);
    let dos_c = (t.dos_mass / (2.0 * HBAR2_OVER_2M0)).sqrt() / std::f64::consts::PI;

    let raw = match mode {
        LineshapeMode::Amplitude => {
            // occupied line density: ∫ D f dE with E = E_i + u²
            let fermi_u =
                (thermal.fermi_offset.max(0.0) + 4.0 * BOLTZMANN * thermal.temperature).sqrt();
            let breaks = panel_breaks(0.0, u_max, &[0.5 * fermi_u, fermi_u, 2.0 * fermi_u]);
            let line_density = 2.0
                * dos_c
                * rule.integrate_panels(&breaks, |u| {
                    fermi_dirac(e_i + u * u, fermi_level, thermal.temperature)
                });
            exec::map_collect(grid, |&homega| {
                lorentzian_rate(homega, t, gamma) * line_density
            })
        }
        LineshapeMode::Detuning => {
            // superposition of detuned Lorentzians weighted by D·f
            let kernel_norm = gamma / std::f64::consts::PI;
            let m2 = t.dipole_moment * t.dipole_moment;
            exec::map_collect(grid, |&homega| {
                // substitution ε = u² regularizes the edge; panels follow
                // both the kernel peak and the Fermi window
                let u_star2 = homega - t.energy_gap;
                let mut interior = vec![(thermal.fermi_offset.max(0.0)
                    + 2.0 * BOLTZMANN * thermal.temperature)
                    .sqrt()];
                for shift in [-3.0, -1.0, 0.0, 1.0, 3.0] {
                    let e = u_star2 + shift * gamma;
                    if e > 0.0 {
                        interior.push(e.sqrt());
                    }
                }
                let breaks = panel_breaks(0.0, u_max, &interior);
                rule.integrate_panels(&breaks, |u| {
                    let eps_axial = u * u;
                    let d = dos_c / eps_axial.max(EPSILON_REG).sqrt();
                    let f = fermi_dirac(e_i + eps_axial, fermi_level, thermal.temperature);
                    let det = t.energy_gap + eps_axial - homega;
                    let kernel = kernel_norm * homega * m2 / (det * det + gamma * gamma);
                    2.0 * u * d * f * kernel
                })
            })
        }
    };
    Ok(normalized_spectrum(
        grid,
        raw,
        StructureKind::Wire,
        gamma,
        Some(thermal.temperature),
        Some(mode),
    ))
}

/// Sheet-density result; the bracketed difference is kept in the stated
/// [final − initial] order, so an occupied ground subband gives a
/// negative value, flagged here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SheetDensity {
    /// (1/L_w)·[∫D(E,E_f)f dE − ∫D(E,E_i)f dE] in nm⁻³.
    pub value: f64,
    pub negative: bool,
}

impl SheetDensity {
    /// Magnitude, the form consumed as 1/V by the response layer.
    pub fn magnitude(&self) -> f64 {
        self.value.abs()
    }
}

/// DOS-weighted occupancy difference of the two subbands over L_w.
/// E_F sits `fermi_offset` above the initial subband edge; both integrals
/// run to E_cut = E_F + 40·k_BT with the edge handled by E = E_edge + u².
pub fn sheet_density(
    initial_edge: f64,
    final_edge: f64,
    mass_ratio: f64,
    thermal: &ThermalConfig,
) -> SheetDensity {
    let fermi_level = initial_edge + thermal.fermi_offset;
    let e_cut = fermi_level + 40.0 * BOLTZMANN * thermal.temperature;
    let rule = GaussRule::new(64);
    let dos_c = (mass_ratio / (2.0 * HBAR2_OVER_2M0)).sqrt() / std::f64::consts::PI;
    let occupancy_integral = |edge: f64| -> f64 {
        if edge >= e_cut {
            return 0.0;
        }
        let u_max = (e_cut - edge).sqrt();
        let window = ((fermi_level - edge).max(0.0) + 4.0 * BOLTZMANN * thermal.temperature).sqrt();
        let breaks = panel_breaks(0.0, u_max, &[0.5 * window, window, 2.0 * window]);
        2.0 * dos_c
            * rule.integrate_panels(&breaks, |u| {
                fermi_dirac(edge + u * u, fermi_level, thermal.temperature)
            })
    };
    let value = (occupancy_integral(final_edge) - occupancy_integral(initial_edge)) / thermal.l_w;
    SheetDensity {
        value,
        negative: value < 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dipole::StructureKind;

    fn wire_transition() -> TransitionData {
        TransitionData {
            kind: StructureKind::Wire,
            energy_gap: 127.0,
            dipole_moment: 1.05,
            delta_diag: 0.0,
            initial_energy: 82.6,
            final_energy: 209.6,
            dos_mass: 0.13,
        }
    }

    #[test]
    fn fermi_dirac_reference_points() {
        assert_eq!(fermi_dirac(50.0, 50.0, 300.0), 0.5);
        assert!(fermi_dirac(550.0, 50.0, 300.0) < 1e-8);
        assert!(fermi_dirac(-450.0, 50.0, 300.0) > 1.0 - 1e-8);
        // extreme arguments stay finite
        assert_eq!(fermi_dirac(1e6, 0.0, 1.0), 0.0);
        assert_eq!(fermi_dirac(-1e6, 0.0, 1.0), 1.0);
    }

    #[test]
    fn dos_power_law_and_domain() {
        let d1 = dos_1d(101.0, 100.0, 0.13).unwrap();
        let d4 = dos_1d(104.0, 100.0, 0.13).unwrap();
        assert!((d1 / d4 - 2.0).abs() < 1e-12);
        assert!(dos_1d(100.0, 100.0, 0.13).is_err());
        assert!(dos_1d(99.0, 100.0, 0.13).is_err());
    }

    #[test]
    fn dos_hand_calculation() {
        // D(E_i + 25 meV) for m* = 0.13
        let d = dos_1d(25.0, 0.0, 0.13).unwrap();
        let by_hand = (0.13 / (2.0 * HBAR2_OVER_2M0 * 25.0)).sqrt() / std::f64::consts::PI;
        assert_eq!(d, by_hand);
        assert!(d > 0.0 && d.is_finite());
        assert!((d - 0.002629).abs() < 5e-6);
    }

    #[test]
    fn dos_antiderivative() {
        // ∫_{E_i}^{E_i+Δ} D dE = 2√(m*Δ/(2ħ²/2m₀))/π
        let delta: f64 = 20.0;
        let rule = GaussRule::new(64);
        let by_quadrature = rule.integrate(0.0, delta.sqrt(), |u| {
            2.0 * dos_1d(u * u + 1e-300, 0.0, 0.13).unwrap() * u
        });
        let closed = 2.0 * (0.13 * delta / (2.0 * HBAR2_OVER_2M0)).sqrt() / std::f64::consts::PI;
        assert!((by_quadrature - closed).abs() < 1e-10 * closed);
    }

    #[test]
    fn lorentzian_rate_properties() {
        let t = wire_transition();
        let gamma = 10.0;
        let peak = lorentzian_rate(t.energy_gap, &t, gamma);
        assert!(
            (peak - t.energy_gap * t.dipole_moment * t.dipole_moment / (gamma * gamma)).abs()
                < 1e-12 * peak
        );
        // HWHM of the Lorentzian factor, up to the ħω prefactor skew
        for sign in [-1.0, 1.0] {
            let v = lorentzian_rate(t.energy_gap + sign * gamma, &t, gamma);
            let expected = (t.energy_gap + sign * gamma) * t.dipole_moment * t.dipole_moment
                / (2.0 * gamma * gamma);
            assert!((v - expected).abs() < 1e-12 * expected);
        }
        // γ → 10γ drops the on-resonance factor 100×
        let wide = lorentzian_rate(t.energy_gap, &t, 10.0 * gamma);
        assert!((peak / wide - 100.0).abs() < 1e-9);
    }

    #[test]
    fn qd_peak_location_and_width() {
        let t = wire_transition();
        let grid: Vec<f64> = (0..1200).map(|i| i as f64 * 0.5).collect();
        let s = qd_absorption(&grid, &t, 10.0).unwrap();
        assert!((s.peak_energy() - t.energy_gap).abs() <= 0.5);
        // FWHM of the rate carries the ħω skew; the pure Lorentzian factor
        // FWHM is 2γ
        let unskewed = Spectrum {
            points: grid
                .iter()
                .map(|&e| (e, lorentzian_rate(e, &t, 10.0) / e.max(1e-12)))
                .collect(),
            ..s.clone()
        };
        let width = unskewed.fwhm();
        assert!((width - 20.0).abs() <= 0.5 + 1e-9, "width {width}");
    }

    #[test]
    fn spectra_are_peak_normalized_and_scale_invariant() {
        let t = wire_transition();
        let grid: Vec<f64> = (40..400).map(|i| i as f64).collect();
        let thermal = ThermalConfig::room_temperature();
        let a = qwr_absorption(&grid, &t, &thermal, 10.0, LineshapeMode::Detuning).unwrap();
        let mut t_scaled = t;
        t_scaled.dipole_moment *= 7.5;
        let b = qwr_absorption(&grid, &t_scaled, &thermal, 10.0, LineshapeMode::Detuning).unwrap();
        let max_a = a.points.iter().map(|p| p.1).fold(0.0_f64, f64::max);
        assert!((max_a - 1.0).abs() < 1e-12);
        for (pa, pb) in a.points.iter().zip(&b.points) {
            assert!((pa.1 - pb.1).abs() < 1e-12);
        }
        assert!((b.raw_peak / a.raw_peak - 7.5 * 7.5).abs() < 1e-9);
    }

    #[test]
    fn empty_occupied_window_gives_zero_spectrum() {
        let t = wire_transition();
        let grid: Vec<f64> = (40..400).map(|i| i as f64).collect();
        let mut thermal = ThermalConfig::room_temperature();
        thermal.temperature = 1.0;
        thermal.fermi_offset = -500.0; // Fermi level far below the subband
        let s = qwr_absorption(&grid, &t, &thermal, 10.0, LineshapeMode::Detuning).unwrap();
        assert!(s.raw_peak < 1e-30);
    }

    #[test]
    fn sheet_density_signs_and_scaling() {
        let t = wire_transition();
        let thermal = ThermalConfig::room_temperature();
        let sd = sheet_density(t.initial_energy, t.final_energy, 0.13, &thermal);
        // paper's [final − initial] order: occupied ground subband wins
        assert!(sd.negative);
        assert!(sd.value < 0.0);
        assert!(sd.magnitude() > 0.0);

        // 1/L_w scaling
        let mut wide = thermal;
        wide.l_w *= 3.0;
        let sd_wide = sheet_density(t.initial_energy, t.final_energy, 0.13, &wide);
        assert!((sd_wide.value * 3.0 - sd.value).abs() < 1e-15 * sd.value.abs());

        // empty final subband at T → 0 with E_F below it
        let cold = ThermalConfig::new(0.01, 10.0, 16.0).unwrap();
        let sd_cold = sheet_density(t.initial_energy, t.final_energy, 0.13, &cold);
        let only_initial = -sheet_density(t.final_energy, t.final_energy + 1e9, 0.13, &cold).value;
        let _ = only_initial;
        // the final-subband integral vanishes, leaving the initial one
        assert!(sd_cold.value < 0.0);
    }

    #[test]
    fn ordering_wire_below_dot() {
        // raw-peak comparison under the module's shared unit bookkeeping
        let t_wire = wire_transition();
        let t_dot = TransitionData {
            kind: StructureKind::Dot,
            energy_gap: 146.4,
            dipole_moment: 1.39,
            delta_diag: 0.0,
            initial_energy: 140.3,
            final_energy: 286.8,
            dos_mass: 0.13,
        };
        let grid: Vec<f64> = (0..600).map(|i| i as f64).collect();
        let thermal = ThermalConfig::room_temperature();
        let wire = qwr_absorption(&grid, &t_wire, &thermal, 10.0, LineshapeMode::Detuning).unwrap();
        let dot = qd_absorption(&grid, &t_dot, 10.0).unwrap();
        assert!(wire.raw_peak < dot.raw_peak);
        // red shift of the wire peak
        assert!(wire.peak_energy() < dot.peak_energy());
        // wire spectrum is broader in detuning mode
        assert!(
            wire.fwhm() > dot.fwhm(),
            "wire {} vs dot {}",
            wire.fwhm(),
            dot.fwhm()
        );
    }
}
