//! Bound states of the cylindrical finite well: interior J_ℓ(κ_w r) and
//! exterior K_ℓ(κ_b r) solutions matched at the core radius.

use crate::constants::HBAR2_OVER_2M0;
use crate::error::{Error, Result};
use crate::material::WellProfile;
use crate::rootscan::{scan_roots, ScanConfig};
use crate::special::{bessel_j, bessel_k_mod};

/// Interface condition at r₀.
///
/// `BenDanielDuke` continues (1/m*)·dR/dr across the step, consistent with
/// the symmetrized kinetic operator ∇·(1/m*)∇; `PlainDerivative` continues
/// dR/dr itself and exists for sensitivity studies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MatchingCondition {
    #[default]
    BenDanielDuke,
    PlainDerivative,
}

/// One bound subband level of the cylindrical well.
#[derive(Debug, Clone, PartialEq)]
pub struct SubbandState {
    /// Radial quantum number, 1-based rank of the root.
    pub n: u32,
    /// Angular quantum number (±ℓ degenerate; stored as |ℓ|).
    pub l: i32,
    /// Level energy E_{nℓ} in meV, measured from the well band edge.
    pub energy: f64,
    /// Interior wavevector κ_w in nm⁻¹.
    pub kappa_w: f64,
    /// Exterior decay constant κ_b in nm⁻¹.
    pub kappa_b: f64,
    /// Normalization amplitude of the interior J_ℓ branch.
    pub interior_amp: f64,
    /// Normalization amplitude of the exterior K_ℓ branch.
    pub exterior_amp: f64,
    /// Well profile the state was solved in.
    pub profile: WellProfile,
}

/// Residual of the matching condition together with the interior Bessel
/// boundary value whose zeros are the poles of the residual.
#[derive(Debug, Clone, Copy)]
pub struct MatchingPoint {
    pub residual: f64,
    /// J_ℓ(κ_w r₀); a sign change here marks a pole, not a root.
    pub boundary_j: f64,
}

/// Root finder for the radial matching problem.
#[derive(Debug, Clone)]
pub struct SubbandSolver {
    profile: WellProfile,
    matching: MatchingCondition,
    /// Number of scan steps across (0, U_c).
    pub scan_steps: usize,
    /// Bisection stops when the bracket is narrower than this (meV).
    pub refine_tol: f64,
}

impl SubbandSolver {
    pub fn new(profile: WellProfile) -> Self {
        Self {
            profile,
            matching: MatchingCondition::default(),
            scan_steps: 2000,
            refine_tol: 1e-6,
        }
    }

    pub fn with_matching(mut self, matching: MatchingCondition) -> Self {
        self.matching = matching;
        self
    }

    pub fn profile(&self) -> &WellProfile {
        &self.profile
    }

    fn kappas(&self, energy: f64) -> (f64, f64) {
        let kw = (energy * self.profile.mass_well / HBAR2_OVER_2M0).sqrt();
        let kb = ((self.profile.barrier_height - energy) * self.profile.mass_barrier
            / HBAR2_OVER_2M0)
            .sqrt();
        (kw, kb)
    }

    /// f(E) = (κ_w/m_w)·J_ℓ′/J_ℓ − (κ_b/m_b)·K_ℓ′/K_ℓ at r₀; zero at bound states.
    pub fn matching_residual(&self, energy: f64, l: i32) -> Result<MatchingPoint> {
        let u_c = self.profile.barrier_height;
        if !(energy > 0.0 && energy < u_c) {
            return Err(Error::EnergyOutOfRange {
                energy,
                barrier: u_c,
            });
        }
        let (kw, kb) = self.kappas(energy);
        let r0 = self.profile.core_radius;
        let jw = bessel_j(l, kw * r0)?;
        let kbr = bessel_k_mod(l, kb * r0)?;
        let (mw, mb) = match self.matching {
            MatchingCondition::BenDanielDuke => (self.profile.mass_well, self.profile.mass_barrier),
            MatchingCondition::PlainDerivative => (1.0, 1.0),
        };
        let residual = kw / mw * jw.derivative / jw.value - kb / mb * kbr.derivative / kbr.value;
        Ok(MatchingPoint {
            residual,
            boundary_j: jw.value,
        })
    }

    /// All bound levels for angular number ℓ, ascending, at most `max_n`.
    pub fn find_levels(&self, l: i32, max_n: usize) -> Result<Vec<SubbandState>> {
        let l = l.abs();
        let u_c = self.profile.barrier_height;
        let cfg = ScanConfig {
            lo: u_c * 1e-7,
            hi: u_c * (1.0 - 1e-7),
            steps: self.scan_steps,
            refine_tol: self.refine_tol,
        };
        let roots = scan_roots(
            cfg,
            |e| {
                self.matching_residual(e, l)
                    .ok()
                    .map(|p| (p.residual, p.boundary_j))
            },
            max_n,
        );
        roots
            .into_iter()
            .enumerate()
            .map(|(i, e)| self.build_state(i as u32 + 1, l, e))
            .collect()
    }

    fn build_state(&self, n: u32, l: i32, energy: f64) -> Result<SubbandState> {
        let (kw, kb) = self.kappas(energy);
        let r0 = self.profile.core_radius;
        let zw = kw * r0;
        let zb = kb * r0;
        let jw = bessel_j(l, zw)?;
        let kv = bessel_k_mod(l, zb)?;
        let lf = l as f64;

        // Lommel closed forms for the radial norm pieces:
        //   ∫₀^{r₀} J² r dr = (1/2κ_w²)[z²J′² + (z²−ℓ²)J²]
        //   ∫_{r₀}^∞ K² r dr = (1/2κ_b²)[z²K′² − (z²+ℓ²)K²]
        let i_in = 0.5 / (kw * kw)
            * (zw * zw * jw.derivative * jw.derivative + (zw * zw - lf * lf) * jw.value * jw.value);
        let i_out = 0.5 / (kb * kb)
            * (zb * zb * kv.derivative * kv.derivative - (zb * zb + lf * lf) * kv.value * kv.value);
        let ratio = jw.value / kv.value;
        let norm = 2.0 * std::f64::consts::PI * (i_in + ratio * ratio * i_out);
        let interior_amp = 1.0 / norm.sqrt();
        let exterior_amp = interior_amp * ratio;

        Ok(SubbandState {
            n,
            l,
            energy,
            kappa_w: kw,
            kappa_b: kb,
            interior_amp,
            exterior_amp,
            profile: self.profile,
        })
    }
}

impl SubbandState {
    /// Normalized radial amplitude R(r) in nm⁻¹.
    pub fn radial_wavefunction(&self, r: f64) -> f64 {
        debug_assert!(r >= 0.0);
        if r < self.profile.core_radius {
            self.interior_amp
                * bessel_j(self.l, self.kappa_w * r)
                    .map(|b| b.value)
                    .unwrap_or(0.0)
        } else {
            let x = self.kappa_b * r;
            if x > 700.0 {
                return 0.0;
            }
            self.exterior_amp * bessel_k_mod(self.l, x).map(|b| b.value).unwrap_or(0.0)
        }
    }

    /// dR/dr in nm⁻².
    pub fn radial_derivative(&self, r: f64) -> f64 {
        if r < self.profile.core_radius {
            self.interior_amp
                * self.kappa_w
                * bessel_j(self.l, self.kappa_w * r)
                    .map(|b| b.derivative)
                    .unwrap_or(0.0)
        } else {
            let x = self.kappa_b * r;
            if x > 700.0 {
                return 0.0;
            }
            self.exterior_amp
                * self.kappa_b
                * bessel_k_mod(self.l, x).map(|b| b.derivative).unwrap_or(0.0)
        }
    }

    /// Radial norm 2π∫R²r dr from the closed forms (diagnostic).
    pub fn radial_norm(&self) -> f64 {
        let zw = self.kappa_w * self.profile.core_radius;
        let zb = self.kappa_b * self.profile.core_radius;
        let jw = bessel_j(self.l, zw).unwrap();
        let kv = bessel_k_mod(self.l, zb).unwrap();
        let lf = self.l as f64;
        let i_in = 0.5 / (self.kappa_w * self.kappa_w)
            * (zw * zw * jw.derivative * jw.derivative + (zw * zw - lf * lf) * jw.value * jw.value);
        let i_out = 0.5 / (self.kappa_b * self.kappa_b)
            * (zb * zb * kv.derivative * kv.derivative - (zb * zb + lf * lf) * kv.value * kv.value);
        2.0 * std::f64::consts::PI
            * (self.interior_amp * self.interior_amp * i_in
                + self.exterior_amp * self.exterior_amp * i_out)
    }
}
