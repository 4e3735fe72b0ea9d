//! Spherical GaN/AlN core/shell finite well: the quantum-dot reference
//! states used for the wire/dot comparison spectra.

use crate::constants::HBAR2_OVER_2M0;
use crate::error::{Error, Result};
use crate::material::{Shape, WellProfile};
use crate::rootscan::{scan_roots, ScanConfig};
use crate::special::{spherical_bessel_j, spherical_k_mod};
use crate::subband::MatchingCondition;

/// One bound level of the spherical finite well.
#[derive(Debug, Clone, PartialEq)]
pub struct QdState {
    pub n: u32,
    pub l: i32,
    /// Level energy in meV from the well band edge.
    pub energy: f64,
    pub kappa_w: f64,
    pub kappa_b: f64,
    /// Amplitude of the interior j_ℓ branch.
    pub interior_amp: f64,
    /// Amplitude of the exterior k_ℓ branch.
    pub exterior_amp: f64,
    pub profile: WellProfile,
}

#[derive(Debug, Clone)]
pub struct QdSolver {
    profile: WellProfile,
    matching: MatchingCondition,
    pub scan_steps: usize,
    pub refine_tol: f64,
}

impl QdSolver {
    pub fn new(profile: WellProfile) -> Result<Self> {
        if profile.shape != Shape::Sphere {
            return Err(Error::InvalidGeometry(
                "the dot solver requires spherical geometry".into(),
            ));
        }
        Ok(Self {
            profile,
            matching: MatchingCondition::default(),
            scan_steps: 2000,
            refine_tol: 1e-6,
        })
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

    /// (1/m_w)·κ_w j_ℓ′/j_ℓ − (1/m_b)·κ_b k_ℓ′/k_ℓ evaluated at r₀, paired
    /// with j_ℓ(κ_w r₀) whose zeros are the poles.
    ///
    /// The flux that ∇·(1/m*)∇ conserves across the interface is
    /// (1/m)·dR/dr (r² is continuous), so the logarithmic derivative of R
    /// itself is matched, not of r·R.
    fn residual(&self, energy: f64, l: i32) -> Result<(f64, f64)> {
        let u_c = self.profile.barrier_height;
        if !(energy > 0.0 && energy < u_c) {
            return Err(Error::EnergyOutOfRange {
                energy,
                barrier: u_c,
            });
        }
        let (kw, kb) = self.kappas(energy);
        let r0 = self.profile.core_radius;
        let jw = spherical_bessel_j(l, kw * r0)?;
        let kv = spherical_k_mod(l, kb * r0)?;
        let (mw, mb) = match self.matching {
            MatchingCondition::BenDanielDuke => (self.profile.mass_well, self.profile.mass_barrier),
            MatchingCondition::PlainDerivative => (1.0, 1.0),
        };
        let lhs = kw * jw.derivative / jw.value / mw;
        let rhs = kb * kv.derivative / kv.value / mb;
        Ok((lhs - rhs, jw.value))
    }

    /// All bound levels for ℓ, ascending, at most `max_n`.
    pub fn find_levels(&self, l: i32, max_n: usize) -> Result<Vec<QdState>> {
        let l = l.abs();
        let u_c = self.profile.barrier_height;
        let cfg = ScanConfig {
            lo: u_c * 1e-7,
            hi: u_c * (1.0 - 1e-7),
            steps: self.scan_steps,
            refine_tol: self.refine_tol,
        };
        let roots = scan_roots(cfg, |e| self.residual(e, l).ok(), max_n);
        roots
            .into_iter()
            .enumerate()
            .map(|(i, e)| self.build_state(i as u32 + 1, l, e))
            .collect()
    }

    fn build_state(&self, n: u32, l: i32, energy: f64) -> Result<QdState> {
        let (kw, kb) = self.kappas(energy);
        let r0 = self.profile.core_radius;
        let zw = kw * r0;
        let zb = kb * r0;
        let jw = spherical_bessel_j(l, zw)?;
        let kv = spherical_k_mod(l, zb)?;

        // closed forms:
        //   ∫₀^{r₀} j_ℓ² r² dr = (r₀³/2)(j_ℓ² − j_{ℓ−1} j_{ℓ+1})
        //   ∫_{r₀}^∞ k_ℓ² r² dr = (r₀³/2)(k_{ℓ−1} k_{ℓ+1} − k_ℓ²)
        // with j₋₁(x) = cos x / x and k₋₁ = k₀
        let j_lower = if l == 0 {
            zw.cos() / zw
        } else {
            spherical_bessel_j(l - 1, zw)?.value
        };
        let j_upper = spherical_bessel_j(l + 1, zw)?.value;
        let k_lower = if l == 0 {
            kv.value
        } else {
            spherical_k_mod(l - 1, zb)?.value
        };
        let k_upper = spherical_k_mod(l + 1, zb)?.value;

        let i_in = 0.5 * r0.powi(3) * (jw.value * jw.value - j_lower * j_upper);
        let i_out = 0.5 * r0.powi(3) * (k_lower * k_upper - kv.value * kv.value);
        let ratio = jw.value / kv.value;
        let norm = 4.0 * std::f64::consts::PI * (i_in + ratio * ratio * i_out);
        let interior_amp = 1.0 / norm.sqrt();
        let exterior_amp = interior_amp * ratio;

        Ok(QdState {
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

impl QdState {
    /// Radial amplitude R(r); normalized as 4π∫R²r²dr = 1.
    pub fn radial_wavefunction(&self, r: f64) -> f64 {
        if r < self.profile.core_radius {
            self.interior_amp
                * spherical_bessel_j(self.l, self.kappa_w * r)
                    .map(|b| b.value)
                    .unwrap_or(0.0)
        } else {
            let x = self.kappa_b * r;
            if x > 700.0 {
                return 0.0;
            }
            self.exterior_amp * spherical_k_mod(self.l, x).map(|b| b.value).unwrap_or(0.0)
        }
    }

    /// 4π∫R²r²dr recomputed from the closed forms (diagnostic).
    pub fn radial_norm(&self) -> f64 {
        let r0 = self.profile.core_radius;
        let zw = self.kappa_w * r0;
        let zb = self.kappa_b * r0;
        let jw = spherical_bessel_j(self.l, zw).unwrap().value;
        let kv = spherical_k_mod(self.l, zb).unwrap().value;
        let j_lower = if self.l == 0 {
            zw.cos() / zw
        } else {
            spherical_bessel_j(self.l - 1, zw).unwrap().value
        };
        let j_upper = spherical_bessel_j(self.l + 1, zw).unwrap().value;
        let k_lower = if self.l == 0 {
            kv
        } else {
            spherical_k_mod(self.l - 1, zb).unwrap().value
        };
        let k_upper = spherical_k_mod(self.l + 1, zb).unwrap().value;
        let i_in = 0.5 * r0.powi(3) * (jw * jw - j_lower * j_upper);
        let i_out = 0.5 * r0.powi(3) * (k_lower * k_upper - kv * kv);
        4.0 * std::f64::consts::PI
            * (self.interior_amp * self.interior_amp * i_in
                + self.exterior_amp * self.exterior_amp * i_out)
    }
}

/// Dipole magnitude |⟨i|e·r|f⟩| between dot states in e·nm: the radial
/// overlap ∫R_i R_f r³ dr times the m = 0 polar angular factor, zero
/// unless |Δℓ| = 1.
pub fn qd_dipole(i: &QdState, f: &QdState) -> f64 {
    let dl = (f.l - i.l).abs();
    if dl != 1 {
        return 0.0;
    }
    let l_low = i.l.min(f.l) as f64;
    // ⟨Y_{ℓ+1,0}|cosθ|Y_{ℓ,0}⟩ = (ℓ+1)/√((2ℓ+1)(2ℓ+3))
    let angular = (l_low + 1.0) / ((2.0 * l_low + 1.0) * (2.0 * l_low + 3.0)).sqrt();

    let r0 = i.profile.core_radius;
    let rule = crate::quad::GaussRule::new(48);
    let r_max = r0 + 40.0 / i.kappa_b.min(f.kappa_b);
    let breaks = crate::quad::panel_breaks(0.0, r_max, &[r0, 2.0 * r0, 4.0 * r0]);
    let radial = rule.integrate_panels(&breaks, |r| {
        i.radial_wavefunction(r) * f.radial_wavefunction(r) * r * r * r
    });
    (4.0 * std::f64::consts::PI * angular * radial).abs()
}
