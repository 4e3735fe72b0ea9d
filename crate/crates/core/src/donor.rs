//! On-axis donor impurity by the variational method: the 2D subband state
//! multiplied by a Gaussian envelope e^{−a(r²+y²)}, with the Rayleigh
//! quotient of the effective-mass Hamiltonian minimized over a.

use crate::constants::{COULOMB_FACTOR, HBAR2_OVER_2M0};
use crate::error::{Error, Result};
use crate::material::WellProfile;
use crate::quad::{panel_breaks, GaussRule};
use crate::subband::SubbandState;

/// Deterministic quadrature layout for the Rayleigh-quotient integrals.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    /// Radial extent in units of r₀ (the actual extent is the max of this
    /// and the Gaussian tail extent).
    pub radial_extent_r0: f64,
    /// Axial half-extent in units of 1/√a.
    pub axial_extent: f64,
    /// Gauss–Legendre nodes per radial panel.
    pub n_radial: usize,
    /// Nodes per axial panel.
    pub n_axial: usize,
    /// Nodes for the polar angle of the Coulomb integral.
    pub n_angular: usize,
    /// When set, every expectation is re-evaluated with doubled node
    /// counts and an accuracy error is raised if the two differ by more
    /// than this many meV.
    pub refine_check: Option<f64>,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            radial_extent_r0: 8.0,
            axial_extent: 6.0,
            n_radial: 48,
            n_axial: 48,
            n_angular: 48,
            refine_check: None,
        }
    }
}

impl QuadratureSpec {
    fn doubled(&self) -> Self {
        Self {
            n_radial: self.n_radial * 2,
            n_axial: self.n_axial * 2,
            n_angular: self.n_angular * 2,
            refine_check: None,
            ..*self
        }
    }
}

/// Variational donor level attached to its undoped base state.
#[derive(Debug, Clone, PartialEq)]
pub struct DonorState {
    pub base: SubbandState,
    /// Optimal Gaussian decay constant in nm⁻².
    pub a_opt: f64,
    /// Donor level Ē_{nℓ} in meV.
    pub energy: f64,
    /// base.energy − energy in meV.
    pub binding_energy: f64,
    /// Set when the coarse scan minimum sat on the search boundary,
    /// signaling a degenerating trial family.
    pub boundary_warning: bool,
}

/// Rayleigh-quotient evaluator and minimizer.
#[derive(Debug, Clone)]
pub struct DonorSolver {
    profile: WellProfile,
    pub quad: QuadratureSpec,
    /// Coulomb term switch; disabling it is useful for limit checks.
    pub coulomb: bool,
    /// Search window for a in nm⁻².
    pub a_min: f64,
    pub a_max: f64,
    /// Points of the unimodality pre-scan.
    pub scan_points: usize,
    /// Golden-section stops when the energy spread falls below this (meV).
    pub energy_tol: f64,
}

impl DonorSolver {
    pub fn new(profile: WellProfile) -> Self {
        Self {
            profile,
            quad: QuadratureSpec::default(),
            coulomb: true,
            a_min: 1e-5,
            a_max: 10.0,
            scan_points: 40,
            energy_tol: 1e-3,
        }
    }

    pub fn without_coulomb(mut self) -> Self {
        self.coulomb = false;
        self
    }

    /// ⟨Ψ_t|Ĥ|Ψ_t⟩/⟨Ψ_t|Ψ_t⟩ in meV for trial parameter a.
    pub fn energy_expectation(&self, a: f64, state: &SubbandState) -> Result<f64> {
        if !(a > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "variational parameter must be positive, got {a}"
            )));
        }
        let value = self.expectation_with(self.quad, a, state);
        if let Some(tol) = self.quad.refine_check {
            let refined = self.expectation_with(self.quad.doubled(), a, state);
            let achieved = (value - refined).abs();
            if achieved > tol {
                return Err(Error::QuadratureAccuracy {
                    achieved,
                    requested: tol,
                });
            }
            return Ok(refined);
        }
        Ok(value)
    }

    fn expectation_with(&self, quad: QuadratureSpec, a: f64, state: &SubbandState) -> f64 {
        let r0 = self.profile.core_radius;
        let u_c = self.profile.barrier_height;
        let lf = (state.l.abs()) as f64;
        let sigma = 1.0 / (2.0 * a).sqrt(); // e^{−2ar²} length scale
        let r_max = (quad.radial_extent_r0 * r0).max(quad.axial_extent / a.sqrt());
        let y_max = quad.axial_extent / a.sqrt();

        // one pass over shared radial nodes accumulates every 1D piece
        let rule_r = GaussRule::new(quad.n_radial);
        let breaks_r = panel_breaks(
            0.0,
            r_max,
            &[r0, 2.0 * r0, 4.0 * r0, 8.0 * r0, sigma, 3.0 * sigma],
        );
        let (gl_nodes, gl_weights) = crate::quad::gauss_legendre(quad.n_radial);
        let mut norm_r = 0.0; // ∫ R² r g dr
        let mut kin_grad = 0.0; // ∫ (1/m)(R′ − 2arR)² r g dr
        let mut kin_ang = 0.0; // ∫ (1/m) R² g / r dr
        let mut kin_gauss = 0.0; // ∫ (1/m) R² r g dr
        let mut conf = 0.0; // U_c ∫_{r>r₀} R² r g dr
        for pair in breaks_r.windows(2) {
            let half = 0.5 * (pair[1] - pair[0]);
            let mid = 0.5 * (pair[1] + pair[0]);
            for (x, w) in gl_nodes.iter().zip(&gl_weights) {
                let r = mid + half * x;
                let w = w * half;
                let g = (-2.0 * a * r * r).exp();
                let rr = state.radial_wavefunction(r);
                let dr = state.radial_derivative(r);
                let inv_m = 1.0 / self.profile.mass_at(r);
                let grad = dr - 2.0 * a * r * rr;
                norm_r += w * rr * rr * r * g;
                kin_grad += w * inv_m * grad * grad * r * g;
                if lf > 0.0 {
                    kin_ang += w * inv_m * rr * rr * g / r;
                }
                kin_gauss += w * inv_m * rr * rr * r * g;
                if r >= r0 {
                    conf += w * rr * rr * r * g;
                }
            }
        }

        // axial pieces (even, so twice the half-line)
        let rule_y = GaussRule::new(quad.n_axial);
        let breaks_y = panel_breaks(0.0, y_max, &[sigma, 3.0 * sigma]);
        let norm_y = 2.0 * rule_y.integrate_panels(&breaks_y, |y| (-2.0 * a * y * y).exp());
        let mom_y = 2.0 * rule_y.integrate_panels(&breaks_y, |y| y * y * (-2.0 * a * y * y).exp());

        let two_pi = 2.0 * std::f64::consts::PI;
        let norm = two_pi * norm_r * norm_y;
        let kinetic = two_pi
            * HBAR2_OVER_2M0
            * ((kin_grad + lf * lf * kin_ang) * norm_y + 4.0 * a * a * kin_gauss * mom_y);
        let confinement = two_pi * u_c * conf * norm_y;

        let coulomb = if self.coulomb {
            // polar coordinates in the (r, y) half-plane keep the 1/|r|
            // kernel regular: V = −(C/ε)·4π ∫cosφ dφ ∫ρ R(ρcosφ)² e^{−2aρ²} dρ
            let rule_phi = GaussRule::new(quad.n_angular);
            let rho_max = (r_max * r_max + y_max * y_max).sqrt();
            let inner = rule_phi.integrate(0.0, std::f64::consts::FRAC_PI_2, |phi| {
                let c = phi.cos();
                let mut interior = vec![sigma, 3.0 * sigma];
                if c > 1e-12 {
                    interior.push(r0 / c);
                    interior.push(2.0 * r0 / c);
                }
                let breaks = panel_breaks(0.0, rho_max, &interior);
                let radial = rule_r.integrate_panels(&breaks, |rho| {
                    let rr = state.radial_wavefunction(rho * c);
                    rho * rr * rr * (-2.0 * a * rho * rho).exp()
                });
                c * radial
            });
            -(COULOMB_FACTOR / self.profile.eps_well) * 4.0 * std::f64::consts::PI * inner
        } else {
            0.0
        };

        (kinetic + confinement + coulomb) / norm
    }

    /// Golden-section minimization over ln a with a 40-point unimodality
    /// pre-scan that picks the global bracket.
    pub fn minimize_energy(&self, state: &SubbandState) -> Result<DonorState> {
        let ln_min = self.a_min.ln();
        let ln_max = self.a_max.ln();
        let n = self.scan_points.max(5);
        let mut best = (0usize, f64::INFINITY);
        let mut scan = Vec::with_capacity(n);
        for i in 0..n {
            let ln_a = ln_min + (ln_max - ln_min) * i as f64 / (n - 1) as f64;
            let e = self.energy_expectation(ln_a.exp(), state)?;
            if e < best.1 {
                best = (i, e);
            }
            scan.push((ln_a, e));
        }
        let boundary_warning = best.0 == 0 || best.0 == n - 1;

        let (mut lo, mut hi) = if boundary_warning {
            if best.0 == 0 {
                (scan[0].0, scan[1].0)
            } else {
                (scan[n - 2].0, scan[n - 1].0)
            }
        } else {
            (scan[best.0 - 1].0, scan[best.0 + 1].0)
        };

        const INV_PHI: f64 = 0.618_033_988_749_895;
        let mut x1 = hi - INV_PHI * (hi - lo);
        let mut x2 = lo + INV_PHI * (hi - lo);
        let mut f1 = self.energy_expectation(x1.exp(), state)?;
        let mut f2 = self.energy_expectation(x2.exp(), state)?;
        for _ in 0..200 {
            if (f1 - f2).abs() <= self.energy_tol && (hi - lo) < 0.2 {
                break;
            }
            if f1 < f2 {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - INV_PHI * (hi - lo);
                f1 = self.energy_expectation(x1.exp(), state)?;
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + INV_PHI * (hi - lo);
                f2 = self.energy_expectation(x2.exp(), state)?;
            }
        }
        let (ln_opt, energy) = if f1 < f2 { (x1, f1) } else { (x2, f2) };
        // keep the boundary scan minimum if golden did not improve on it
        let (ln_opt, energy) = if boundary_warning && scan[best.0].1 < energy {
            (scan[best.0].0, scan[best.0].1)
        } else {
            (ln_opt, energy)
        };

        Ok(DonorState {
            base: state.clone(),
            a_opt: ln_opt.exp(),
            energy,
            binding_energy: state.energy - energy,
            boundary_warning,
        })
    }
}

/// Binding energy of a converged donor state in meV.
pub fn binding_energy(donor: &DonorState) -> f64 {
    donor.base.energy - donor.energy
}
