//! Spherical solver against the finite-difference oracle.

use qwr_core::material::{Geometry, MaterialRegistry, WellProfile};
use qwr_core::qdot::QdSolver;
use qwr_testkit::{adaptive_simpson, fd_radial_levels, RadialKind};

#[test]
fn dot_levels_match_finite_difference_oracle() {
    let reg = MaterialRegistry::default();
    for r0 in [3.0, 4.0] {
        let solver =
            QdSolver::new(WellProfile::build(&reg, &Geometry::gan_aln_dot(r0)).unwrap()).unwrap();
        for l in [0, 1] {
            let levels = solver.find_levels(l, 3).unwrap();
            assert!(!levels.is_empty());
            let oracle = fd_radial_levels(
                RadialKind::Spherical,
                l,
                r0,
                0.13,
                0.19,
                1596.0,
                6000,
                8.0 * r0,
                levels.len(),
            );
            for (state, e_fd) in levels.iter().zip(&oracle) {
                assert!(
                    (state.energy - e_fd).abs() < 0.5,
                    "r0={r0}, l={l}, n={}: matching {} vs FD {}",
                    state.n,
                    state.energy,
                    e_fd
                );
            }
        }
    }
}

#[test]
fn dot_norm_by_adaptive_quadrature() {
    let reg = MaterialRegistry::default();
    let solver =
        QdSolver::new(WellProfile::build(&reg, &Geometry::gan_aln_dot(4.0)).unwrap()).unwrap();
    for l in [0, 1] {
        for state in solver.find_levels(l, 2).unwrap() {
            let f = |r: f64| {
                let v = state.radial_wavefunction(r);
                v * v * r * r
            };
            let norm = 4.0
                * std::f64::consts::PI
                * (adaptive_simpson(&f, 0.0, 4.0, 1e-13) + adaptive_simpson(&f, 4.0, 40.0, 1e-13));
            assert!((norm - 1.0).abs() < 1e-6, "l={l} n={} norm {norm}", state.n);
        }
    }
}

#[test]
fn gap_ordering_dot_above_wire() {
    // E₂₁(QD) > E₂₁(QWR) at matched radius
    let reg = MaterialRegistry::default();
    for r0 in [3.0, 4.0] {
        let wire = qwr_core::subband::SubbandSolver::new(
            WellProfile::build(&reg, &Geometry::gan_aln_wire(r0)).unwrap(),
        );
        let we =
            wire.find_levels(1, 1).unwrap()[0].energy - wire.find_levels(0, 1).unwrap()[0].energy;
        let dot =
            QdSolver::new(WellProfile::build(&reg, &Geometry::gan_aln_dot(r0)).unwrap()).unwrap();
        let de =
            dot.find_levels(1, 1).unwrap()[0].energy - dot.find_levels(0, 1).unwrap()[0].energy;
        assert!(de > we, "r0={r0}: dot gap {de} vs wire gap {we}");
    }
}
