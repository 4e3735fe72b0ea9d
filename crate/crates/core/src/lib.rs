//! Conduction-subband structure, donor binding energies and intersubband
//! optical response of cylindrical GaN/AlN core/shell quantum wires, with
//! a spherical quantum-dot reference model for comparison.
//!
//! Internal unit system: meV, nm, K.

// validations are written as `!(x > 0.0)` so NaN inputs are rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod dipole;
pub mod donor;
pub mod error;
pub mod exec;
pub mod material;
pub mod qdot;
pub mod quad;
pub mod response;
mod rootscan;
pub mod special;
pub mod spectra;
pub mod subband;

pub use constants::{constants, PhysicalConstants};
pub use dipole::{dipole_element, selection_allowed, Polarization, StructureKind, TransitionData};
pub use donor::{binding_energy, DonorSolver, DonorState, QuadratureSpec};
pub use error::{Error, Result};
pub use material::{
    conduction_offset, Geometry, MaterialParams, MaterialRegistry, Shape, WellProfile,
};
pub use qdot::{qd_dipole, QdSolver, QdState};
pub use response::{
    dielectric_function, resonant_susceptibility, stationary_density_matrix, ComplexResponse,
    DensityMatrix, ResponseConfig,
};
pub use special::{bessel_j, bessel_k_mod, spherical_bessel_j, spherical_k_mod, BesselEval};
pub use spectra::{
    dos_1d, fermi_dirac, lorentzian_rate, qd_absorption, qwr_absorption, sheet_density,
    LineshapeMode, SheetDensity, Spectrum, ThermalConfig,
};
pub use subband::{MatchingCondition, SubbandSolver, SubbandState};
