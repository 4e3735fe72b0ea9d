use thiserror::Error;

/// Errors surfaced by the physics layers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("unknown material id `{0}`")]
    UnknownMaterial(String),

    #[error(
        "invalid heterojunction: barrier gap {barrier_gap} meV must exceed well gap {well_gap} meV"
    )]
    InvalidHeterojunction { well_gap: f64, barrier_gap: f64 },

    #[error("invalid material parameters: {0}")]
    InvalidMaterial(String),

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("Bessel order {0} outside supported range 0..=20")]
    UnsupportedOrder(i32),

    #[error("argument x = {x} outside domain of {function}")]
    Domain { function: &'static str, x: f64 },

    #[error("energy {energy} meV outside the open interval (0, {barrier}) meV")]
    EnergyOutOfRange { energy: f64, barrier: f64 },

    #[error(
        "quadrature accuracy {achieved:.3e} meV exceeds requested tolerance {requested:.3e} meV"
    )]
    QuadratureAccuracy { achieved: f64, requested: f64 },

    #[error("state is not normalized: norm deviates by {0:.3e}")]
    NotNormalized(f64),

    #[error(
        "response denominator vanished at photon energy {photon_mev} meV (gamma = {gamma_mev} meV)"
    )]
    SingularResponse { photon_mev: f64, gamma_mev: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
