//! Bulk material parameters and heterostructure geometry.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Conduction-band parameters of one bulk material.
#[derive(Debug, Clone, PartialEq)]
pub struct MaterialParams {
    /// Band gap in meV.
    pub band_gap: f64,
    /// Electron effective mass m*/m₀.
    pub effective_mass_ratio: f64,
    /// Static relative permittivity ε_st.
    pub eps_static: f64,
    /// High-frequency relative permittivity ε_∞ (not tabulated for every material).
    pub eps_infinity: Option<f64>,
}

impl MaterialParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.band_gap > 0.0) {
            return Err(Error::InvalidMaterial(format!(
                "band gap must be positive, got {}",
                self.band_gap
            )));
        }
        if !(self.effective_mass_ratio > 0.0 && self.effective_mass_ratio < 1.0) {
            return Err(Error::InvalidMaterial(format!(
                "effective mass ratio must lie in (0, 1), got {}",
                self.effective_mass_ratio
            )));
        }
        if let Some(eps_inf) = self.eps_infinity {
            if eps_inf > self.eps_static {
                return Err(Error::InvalidMaterial(format!(
                    "eps_infinity {} exceeds eps_static {}",
                    eps_inf, self.eps_static
                )));
            }
        }
        Ok(())
    }
}

/// Registry of named materials. Ships with zb-GaN and zb-AlN and is
/// extensible from configuration.
#[derive(Debug, Clone)]
pub struct MaterialRegistry {
    table: BTreeMap<String, MaterialParams>,
}

impl Default for MaterialRegistry {
    fn default() -> Self {
        let mut table = BTreeMap::new();
        table.insert(
            "GaN".to_string(),
            MaterialParams {
                band_gap: 3200.0,
                effective_mass_ratio: 0.13,
                eps_static: 9.56,
                eps_infinity: Some(5.3),
            },
        );
        table.insert(
            "AlN".to_string(),
            MaterialParams {
                band_gap: 5300.0,
                effective_mass_ratio: 0.19,
                eps_static: 8.35,
                eps_infinity: None,
            },
        );
        Self { table }
    }
}

impl MaterialRegistry {
    /// Looks up a registered material by id.
    pub fn lookup(&self, name: &str) -> Result<&MaterialParams> {
        self.table
            .get(name)
            .ok_or_else(|| Error::UnknownMaterial(name.to_string()))
    }

    /// Registers or replaces a material.
    pub fn register(&mut self, name: &str, params: MaterialParams) -> Result<()> {
        params.validate()?;
        self.table.insert(name.to_string(), params);
        Ok(())
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.table.keys().map(|s| s.as_str())
    }
}

/// Confinement shape of the core/shell structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Cylinder,
    Sphere,
}

/// Core/shell geometry: core radius r₀, well/barrier ids and the
/// conduction-band offset ratio Q_c.
#[derive(Debug, Clone, PartialEq)]
pub struct Geometry {
    /// Core radius r₀ in nm.
    pub core_radius: f64,
    pub well: String,
    pub barrier: String,
    /// Fraction of ΔE_g assigned to the conduction band (default 0.76).
    pub offset_ratio: f64,
    pub shape: Shape,
}

impl Geometry {
    pub fn new(
        core_radius: f64,
        well: &str,
        barrier: &str,
        offset_ratio: f64,
        shape: Shape,
    ) -> Result<Self> {
        if !(core_radius > 0.0) {
            return Err(Error::InvalidGeometry(format!(
                "core radius must be positive, got {core_radius}"
            )));
        }
        if !(offset_ratio > 0.0 && offset_ratio <= 1.0) {
            return Err(Error::InvalidGeometry(format!(
                "offset ratio must lie in (0, 1], got {offset_ratio}"
            )));
        }
        Ok(Self {
            core_radius,
            well: well.to_string(),
            barrier: barrier.to_string(),
            offset_ratio,
            shape,
        })
    }

    /// Cylindrical GaN/AlN wire with the default 0.76 offset ratio.
    pub fn gan_aln_wire(core_radius: f64) -> Self {
        Self::new(core_radius, "GaN", "AlN", 0.76, Shape::Cylinder).expect("static defaults")
    }

    /// Spherical GaN/AlN dot with the default 0.76 offset ratio.
    pub fn gan_aln_dot(core_radius: f64) -> Self {
        Self::new(core_radius, "GaN", "AlN", 0.76, Shape::Sphere).expect("static defaults")
    }
}

/// Conduction-band offset U_c = Q_c · (E_g,barrier − E_g,well) in meV.
pub fn conduction_offset(registry: &MaterialRegistry, geometry: &Geometry) -> Result<f64> {
    let well = registry.lookup(&geometry.well)?;
    let barrier = registry.lookup(&geometry.barrier)?;
    let delta = barrier.band_gap - well.band_gap;
    if delta <= 0.0 {
        return Err(Error::InvalidHeterojunction {
            well_gap: well.band_gap,
            barrier_gap: barrier.band_gap,
        });
    }
    Ok(geometry.offset_ratio * delta)
}

/// Material pair actually used by the solvers: mass ratios of well/barrier,
/// well permittivity for the Coulomb term, and the offset U_c.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellProfile {
    pub core_radius: f64,
    pub mass_well: f64,
    pub mass_barrier: f64,
    /// Static permittivity of the well material (Coulomb screening).
    pub eps_well: f64,
    /// Confinement step U_c in meV.
    pub barrier_height: f64,
    pub shape: Shape,
}

impl WellProfile {
    pub fn build(registry: &MaterialRegistry, geometry: &Geometry) -> Result<Self> {
        let well = registry.lookup(&geometry.well)?;
        let barrier = registry.lookup(&geometry.barrier)?;
        let barrier_height = conduction_offset(registry, geometry)?;
        Ok(Self {
            core_radius: geometry.core_radius,
            mass_well: well.effective_mass_ratio,
            mass_barrier: barrier.effective_mass_ratio,
            eps_well: well.eps_static,
            barrier_height,
            shape: geometry.shape,
        })
    }

    /// Mass ratio at radial position r.
    pub fn mass_at(&self, r: f64) -> f64 {
        if r < self.core_radius {
            self.mass_well
        } else {
            self.mass_barrier
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_values() {
        let reg = MaterialRegistry::default();
        let gan = reg.lookup("GaN").unwrap();
        assert_eq!(gan.band_gap, 3200.0);
        assert_eq!(gan.effective_mass_ratio, 0.13);
        assert_eq!(gan.eps_static, 9.56);
        assert_eq!(gan.eps_infinity, Some(5.3));
        let aln = reg.lookup("AlN").unwrap();
        assert_eq!(aln.band_gap, 5300.0);
        assert_eq!(aln.effective_mass_ratio, 0.19);
        assert_eq!(aln.eps_static, 8.35);
        assert_eq!(aln.eps_infinity, None);
    }

    #[test]
    fn unknown_material_is_an_error() {
        let reg = MaterialRegistry::default();
        match reg.lookup("XxN") {
            Err(Error::UnknownMaterial(name)) => assert_eq!(name, "XxN"),
            other => panic!("expected UnknownMaterial, got {other:?}"),
        }
    }

    #[test]
    fn lookup_is_pure() {
        let reg = MaterialRegistry::default();
        let a = reg.lookup("GaN").unwrap().clone();
        let b = reg.lookup("GaN").unwrap().clone();
        assert_eq!(a, b);
    }

    #[test]
    fn offset_values() {
        let reg = MaterialRegistry::default();
        let g = Geometry::gan_aln_wire(4.0);
        assert!((conduction_offset(&reg, &g).unwrap() - 1596.0).abs() < 1e-9);

        let full = Geometry::new(4.0, "GaN", "AlN", 1.0, Shape::Cylinder).unwrap();
        assert!((conduction_offset(&reg, &full).unwrap() - 2100.0).abs() < 1e-9);
    }

    #[test]
    fn offset_linear_in_ratio() {
        let reg = MaterialRegistry::default();
        for q in [0.1, 0.25, 0.5, 0.76, 0.9] {
            let g = Geometry::new(4.0, "GaN", "AlN", q, Shape::Cylinder).unwrap();
            let full = Geometry::new(4.0, "GaN", "AlN", 1.0, Shape::Cylinder).unwrap();
            let lhs = conduction_offset(&reg, &g).unwrap();
            let rhs = q * conduction_offset(&reg, &full).unwrap();
            assert!((lhs - rhs).abs() <= f64::EPSILON * rhs.abs());
        }
    }

    #[test]
    fn swapped_heterojunction_is_an_error() {
        let reg = MaterialRegistry::default();
        let g = Geometry::new(4.0, "AlN", "GaN", 0.76, Shape::Cylinder).unwrap();
        assert!(matches!(
            conduction_offset(&reg, &g),
            Err(Error::InvalidHeterojunction { .. })
        ));
    }

    #[test]
    fn registry_extension() {
        let mut reg = MaterialRegistry::default();
        reg.register(
            "InN",
            MaterialParams {
                band_gap: 700.0,
                effective_mass_ratio: 0.07,
                eps_static: 15.3,
                eps_infinity: Some(8.4),
            },
        )
        .unwrap();
        assert!(reg.lookup("InN").is_ok());

        let bad = MaterialParams {
            band_gap: -1.0,
            effective_mass_ratio: 0.1,
            eps_static: 10.0,
            eps_infinity: None,
        };
        assert!(reg.register("Bad", bad).is_err());
    }
}
