//! Run configuration: defaults, TOML file parsing with schema version,
//! and command-line overrides.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use qwr_core::material::{MaterialParams, MaterialRegistry};
use qwr_core::spectra::LineshapeMode;
use qwr_core::subband::MatchingCondition;

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// Calibrated normalization volumes reproducing the static dielectric
/// values 10.05 (wire) and 9.89 (dot) at r₀ = 4 nm, ħγ = 10 meV.
pub const CALIBRATED_VOLUME_QWR: f64 = 642.652458;
pub const CALIBRATED_VOLUME_QD: f64 = 1440.779953;

/// Normalization volume: an explicit value or "auto" (sheet density for
/// the wire, core volume for the dot).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VolumeNorm {
    Value(f64),
    Auto,
}

impl VolumeNorm {
    pub fn describe(&self) -> String {
        match self {
            VolumeNorm::Value(v) => format!("{v}"),
            VolumeNorm::Auto => "auto".to_string(),
        }
    }
}

impl<'de> Deserialize<'de> for VolumeNorm {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(de)? {
            Raw::Number(v) => Ok(VolumeNorm::Value(v)),
            Raw::Text(s) if s == "auto" => Ok(VolumeNorm::Auto),
            Raw::Text(s) => Err(serde::de::Error::custom(format!(
                "volume norm must be a number or \"auto\", got {s:?}"
            ))),
        }
    }
}

/// Effective configuration after defaults, file and CLI overrides.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub radii: Vec<f64>,
    pub well: String,
    pub barrier: String,
    pub offset_ratio: f64,

    pub temperature_k: f64,
    pub fermi_offset_mev: f64,
    pub l_w_nm2: f64,
    /// Temperatures of the sweep command.
    pub sweep_temperatures_k: Vec<f64>,

    pub gamma_mev: f64,
    pub field_v_per_nm: f64,
    pub background_eps: f64,
    pub volume_norm_qwr: VolumeNorm,
    pub volume_norm_qd: VolumeNorm,

    pub omega_min_mev: f64,
    pub omega_max_mev: f64,
    pub omega_step_mev: f64,

    pub matching: MatchingCondition,
    pub lineshape: LineshapeMode,
    pub max_n: usize,
    pub l_max: i32,

    pub materials: BTreeMap<String, MaterialParams>,
    pub out_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            radii: vec![3.0, 4.0],
            well: "GaN".into(),
            barrier: "AlN".into(),
            offset_ratio: 0.76,
            temperature_k: 300.0,
            fermi_offset_mev: 10.0,
            l_w_nm2: 16.0,
            sweep_temperatures_k: vec![77.0, 300.0],
            gamma_mev: 10.0,
            field_v_per_nm: 0.0,
            background_eps: 9.56,
            volume_norm_qwr: VolumeNorm::Value(CALIBRATED_VOLUME_QWR),
            volume_norm_qd: VolumeNorm::Value(CALIBRATED_VOLUME_QD),
            omega_min_mev: 0.0,
            omega_max_mev: 1200.0,
            omega_step_mev: 1.0,
            matching: MatchingCondition::BenDanielDuke,
            lineshape: LineshapeMode::Detuning,
            max_n: 2,
            l_max: 1,
            materials: BTreeMap::new(),
            out_dir: PathBuf::from("out"),
        }
    }
}

// ---- TOML file schema (all fields optional; file overlays defaults) ----

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    schema_version: u32,
    geometry: Option<GeometrySection>,
    thermal: Option<ThermalSection>,
    response: Option<ResponseSection>,
    grid: Option<GridSection>,
    solver: Option<SolverSection>,
    sweep: Option<SweepSection>,
    #[serde(default)]
    materials: BTreeMap<String, MaterialSection>,
    output: Option<OutputSection>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeometrySection {
    radii_nm: Option<Vec<f64>>,
    well: Option<String>,
    barrier: Option<String>,
    offset_ratio: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ThermalSection {
    temperature_k: Option<f64>,
    fermi_offset_mev: Option<f64>,
    l_w_nm2: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ResponseSection {
    gamma_mev: Option<f64>,
    field_v_per_nm: Option<f64>,
    background_eps: Option<f64>,
    volume_norm_qwr_nm3: Option<VolumeNorm>,
    volume_norm_qd_nm3: Option<VolumeNorm>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridSection {
    omega_min_mev: Option<f64>,
    omega_max_mev: Option<f64>,
    omega_step_mev: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SolverSection {
    matching: Option<String>,
    lineshape_mode: Option<String>,
    max_n: Option<usize>,
    l_max: Option<i32>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepSection {
    temperatures_k: Option<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MaterialSection {
    band_gap_mev: f64,
    effective_mass_ratio: f64,
    eps_static: f64,
    eps_infinity: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct OutputSection {
    dir: Option<PathBuf>,
}

fn parse_matching(s: &str) -> Result<MatchingCondition, CliError> {
    match s {
        "ben-daniel-duke" | "bdd" | "mass-weighted" => Ok(MatchingCondition::BenDanielDuke),
        "plain" | "plain-derivative" => Ok(MatchingCondition::PlainDerivative),
        other => Err(CliError::Config(format!(
            "solver.matching: expected \"ben-daniel-duke\" or \"plain\", got {other:?}"
        ))),
    }
}

fn parse_lineshape(s: &str) -> Result<LineshapeMode, CliError> {
    match s {
        "detuning" => Ok(LineshapeMode::Detuning),
        "amplitude" => Ok(LineshapeMode::Amplitude),
        other => Err(CliError::Config(format!(
            "solver.lineshape_mode: expected \"detuning\" or \"amplitude\", got {other:?}"
        ))),
    }
}

pub fn matching_name(m: MatchingCondition) -> &'static str {
    match m {
        MatchingCondition::BenDanielDuke => "ben-daniel-duke",
        MatchingCondition::PlainDerivative => "plain",
    }
}

pub fn lineshape_name(m: LineshapeMode) -> &'static str {
    match m {
        LineshapeMode::Detuning => "detuning",
        LineshapeMode::Amplitude => "amplitude",
    }
}

impl RunConfig {
    /// Defaults overlaid with an optional TOML file.
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let mut cfg = RunConfig::default();
        let Some(path) = path else { return Ok(cfg) };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))?;
        let file: ConfigFile = toml::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(CliError::Config(format!(
                "{}: schema_version {} not supported (expected {SCHEMA_VERSION})",
                path.display(),
                file.schema_version
            )));
        }
        if let Some(g) = file.geometry {
            if let Some(v) = g.radii_nm {
                cfg.radii = v;
            }
            if let Some(v) = g.well {
                cfg.well = v;
            }
            if let Some(v) = g.barrier {
                cfg.barrier = v;
            }
            if let Some(v) = g.offset_ratio {
                cfg.offset_ratio = v;
            }
        }
        if let Some(t) = file.thermal {
            if let Some(v) = t.temperature_k {
                cfg.temperature_k = v;
            }
            if let Some(v) = t.fermi_offset_mev {
                cfg.fermi_offset_mev = v;
            }
            if let Some(v) = t.l_w_nm2 {
                cfg.l_w_nm2 = v;
            }
        }
        if let Some(r) = file.response {
            if let Some(v) = r.gamma_mev {
                cfg.gamma_mev = v;
            }
            if let Some(v) = r.field_v_per_nm {
                cfg.field_v_per_nm = v;
            }
            if let Some(v) = r.background_eps {
                cfg.background_eps = v;
            }
            if let Some(v) = r.volume_norm_qwr_nm3 {
                cfg.volume_norm_qwr = v;
            }
            if let Some(v) = r.volume_norm_qd_nm3 {
                cfg.volume_norm_qd = v;
            }
        }
        if let Some(g) = file.grid {
            if let Some(v) = g.omega_min_mev {
                cfg.omega_min_mev = v;
            }
            if let Some(v) = g.omega_max_mev {
                cfg.omega_max_mev = v;
            }
            if let Some(v) = g.omega_step_mev {
                cfg.omega_step_mev = v;
            }
        }
        if let Some(s) = file.solver {
            if let Some(v) = s.matching {
                cfg.matching = parse_matching(&v)?;
            }
            if let Some(v) = s.lineshape_mode {
                cfg.lineshape = parse_lineshape(&v)?;
            }
            if let Some(v) = s.max_n {
                cfg.max_n = v;
            }
            if let Some(v) = s.l_max {
                cfg.l_max = v;
            }
        }
        if let Some(s) = file.sweep {
            if let Some(v) = s.temperatures_k {
                cfg.sweep_temperatures_k = v;
            }
        }
        for (name, m) in file.materials {
            cfg.materials.insert(
                name,
                MaterialParams {
                    band_gap: m.band_gap_mev,
                    effective_mass_ratio: m.effective_mass_ratio,
                    eps_static: m.eps_static,
                    eps_infinity: m.eps_infinity,
                },
            );
        }
        if let Some(o) = file.output {
            if let Some(dir) = o.dir {
                cfg.out_dir = dir;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.radii.is_empty() || self.radii.iter().any(|&r| r <= 0.0) {
            return Err(CliError::Config(
                "geometry.radii_nm must be non-empty and positive".into(),
            ));
        }
        if self.omega_step_mev <= 0.0 || self.omega_max_mev <= self.omega_min_mev {
            return Err(CliError::Config(
                "grid: omega_step_mev must be positive and omega_max_mev > omega_min_mev".into(),
            ));
        }
        if self.max_n == 0 {
            return Err(CliError::Config("solver.max_n must be at least 1".into()));
        }
        Ok(())
    }

    /// Material registry with config extensions applied.
    pub fn registry(&self) -> Result<MaterialRegistry, CliError> {
        let mut reg = MaterialRegistry::default();
        for (name, params) in &self.materials {
            reg.register(name, params.clone())
                .map_err(|e| CliError::Config(format!("materials.{name}: {e}")))?;
        }
        Ok(reg)
    }

    /// Photon-energy grid in meV.
    pub fn omega_grid(&self) -> Vec<f64> {
        let n = ((self.omega_max_mev - self.omega_min_mev) / self.omega_step_mev).round() as usize;
        (0..=n)
            .map(|i| self.omega_min_mev + i as f64 * self.omega_step_mev)
            .collect()
    }

    /// Canonical one-line-per-field rendering, hashed into the output
    /// metadata so identical effective configs give identical bytes.
    pub fn canonical_string(&self) -> String {
        let mut s = String::new();
        use std::fmt::Write;
        let _ = writeln!(s, "schema_version={SCHEMA_VERSION}");
        let _ = writeln!(s, "radii={:?}", self.radii);
        let _ = writeln!(s, "well={} barrier={}", self.well, self.barrier);
        let _ = writeln!(s, "offset_ratio={}", self.offset_ratio);
        let _ = writeln!(
            s,
            "thermal={} {} {}",
            self.temperature_k, self.fermi_offset_mev, self.l_w_nm2
        );
        let _ = writeln!(s, "sweep_temperatures={:?}", self.sweep_temperatures_k);
        let _ = writeln!(
            s,
            "response={} {} {} {} {}",
            self.gamma_mev,
            self.field_v_per_nm,
            self.background_eps,
            self.volume_norm_qwr.describe(),
            self.volume_norm_qd.describe()
        );
        let _ = writeln!(
            s,
            "grid={} {} {}",
            self.omega_min_mev, self.omega_max_mev, self.omega_step_mev
        );
        let _ = writeln!(
            s,
            "solver={} {} {} {}",
            matching_name(self.matching),
            lineshape_name(self.lineshape),
            self.max_n,
            self.l_max
        );
        for (name, m) in &self.materials {
            let _ = writeln!(
                s,
                "material.{name}={} {} {} {:?}",
                m.band_gap, m.effective_mass_ratio, m.eps_static, m.eps_infinity
            );
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let cfg = RunConfig::default();
        cfg.validate().unwrap();
        assert_eq!(cfg.omega_grid().len(), 1201);
        assert_eq!(cfg.omega_grid()[0], 0.0);
        assert_eq!(*cfg.omega_grid().last().unwrap(), 1200.0);
    }

    #[test]
    fn file_overlays_defaults() {
        let dir = std::env::temp_dir().join("qwr_cfg_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("partial.toml");
        std::fs::write(
            &path,
            r#"
schema_version = 1
[geometry]
radii_nm = [2.5]
[response]
volume_norm_qwr_nm3 = "auto"
[solver]
matching = "plain"
[materials.InN]
band_gap_mev = 700.0
effective_mass_ratio = 0.07
eps_static = 15.3
"#,
        )
        .unwrap();
        let cfg = RunConfig::load(Some(&path)).unwrap();
        assert_eq!(cfg.radii, vec![2.5]);
        assert_eq!(cfg.volume_norm_qwr, VolumeNorm::Auto);
        assert_eq!(cfg.matching, MatchingCondition::PlainDerivative);
        assert_eq!(cfg.gamma_mev, 10.0); // untouched default
        assert!(cfg.registry().unwrap().lookup("InN").is_ok());
    }

    #[test]
    fn bad_schema_version_rejected() {
        let dir = std::env::temp_dir().join("qwr_cfg_test2");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.toml");
        std::fs::write(&path, "schema_version = 99\n").unwrap();
        let err = RunConfig::load(Some(&path)).unwrap_err();
        assert!(err.to_string().contains("schema_version"));
    }

    #[test]
    fn unknown_field_diagnosed_with_location() {
        let dir = std::env::temp_dir().join("qwr_cfg_test3");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("typo.toml");
        std::fs::write(&path, "schema_version = 1\n[geometry]\nradius = 4.0\n").unwrap();
        let err = RunConfig::load(Some(&path)).unwrap_err().to_string();
        assert!(err.contains("radius"), "diagnostic lacks field name: {err}");
        assert!(err.contains("line"), "diagnostic lacks location: {err}");
    }
}
