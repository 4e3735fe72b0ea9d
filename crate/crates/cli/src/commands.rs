//! Command execution: solves the requested structures per radius and
//! writes plot-ready CSV tables.

use std::path::PathBuf;

use qwr_core::dipole::{Polarization, TransitionData};
use qwr_core::donor::DonorSolver;
use qwr_core::exec::map_collect;
use qwr_core::material::{Geometry, MaterialRegistry, Shape, WellProfile};
use qwr_core::qdot::{QdSolver, QdState};
use qwr_core::response::{dielectric_function, ComplexResponse, ResponseConfig};
use qwr_core::spectra::{sheet_density, Spectrum, ThermalConfig};
use qwr_core::subband::{SubbandSolver, SubbandState};

use crate::config::{lineshape_name, matching_name, RunConfig, VolumeNorm};
use crate::error::CliError;
use crate::table::{emit_csv, Cell, EmitStatus, RunMetadata, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Levels,
    Binding,
    Absorb,
    Dielectric,
    Compare,
    Sweep,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Levels => "levels",
            Command::Binding => "binding",
            Command::Absorb => "absorb",
            Command::Dielectric => "dielectric",
            Command::Compare => "compare",
            Command::Sweep => "sweep",
        }
    }
}

/// Everything solved for one wire radius.
struct WireSolution {
    r0: f64,
    ground: SubbandState,
    excited: SubbandState,
    transition: TransitionData,
    sheet: qwr_core::spectra::SheetDensity,
    volume_norm: f64,
}

struct DotSolution {
    r0: f64,
    ground: QdState,
    excited: QdState,
    transition: TransitionData,
    volume_norm: f64,
}

fn thermal(cfg: &RunConfig) -> Result<ThermalConfig, CliError> {
    ThermalConfig::new(cfg.temperature_k, cfg.fermi_offset_mev, cfg.l_w_nm2)
        .map_err(CliError::physics("thermal configuration"))
}

fn solve_wire(
    registry: &MaterialRegistry,
    cfg: &RunConfig,
    r0: f64,
    temperature_k: f64,
) -> Result<WireSolution, CliError> {
    let geometry = Geometry::new(
        r0,
        &cfg.well,
        &cfg.barrier,
        cfg.offset_ratio,
        Shape::Cylinder,
    )
    .map_err(CliError::physics("wire geometry"))?;
    let profile =
        WellProfile::build(registry, &geometry).map_err(CliError::physics("wire profile"))?;
    let solver = SubbandSolver::new(profile).with_matching(cfg.matching);
    let context = format!("wire levels at r0 = {r0} nm");
    let ground = solver
        .find_levels(0, 1)
        .map_err(CliError::physics(context.clone()))?
        .first()
        .cloned()
        .ok_or_else(|| CliError::Config(format!("no bound ℓ=0 state at r0 = {r0} nm")))?;
    let excited = solver
        .find_levels(1, 1)
        .map_err(CliError::physics(context.clone()))?
        .first()
        .cloned()
        .ok_or_else(|| CliError::Config(format!("no bound ℓ=1 state at r0 = {r0} nm")))?;
    let transition = TransitionData::from_wire_states(&ground, &excited, Polarization::X)
        .map_err(CliError::physics(context))?;
    let th = ThermalConfig::new(temperature_k, cfg.fermi_offset_mev, cfg.l_w_nm2)
        .map_err(CliError::physics("thermal configuration"))?;
    let sheet = sheet_density(
        transition.initial_energy,
        transition.final_energy,
        transition.dos_mass,
        &th,
    );
    let volume_norm = match cfg.volume_norm_qwr {
        VolumeNorm::Value(v) => v,
        VolumeNorm::Auto => 1.0 / sheet.magnitude().max(1e-300),
    };
    Ok(WireSolution {
        r0,
        ground,
        excited,
        transition,
        sheet,
        volume_norm,
    })
}

fn solve_dot(
    registry: &MaterialRegistry,
    cfg: &RunConfig,
    r0: f64,
) -> Result<DotSolution, CliError> {
    let geometry = Geometry::new(r0, &cfg.well, &cfg.barrier, cfg.offset_ratio, Shape::Sphere)
        .map_err(CliError::physics("dot geometry"))?;
    let profile =
        WellProfile::build(registry, &geometry).map_err(CliError::physics("dot profile"))?;
    let solver = QdSolver::new(profile)
        .map_err(CliError::physics("dot solver"))?
        .with_matching(cfg.matching);
    let context = format!("dot levels at r0 = {r0} nm");
    let ground = solver
        .find_levels(0, 1)
        .map_err(CliError::physics(context.clone()))?
        .first()
        .cloned()
        .ok_or_else(|| CliError::Config(format!("no bound ℓ=0 dot state at r0 = {r0} nm")))?;
    let excited = solver
        .find_levels(1, 1)
        .map_err(CliError::physics(context.clone()))?
        .first()
        .cloned()
        .ok_or_else(|| CliError::Config(format!("no bound ℓ=1 dot state at r0 = {r0} nm")))?;
    let transition =
        TransitionData::from_dot_states(&ground, &excited).map_err(CliError::physics(context))?;
    let volume_norm = match cfg.volume_norm_qd {
        VolumeNorm::Value(v) => v,
        VolumeNorm::Auto => 4.0 / 3.0 * std::f64::consts::PI * r0.powi(3),
    };
    Ok(DotSolution {
        r0,
        ground,
        excited,
        transition,
        volume_norm,
    })
}

fn response_config(cfg: &RunConfig, volume_norm: f64) -> Result<ResponseConfig, CliError> {
    ResponseConfig::new(
        cfg.gamma_mev,
        cfg.field_v_per_nm,
        volume_norm,
        cfg.background_eps,
    )
    .map_err(CliError::physics("response configuration"))
}

fn metadata(cfg: &RunConfig) -> RunMetadata {
    let switches = vec![
        ("matching".into(), matching_name(cfg.matching).into()),
        (
            "lineshape_mode".into(),
            lineshape_name(cfg.lineshape).into(),
        ),
        ("background_eps".into(), format!("{}", cfg.background_eps)),
        ("gamma_mev".into(), format!("{}", cfg.gamma_mev)),
        ("field_v_per_nm".into(), format!("{}", cfg.field_v_per_nm)),
        ("temperature_k".into(), format!("{}", cfg.temperature_k)),
        (
            "fermi_offset_mev".into(),
            format!("{}", cfg.fermi_offset_mev),
        ),
        ("l_w_nm2".into(), format!("{}", cfg.l_w_nm2)),
        ("volume_norm_qwr_nm3".into(), cfg.volume_norm_qwr.describe()),
        ("volume_norm_qd_nm3".into(), cfg.volume_norm_qd.describe()),
        (
            "epsilon_reg_mev".into(),
            format!("{}", qwr_core::spectra::EPSILON_REG),
        ),
        ("e_cut_rule".into(), "fermi_level + 40 kB T".into()),
        ("offset_ratio".into(), format!("{}", cfg.offset_ratio)),
    ];
    RunMetadata::from_canonical_config(&cfg.canonical_string(), switches)
}

type Written = Vec<(PathBuf, EmitStatus)>;

/// (radius, n, ℓ, energy) rows of the levels table.
type LevelRow = (f64, u32, i32, f64);

/// Executes one command; returns the list of files written.
pub fn run(command: Command, cfg: &RunConfig) -> Result<Written, CliError> {
    cfg.validate()?;
    let registry = cfg.registry()?;
    let meta = metadata(cfg);
    match command {
        Command::Levels => run_levels(cfg, &registry, &meta),
        Command::Binding => run_binding(cfg, &registry, &meta),
        Command::Absorb => run_absorb(cfg, &registry, &meta),
        Command::Dielectric => run_dielectric(cfg, &registry, &meta),
        Command::Compare => run_compare(cfg, &registry, &meta),
        Command::Sweep => run_sweep(cfg, &registry, &meta),
    }
}

/// Per-(n, ℓ) level energies vs radius. The first column is the core
/// radius (the reference figure labels its axis "diameter" while the text
/// uses radius; this output keeps the radius and says so).
fn run_levels(
    cfg: &RunConfig,
    registry: &MaterialRegistry,
    meta: &RunMetadata,
) -> Result<Written, CliError> {
    let per_radius: Vec<Result<Vec<LevelRow>, CliError>> = map_collect(&cfg.radii, |&r0| {
        let geometry = Geometry::new(
            r0,
            &cfg.well,
            &cfg.barrier,
            cfg.offset_ratio,
            Shape::Cylinder,
        )
        .map_err(CliError::physics("wire geometry"))?;
        let profile =
            WellProfile::build(registry, &geometry).map_err(CliError::physics("wire profile"))?;
        let solver = SubbandSolver::new(profile).with_matching(cfg.matching);
        let mut rows = Vec::new();
        for l in 0..=cfg.l_max {
            let levels = solver
                .find_levels(l, cfg.max_n)
                .map_err(CliError::physics(format!("levels at r0 = {r0}, l = {l}")))?;
            for state in levels {
                rows.push((r0, state.n, state.l, state.energy));
            }
        }
        Ok(rows)
    });

    let mut table = Table::new(vec!["radius_nm", "n", "l", "energy_mev"]);
    for result in per_radius {
        for (r0, n, l, e) in result? {
            table.push(vec![
                Cell::Float(r0),
                Cell::Int(n as i64),
                Cell::Int(l as i64),
                Cell::Float(e),
            ]);
        }
    }
    let path = cfg.out_dir.join("levels.csv");
    let (status, _) = emit_csv(&table, &path, meta)?;
    Ok(vec![(path, status)])
}

/// Undoped energy, donor energy and binding energy vs radius. Both the
/// bare E and the donor Ē are emitted side by side.
fn run_binding(
    cfg: &RunConfig,
    registry: &MaterialRegistry,
    meta: &RunMetadata,
) -> Result<Written, CliError> {
    let per_radius: Vec<Result<Vec<Cell>, CliError>> = map_collect(&cfg.radii, |&r0| {
        let wire = solve_wire(registry, cfg, r0, cfg.temperature_k)?;
        let donor = DonorSolver::new(wire.ground.profile)
            .minimize_energy(&wire.ground)
            .map_err(CliError::physics(format!(
                "donor minimization at r0 = {r0}"
            )))?;
        Ok(vec![
            Cell::Float(r0),
            Cell::Int(wire.ground.n as i64),
            Cell::Int(wire.ground.l as i64),
            Cell::Float(wire.ground.energy),
            Cell::Float(donor.energy),
            Cell::Float(donor.binding_energy),
            Cell::Float(donor.a_opt),
            Cell::Int(donor.boundary_warning as i64),
        ])
    });

    let mut table = Table::new(vec![
        "radius_nm",
        "n",
        "l",
        "energy_mev",
        "donor_energy_mev",
        "binding_mev",
        "a_opt_nm2",
        "boundary_warning",
    ]);
    for row in per_radius {
        table.push(row?);
    }
    let path = cfg.out_dir.join("binding.csv");
    let (status, _) = emit_csv(&table, &path, meta)?;
    Ok(vec![(path, status)])
}

fn spectrum_table(spectrum: &Spectrum) -> Table {
    let mut table = Table::new(vec!["homega_mev", "rate_norm", "rate_raw"]);
    for &(e, v) in &spectrum.points {
        table.push(vec![
            Cell::Float(e),
            Cell::Float(v),
            Cell::Float(v * spectrum.raw_peak),
        ]);
    }
    table
}

fn radius_tag(r0: f64) -> String {
    format!("{r0}")
}

fn run_absorb(
    cfg: &RunConfig,
    registry: &MaterialRegistry,
    meta: &RunMetadata,
) -> Result<Written, CliError> {
    let grid = cfg.omega_grid();
    let th = thermal(cfg)?;
    let solved: Vec<Result<(WireSolution, DotSolution, Spectrum, Spectrum), CliError>> =
        map_collect(&cfg.radii, |&r0| {
            let wire = solve_wire(registry, cfg, r0, cfg.temperature_k)?;
            let dot = solve_dot(registry, cfg, r0)?;
            let wire_spec = qwr_core::spectra::qwr_absorption(
                &grid,
                &wire.transition,
                &th,
                cfg.gamma_mev,
                cfg.lineshape,
            )
            .map_err(CliError::physics(format!("wire spectrum at r0 = {r0}")))?;
            let dot_spec = qwr_core::spectra::qd_absorption(&grid, &dot.transition, cfg.gamma_mev)
                .map_err(CliError::physics(format!("dot spectrum at r0 = {r0}")))?;
            Ok((wire, dot, wire_spec, dot_spec))
        });

    let mut written = Vec::new();
    for result in solved {
        let (wire, dot, wire_spec, dot_spec) = result?;
        let tag = radius_tag(wire.r0);
        let wire_path = cfg.out_dir.join(format!("absorb_qwr_r{tag}.csv"));
        let (status, _) = emit_csv(&spectrum_table(&wire_spec), &wire_path, meta)?;
        written.push((wire_path, status));
        let tag = radius_tag(dot.r0);
        let dot_path = cfg.out_dir.join(format!("absorb_qd_r{tag}.csv"));
        let (status, _) = emit_csv(&spectrum_table(&dot_spec), &dot_path, meta)?;
        written.push((dot_path, status));
    }
    Ok(written)
}

fn dielectric_table(resp: &ComplexResponse) -> Table {
    let mut table = Table::new(vec!["homega_mev", "re_eps", "im_eps", "re_chi", "im_chi"]);
    for ((&e, chi), eps) in resp.grid.iter().zip(&resp.chi).zip(&resp.eps) {
        table.push(vec![
            Cell::Float(e),
            Cell::Float(eps.re),
            Cell::Float(eps.im),
            Cell::Float(chi.re),
            Cell::Float(chi.im),
        ]);
    }
    table
}

fn run_dielectric(
    cfg: &RunConfig,
    registry: &MaterialRegistry,
    meta: &RunMetadata,
) -> Result<Written, CliError> {
    let grid = cfg.omega_grid();
    let solved: Vec<Result<(f64, ComplexResponse, ComplexResponse, WireSolution), CliError>> =
        map_collect(&cfg.radii, |&r0| {
            let wire = solve_wire(registry, cfg, r0, cfg.temperature_k)?;
            let dot = solve_dot(registry, cfg, r0)?;
            let wire_resp = dielectric_function(
                &grid,
                &wire.transition,
                &response_config(cfg, wire.volume_norm)?,
            )
            .map_err(CliError::physics(format!("wire dielectric at r0 = {r0}")))?;
            let dot_resp = dielectric_function(
                &grid,
                &dot.transition,
                &response_config(cfg, dot.volume_norm)?,
            )
            .map_err(CliError::physics(format!("dot dielectric at r0 = {r0}")))?;
            Ok((r0, wire_resp, dot_resp, wire))
        });

    let mut written = Vec::new();
    let mut sheet_table = Table::new(vec![
        "radius_nm",
        "sheet_density_nm3",
        "negative_flag",
        "volume_norm_qwr_nm3",
    ]);
    for result in solved {
        let (r0, wire_resp, dot_resp, wire) = result?;
        let tag = radius_tag(r0);
        let wire_path = cfg.out_dir.join(format!("dielectric_qwr_r{tag}.csv"));
        let (status, _) = emit_csv(&dielectric_table(&wire_resp), &wire_path, meta)?;
        written.push((wire_path, status));
        let dot_path = cfg.out_dir.join(format!("dielectric_qd_r{tag}.csv"));
        let (status, _) = emit_csv(&dielectric_table(&dot_resp), &dot_path, meta)?;
        written.push((dot_path, status));
        sheet_table.push(vec![
            Cell::Float(r0),
            Cell::Float(wire.sheet.value),
            Cell::Int(wire.sheet.negative as i64),
            Cell::Float(wire.volume_norm),
        ]);
    }
    let sheet_path = cfg.out_dir.join("sheet_density.csv");
    let (status, _) = emit_csv(&sheet_table, &sheet_path, meta)?;
    written.push((sheet_path, status));
    Ok(written)
}

/// Joined wire/dot tables: spectra under a shared normalization (both
/// divided by the larger raw peak) and a per-structure summary.
fn run_compare(
    cfg: &RunConfig,
    registry: &MaterialRegistry,
    meta: &RunMetadata,
) -> Result<Written, CliError> {
    let grid = cfg.omega_grid();
    let th = thermal(cfg)?;
    type CompareRow = (
        f64,
        Spectrum,
        Spectrum,
        ComplexResponse,
        ComplexResponse,
        WireSolution,
        DotSolution,
    );
    let solved: Vec<Result<CompareRow, CliError>> = map_collect(&cfg.radii, |&r0| {
        let wire = solve_wire(registry, cfg, r0, cfg.temperature_k)?;
        let dot = solve_dot(registry, cfg, r0)?;
        let wire_spec = qwr_core::spectra::qwr_absorption(
            &grid,
            &wire.transition,
            &th,
            cfg.gamma_mev,
            cfg.lineshape,
        )
        .map_err(CliError::physics(format!("wire spectrum at r0 = {r0}")))?;
        let dot_spec = qwr_core::spectra::qd_absorption(&grid, &dot.transition, cfg.gamma_mev)
            .map_err(CliError::physics(format!("dot spectrum at r0 = {r0}")))?;
        let wire_resp = dielectric_function(
            &grid,
            &wire.transition,
            &response_config(cfg, wire.volume_norm)?,
        )
        .map_err(CliError::physics(format!("wire dielectric at r0 = {r0}")))?;
        let dot_resp = dielectric_function(
            &grid,
            &dot.transition,
            &response_config(cfg, dot.volume_norm)?,
        )
        .map_err(CliError::physics(format!("dot dielectric at r0 = {r0}")))?;
        Ok((r0, wire_spec, dot_spec, wire_resp, dot_resp, wire, dot))
    });

    let mut written = Vec::new();
    let mut summary = Table::new(vec![
        "radius_nm",
        "structure",
        "e10_mev",
        "e11_mev",
        "e21_mev",
        "dipole_enm",
        "peak_mev",
        "fwhm_mev",
        "re_eps0",
        "volume_norm_nm3",
    ]);
    for result in solved {
        let (r0, wire_spec, dot_spec, wire_resp, dot_resp, wire, dot) = result?;
        let shared = wire_spec.raw_peak.max(dot_spec.raw_peak);
        let mut joined = Table::new(vec![
            "homega_mev",
            "qwr_rate_shared",
            "qd_rate_shared",
            "qwr_re_eps",
            "qd_re_eps",
        ]);
        for (k, &homega) in grid.iter().enumerate() {
            joined.push(vec![
                Cell::Float(homega),
                Cell::Float(wire_spec.points[k].1 * wire_spec.raw_peak / shared),
                Cell::Float(dot_spec.points[k].1 * dot_spec.raw_peak / shared),
                Cell::Float(wire_resp.eps[k].re),
                Cell::Float(dot_resp.eps[k].re),
            ]);
        }
        let tag = radius_tag(r0);
        let path = cfg.out_dir.join(format!("compare_r{tag}.csv"));
        let (status, _) = emit_csv(&joined, &path, meta)?;
        written.push((path, status));

        summary.push(vec![
            Cell::Float(r0),
            Cell::Text("qwr".into()),
            Cell::Float(wire.ground.energy),
            Cell::Float(wire.excited.energy),
            Cell::Float(wire.transition.energy_gap),
            Cell::Float(wire.transition.dipole_moment),
            Cell::Float(wire_spec.peak_energy()),
            Cell::Float(wire_spec.fwhm()),
            Cell::Float(wire_resp.eps[0].re),
            Cell::Float(wire.volume_norm),
        ]);
        summary.push(vec![
            Cell::Float(r0),
            Cell::Text("qd".into()),
            Cell::Float(dot.ground.energy),
            Cell::Float(dot.excited.energy),
            Cell::Float(dot.transition.energy_gap),
            Cell::Float(dot.transition.dipole_moment),
            Cell::Float(dot_spec.peak_energy()),
            Cell::Float(dot_spec.fwhm()),
            Cell::Float(dot_resp.eps[0].re),
            Cell::Float(dot.volume_norm),
        ]);
    }
    let summary_path = cfg.out_dir.join("compare_summary.csv");
    let (status, _) = emit_csv(&summary, &summary_path, meta)?;
    written.push((summary_path, status));
    Ok(written)
}

/// Cartesian product of radii × temperatures, one summary row each.
fn run_sweep(
    cfg: &RunConfig,
    registry: &MaterialRegistry,
    meta: &RunMetadata,
) -> Result<Written, CliError> {
    let jobs: Vec<(f64, f64)> = cfg
        .radii
        .iter()
        .flat_map(|&r0| cfg.sweep_temperatures_k.iter().map(move |&t| (r0, t)))
        .collect();
    let rows: Vec<Result<Vec<Cell>, CliError>> = map_collect(&jobs, |&(r0, temperature)| {
        let wire = solve_wire(registry, cfg, r0, temperature)?;
        let dot = solve_dot(registry, cfg, r0)?;
        let donor = DonorSolver::new(wire.ground.profile)
            .minimize_energy(&wire.ground)
            .map_err(CliError::physics(format!(
                "donor minimization at r0 = {r0}"
            )))?;
        let wire_eps0 = qwr_core::response::resonant_susceptibility(
            0.0,
            &wire.transition,
            &response_config(cfg, wire.volume_norm)?,
        )
        .re + cfg.background_eps;
        let dot_eps0 = qwr_core::response::resonant_susceptibility(
            0.0,
            &dot.transition,
            &response_config(cfg, dot.volume_norm)?,
        )
        .re + cfg.background_eps;
        Ok(vec![
            Cell::Float(r0),
            Cell::Float(temperature),
            Cell::Float(wire.ground.energy),
            Cell::Float(wire.excited.energy),
            Cell::Float(wire.transition.energy_gap),
            Cell::Float(wire.transition.dipole_moment),
            Cell::Float(donor.energy),
            Cell::Float(donor.binding_energy),
            Cell::Float(wire.sheet.value),
            Cell::Float(wire_eps0),
            Cell::Float(dot_eps0),
        ])
    });

    let mut table = Table::new(vec![
        "radius_nm",
        "temperature_k",
        "e10_mev",
        "e11_mev",
        "e21_mev",
        "dipole_enm",
        "donor_energy_mev",
        "binding_mev",
        "sheet_density_nm3",
        "re_eps0_qwr",
        "re_eps0_qd",
    ]);
    for row in rows {
        table.push(row?);
    }
    let path = cfg.out_dir.join("sweep.csv");
    let (status, _) = emit_csv(&table, &path, meta)?;
    Ok(vec![(path, status)])
}
