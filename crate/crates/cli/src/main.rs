use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qwr_cli::commands::{run, Command};
use qwr_cli::config::RunConfig;
use qwr_cli::error::CliError;
use qwr_cli::table::EmitStatus;

/// Subband structure, donor binding and intersubband optical spectra of
/// GaN/AlN core/shell quantum wires, with a spherical dot reference.
#[derive(Parser)]
#[command(name = "qwr", version, about)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,

    /// TOML configuration file (defaults are used when omitted).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory for CSV files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Wire lineshape mode: detuning | amplitude.
    #[arg(long, global = true)]
    mode: Option<String>,

    /// Interface matching: ben-daniel-duke | plain.
    #[arg(long, global = true)]
    matching: Option<String>,

    /// Background dielectric constant (1 + χ⁽¹⁾).
    #[arg(long, global = true)]
    background_eps: Option<f64>,

    /// Optical broadening ħγ in meV.
    #[arg(long, global = true)]
    gamma_mev: Option<f64>,

    /// Temperature in K.
    #[arg(long, global = true)]
    temperature_k: Option<f64>,

    /// Fermi-level offset above the ground subband in meV.
    #[arg(long, global = true)]
    fermi_offset_mev: Option<f64>,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Subband energies per (n, ℓ) for each radius.
    Levels,
    /// Donor energies and binding energies per radius.
    Binding,
    /// Absorption spectra for wire and dot.
    Absorb,
    /// Complex dielectric function for wire and dot.
    Dielectric,
    /// Joined wire/dot spectra and summary at each radius.
    Compare,
    /// Cartesian sweep over radii and temperatures.
    Sweep,
}

fn effective_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::load(cli.config.as_deref())?;
    if let Some(out) = &cli.out {
        cfg.out_dir = out.clone();
    }
    if let Some(mode) = &cli.mode {
        cfg.lineshape = match mode.as_str() {
            "detuning" => qwr_core::spectra::LineshapeMode::Detuning,
            "amplitude" => qwr_core::spectra::LineshapeMode::Amplitude,
            other => {
                return Err(CliError::Config(format!(
                    "--mode: expected detuning|amplitude, got {other:?}"
                )))
            }
        };
    }
    if let Some(matching) = &cli.matching {
        cfg.matching = match matching.as_str() {
            "ben-daniel-duke" | "bdd" => qwr_core::subband::MatchingCondition::BenDanielDuke,
            "plain" => qwr_core::subband::MatchingCondition::PlainDerivative,
            other => {
                return Err(CliError::Config(format!(
                    "--matching: expected ben-daniel-duke|plain, got {other:?}"
                )))
            }
        };
    }
    if let Some(v) = cli.background_eps {
        cfg.background_eps = v;
    }
    if let Some(v) = cli.gamma_mev {
        cfg.gamma_mev = v;
    }
    if let Some(v) = cli.temperature_k {
        cfg.temperature_k = v;
    }
    if let Some(v) = cli.fermi_offset_mev {
        cfg.fermi_offset_mev = v;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn init_worker_pool() {
    if let Ok(value) = std::env::var("QWR_THREADS") {
        if let Ok(n) = value.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        } else {
            eprintln!("warning: QWR_THREADS={value:?} is not a number; ignored");
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_worker_pool();
    let command = match cli.command {
        CliCommand::Levels => Command::Levels,
        CliCommand::Binding => Command::Binding,
        CliCommand::Absorb => Command::Absorb,
        CliCommand::Dielectric => Command::Dielectric,
        CliCommand::Compare => Command::Compare,
        CliCommand::Sweep => Command::Sweep,
    };
    let result = effective_config(&cli).and_then(|cfg| run(command, &cfg));
    match result {
        Ok(written) => {
            for (path, status) in written {
                println!("wrote {}", path.display());
                if status == EmitStatus::EmptyTable {
                    eprintln!("warning: {} has no data rows", path.display());
                }
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("{}", err.json());
            ExitCode::FAILURE
        }
    }
}
