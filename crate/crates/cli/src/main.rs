//! cpt-shift: line shapes and light shifts of CPT resonances in a
//! four-level double-Λ system, as reproducible CSV artifacts.
//!
//! Exit codes: 0 success, 1 invariant failure, 2 configuration error,
//! 3 numerical failure.

mod config;
mod output;
mod presets;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cpt_core::shift::{chi_extremum_polynomial, series_coefficients, shift_vs_intensity};
use cpt_core::weak_coupling::{gamma_d, gamma_d_effective};
use cpt_core::{
    par, shift_from_rho12, spectrum, validation, Error as CoreError, ModelParams, SolverPath,
};

use config::{ConfigError, KeyValues, RunConfig};
use output::{fmt_f64, Csv};

#[derive(Parser)]
#[command(
    name = "cpt-shift",
    version,
    about = "CPT resonance line shapes and light shifts in a double-Lambda system"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// key=value configuration file; overlays the preset when both given.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output CSV file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Solver path override: exact | adiabatic | rational.
    #[arg(long)]
    path: Option<String>,
    /// Named figure preset (fig2, fig3, fig4a, fig4b, fig5, fig6a, fig6b,
    /// fig7a, fig7b).
    #[arg(long)]
    preset: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Line shape over a two-photon-detuning grid.
    Spectrum(RunArgs),
    /// Resonance shift over a (p1, p2) grid.
    ShiftMap(RunArgs),
    /// Series-coefficient ratio alpha2/alpha1 over a (p1, p2) grid.
    RatioMap(RunArgs),
    /// Resonance shift versus total intensity x, per intensity ratio.
    ShiftVsX(RunArgs),
    /// Runs the validation suites.
    Validate {
        /// List suite names without running them.
        #[arg(long)]
        list: bool,
        /// Also write a machine-readable CSV report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum CliError {
    Config(String),
    Invariant(String),
    Numerical(String),
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let msg = e.to_string();
        match e {
            CoreError::InvalidParameter(_)
            | CoreError::NoDrive
            | CoreError::ZeroDrive(_)
            | CoreError::DecoherenceBound { .. }
            | CoreError::StepTooLarge { .. }
            | CoreError::Unsupported(_) => CliError::Config(msg),
            CoreError::SingularSystem
            | CoreError::IllConditioned(_)
            | CoreError::ResidualTooLarge { .. } => CliError::Invariant(msg),
            _ => CliError::Numerical(msg),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Config(format!("i/o error: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    par::configure_threads(None);
    let outcome = match cli.command {
        Command::Spectrum(args) => run_csv(&args, "spectrum", cmd_spectrum),
        Command::ShiftMap(args) => run_csv(&args, "shift-map", cmd_shift_map),
        Command::RatioMap(args) => run_csv(&args, "ratio-map", cmd_ratio_map),
        Command::ShiftVsX(args) => run_csv(&args, "shift-vs-x", cmd_shift_vs_x),
        Command::Validate { list, out } => return cmd_validate(list, out),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(msg)) => {
            eprintln!("cpt-shift: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Invariant(msg)) => {
            eprintln!("cpt-shift: invariant failure: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("cpt-shift: numerical failure: {msg}");
            ExitCode::from(3)
        }
    }
}

fn load_config(args: &RunArgs) -> Result<RunConfig, CliError> {
    let mut kv = KeyValues::default();
    if let Some(name) = &args.preset {
        let text = presets::preset(name).ok_or_else(|| {
            CliError::Config(format!(
                "unknown preset '{name}' (available: {})",
                presets::PRESET_NAMES.join(", ")
            ))
        })?;
        kv.overlay(KeyValues::parse(text, name)?);
    }
    if let Some(path) = &args.config {
        kv.overlay(KeyValues::load(path)?);
    }
    if args.preset.is_none() && args.config.is_none() {
        return Err(CliError::Config(
            "provide --config and/or --preset".to_string(),
        ));
    }
    Ok(RunConfig::from_key_values(kv, args.path.as_deref())?)
}

fn run_csv(
    args: &RunArgs,
    subcommand: &str,
    build: fn(&RunConfig, &str) -> Result<Csv, CliError>,
) -> Result<(), CliError> {
    let cfg = load_config(args)?;
    let csv = build(&cfg, subcommand)?;
    match &args.out {
        Some(path) => {
            let file = std::fs::File::create(path)?;
            csv.write_to(std::io::BufWriter::new(file))?;
        }
        None => csv.write_to(std::io::stdout().lock())?,
    }
    Ok(())
}

fn cmd_spectrum(cfg: &RunConfig, subcommand: &str) -> Result<Csv, CliError> {
    let deltas = cfg.delta.points();
    let spec = spectrum(&cfg.params, &deltas, cfg.delta_common, cfg.path)?;
    let mut csv = Csv::new(
        subcommand,
        cfg.path.label(),
        &cfg.provenance(),
        &["delta", "rho12_re", "rho12_im", "chi1_im", "chi2_im", "rho_exc"],
        &["Gamma", "-", "-", "-", "-", "-"],
    );
    for p in &spec.points {
        csv.push_floats(&[
            p.delta, p.rho12_re, p.rho12_im, p.chi1_im, p.chi2_im, p.rho_exc,
        ]);
    }
    Ok(csv)
}

fn cell_params(base: &ModelParams, p_1: f64, p_2: f64) -> ModelParams {
    ModelParams {
        p_1,
        p_2,
        ..base.clone()
    }
}

fn cmd_shift_map(cfg: &RunConfig, subcommand: &str) -> Result<Csv, CliError> {
    let cells: Vec<(f64, f64)> = cfg
        .p1
        .points()
        .into_iter()
        .flat_map(|a| cfg.p2.points().into_iter().map(move |b| (a, b)))
        .collect();
    let path = cfg.path;
    let rows: Vec<Result<[f64; 5], CoreError>> = par::map_grid(&cells, |&(p_1, p_2)| {
        let params = cell_params(&cfg.params, p_1, p_2);
        let delta0 = match path {
            SolverPath::Rational => chi_extremum_polynomial(&params)?.delta0,
            _ => shift_from_rho12(&params, path)?.delta0,
        };
        Ok([
            p_1,
            p_2,
            delta0,
            delta0 / gamma_d(&params),
            delta0 / gamma_d_effective(&params),
        ])
    });
    let mut csv = Csv::new(
        subcommand,
        cfg.path.label(),
        &cfg.provenance(),
        &["p_1", "p_2", "delta0", "delta0_over_gamma_d", "delta0_over_gamma_d_eff"],
        &["-", "-", "Gamma", "-", "-"],
    );
    for row in rows {
        csv.push_floats(&row?);
    }
    Ok(csv)
}

fn cmd_ratio_map(cfg: &RunConfig, subcommand: &str) -> Result<Csv, CliError> {
    let cells: Vec<(f64, f64)> = cfg
        .p1
        .points()
        .into_iter()
        .flat_map(|a| cfg.p2.points().into_iter().map(move |b| (a, b)))
        .collect();
    let ratio = cfg.ratios[0];
    let rows: Vec<Result<(f64, f64, f64, &'static str), CoreError>> =
        par::map_grid(&cells, |&(p_1, p_2)| {
            let shape = cell_params(&cfg.params, p_1, p_2);
            match series_coefficients(&shape, ratio, &cfg.x_grid) {
                Ok(series) => Ok((p_1, p_2, series.ratio, "ok")),
                Err(CoreError::ResonanceAbsent { .. }) => {
                    Ok((p_1, p_2, f64::NAN, "resonance-absent"))
                }
                Err(e) => Err(e),
            }
        });
    let mut csv = Csv::new(
        subcommand,
        cfg.path.label(),
        &cfg.provenance(),
        &["p_1", "p_2", "alpha2_over_alpha1", "status"],
        &["-", "-", "-", "-"],
    );
    for row in rows {
        let (p_1, p_2, r, status) = row?;
        csv.push_record(&[fmt_f64(p_1), fmt_f64(p_2), fmt_f64(r), status.to_string()]);
    }
    Ok(csv)
}

fn cmd_shift_vs_x(cfg: &RunConfig, subcommand: &str) -> Result<Csv, CliError> {
    let mut csv = Csv::new(
        subcommand,
        cfg.path.label(),
        &cfg.provenance(),
        &["ratio", "x", "s", "extremum"],
        &["-", "-", "Gamma", "flag"],
    );
    for &ratio in &cfg.ratios {
        let curve = shift_vs_intensity(&cfg.params, ratio, &cfg.x_grid)?;
        for &(x, s) in &curve.points {
            let flagged = curve.extremum.map(|(xe, _)| xe == x).unwrap_or(false);
            csv.push_record(&[
                fmt_f64(ratio),
                fmt_f64(x),
                fmt_f64(s),
                if flagged { "1" } else { "0" }.to_string(),
            ]);
        }
    }
    Ok(csv)
}

fn cmd_validate(list: bool, out: Option<PathBuf>) -> ExitCode {
    if list {
        for name in validation::suite_names() {
            println!("{name}");
        }
        return ExitCode::SUCCESS;
    }
    let outcomes = validation::run_all();
    let mut all_passed = true;
    for o in &outcomes {
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        println!("{}: {} — {}", o.name, verdict, o.details);
        all_passed &= o.passed;
    }
    if let Some(path) = out {
        let mut csv = Csv::new(
            "validate",
            "-",
            "-",
            &["suite", "passed", "details"],
            &["-", "-", "-"],
        );
        for o in &outcomes {
            csv.push_record(&[
                o.name.clone(),
                o.passed.to_string(),
                o.details.replace(',', ";"),
            ]);
        }
        if let Err(e) = std::fs::write(&path, csv.to_string()) {
            eprintln!("cpt-shift: cannot write report: {e}");
            return ExitCode::from(2);
        }
    }
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
