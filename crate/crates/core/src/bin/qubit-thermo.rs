use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qubit_thermo::quantifiers::QuadratureSpec;
use qubit_thermo::runner::{
    parse_config, parse_quadrature, render_csv, reproduce_figures, run, write_csv, write_plot, RunError,
};

#[derive(Parser)]
#[command(
    name = "qubit-thermo",
    version,
    about = "Qubit open-system dynamics: non-classical volume, entropy, entropy production and ergotropy"
)]
struct Cli {
    /// Sphere quadrature as NTHETA,NPHI (default 64,128).
    #[arg(long, global = true, value_name = "NTHETA,NPHI")]
    quadrature: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one model from a `key = value` config file.
    Simulate {
        config: PathBuf,
        /// Write records as CSV here instead of stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write a two-panel SVG plot here.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Run all five default figure configurations and check correlation signs.
    ReproduceFigures {
        #[arg(long, default_value = "figures")]
        out_dir: PathBuf,
    },
}

fn quadrature(cli: &Option<String>) -> Result<Option<QuadratureSpec>, RunError> {
    cli.as_deref().map(parse_quadrature).transpose()
}

fn simulate(
    config: PathBuf,
    csv: Option<PathBuf>,
    plot: Option<PathBuf>,
    q: Option<QuadratureSpec>,
) -> Result<(), RunError> {
    let text = std::fs::read_to_string(&config)
        .map_err(|e| RunError::Config(format!("cannot read {}: {e}", config.display())))?;
    let mut spec = parse_config(&text)?;
    if let Some(q) = q {
        spec.quadrature = q;
    }
    if csv.is_some() {
        spec.output_path = csv;
    }
    if plot.is_some() {
        spec.plot_path = plot;
        spec.emit_plot = true;
    }
    let out = run(&spec)?;
    if let Some(w) = out.metadata.get("warning") {
        eprintln!("warning: {w}");
    }
    match &spec.output_path {
        Some(path) => write_csv(&out, path)?,
        None => print!("{}", render_csv(&out)),
    }
    if spec.emit_plot {
        let path = spec
            .plot_path
            .clone()
            .ok_or_else(|| RunError::Config("emit_plot = true needs a `plot` path".into()))?;
        write_plot(&out, &path)?;
    }
    Ok(())
}

fn reproduce(out_dir: PathBuf, q: Option<QuadratureSpec>) -> Result<(), RunError> {
    let summaries = reproduce_figures(&out_dir, q.unwrap_or_default())?;
    let mut failed = Vec::new();
    for s in &summaries {
        let status = if s.signs_hold() { "ok" } else { "FAIL" };
        println!(
            "{:<5} {:<13} n={:<4} corr(delta,S)={:+.4} corr(Sigma,W)={:+.4} {status}  {}",
            s.figure,
            s.model,
            s.records,
            s.corr_delta_entropy,
            s.corr_sigma_ergotropy,
            s.csv_path.display()
        );
        if !s.signs_hold() {
            failed.push(s.figure);
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(RunError::Statistics(format!(
            "correlation signs not negative for {}",
            failed.join(", ")
        )))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Usage errors are configuration errors; help and version are not errors.
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = quadrature(&cli.quadrature).and_then(|q| match cli.command {
        Command::Simulate { config, csv, plot } => simulate(config, csv, plot, q),
        Command::ReproduceFigures { out_dir } => reproduce(out_dir, q),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
