use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qubench::circuit::parse_circuit;
use qubench::harness::{emit_plot_data, render_table, run_experiments, ResultsArchive, RunConfig, ARCHIVE_FILE};
use qubench::router::{report_csv, routing_report};
use qubench::{DeviceModel, Error};

#[derive(Parser)]
#[command(name = "qubench", version, about = "Cross-architecture quantum benchmark runner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiments of a config file and write a results archive.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        shots: Option<u64>,
        /// Output directory; overrides `output_dir` from the config.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a results table as CSV.
    Table {
        archive: PathBuf,
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(qubench::harness::TABLE_IDS))]
        id: String,
    },
    /// Write x,y,err series files for a figure.
    PlotData {
        archive: PathBuf,
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(qubench::harness::FIGURE_IDS))]
        id: String,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Routing overhead of a circuit file on each device.
    RouteReport {
        #[arg(long)]
        circuit: PathBuf,
        /// Comma-separated preset names or device JSON paths.
        #[arg(long, value_delimiter = ',')]
        devices: Vec<String>,
    },
}

enum Failure {
    Config(Error),
    Execution(Error),
}

fn config_err(e: Error) -> Failure {
    Failure::Config(e)
}

fn exec_err(e: impl Into<Error>) -> Failure {
    Failure::Execution(e.into())
}

fn read_archive(path: &Path) -> Result<ResultsArchive, Failure> {
    ResultsArchive::read(path).map_err(config_err)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Execution(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn dispatch(command: Command) -> Result<(), Failure> {
    match command {
        Command::Run { config, seed, shots, out } => {
            let mut cfg = RunConfig::load(&config).map_err(config_err)?;
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            if let Some(shots) = shots {
                cfg.shots = shots;
            }
            if let Some(out) = out {
                cfg.output_dir = out;
            }
            cfg.validate().map_err(config_err)?;
            let base = config.parent().unwrap_or(Path::new("."));
            cfg.resolve_devices(base).map_err(config_err)?;
            let archive = run_experiments(&cfg, base).map_err(exec_err)?;
            let path = cfg.output_dir.join(ARCHIVE_FILE);
            archive.write(&path).map_err(exec_err)?;
            println!("wrote {} rows to {}", archive.rows.len(), path.display());
        }
        Command::Table { archive, id } => {
            let archive = read_archive(&archive)?;
            print!("{}", render_table(&archive, &id).map_err(exec_err)?);
        }
        Command::PlotData { archive, id, out } => {
            let archive = read_archive(&archive)?;
            let files = emit_plot_data(&archive, &id).map_err(exec_err)?;
            fs::create_dir_all(&out).map_err(exec_err)?;
            for f in files {
                let path = out.join(&f.name);
                fs::write(&path, f.contents).map_err(exec_err)?;
                println!("{}", path.display());
            }
        }
        Command::RouteReport { circuit, devices } => {
            let text = fs::read_to_string(&circuit)
                .map_err(|e| config_err(Error::Config(format!("cannot read {}: {e}", circuit.display()))))?;
            let c = parse_circuit(&text).map_err(config_err)?;
            let devices: Vec<DeviceModel> = devices
                .iter()
                .map(|d| DeviceModel::resolve(d.trim()))
                .collect::<Result<_, _>>()
                .map_err(config_err)?;
            if devices.is_empty() {
                return Err(config_err(Error::Config("no devices given".into())));
            }
            print!("{}", report_csv(&routing_report(&c, &devices).map_err(exec_err)?));
        }
    }
    Ok(())
}
