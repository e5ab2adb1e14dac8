use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use d2d_discovery::config::SuccessMode;
use d2d_discovery::experiments::{self, Axis, AxisValues, Engine, Preset, SweepSpec, SweepTable};
use d2d_discovery::io::{self, Format, OutputBundle, RunSummary};
use d2d_discovery::{average_delay, run_analytic, ArrivalTimeModel, ConfigError, Error, ScenarioConfig};

/// Random-backoff D2D discovery: fluid model, Monte Carlo and figure sweeps.
#[derive(Parser, Debug)]
#[command(name = "d2d-discovery", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    shared: Shared,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the fluid recursion once.
    Analytic,
    /// Run the agent-level simulation for one or more seeds.
    Mc,
    /// Sweep one or more parameters across engines.
    Sweep {
        /// Axis and values, e.g. `W=1,3` or `L_max=2,3,4`. Repeat for a grid.
        #[arg(long = "axis", required = true)]
        axes: Vec<String>,
        /// Comma-separated engines: analytic-literal, analytic-coupled, mc.
        #[arg(long, default_value = "analytic-literal,analytic-coupled,mc")]
        engines: String,
        #[arg(long, default_value = "series")]
        table: TableKind,
    },
    /// Reproduce a standard figure dataset (fig2 … fig6).
    Figure {
        name: String,
        #[arg(long, default_value = "series")]
        table: TableKind,
    },
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum TableKind {
    Series,
    Summary,
}

#[derive(Args, Debug)]
struct Shared {
    /// key=value scenario file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// First seed of the Monte Carlo replicates.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of Monte Carlo replicates.
    #[arg(long, global = true)]
    seeds: Option<u64>,
    #[arg(long, global = true)]
    mode: Option<SuccessModeArg>,
    /// Weight discoveries by 1 - e^{-l}.
    #[arg(long, global = true, overrides_with = "no_eq15")]
    eq15: bool,
    #[arg(long = "no-eq15", global = true)]
    no_eq15: bool,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value = "csv")]
    format: Format,

    #[arg(long, global = true)]
    total_ues: Option<String>,
    #[arg(long, global = true)]
    resources: Option<String>,
    #[arg(long, global = true)]
    dz_length: Option<String>,
    #[arg(long, global = true)]
    dz_interval: Option<String>,
    #[arg(long, global = true)]
    dz_count: Option<String>,
    #[arg(long, global = true)]
    max_transmissions: Option<String>,
    #[arg(long, global = true)]
    backoff_window: Option<String>,
    #[arg(long, global = true)]
    processing_delay: Option<String>,
    #[arg(long, global = true)]
    alpha: Option<String>,
    #[arg(long, global = true)]
    beta: Option<String>,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum SuccessModeArg {
    Literal,
    Coupled,
}

impl Shared {
    fn overrides(&self) -> Vec<(String, String)> {
        let fields = [
            ("total_ues", &self.total_ues),
            ("resources", &self.resources),
            ("dz_length", &self.dz_length),
            ("dz_interval", &self.dz_interval),
            ("dz_count", &self.dz_count),
            ("max_transmissions", &self.max_transmissions),
            ("backoff_window", &self.backoff_window),
            ("processing_delay", &self.processing_delay),
            ("alpha", &self.alpha),
            ("beta", &self.beta),
        ];
        let mut out: Vec<(String, String)> =
            fields.iter().filter_map(|(k, v)| v.as_ref().map(|v| (k.to_string(), v.clone()))).collect();
        if let Some(mode) = self.mode {
            let mode = match mode {
                SuccessModeArg::Literal => SuccessMode::Literal,
                SuccessModeArg::Coupled => SuccessMode::Coupled,
            };
            out.push(("success_mode".into(), mode.to_string()));
        }
        if let Some(eq15) = self.eq15_flag() {
            out.push(("eq15_weighting".into(), eq15.to_string()));
        }
        out
    }

    fn eq15_flag(&self) -> Option<bool> {
        match (self.eq15, self.no_eq15) {
            (true, _) => Some(true),
            (_, true) => Some(false),
            _ => None,
        }
    }

    fn scenario(&self) -> Result<ScenarioConfig, ConfigError> {
        io::parse_config(self.config.as_deref(), &self.overrides())
    }
}

enum Failure {
    Input(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(_) | Error::Sweep(_) | Error::UnknownPreset(_) => Failure::Input(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let shared = &cli.shared;
    let out = shared.out.as_deref();
    match &cli.command {
        Command::Analytic => {
            let cfg = shared.scenario()?;
            let report = run_analytic(&cfg)?;
            let delay = match average_delay(&report, ArrivalTimeModel::Literal) {
                Ok(d) => Some(d),
                Err(Error::NoDiscoveries) => None,
                Err(e) => return Err(e.into()),
            };
            let engine = format!("analytic-{}", cfg.success_mode);
            let bundle = OutputBundle {
                summary: RunSummary::from_analytic(&engine, &report, delay.as_ref()),
                series: io::analytic_rows(&report, delay.as_ref()),
            };
            io::emit(&bundle, shared.format, out)?;
        }
        Command::Mc => {
            let cfg = shared.scenario()?;
            let seeds = shared.seeds.unwrap_or(1);
            let cell = experiments::run_cell(&cfg, Engine::Mc, seeds, shared.seed)?;
            let bundle = OutputBundle { summary: cell.summary, series: cell.series };
            io::emit(&bundle, shared.format, out)?;
        }
        Command::Sweep { axes, engines, table } => {
            let base = shared.scenario()?;
            let axes = axes.iter().map(|a| parse_axis(a)).collect::<Result<Vec<_>, _>>()?;
            let engines = engines.split(',').map(|e| e.trim().parse()).collect::<Result<Vec<Engine>, _>>()?;
            let spec = SweepSpec {
                name: "sweep".into(),
                base,
                axes,
                engines,
                mc_seeds: shared.seeds.unwrap_or(20),
                base_seed: shared.seed,
            };
            write_table(&experiments::run_sweep(&spec)?, *table, shared.format, out)?;
        }
        Command::Figure { name, table } => {
            let mut spec = experiments::preset(name.parse::<Preset>()?);
            if let Some(n) = shared.seeds {
                spec.mc_seeds = n;
            }
            spec.base_seed = shared.seed;
            if let Some(eq15) = shared.eq15_flag() {
                spec.base.eq15_weighting = eq15;
            }
            write_table(&experiments::run_sweep(&spec)?, *table, shared.format, out)?;
        }
    }
    Ok(())
}

fn parse_axis(text: &str) -> Result<AxisValues, Failure> {
    let (name, values) = text
        .split_once('=')
        .ok_or_else(|| Failure::Input(format!("axis \"{text}\" must look like NAME=v1,v2")))?;
    let axis: Axis = name.trim().parse()?;
    let values = values
        .split(',')
        .map(|v| v.trim().parse::<u64>().map_err(|_| Failure::Input(format!("bad axis value \"{v}\""))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AxisValues { axis, values })
}

fn write_table(
    table: &SweepTable,
    kind: TableKind,
    format: Format,
    out: Option<&std::path::Path>,
) -> Result<(), Failure> {
    let text = match (format, kind) {
        (Format::Json, _) => io::to_json(table),
        (Format::Csv, TableKind::Series) => table.series_csv(),
        (Format::Csv, TableKind::Summary) => table.summary_csv(),
    };
    io::write_output(&text, out)?;
    Ok(())
}
