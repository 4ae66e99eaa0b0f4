use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bellcert_core::{AssumptionLevel, Error, MeasureKind};

mod angles;
mod commands;
mod report;
mod state_file;

use report::Format;

#[derive(Parser)]
#[command(version, about = "Entanglement certified by tilted CHSH Bell values")]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lower bound on an entanglement measure from one Bell value
    Estimate(EstimateArgs),
    /// Simulate a Bell test over a grid of α and report the bounds
    ScanAlpha(ScanArgs),
    /// Minimum entanglement as a function of Bob's measurement angle
    Interplay(InterplayArgs),
    /// Check that the LOCC reduction to Bell-diagonal form keeps Bell values
    LoccCheck(LoccArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureArg {
    Concurrence,
    Eof,
    Distillable,
}

impl From<MeasureArg> for MeasureKind {
    fn from(m: MeasureArg) -> Self {
        match m {
            MeasureArg::Concurrence => MeasureKind::Concurrence,
            MeasureArg::Eof => MeasureKind::EntanglementOfFormation,
            MeasureArg::Distillable => MeasureKind::OneWayDistillable,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    /// Source emits qubit pairs (semi-device-independent)
    Qubit,
    /// Fully device-independent
    Di,
}

impl From<LevelArg> for AssumptionLevel {
    fn from(l: LevelArg) -> Self {
        match l {
            LevelArg::Qubit => AssumptionLevel::QubitPair,
            LevelArg::Di => AssumptionLevel::DeviceIndependent,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StateArg {
    Pure,
    Werner,
}

#[derive(Args)]
pub struct EstimateArgs {
    #[arg(long)]
    pub alpha: f64,
    /// Observed value of the α-CHSH expression
    #[arg(long)]
    pub bell_value: f64,
    #[arg(long, value_enum, default_value_t = MeasureArg::Concurrence)]
    pub measure: MeasureArg,
    #[arg(long, value_enum, default_value_t = LevelArg::Qubit)]
    pub level: LevelArg,
}

#[derive(Args)]
pub struct ScanArgs {
    #[arg(long, value_enum)]
    pub state: StateArg,
    /// δ for a pure state, p for a Werner state
    #[arg(long, value_parser = angles::parse_angle)]
    pub param: f64,
    /// θ₁,θ₂,θ₃; accepts forms such as `pi/2,pi/6,-pi/6`
    #[arg(long, value_parser = angles::parse_triple)]
    pub thetas: [f64; 3],
    #[arg(long, default_value_t = 1.0)]
    pub alpha_min: f64,
    #[arg(long, default_value_t = 3.0)]
    pub alpha_max: f64,
    #[arg(long, default_value_t = 0.005)]
    pub alpha_step: f64,
    #[arg(long, value_enum, default_value_t = LevelArg::Di)]
    pub level: LevelArg,
    /// Measures to report; all three when omitted
    #[arg(long, value_enum, value_delimiter = ',')]
    pub measure: Vec<MeasureArg>,
}

#[derive(Args)]
pub struct InterplayArgs {
    #[arg(long)]
    pub alpha: f64,
    /// Comma-separated Bell values
    #[arg(long, value_delimiter = ',', required = true)]
    pub s_list: Vec<f64>,
    #[arg(long, default_value_t = 21)]
    pub theta_steps: usize,
    #[arg(long, value_enum, default_value_t = MeasureArg::Concurrence)]
    pub measure: MeasureArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 64)]
    pub restarts: usize,
}

#[derive(Args)]
pub struct LoccArgs {
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Check this state instead of random ones
    #[arg(long)]
    pub state_file: Option<PathBuf>,
}

pub enum Failure {
    /// Bad input: exit 2.
    Input(String),
    /// A computation or property check failed: exit 1.
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SolverFailure { .. } | Error::EigenvalueMismatch(_) => {
                Failure::Check(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Estimate(a) => commands::estimate(a),
        Command::ScanAlpha(a) => commands::scan_alpha(a),
        Command::Interplay(a) => commands::interplay(a),
        Command::LoccCheck(a) => commands::locc_check(a),
    };
    let (report, check) = match result {
        Ok(r) => r,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    if let Err(e) = report.emit(cli.format, io::stdout().lock()) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    match check {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
    }
}
