use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use horoflow_cli::{run_command, Command, Figure, Output, RunConfig};

#[derive(Parser)]
#[command(
    name = "horoflow",
    version,
    about = "Winding constructions and non-expansiveness checks for geodesic flows"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand)]
enum Cmd {
    /// Flow lemmas on stable pairs and the winding-time bound.
    VerifyLemmas,
    /// Seeded batches for the Key Proposition.
    KeyProp {
        /// Double each grid until the maximum settles within 1e-6.
        #[arg(long)]
        dense: bool,
    },
    /// Build a winding sequence and check the P_m table and cor1.
    Sequence,
    /// Build the non-expansiveness witness.
    Witness,
    /// Write an SVG figure.
    Render {
        #[arg(value_enum, default_value = "horocycles")]
        figure: FigureArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FigureArg {
    Winding,
    Radii,
    Horocycles,
    HorocyclesLog,
    Region,
}

impl From<FigureArg> for Figure {
    fn from(f: FigureArg) -> Self {
        match f {
            FigureArg::Winding => Figure::Winding,
            FigureArg::Radii => Figure::Radii,
            FigureArg::Horocycles => Figure::Horocycles,
            FigureArg::HorocyclesLog => Figure::HorocyclesLog,
            FigureArg::Region => Figure::Region,
        }
    }
}

#[derive(Args)]
struct Opts {
    #[arg(long, global = true)]
    epsilon: Option<f64>,
    #[arg(long, global = true)]
    delta: Option<f64>,
    #[arg(long, global = true)]
    depth: Option<usize>,
    #[arg(long, global = true)]
    spacing: Option<f64>,
    #[arg(long, global = true)]
    margin: Option<f64>,
    #[arg(long = "t-max", global = true)]
    t_max: Option<f64>,
    #[arg(long, global = true)]
    grid: Option<usize>,
    #[arg(long = "word-ball", global = true)]
    word_ball: Option<usize>,
    /// One of 53, 128, 256, 512, 1024.
    #[arg(long = "precision-bits", env = "HOROFLOW_PRECISION_BITS", global = true)]
    precision_bits: Option<u32>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

fn resolve(cli: Cli) -> RunConfig {
    let (command, figure, dense) = match cli.command {
        Cmd::VerifyLemmas => (Command::VerifyLemmas, None, false),
        Cmd::KeyProp { dense } => (Command::KeyProp, None, dense),
        Cmd::Sequence => (Command::Sequence, None, false),
        Cmd::Witness => (Command::Witness, None, false),
        Cmd::Render { figure } => (Command::Render, Some(figure.into()), false),
    };
    let mut cfg = RunConfig::defaults(command);
    let o = cli.opts;
    cfg.figure = figure.or(cfg.figure);
    cfg.dense = dense;
    cfg.epsilon = o.epsilon.unwrap_or(cfg.epsilon);
    cfg.delta = o.delta.unwrap_or(cfg.delta);
    cfg.depth = o.depth.unwrap_or(cfg.depth);
    cfg.spacing = o.spacing.or(cfg.spacing);
    cfg.margin = o.margin.unwrap_or(cfg.margin);
    cfg.t_max = o.t_max.unwrap_or(cfg.t_max);
    cfg.grid = o.grid.unwrap_or(cfg.grid);
    cfg.word_ball = o.word_ball.unwrap_or(cfg.word_ball);
    cfg.precision_bits = o.precision_bits.unwrap_or(cfg.precision_bits);
    cfg.seed = o.seed.unwrap_or(cfg.seed);
    cfg.out = o.out;
    cfg
}

fn main() -> ExitCode {
    let cfg = resolve(Cli::parse());
    let output = match run_command(&cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Output::Report(r) = &output {
        for c in r.failures() {
            eprintln!(
                "FAIL [{}] {}: observed {:e} against bound {:e}",
                c.paper_ref, c.name, c.observed, c.bound
            );
        }
    }
    match &cfg.out {
        Some(path) => {
            if let Err(e) = output.write_to(path) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
        None => print!("{}", output.text()),
    }
    if output.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
