//! Report-producing driver over the `horoflow` library: suites of checks
//! serialized as JSON, and SVG figures.

pub mod config;
pub mod render;
pub mod report;
pub mod suites;

use std::fs;
use std::path::Path;

use horoflow::walpha::PairSequenceSpec;
use horoflow::{GeometryError, Real1024, Real128, Real256, Real512};

pub use config::{Command, Figure, RunConfig};
pub use report::{Check, JsonReport, SuiteOutput};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// Runs `$body` with `$s` bound to the scalar type for `$bits`.
macro_rules! with_precision {
    ($bits:expr, $s:ident => $body:expr) => {
        match $bits {
            53 => {
                type $s = f64;
                $body
            }
            128 => {
                type $s = Real128;
                $body
            }
            256 => {
                type $s = Real256;
                $body
            }
            512 => {
                type $s = Real512;
                $body
            }
            1024 => {
                type $s = Real1024;
                $body
            }
            other => return Err(CliError::Config(format!("unsupported precision {other}"))),
        }
    };
}

pub enum Output {
    Report(Box<JsonReport>),
    Svg(String),
}

impl Output {
    pub fn passed(&self) -> bool {
        match self {
            Output::Report(r) => r.passed(),
            Output::Svg(_) => true,
        }
    }

    pub fn text(&self) -> String {
        match self {
            Output::Report(r) => r.to_json(),
            Output::Svg(s) => s.clone(),
        }
    }

    pub fn write_to(&self, path: &Path) -> Result<(), CliError> {
        fs::write(path, self.text()).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })
    }
}

fn spec_of(cfg: &RunConfig) -> Result<PairSequenceSpec, CliError> {
    let spacing = cfg.spacing.unwrap_or(2.0);
    Ok(PairSequenceSpec::new(cfg.epsilon, cfg.depth, spacing, cfg.margin)?)
}

pub fn run_suite(cfg: &RunConfig) -> Result<SuiteOutput, CliError> {
    cfg.validate()?;
    let out = match cfg.command {
        Command::VerifyLemmas => {
            with_precision!(cfg.precision_bits, S => suites::lemmas::run::<S>(cfg.seed, cfg.grid)?)
        }
        Command::KeyProp => with_precision!(cfg.precision_bits, S => {
            suites::key_prop::run::<S>(cfg.seed, cfg.t_max, cfg.grid, cfg.dense)?
        }),
        Command::Sequence => {
            let spec = spec_of(cfg)?;
            with_precision!(cfg.precision_bits, S => {
                suites::sequence::run::<S>(&spec, cfg.t_max, cfg.grid, cfg.word_ball)?
            })
        }
        Command::Witness => with_precision!(cfg.precision_bits, S => suites::witness::run::<S>(cfg)?),
        Command::Render => return Err(CliError::Config("render produces a figure, not a report".into())),
    };
    Ok(out)
}

pub fn run_command(cfg: &RunConfig) -> Result<Output, CliError> {
    cfg.validate()?;
    match cfg.command {
        Command::Render => {
            let spec = spec_of(cfg)?;
            let figure = cfg.figure.unwrap_or(Figure::Horocycles);
            let svg = with_precision!(cfg.precision_bits, S => render::render::<S>(figure, &spec)?);
            Ok(Output::Svg(svg))
        }
        _ => Ok(Output::Report(Box::new(JsonReport::new(cfg, run_suite(cfg)?)))),
    }
}
