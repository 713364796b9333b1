use std::path::PathBuf;

use serde::Serialize;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    VerifyLemmas,
    KeyProp,
    Sequence,
    Witness,
    Render,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::VerifyLemmas => "verify-lemmas",
            Command::KeyProp => "key-prop",
            Command::Sequence => "sequence",
            Command::Witness => "witness",
            Command::Render => "render",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Figure {
    /// A vector, its winding around a pair, and the flowed vectors.
    Winding,
    /// The two half-circles of the normalized winding picture.
    Radii,
    /// The tangent horocycles of a pair sequence.
    Horocycles,
    /// The same horocycles on logarithmic axes.
    HorocyclesLog,
    /// The region containing `β_n⁻¹ i`.
    Region,
}

impl Figure {
    pub fn name(self) -> &'static str {
        match self {
            Figure::Winding => "winding",
            Figure::Radii => "radii",
            Figure::Horocycles => "horocycles",
            Figure::HorocyclesLog => "horocycles-log",
            Figure::Region => "region",
        }
    }
}

/// Fully resolved run parameters. Fields a command does not use are still
/// echoed in its report.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunConfig {
    pub command: Command,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub figure: Option<Figure>,
    pub dense: bool,
    pub epsilon: f64,
    pub delta: f64,
    pub depth: usize,
    /// `None` lets the witness pick the spacing from `δ`.
    pub spacing: Option<f64>,
    pub margin: f64,
    pub t_max: f64,
    pub grid: usize,
    pub word_ball: usize,
    pub precision_bits: u32,
    pub seed: u64,
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

pub const PRECISIONS: [u32; 5] = [53, 128, 256, 512, 1024];

impl RunConfig {
    pub fn defaults(command: Command) -> Self {
        let mut cfg = RunConfig {
            command,
            figure: None,
            dense: false,
            epsilon: 0.1,
            delta: 0.05,
            depth: 4,
            spacing: Some(2.0),
            margin: 0.9,
            t_max: 20.0,
            grid: 200,
            word_ball: 6,
            precision_bits: 256,
            seed: 7,
            out: None,
        };
        match command {
            Command::VerifyLemmas => {
                cfg.precision_bits = 53;
                cfg.grid = 100;
            }
            Command::KeyProp => cfg.precision_bits = 53,
            Command::Sequence => {
                cfg.t_max = 25.0;
                cfg.grid = 500;
            }
            Command::Witness => {
                cfg.spacing = None;
                cfg.t_max = 25.0;
                cfg.grid = 500;
            }
            Command::Render => cfg.figure = Some(Figure::Horocycles),
        }
        cfg
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let positive = [
            ("epsilon", self.epsilon),
            ("delta", self.delta),
            ("margin", self.margin),
            ("t-max", self.t_max),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::Config(format!("--{name} must be positive, got {v}")));
            }
        }
        if let Some(s) = self.spacing {
            if !(s > 0.0 && s.is_finite()) {
                return Err(CliError::Config(format!("--spacing must be positive, got {s}")));
            }
        }
        if self.margin >= 1.0 {
            return Err(CliError::Config("--margin must lie in (0, 1)".into()));
        }
        if self.grid < 2 {
            return Err(CliError::Config("--grid must be at least 2".into()));
        }
        if self.word_ball == 0 {
            return Err(CliError::Config("--word-ball must be positive".into()));
        }
        if !PRECISIONS.contains(&self.precision_bits) {
            return Err(CliError::Config(format!(
                "--precision-bits must be one of {PRECISIONS:?}, got {}",
                self.precision_bits
            )));
        }
        Ok(())
    }
}
