use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::duality::ParamsEcho;
use crate::random::SweepBounds;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Theorem1,
    Confluent,
    Prop1,
    Prop3,
    Alpha,
    Examples,
    Beta,
}

impl Mode {
    /// Modes whose cases use a confluent parameter set.
    pub fn is_confluent(self) -> bool {
        matches!(self, Mode::Confluent | Mode::Prop3)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepConfig {
    /// Values of `r` for balanced modes, cycled by case id.
    pub r: Vec<usize>,
    /// `(r, s)` pairs for confluent modes, cycled by case id.
    pub pairs: Vec<[usize; 2]>,
    pub m_bound: i64,
    pub n_bound: i64,
    pub t_bound: i64,
    pub q: Vec<f64>,
    pub complex_parts: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            r: vec![2, 3, 4],
            pairs: vec![[2, 1], [3, 1], [3, 2]],
            m_bound: 3,
            n_bound: 3,
            t_bound: 3,
            q: vec![0.5],
            complex_parts: false,
        }
    }
}

impl SweepConfig {
    pub fn bounds(&self) -> SweepBounds {
        SweepBounds {
            m_bound: self.m_bound,
            n_bound: self.n_bound,
            t_bound: self.t_bound,
            q_values: self.q.clone(),
            complex_parts: self.complex_parts,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub mode: Mode,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_z_samples")]
    pub z_samples_per_case: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    /// Index for `alpha` runs on fixed parameters.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    #[serde(default)]
    pub sweep: SweepConfig,
    /// Fixed parameters; replaces the random sweep with a single case.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamsEcho>,
}

fn default_samples() -> usize {
    50
}

fn default_tol() -> f64 {
    1e-8
}

fn default_z_samples() -> usize {
    5
}

impl RunConfig {
    /// Defaults for `mode` with no file.
    pub fn new(mode: Mode) -> Self {
        RunConfig {
            mode,
            samples: default_samples(),
            seed: 0,
            tol: default_tol(),
            z_samples_per_case: default_z_samples(),
            output: None,
            k: None,
            sweep: SweepConfig::default(),
            params: None,
        }
    }

    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let de = toml::Deserializer::parse(text).map_err(|e| CliError::Config {
            path: String::new(),
            message: e.to_string(),
        })?;
        let config: RunConfig = serde_path_to_error::deserialize(de).map_err(|e| CliError::Config {
            path: e.path().to_string(),
            message: e.inner().to_string(),
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |path: &str, message: String| {
            Err(CliError::Config {
                path: path.to_string(),
                message,
            })
        };
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return bad("tol", format!("must be positive, got {}", self.tol));
        }
        if self.samples == 0 {
            return bad("samples", "must be at least 1".into());
        }
        if self.z_samples_per_case == 0 {
            return bad("z_samples_per_case", "must be at least 1".into());
        }
        let sw = &self.sweep;
        if sw.r.is_empty() || sw.r.iter().any(|&r| r < 2) {
            return bad(
                "sweep.r",
                format!("need a nonempty list of values >= 2, got {:?}", sw.r),
            );
        }
        if sw.pairs.is_empty() || sw.pairs.iter().any(|&[r, s]| s >= r) {
            return bad(
                "sweep.pairs",
                format!("need a nonempty list with s < r, got {:?}", sw.pairs),
            );
        }
        if sw.q.is_empty() || sw.q.iter().any(|&q| !(q > 0.0 && q < 1.0)) {
            return bad("sweep.q", format!("need values in (0, 1), got {:?}", sw.q));
        }
        for (name, v) in [
            ("sweep.m_bound", sw.m_bound),
            ("sweep.n_bound", sw.n_bound),
            ("sweep.t_bound", sw.t_bound),
        ] {
            if v < 0 {
                return bad(name, format!("must be nonnegative, got {v}"));
            }
        }
        Ok(())
    }

    /// `(r, s)` of the parameter set drawn for `case_id`.
    pub fn case_shape(&self, case_id: u64) -> (usize, usize) {
        if self.mode.is_confluent() {
            let [r, s] = self.sweep.pairs[case_id as usize % self.sweep.pairs.len()];
            (r, s)
        } else {
            let r = self.sweep.r[case_id as usize % self.sweep.r.len()];
            (r, r)
        }
    }
}

pub fn parse_config(path: &Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    RunConfig::from_toml(&text)
}
