use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{BenchError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Step only.
    #[default]
    Console,
    /// Step and rasterise a frame after every step.
    Render,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Console => "console",
            Mode::Render => "render",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub env_id: String,
    pub mode: Mode,
    pub steps_per_trial: u64,
    pub trials: u32,
    pub seed: u64,
    /// Average system draw while the benchmark runs.
    pub power_watts: f64,
    pub carbon_intensity_kg_per_kwh: f64,
}

impl BenchConfig {
    pub const DEFAULT_POWER_WATTS: f64 = 100.0;
    pub const DEFAULT_CARBON_INTENSITY: f64 = 0.4;

    pub fn new(env_id: impl Into<String>) -> Self {
        Self {
            env_id: env_id.into(),
            mode: Mode::Console,
            steps_per_trial: 100_000,
            trials: 100,
            seed: 0,
            power_watts: Self::DEFAULT_POWER_WATTS,
            carbon_intensity_kg_per_kwh: Self::DEFAULT_CARBON_INTENSITY,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps_per_trial == 0 {
            return Err(BenchError::Config(
                "steps per trial must be at least 1".into(),
            ));
        }
        if self.trials == 0 {
            return Err(BenchError::Config("trials must be at least 1".into()));
        }
        if !(self.power_watts > 0.0 && self.power_watts.is_finite()) {
            return Err(BenchError::Config("power draw must be positive".into()));
        }
        if !(self.carbon_intensity_kg_per_kwh >= 0.0
            && self.carbon_intensity_kg_per_kwh.is_finite())
        {
            return Err(BenchError::Config(
                "carbon intensity must be non-negative".into(),
            ));
        }
        Ok(())
    }
}
