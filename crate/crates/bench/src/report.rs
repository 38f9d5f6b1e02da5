use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::{BenchConfig, Mode};
use crate::energy::{estimate_co2_kg, estimate_energy_kwh};
use crate::error::{BenchError, Result};
use crate::trial::run_trial;

/// One benchmark measurement. Energy covers the summed trial time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub env_id: String,
    pub mode: Mode,
    pub steps_per_trial: u64,
    pub trials: u32,
    pub seed: u64,
    pub trial_seconds: Vec<f64>,
    pub mean_seconds: f64,
    /// Sample standard deviation (zero for a single trial).
    pub std_seconds: f64,
    pub steps_per_second: f64,
    pub power_watts: f64,
    pub carbon_intensity_kg_per_kwh: f64,
    pub energy_kwh: f64,
    pub co2_kg: f64,
    pub host: String,
    pub timestamp_iso8601: String,
}

impl BenchReport {
    /// Builds a report from measured trial durations.
    pub fn from_trials(config: &BenchConfig, trial_seconds: Vec<f64>) -> Result<Self> {
        config.validate()?;
        if trial_seconds.len() != config.trials as usize {
            return Err(BenchError::Config(format!(
                "expected {} trial durations, got {}",
                config.trials,
                trial_seconds.len()
            )));
        }
        let n = trial_seconds.len() as f64;
        let total: f64 = trial_seconds.iter().sum();
        let mean_seconds = total / n;
        let std_seconds = if trial_seconds.len() > 1 {
            let ss: f64 = trial_seconds
                .iter()
                .map(|t| (t - mean_seconds).powi(2))
                .sum();
            (ss / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        let energy_kwh = estimate_energy_kwh(config.power_watts, total);
        Ok(Self {
            env_id: config.env_id.clone(),
            mode: config.mode,
            steps_per_trial: config.steps_per_trial,
            trials: config.trials,
            seed: config.seed,
            mean_seconds,
            std_seconds,
            steps_per_second: config.steps_per_trial as f64 / mean_seconds,
            power_watts: config.power_watts,
            carbon_intensity_kg_per_kwh: config.carbon_intensity_kg_per_kwh,
            energy_kwh,
            co2_kg: estimate_co2_kg(energy_kwh, config.carbon_intensity_kg_per_kwh),
            host: host_descriptor(),
            timestamp_iso8601: chrono::Utc::now()
                .to_rfc3339_opts(chrono::SecondsFormat::Millis, true),
            trial_seconds,
        })
    }

    pub fn total_seconds(&self) -> f64 {
        self.trial_seconds.iter().sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report fields are serialisable")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json() + "\n").map_err(|source| BenchError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| BenchError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text).map_err(|source| BenchError::Json {
            path: path.display().to_string(),
            source,
        })
    }
}

/// Host name, OS, architecture and logical CPU count.
pub fn host_descriptor() -> String {
    let name = std::fs::read_to_string("/proc/sys/kernel/hostname")
        .ok()
        .or_else(|| std::env::var("HOSTNAME").ok())
        .or_else(|| std::env::var("COMPUTERNAME").ok())
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .unwrap_or_else(|| "unknown".to_string());
    let cpus = std::thread::available_parallelism().map_or(1, |n| n.get());
    format!(
        "{name} ({}/{}, {cpus} cpus)",
        std::env::consts::OS,
        std::env::consts::ARCH
    )
}

/// Runs `config.trials` trials back to back and aggregates them.
pub fn run_bench(config: &BenchConfig) -> Result<BenchReport> {
    run_bench_with(config, |_, _| {})
}

/// As [`run_bench`], calling `progress(trial_index, seconds)` after each trial.
pub fn run_bench_with(
    config: &BenchConfig,
    mut progress: impl FnMut(u32, f64),
) -> Result<BenchReport> {
    config.validate()?;
    let mut seconds = Vec::with_capacity(config.trials as usize);
    for i in 0..config.trials {
        let outcome = run_trial(config)?;
        progress(i, outcome.seconds);
        seconds.push(outcome.seconds);
    }
    BenchReport::from_trials(config, seconds)
}

/// How much slower `b` is than `a`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub env_id: String,
    pub mode: Mode,
    /// `b.mean_seconds / a.mean_seconds`: the speedup of `a` over `b`.
    pub time_ratio: f64,
    /// `a.mean_seconds / b.mean_seconds`.
    pub inverse_time_ratio: f64,
    /// Per-trial energy of `b` over that of `a`.
    pub energy_ratio: f64,
    pub co2_ratio: f64,
}

pub fn compare_reports(a: &BenchReport, b: &BenchReport) -> Result<Comparison> {
    if a.env_id != b.env_id {
        return Err(BenchError::Mismatch(format!(
            "environment {} vs {}",
            a.env_id, b.env_id
        )));
    }
    if a.mode != b.mode {
        return Err(BenchError::Mismatch(format!(
            "mode {} vs {}",
            a.mode, b.mode
        )));
    }
    // energy covers the whole run, so normalise by trial count
    let per_trial = |r: &BenchReport, v: f64| v / r.trials as f64;
    Ok(Comparison {
        env_id: a.env_id.clone(),
        mode: a.mode,
        time_ratio: b.mean_seconds / a.mean_seconds,
        inverse_time_ratio: a.mean_seconds / b.mean_seconds,
        energy_ratio: per_trial(b, b.energy_kwh) / per_trial(a, a.energy_kwh),
        co2_ratio: per_trial(b, b.co2_kg) / per_trial(a, a.co2_kg),
    })
}
