use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{CommandFactory, Parser, Subcommand};
use gymkit::Rng;
use gymkit_dqn::{train, SolvedCriterion, TrainConfig, TrainOptions};

use crate::config::{BenchConfig, Mode};
use crate::error::{BenchError, Result};
use crate::report::{compare_reports, run_bench_with, BenchReport};
use crate::transcript::{dump_frames, trajectory_transcript};

#[derive(Debug, Parser)]
#[command(
    name = "gymkit",
    version,
    about = "Benchmark and inspect gymkit environments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Time random-action rollouts and estimate their energy use.
    Bench {
        #[arg(long)]
        env: String,
        #[arg(long, value_enum, default_value_t = Mode::Console)]
        mode: Mode,
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        steps: u64,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u32).range(1..))]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = BenchConfig::DEFAULT_POWER_WATTS)]
        power_watts: f64,
        #[arg(long, default_value_t = BenchConfig::DEFAULT_CARBON_INTENSITY)]
        carbon_intensity: f64,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare two JSON reports; A is the baseline.
    Compare { a: PathBuf, b: PathBuf },
    /// Print the registered environment ids.
    ListEnvs,
    /// Write rendered frames as PPM files.
    DumpFrames {
        #[arg(long)]
        env: String,
        #[arg(long)]
        steps: u64,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write a random-action trajectory transcript.
    DumpTrajectory {
        #[arg(long)]
        env: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        steps: u64,
        /// Defaults to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Train a DQN agent and write per-episode CSV.
    Train {
        #[arg(long, default_value = "CartPole-v0")]
        env: String,
        #[arg(long, default_value_t = 150_000)]
        steps: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Defaults to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Stop once the trailing 100-episode mean return reaches this value.
        #[arg(long)]
        stop_at: Option<f64>,
    },
}

fn write_file(path: &PathBuf, contents: &[u8]) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| BenchError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn run(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let io = |source| BenchError::Io {
        path: "<stdout>".into(),
        source,
    };
    match command {
        Command::Bench {
            env,
            mode,
            steps,
            trials,
            seed,
            power_watts,
            carbon_intensity,
            out,
        } => {
            let config = BenchConfig {
                env_id: env,
                mode,
                steps_per_trial: steps,
                trials,
                seed,
                power_watts,
                carbon_intensity_kg_per_kwh: carbon_intensity,
            };
            let report = run_bench_with(&config, |i, secs| {
                let _ = writeln!(stderr, "trial {}/{}: {secs:.6} s", i + 1, config.trials);
            })?;
            writeln!(
                stderr,
                "{} {}: {:.0} steps/s, mean {:.6} s, {:.3e} kWh, {:.3e} kg CO2",
                report.env_id,
                report.mode,
                report.steps_per_second,
                report.mean_seconds,
                report.energy_kwh,
                report.co2_kg
            )
            .map_err(io)?;
            match out {
                Some(path) => report.write(&path)?,
                None => writeln!(stdout, "{}", report.to_json()).map_err(io)?,
            }
        }
        Command::Compare { a, b } => {
            let c = compare_reports(&BenchReport::read(&a)?, &BenchReport::read(&b)?)?;
            writeln!(
                stdout,
                "{} {}\ntime ratio (b/a): {}\ninverse (a/b): {}\nenergy ratio: {}\nco2 ratio: {}",
                c.env_id, c.mode, c.time_ratio, c.inverse_time_ratio, c.energy_ratio, c.co2_ratio
            )
            .map_err(io)?;
        }
        Command::ListEnvs => {
            for id in gymkit::list_envs() {
                writeln!(stdout, "{id}").map_err(io)?;
            }
        }
        Command::DumpFrames {
            env,
            steps,
            out_dir,
            seed,
        } => {
            let n = dump_frames(&env, seed, steps, &out_dir)?;
            writeln!(stderr, "wrote {n} frames to {}", out_dir.display()).map_err(io)?;
        }
        Command::DumpTrajectory {
            env,
            seed,
            steps,
            out,
        } => {
            let t = trajectory_transcript(&env, seed, steps)?;
            match out {
                Some(path) => write_file(&path, t.as_bytes())?,
                None => stdout.write_all(t.as_bytes()).map_err(io)?,
            }
        }
        Command::Train {
            env: env_id,
            steps,
            seed,
            out,
            stop_at,
        } => {
            let mut env = gymkit::make(&env_id)?;
            let options = TrainOptions {
                stop_when: stop_at.map(|threshold| SolvedCriterion {
                    window: 100,
                    threshold,
                }),
                ..TrainOptions::default()
            };
            let history = train(
                &TrainConfig::default(),
                env.as_mut(),
                steps,
                &mut Rng::new(seed),
                &options,
            )?;
            let mut csv = Vec::new();
            history.write_csv(&mut csv).map_err(io)?;
            match out {
                Some(path) => write_file(&path, &csv)?,
                None => stdout.write_all(&csv).map_err(io)?,
            }
            let best = history
                .best_window_mean(100)
                .map_or_else(|| "n/a".to_string(), |m| format!("{m:.1}"));
            writeln!(
                stderr,
                "{env_id}: {} episodes in {} steps, best 100-episode mean {best}",
                history.episodes.len(),
                history.env_steps
            )
            .map_err(io)?;
        }
    }
    Ok(())
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code: 0 on success, 1 on runtime failure, 2 on bad usage.
pub fn cli_main<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let mut text = e.render().to_string();
            if code != 0 && !text.contains("Usage:") {
                text.push('\n');
                text.push_str(&Cli::command().render_usage().to_string());
                text.push('\n');
            }
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match run(cli.command, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}
