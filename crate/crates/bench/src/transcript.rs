//! Plain-text trajectory transcripts.
//!
//! Each line is `step,action,obs...,reward,terminal`. Floats use the shortest
//! decimal that parses back to the same bits. A reset is written as a line
//! whose action field is `reset`, with reward `0.0` and terminal `false`;
//! `step` counts environment steps taken so far.

use std::fmt::Write as _;
use std::path::Path;

use gymkit::{Action, FrameBuffer};

use crate::error::{BenchError, Result};
use crate::trial::ActionSampler;

fn push_f64(out: &mut String, v: f64) {
    write!(out, "{v:?}").expect("writing to a String cannot fail");
}

fn push_line(out: &mut String, step: u64, action: &str, obs: &[f64], reward: f64, terminal: bool) {
    write!(out, "{step},{action}").expect("writing to a String cannot fail");
    for &x in obs {
        out.push(',');
        push_f64(out, x);
    }
    out.push(',');
    push_f64(out, reward);
    out.push_str(if terminal { ",true\n" } else { ",false\n" });
}

/// Action field: an integer, or `;`-joined floats for continuous actions.
pub fn format_action(a: &Action) -> String {
    match a {
        Action::Discrete(i) => i.to_string(),
        Action::Continuous(v) => {
            let mut s = String::new();
            for (i, &x) in v.iter().enumerate() {
                if i > 0 {
                    s.push(';');
                }
                push_f64(&mut s, x);
            }
            s
        }
    }
}

/// Transcript of `steps` random-action steps; actions are drawn from a
/// stream seeded with `seed` and the environment is reset with `seed`.
pub fn trajectory_transcript(env_id: &str, seed: u64, steps: u64) -> Result<String> {
    let mut env = gymkit::make(env_id)?;
    let mut actions = ActionSampler::new(env.action_space(), seed);
    let mut out = String::new();
    let obs = env.reset(Some(seed));
    push_line(&mut out, 0, "reset", obs.data(), 0.0, false);
    for step in 1..=steps {
        let action = actions.sample()?;
        let r = env.step(&action)?;
        push_line(
            &mut out,
            step,
            &format_action(&action),
            r.observation.data(),
            r.reward,
            r.terminal,
        );
        if r.terminal && step < steps {
            let obs = env.reset(None);
            push_line(&mut out, step, "reset", obs.data(), 0.0, false);
        }
    }
    Ok(out)
}

/// Renders the initial frame and one frame after each of `steps` random
/// steps, writing `frame_00000.ppm`, `frame_00001.ppm`, ... into `dir`.
/// Returns the number of files written.
pub fn dump_frames(env_id: &str, seed: u64, steps: u64, dir: &Path) -> Result<u64> {
    let io_err = |path: &Path| {
        let path = path.display().to_string();
        move |source| BenchError::Io { path, source }
    };
    std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    let mut env = gymkit::make(env_id)?;
    let mut actions = ActionSampler::new(env.action_space(), seed);
    let (w, h) = env.render_size();
    let mut fb = FrameBuffer::new(w, h);
    env.reset(Some(seed));
    let write = |fb: &FrameBuffer, i: u64| {
        let path = dir.join(format!("frame_{i:05}.ppm"));
        fb.write_ppm(&path).map_err(io_err(&path))
    };
    env.render_into(&mut fb)?;
    write(&fb, 0)?;
    for i in 1..=steps {
        let action = actions.sample()?;
        if env.step(&action)?.terminal {
            env.reset(None);
        }
        env.render_into(&mut fb)?;
        write(&fb, i)?;
    }
    Ok(steps + 1)
}

/// One parsed transcript line.
#[derive(Debug, Clone, PartialEq)]
pub struct TranscriptLine {
    pub step: u64,
    pub action: String,
    pub observation: Vec<f64>,
    pub reward: f64,
    pub terminal: bool,
}

/// Parses a line produced by [`trajectory_transcript`].
pub fn parse_line(line: &str) -> Option<TranscriptLine> {
    let fields: Vec<&str> = line.split(',').collect();
    if fields.len() < 4 {
        return None;
    }
    let n = fields.len();
    Some(TranscriptLine {
        step: fields[0].parse().ok()?,
        action: fields[1].to_string(),
        observation: fields[2..n - 2]
            .iter()
            .map(|f| f.parse().ok())
            .collect::<Option<_>>()?,
        reward: fields[n - 2].parse().ok()?,
        terminal: fields[n - 1].parse().ok()?,
    })
}
