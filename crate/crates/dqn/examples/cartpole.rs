//! Trains on CartPole-v0 for each seed given on the command line.
//!
//! cargo run --release -p gymkit-dqn --example cartpole -- 0 1 2

use std::time::Instant;

use gymkit::Rng;
use gymkit_dqn::{train, SolvedCriterion, TrainConfig, TrainOptions};

fn main() {
    let seeds: Vec<u64> = std::env::args()
        .skip(1)
        .map(|s| s.parse().expect("seeds are integers"))
        .collect();
    let seeds = if seeds.is_empty() { vec![0] } else { seeds };
    let options = TrainOptions {
        stop_when: Some(SolvedCriterion::CARTPOLE_V0),
        ..TrainOptions::default()
    };
    for seed in seeds {
        let mut env = gymkit::make("CartPole-v0").expect("registered");
        let mut rng = Rng::new(seed);
        let start = Instant::now();
        let h = train(
            &TrainConfig::default(),
            env.as_mut(),
            150_000,
            &mut rng,
            &options,
        )
        .expect("training runs");
        println!(
            "seed {seed}: solved_at={:?} episodes={} best100={:.1} secs={:.1}",
            h.solved_at,
            h.episodes.len(),
            h.best_window_mean(100).unwrap_or(f64::NAN),
            start.elapsed().as_secs_f64()
        );
    }
}
