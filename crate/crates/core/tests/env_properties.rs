use gymkit::envs::{AcrobotState, MountainCarState, PendulumState};
use gymkit::{
    make, Action, BoxSpace, Env, EnvState, Flatten, FrameBuffer, Observation, Registry, Result,
    Rng, Space, StepResult, TimeLimit,
};
use proptest::prelude::*;
use std::f64::consts::PI;

const IDS: [&str; 5] = [
    "CartPole-v0",
    "CartPole-v1",
    "MountainCar-v0",
    "Acrobot-v1",
    "Pendulum-v1",
];

fn run(env: &mut dyn Env, seed: u64, actions: &[u64]) -> Vec<StepResult> {
    let mut rng = Rng::new(seed ^ 0x5eed);
    env.reset(Some(seed));
    let mut out = Vec::new();
    for &a in actions {
        let action = match env.action_space() {
            Space::Discrete(d) => Action::Discrete((a % d.n()) as i64),
            Space::Box(_) => Action::from(rng.uniform(-3.0, 3.0).unwrap()),
        };
        let r = env.step(&action).unwrap();
        let done = r.terminal;
        out.push(r);
        if done {
            env.reset(None);
        }
    }
    out
}

fn check_bounds(state: &EnvState) {
    match state {
        EnvState::MountainCar(MountainCarState { position, velocity }) => {
            assert!((-1.2..=0.6).contains(position));
            assert!((-0.07..=0.07).contains(velocity));
        }
        EnvState::Acrobot(AcrobotState {
            theta1,
            theta2,
            dtheta1,
            dtheta2,
        }) => {
            assert!((-PI..=PI).contains(theta1) && (-PI..=PI).contains(theta2));
            assert!(dtheta1.abs() <= 4.0 * PI && dtheta2.abs() <= 9.0 * PI);
        }
        EnvState::Pendulum(PendulumState { theta_dot, .. }) => assert!(theta_dot.abs() <= 8.0),
        EnvState::CartPole(_) => {}
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn observations_are_members_and_clamps_hold(
        id in prop::sample::select(IDS.to_vec()),
        seed in any::<u64>(),
        actions in prop::collection::vec(any::<u64>(), 1..400),
    ) {
        let mut env = make(id).unwrap();
        let space = env.observation_space().as_box().unwrap().clone();
        let mut rng = Rng::new(seed);
        let first = env.reset(Some(seed));
        prop_assert!(space.contains(&first));
        for a in actions {
            let action = match env.action_space() {
                Space::Discrete(d) => Action::Discrete((a % d.n()) as i64),
                Space::Box(_) => Action::from(rng.uniform(-4.0, 4.0).unwrap()),
            };
            let r = env.step(&action).unwrap();
            prop_assert!(r.observation.is_finite() && r.reward.is_finite());
            prop_assert!(space.contains(&r.observation), "{:?}", r.observation);
            check_bounds(&env.state().unwrap());
            if r.terminal {
                prop_assert!(space.contains(&env.reset(None)));
            }
        }
    }

    #[test]
    fn time_limit_caps_episode_length(max_steps in 1u64..60, seed in any::<u64>()) {
        let mut env = TimeLimit::new(make("Pendulum-v1").unwrap(), max_steps).unwrap();
        env.reset(Some(seed));
        let mut n = 0;
        loop {
            let r = env.step(&Action::from(0.5)).unwrap();
            n += 1;
            prop_assert!(n <= max_steps);
            if r.terminal {
                break;
            }
        }
        prop_assert_eq!(n, max_steps);
    }

    #[test]
    fn flatten_preserves_reward_and_terminal(
        id in prop::sample::select(IDS.to_vec()),
        seed in any::<u64>(),
        actions in prop::collection::vec(any::<u64>(), 1..300),
    ) {
        let mut plain = TimeLimit::new(make(id).unwrap(), 50).unwrap();
        let mut flat = Flatten::new(TimeLimit::new(make(id).unwrap(), 50).unwrap());
        let a = run(&mut plain, seed, &actions);
        let b = run(&mut flat, seed, &actions);
        for (x, y) in a.iter().zip(&b) {
            prop_assert_eq!(x.reward.to_bits(), y.reward.to_bits());
            prop_assert_eq!(x.terminal, y.terminal);
            prop_assert_eq!(&x.info, &y.info);
        }
    }
}

#[test]
fn seeded_trajectories_are_bit_identical() {
    let actions: Vec<u64> = (0..1000).map(|i| (i * 7 + i / 3) as u64).collect();
    for id in IDS {
        for seed in [0, 1, 42] {
            let a = run(make(id).unwrap().as_mut(), seed, &actions);
            let b = run(make(id).unwrap().as_mut(), seed, &actions);
            assert_eq!(a, b, "{id} seed {seed}");
        }
    }
}

#[test]
fn made_instances_are_independent() {
    let mut a = make("CartPole-v1").unwrap();
    let mut b = make("CartPole-v1").unwrap();
    assert_eq!(a.reset(Some(5)), b.reset(Some(5)));
    for _ in 0..5 {
        a.step(&Action::Discrete(1)).unwrap();
    }
    assert_eq!(b.episode_steps(), 0);
    let ra = run(a.as_mut(), 5, &[0, 1, 0, 1]);
    let rb = run(b.as_mut(), 5, &[0, 1, 0, 1]);
    assert_eq!(ra, rb);
}

#[test]
fn render_is_pure() {
    for id in IDS {
        let mut env = make(id).unwrap();
        env.reset(Some(3));
        let a = env.render().unwrap();
        let b = env.render().unwrap();
        assert_eq!(a, b, "{id}");
        let mut reused = FrameBuffer::new(600, 400);
        env.render_into(&mut reused).unwrap();
        assert_eq!(a, reused);
        let state = env.state().unwrap();
        assert_eq!(gymkit::render::render_scene(id, &state).unwrap(), a);
    }
}

/// An environment with matrix observations, for the flatten wrapper.
struct Grid {
    obs_space: Space,
    act_space: Space,
    t: u64,
}

impl Grid {
    fn new() -> Self {
        Self {
            obs_space: Space::Box(BoxSpace::new(vec![-9.0; 6], vec![99.0; 6], vec![2, 3]).unwrap()),
            act_space: Space::discrete(2).unwrap(),
            t: 0,
        }
    }

    fn obs(&self) -> Observation {
        let base = self.t as f64;
        Observation::new((0..6).map(|i| base + i as f64).collect(), &[2, 3]).unwrap()
    }
}

impl Env for Grid {
    fn action_space(&self) -> &Space {
        &self.act_space
    }
    fn observation_space(&self) -> &Space {
        &self.obs_space
    }
    fn reset(&mut self, _seed: Option<u64>) -> Observation {
        self.t = 0;
        self.obs()
    }
    fn step(&mut self, _action: &Action) -> Result<StepResult> {
        self.t += 1;
        Ok(StepResult {
            observation: self.obs(),
            reward: self.t as f64,
            terminal: self.t == 3,
            info: Default::default(),
        })
    }
    fn state(&self) -> Option<EnvState> {
        None
    }
    fn episode_steps(&self) -> u64 {
        self.t
    }
    fn is_done(&self) -> bool {
        self.t >= 3
    }
}

#[test]
fn flatten_matrix_observation() {
    let mut env = Flatten::new(Grid::new());
    assert_eq!(env.observation_space().as_box().unwrap().shape(), &[6]);
    let obs = env.reset(None);
    assert_eq!(obs.shape(), &[6]);
    assert_eq!(obs.data(), &[0.0, 1.0, 2.0, 3.0, 4.0, 5.0]);
    let r = env.step(&Action::Discrete(0)).unwrap();
    assert_eq!(r.observation.data(), &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
    assert_eq!(r.reward, 1.0);
    assert!(env.render().is_err());
}

#[test]
fn custom_env_registers_and_makes() {
    let mut reg = Registry::new();
    reg.register(gymkit::EnvSpec::new("Grid-v0", || Box::new(Grid::new())).max_episode_steps(2))
        .unwrap();
    let mut env = reg.make("Grid-v0").unwrap();
    env.reset(None);
    assert!(!env.step(&Action::Discrete(0)).unwrap().terminal);
    assert!(env.step(&Action::Discrete(0)).unwrap().truncated());
}
