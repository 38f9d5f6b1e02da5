//! Construction of environments by string id, e.g. `make("CartPole-v1")`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::env::{Action, Env, Observation, StepResult};
use crate::envs::{AcrobotEnv, CartPoleEnv, EnvState, MountainCarEnv, PendulumEnv};
use crate::error::{Error, Result};
use crate::render::{FrameBuffer, DEFAULT_SIZE};
use crate::spaces::Space;
use crate::wrappers::TimeLimit;

pub type EnvFactory = Arc<dyn Fn() -> Box<dyn Env> + Send + Sync>;

#[derive(Clone)]
pub struct EnvSpec {
    pub id: String,
    pub factory: EnvFactory,
    pub max_episode_steps: Option<u64>,
    pub render_size: (usize, usize),
}

impl EnvSpec {
    pub fn new<F>(id: impl Into<String>, factory: F) -> Self
    where
        F: Fn() -> Box<dyn Env> + Send + Sync + 'static,
    {
        Self {
            id: id.into(),
            factory: Arc::new(factory),
            max_episode_steps: None,
            render_size: DEFAULT_SIZE,
        }
    }

    pub fn max_episode_steps(mut self, steps: u64) -> Self {
        self.max_episode_steps = Some(steps);
        self
    }

    pub fn render_size(mut self, width: usize, height: usize) -> Self {
        self.render_size = (width, height);
        self
    }
}

impl fmt::Debug for EnvSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EnvSpec")
            .field("id", &self.id)
            .field("max_episode_steps", &self.max_episode_steps)
            .field("render_size", &self.render_size)
            .finish_non_exhaustive()
    }
}

/// Splits `Name-vN` and returns `Name`, or `None` when the id is malformed.
pub fn family_of(id: &str) -> Option<&str> {
    let (name, version) = id.rsplit_once("-v")?;
    let name_ok = !name.is_empty() && name.bytes().all(|b| b.is_ascii_alphanumeric());
    let version_ok = !version.is_empty() && version.bytes().all(|b| b.is_ascii_digit());
    (name_ok && version_ok).then_some(name)
}

#[derive(Debug, Clone, Default)]
pub struct Registry {
    specs: BTreeMap<String, EnvSpec>,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    /// The built-in classic-control table.
    pub fn with_defaults() -> Self {
        let mut reg = Self::new();
        type Builtin = (&'static str, u64, fn() -> Box<dyn Env>);
        let table: [Builtin; 5] = [
            ("CartPole-v0", 200, || Box::new(CartPoleEnv::new())),
            ("CartPole-v1", 500, || Box::new(CartPoleEnv::new())),
            ("MountainCar-v0", 200, || Box::new(MountainCarEnv::new())),
            ("Acrobot-v1", 500, || Box::new(AcrobotEnv::new())),
            ("Pendulum-v1", 200, || Box::new(PendulumEnv::new())),
        ];
        for (id, limit, factory) in table {
            reg.register(EnvSpec::new(id, factory).max_episode_steps(limit))
                .expect("built-in ids are valid and unique");
        }
        reg
    }

    pub fn register(&mut self, spec: EnvSpec) -> Result<()> {
        if family_of(&spec.id).is_none() {
            return Err(Error::MalformedId(spec.id));
        }
        if spec.max_episode_steps == Some(0) {
            return Err(Error::InvalidArgument(format!(
                "{}: max_episode_steps must be positive",
                spec.id
            )));
        }
        if self.specs.contains_key(&spec.id) {
            return Err(Error::DuplicateEnv(spec.id));
        }
        self.specs.insert(spec.id.clone(), spec);
        Ok(())
    }

    pub fn spec(&self, id: &str) -> Option<&EnvSpec> {
        self.specs.get(id)
    }

    /// A fresh, independent instance, time-limited when the spec says so.
    pub fn make(&self, id: &str) -> Result<Box<dyn Env>> {
        let spec = self.specs.get(id).ok_or_else(|| Error::UnknownEnv {
            id: id.to_string(),
            suggestions: self.near_misses(id),
        })?;
        let mut env = (spec.factory)();
        if spec.render_size != env.render_size() {
            env = Box::new(Resized {
                inner: env,
                size: spec.render_size,
            });
        }
        match spec.max_episode_steps {
            Some(limit) => Ok(Box::new(TimeLimit::new(env, limit)?)),
            None => Ok(env),
        }
    }

    /// Registered ids in sorted order.
    pub fn list(&self) -> Vec<String> {
        self.specs.keys().cloned().collect()
    }

    fn near_misses(&self, id: &str) -> Vec<String> {
        let wanted = id.to_ascii_lowercase();
        let wanted_family = family_of(id).map(str::to_ascii_lowercase);
        self.specs
            .keys()
            .filter(|known| {
                let k = known.to_ascii_lowercase();
                let same_family = wanted_family.is_some()
                    && family_of(known).map(str::to_ascii_lowercase) == wanted_family;
                same_family || strsim::levenshtein(&k, &wanted) <= 3
            })
            .cloned()
            .collect()
    }
}

/// The process-wide registry holding the built-in table.
pub fn default_registry() -> &'static Registry {
    static DEFAULT: OnceLock<Registry> = OnceLock::new();
    DEFAULT.get_or_init(Registry::with_defaults)
}

/// `make` against the default registry.
pub fn make(id: &str) -> Result<Box<dyn Env>> {
    default_registry().make(id)
}

pub fn list_envs() -> Vec<String> {
    default_registry().list()
}

/// Overrides the render size of a registered environment.
struct Resized {
    inner: Box<dyn Env>,
    size: (usize, usize),
}

impl Env for Resized {
    fn action_space(&self) -> &Space {
        self.inner.action_space()
    }
    fn observation_space(&self) -> &Space {
        self.inner.observation_space()
    }
    fn reset(&mut self, seed: Option<u64>) -> Observation {
        self.inner.reset(seed)
    }
    fn step(&mut self, action: &Action) -> Result<StepResult> {
        self.inner.step(action)
    }
    fn state(&self) -> Option<EnvState> {
        self.inner.state()
    }
    fn episode_steps(&self) -> u64 {
        self.inner.episode_steps()
    }
    fn is_done(&self) -> bool {
        self.inner.is_done()
    }
    fn render_size(&self) -> (usize, usize) {
        self.size
    }
    fn render_into(&self, fb: &mut FrameBuffer) -> Result<()> {
        self.inner.render_into(fb)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envs::PendulumEnv;

    #[test]
    fn id_grammar() {
        assert_eq!(family_of("CartPole-v1"), Some("CartPole"));
        assert_eq!(family_of("Foo2-v10"), Some("Foo2"));
        for bad in ["foo_bar", "Foo-v", "-v1", "Foo-vx", "Foo-bar-v1", "Foo v1"] {
            assert_eq!(family_of(bad), None, "{bad}");
        }
    }

    #[test]
    fn register_then_make() {
        let mut reg = Registry::new();
        assert!(reg.list().is_empty());
        reg.register(EnvSpec::new("Foo-v0", || Box::new(PendulumEnv::new())))
            .unwrap();
        assert!(reg.make("Foo-v0").is_ok());
        assert_eq!(reg.list(), vec!["Foo-v0".to_string()]);
    }

    #[test]
    fn duplicate_and_malformed_ids() {
        let mut reg = Registry::new();
        let spec = EnvSpec::new("Foo-v0", || Box::new(PendulumEnv::new()));
        reg.register(spec.clone()).unwrap();
        assert_eq!(
            reg.register(spec),
            Err(Error::DuplicateEnv("Foo-v0".into()))
        );
        assert_eq!(
            reg.register(EnvSpec::new("foo_bar", || Box::new(PendulumEnv::new()))),
            Err(Error::MalformedId("foo_bar".into()))
        );
    }

    #[test]
    fn default_table() {
        let reg = Registry::with_defaults();
        assert_eq!(
            reg.list(),
            [
                "Acrobot-v1",
                "CartPole-v0",
                "CartPole-v1",
                "MountainCar-v0",
                "Pendulum-v1"
            ]
        );
        assert_eq!(
            reg.spec("CartPole-v1").unwrap().max_episode_steps,
            Some(500)
        );
        assert_eq!(
            reg.spec("CartPole-v0").unwrap().max_episode_steps,
            Some(200)
        );
        let env = reg.make("CartPole-v1").unwrap();
        assert_eq!(env.action_space().to_string(), "Discrete(2)");
        assert_eq!(env.observation_space().to_string(), "Box(4,)");
    }

    #[test]
    fn cartpole_v1_truncates_at_500() {
        let mut env = make("CartPole-v1").unwrap();
        env.reset(Some(0));
        // alternate pushes keep the pole up for the whole episode
        let mut steps = 0;
        loop {
            let theta_dot = env.state().map(|s| match s {
                EnvState::CartPole(c) => c.theta + 0.5 * c.theta_dot,
                _ => unreachable!(),
            });
            let a = if theta_dot.unwrap() > 0.0 { 1 } else { 0 };
            let r = env.step(&Action::Discrete(a)).unwrap();
            steps += 1;
            if r.terminal {
                assert!(r.truncated());
                break;
            }
        }
        assert_eq!(steps, 500);
    }

    #[test]
    fn unknown_id_lists_near_misses() {
        let Err(err) = make("CartPole-v7") else {
            panic!("CartPole-v7 should not exist");
        };
        match &err {
            Error::UnknownEnv { id, suggestions } => {
                assert_eq!(id, "CartPole-v7");
                assert!(suggestions.contains(&"CartPole-v1".to_string()));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(err.to_string().contains("CartPole-v7"));
        assert!(matches!(
            make("NoSuchEnv-v0"),
            Err(Error::UnknownEnv { .. })
        ));
    }

    #[test]
    fn custom_render_size() {
        let mut reg = Registry::new();
        reg.register(EnvSpec::new("Small-v0", || Box::new(PendulumEnv::new())).render_size(64, 48))
            .unwrap();
        let mut env = reg.make("Small-v0").unwrap();
        env.reset(Some(0));
        let fb = env.render().unwrap();
        assert_eq!((fb.width(), fb.height()), (64, 48));
    }
}
