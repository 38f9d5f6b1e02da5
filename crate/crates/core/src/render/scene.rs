//! Scene painters. Layouts follow the familiar classic-control pictures:
//! a cart with a hinged pole on a track, a car on a sine hill, a two-link
//! arm hanging from a pivot and a single rod with a bob.

use super::{Color, FrameBuffer};
use crate::envs::acrobot as acrobot_params;
use crate::envs::cartpole as cartpole_params;
use crate::envs::mountain_car as mountain_car_params;
use crate::envs::pendulum as pendulum_params;
use crate::envs::{
    AcrobotState, CartPoleState, Dynamics, EnvState, MountainCarState, PendulumState,
};
use crate::error::{Error, Result};
use crate::registry::family_of;

const BACKGROUND: Color = Color::WHITE;
const CART: Color = Color::BLACK;
const POLE: Color = Color::rgb(202, 152, 101);
const AXLE: Color = Color::rgb(129, 132, 203);
const TRACK: Color = Color::BLACK;
const CAR: Color = Color::rgb(50, 50, 200);
const FLAG: Color = Color::rgb(204, 204, 0);
const LINK: Color = Color::rgb(0, 204, 204);
const JOINT: Color = Color::rgb(204, 204, 0);
const ROD: Color = Color::rgb(204, 77, 77);

const CART_WIDTH: f64 = 100.0;
const CART_HEIGHT: f64 = 60.0;
const POLE_WIDTH: f64 = 10.0;
/// Pole pixels per metre of half-length.
const POLE_PX_PER_HALF_LENGTH: f64 = 200.0;

/// Maps world coordinates (y up) onto the pixel grid (y down).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    pub world_x_min: f64,
    pub world_x_max: f64,
    pub width: usize,
    pub height: usize,
    /// Pixel row of world `y = 0`.
    pub origin_row: f64,
}

impl Viewport {
    pub fn new(world_x_min: f64, world_x_max: f64, width: usize, height: usize) -> Result<Self> {
        if world_x_min.partial_cmp(&world_x_max) != Some(std::cmp::Ordering::Less) {
            return Err(Error::InvalidArgument(format!(
                "viewport needs x_min < x_max, got [{world_x_min}, {world_x_max}]"
            )));
        }
        Ok(Self {
            world_x_min,
            world_x_max,
            width,
            height,
            origin_row: height as f64,
        })
    }

    /// Viewport with world `(0, 0)` at the buffer centre showing `[-bound, bound]`
    /// along the shorter side.
    fn centered(bound: f64, width: usize, height: usize) -> Self {
        let scale = width.min(height) as f64 / (2.0 * bound);
        let half_w = width as f64 / (2.0 * scale);
        Self {
            world_x_min: -half_w,
            world_x_max: half_w,
            width,
            height,
            origin_row: height as f64 / 2.0,
        }
    }

    pub fn scale(&self) -> f64 {
        self.width as f64 / (self.world_x_max - self.world_x_min)
    }

    pub fn to_screen(&self, x: f64, y: f64) -> (f64, f64) {
        let s = self.scale();
        ((x - self.world_x_min) * s, self.origin_row - y * s)
    }
}

/// Renders `state` for the environment `env_id` into a fresh default-size buffer.
pub fn render_scene(env_id: &str, state: &EnvState) -> Result<FrameBuffer> {
    let family = family_of(env_id);
    if !matches!(
        family,
        Some(
            CartPoleState::NAME | MountainCarState::NAME | AcrobotState::NAME | PendulumState::NAME
        )
    ) {
        return Err(Error::UnknownEnv {
            id: env_id.to_string(),
            suggestions: Vec::new(),
        });
    }
    if family != Some(state.family()) {
        return Err(Error::InvalidArgument(format!(
            "{env_id} cannot render a {} state",
            state.family()
        )));
    }
    let (w, h) = super::DEFAULT_SIZE;
    let mut fb = FrameBuffer::new(w, h);
    draw_scene(state, &mut fb);
    Ok(fb)
}

/// Paints the scene for `state` over the whole of `fb`.
pub fn draw_scene(state: &EnvState, fb: &mut FrameBuffer) {
    fb.clear(BACKGROUND);
    match state {
        EnvState::CartPole(s) => cartpole(s, fb),
        EnvState::MountainCar(s) => mountain_car(s, fb),
        EnvState::Acrobot(s) => acrobot(s, fb),
        EnvState::Pendulum(s) => pendulum(s, fb),
    }
}

fn round(v: f64) -> i32 {
    v.round().clamp(i32::MIN as f64, i32::MAX as f64) as i32
}

fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> [(f64, f64); 4] {
    [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
}

fn fill(fb: &mut FrameBuffer, poly: &[(f64, f64)], c: Color) {
    // scene geometry is always finite with at least three vertices
    let _ = fb.fill_polygon(poly, c);
}

/// Rectangle of `width` from `base` along the direction `(dx, dy)` for `length` pixels.
fn rod(base: (f64, f64), dir: (f64, f64), length: f64, width: f64) -> [(f64, f64); 4] {
    let (nx, ny) = (-dir.1 * width / 2.0, dir.0 * width / 2.0);
    let tip = (base.0 + dir.0 * length, base.1 + dir.1 * length);
    [
        (base.0 + nx, base.1 + ny),
        (tip.0 + nx, tip.1 + ny),
        (tip.0 - nx, tip.1 - ny),
        (base.0 - nx, base.1 - ny),
    ]
}

fn cartpole(s: &CartPoleState, fb: &mut FrameBuffer) {
    let (w, h) = (fb.width(), fb.height());
    let view = Viewport {
        world_x_min: -2.0 * cartpole_params::X_THRESHOLD,
        world_x_max: 2.0 * cartpole_params::X_THRESHOLD,
        width: w,
        height: h,
        origin_row: h as f64 * 0.75,
    };
    let (cart_x, track_y) = view.to_screen(s.x, 0.0);
    fb.draw_line(0, round(track_y), w as i32 - 1, round(track_y), 1, TRACK);
    fill(
        fb,
        &rect(
            cart_x - CART_WIDTH / 2.0,
            track_y - CART_HEIGHT / 2.0,
            cart_x + CART_WIDTH / 2.0,
            track_y + CART_HEIGHT / 2.0,
        ),
        CART,
    );
    let axle = (cart_x, track_y - CART_HEIGHT / 4.0);
    let (sin, cos) = s.theta.sin_cos();
    let length = POLE_PX_PER_HALF_LENGTH * cartpole_params::POLE_HALF_LENGTH;
    fill(fb, &rod(axle, (sin, -cos), length, POLE_WIDTH), POLE);
    fb.fill_circle(
        round(axle.0),
        round(axle.1),
        (POLE_WIDTH / 2.0) as u32,
        AXLE,
    );
}

fn hill_height(x: f64) -> f64 {
    (3.0 * x).sin() * 0.45 + 0.55
}

fn mountain_car(s: &MountainCarState, fb: &mut FrameBuffer) {
    use mountain_car_params::{GOAL_POSITION, MAX_POSITION, MIN_POSITION};
    let view =
        Viewport::new(MIN_POSITION, MAX_POSITION, fb.width(), fb.height()).expect("min < max");
    const SEGMENTS: usize = 100;
    let mut prev = view.to_screen(MIN_POSITION, hill_height(MIN_POSITION));
    for i in 1..=SEGMENTS {
        let x = MIN_POSITION + (MAX_POSITION - MIN_POSITION) * i as f64 / SEGMENTS as f64;
        let next = view.to_screen(x, hill_height(x));
        fb.draw_line(
            round(prev.0),
            round(prev.1),
            round(next.0),
            round(next.1),
            1,
            TRACK,
        );
        prev = next;
    }

    let (flag_x, flag_y) = view.to_screen(GOAL_POSITION, hill_height(GOAL_POSITION));
    let (fx, fy) = (round(flag_x), round(flag_y));
    fb.draw_line(fx, fy, fx, fy - 50, 1, TRACK);
    fill(
        fb,
        &[
            (flag_x + 0.5, flag_y - 50.0),
            (flag_x + 0.5, flag_y - 40.0),
            (flag_x + 25.5, flag_y - 45.0),
        ],
        FLAG,
    );

    let radius = 10;
    let (car_x, car_y) = view.to_screen(s.position, hill_height(s.position));
    fb.fill_circle(round(car_x), round(car_y) - radius, radius as u32, CAR);
}

fn acrobot(s: &AcrobotState, fb: &mut FrameBuffer) {
    use acrobot_params::{LINK_LENGTH_1, LINK_LENGTH_2};
    let bound = LINK_LENGTH_1 + LINK_LENGTH_2 + 0.2;
    let view = Viewport::centered(bound, fb.width(), fb.height());
    let p0 = (0.0, 0.0);
    let p1 = (
        LINK_LENGTH_1 * s.theta1.sin(),
        -LINK_LENGTH_1 * s.theta1.cos(),
    );
    let a12 = s.theta1 + s.theta2;
    let p2 = (
        p1.0 + LINK_LENGTH_2 * a12.sin(),
        p1.1 - LINK_LENGTH_2 * a12.cos(),
    );

    let (left, goal) = view.to_screen(view.world_x_min, 1.0);
    let (right, _) = view.to_screen(view.world_x_max, 1.0);
    fb.draw_line(
        round(left),
        round(goal),
        round(right) - 1,
        round(goal),
        1,
        TRACK,
    );

    let width = 0.2 * view.scale();
    for (a, b) in [(p0, p1), (p1, p2)] {
        let a = view.to_screen(a.0, a.1);
        let b = view.to_screen(b.0, b.1);
        fb.thick_segment(a, b, width, LINK);
    }
    let joint_r = (0.1 * view.scale()) as u32;
    for p in [p0, p1] {
        let (x, y) = view.to_screen(p.0, p.1);
        fb.fill_circle(round(x), round(y), joint_r, JOINT);
    }
}

fn pendulum(s: &PendulumState, fb: &mut FrameBuffer) {
    let bound = 2.2;
    let view = Viewport::centered(bound, fb.width(), fb.height());
    let scale = view.scale();
    let pivot = view.to_screen(0.0, 0.0);
    let (sin, cos) = s.theta.sin_cos();
    // theta = 0 points up; screen y grows downward
    let dir = (-sin, -cos);
    let length = pendulum_params::LENGTH * scale;
    fill(fb, &rod(pivot, dir, length, 0.2 * scale), ROD);
    let bob = (pivot.0 + dir.0 * length, pivot.1 + dir.1 * length);
    fb.fill_circle(round(bob.0), round(bob.1), (0.1 * scale) as u32, ROD);
    fb.fill_circle(
        round(pivot.0),
        round(pivot.1),
        (0.05 * scale) as u32,
        Color::BLACK,
    );
}
