//! CPU-resident RGB framebuffers and the scene painters for each environment.
//!
//! Pixels are row-major RGB8 with the origin at the top-left and `y`
//! increasing downward. Every draw call clips against the buffer, so any
//! coordinates (negative, huge, off-screen) are accepted.

mod framebuffer;
mod scene;

pub use framebuffer::{Color, FrameBuffer};
pub use scene::{draw_scene, render_scene, Viewport};

/// Default render size, `(width, height)`.
pub const DEFAULT_SIZE: (usize, usize) = (600, 400);
