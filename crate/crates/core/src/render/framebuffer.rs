use std::io::{self, Write};
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Color {
    pub r: u8,
    pub g: u8,
    pub b: u8,
}

impl Color {
    pub const WHITE: Color = Color::rgb(255, 255, 255);
    pub const BLACK: Color = Color::rgb(0, 0, 0);

    pub const fn rgb(r: u8, g: u8, b: u8) -> Self {
        Self { r, g, b }
    }

    fn bytes(self) -> [u8; 3] {
        [self.r, self.g, self.b]
    }
}

const CLEAN: (usize, usize) = (usize::MAX, 0);

/// RGB raster. Besides the pixels it remembers which columns of each row
/// were painted since the last [`clear`](Self::clear), so clearing to the
/// same colour again only rewrites those.
#[derive(Debug, Clone)]
pub struct FrameBuffer {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
    /// Colour of every pixel outside `dirty`, when known.
    background: Option<Color>,
    /// Per row, the inclusive column span painted since the last clear.
    dirty: Vec<(usize, usize)>,
}

impl PartialEq for FrameBuffer {
    fn eq(&self, other: &Self) -> bool {
        self.width == other.width && self.height == other.height && self.pixels == other.pixels
    }
}

impl Eq for FrameBuffer {}

impl FrameBuffer {
    /// A black buffer.
    pub fn new(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            pixels: vec![0; width * height * 3],
            background: Some(Color::BLACK),
            dirty: vec![CLEAN; height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Row-major RGB bytes.
    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    pub fn pixel(&self, x: usize, y: usize) -> Option<Color> {
        if x >= self.width || y >= self.height {
            return None;
        }
        let i = (y * self.width + x) * 3;
        Some(Color::rgb(
            self.pixels[i],
            self.pixels[i + 1],
            self.pixels[i + 2],
        ))
    }

    /// Number of pixels equal to `c`.
    pub fn count(&self, c: Color) -> usize {
        self.pixels
            .chunks_exact(3)
            .filter(|p| *p == c.bytes())
            .count()
    }

    pub fn clear(&mut self, c: Color) {
        if self.background == Some(c) {
            for (y, d) in self.dirty.iter_mut().enumerate() {
                if d.0 <= d.1 {
                    let row = y * self.width * 3;
                    fill_bytes(&mut self.pixels[row + d.0 * 3..row + (d.1 + 1) * 3], c);
                    *d = CLEAN;
                }
            }
        } else {
            fill_bytes(&mut self.pixels, c);
            self.dirty.fill(CLEAN);
            self.background = Some(c);
        }
    }

    #[inline]
    fn mark(&mut self, y: usize, xa: usize, xb: usize) {
        let d = &mut self.dirty[y];
        d.0 = d.0.min(xa);
        d.1 = d.1.max(xb);
    }

    /// Fills the inclusive pixel rectangle spanned by the two corners.
    pub fn fill_rect(&mut self, x0: i32, y0: i32, x1: i32, y1: i32, c: Color) {
        let (xa, xb) = (x0.min(x1) as i64, x0.max(x1) as i64);
        let (ya, yb) = (y0.min(y1) as i64, y0.max(y1) as i64);
        let Some((xa, xb)) = clip_range(xa, xb, self.width) else {
            return;
        };
        let Some((ya, yb)) = clip_range(ya, yb, self.height) else {
            return;
        };
        for y in ya..=yb {
            self.span(y, xa, xb, c);
        }
    }

    /// Draws a segment between two pixel positions.
    ///
    /// Width 1 uses integer midpoint stepping along the major axis: with the
    /// endpoints ordered so the major coordinate increases, step `i` lands on
    /// minor offset `floor((2*i*|d_minor| + n) / (2*n))` where `n = |d_major|`.
    /// Wider lines are filled as a quad around the segment joining the pixel
    /// centres, extended by half a pixel at each end.
    pub fn draw_line(&mut self, x0: i32, y0: i32, x1: i32, y1: i32, width: u32, c: Color) {
        if width <= 1 {
            self.thin_line(x0 as i64, y0 as i64, x1 as i64, y1 as i64, c);
            return;
        }
        let (ax, ay) = (x0 as f64 + 0.5, y0 as f64 + 0.5);
        let (bx, by) = (x1 as f64 + 0.5, y1 as f64 + 0.5);
        self.thick_segment((ax, ay), (bx, by), width as f64, c);
    }

    /// Quad of the given width around a segment in continuous pixel coordinates.
    pub(crate) fn thick_segment(&mut self, a: (f64, f64), b: (f64, f64), width: f64, c: Color) {
        let (dx, dy) = (b.0 - a.0, b.1 - a.1);
        let len = dx.hypot(dy);
        let (ux, uy) = if len > 0.0 {
            (dx / len, dy / len)
        } else {
            (1.0, 0.0)
        };
        let half = width / 2.0;
        let (nx, ny) = (-uy * half, ux * half);
        let (ex, ey) = (ux * 0.5, uy * 0.5);
        let quad = [
            (a.0 - ex + nx, a.1 - ey + ny),
            (b.0 + ex + nx, b.1 + ey + ny),
            (b.0 + ex - nx, b.1 + ey - ny),
            (a.0 - ex - nx, a.1 - ey - ny),
        ];
        self.fill_polygon(&quad, c)
            .expect("quad has four finite vertices");
    }

    fn thin_line(&mut self, x0: i64, y0: i64, x1: i64, y1: i64, c: Color) {
        let x_major = (x1 - x0).abs() >= (y1 - y0).abs();
        // (major, minor) with major increasing
        let (mut a, mut b) = if x_major {
            ((x0, y0), (x1, y1))
        } else {
            ((y0, x0), (y1, x1))
        };
        if a.0 > b.0 {
            std::mem::swap(&mut a, &mut b);
        }
        let (major_len, minor_len) = if x_major {
            (self.width, self.height)
        } else {
            (self.height, self.width)
        };
        let n = b.0 - a.0;
        let d = (b.1 - a.1).abs();
        let sign = if b.1 >= a.1 { 1 } else { -1 };
        let i_lo = (-a.0).max(0);
        let i_hi = n.min(major_len as i64 - 1 - a.0);
        if i_lo > i_hi {
            return;
        }
        if d == 0 && x_major {
            if (0..minor_len as i64).contains(&a.1) {
                self.span(
                    a.1 as usize,
                    (a.0 + i_lo) as usize,
                    (a.0 + i_hi) as usize,
                    c,
                );
            }
            return;
        }
        // offset(i) = floor((2 i d + n) / 2n), stepped as quotient and remainder
        let two_n = 2 * n.max(1) as i128;
        let step = 2 * d as i128;
        let start = 2 * i_lo as i128 * d as i128 + n as i128;
        let (mut offset, mut rem) = ((start / two_n) as i64, start % two_n);
        for i in i_lo..=i_hi {
            let major = a.0 + i;
            let minor = a.1 + sign * offset;
            if (0..minor_len as i64).contains(&minor) {
                let (x, y) = if x_major {
                    (major, minor)
                } else {
                    (minor, major)
                };
                self.put(x as usize, y as usize, c);
            }
            rem += step;
            if rem >= two_n {
                rem -= two_n;
                offset += 1;
            }
        }
    }

    /// Even-odd scanline fill. Vertices are continuous coordinates where
    /// pixel `(x, y)` covers `[x, x+1) x [y, y+1)` and is filled when its
    /// centre lies inside.
    pub fn fill_polygon(&mut self, vertices: &[(f64, f64)], c: Color) -> Result<()> {
        if vertices.len() < 3 {
            return Err(Error::InvalidArgument(format!(
                "polygon needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        if vertices
            .iter()
            .any(|(x, y)| !x.is_finite() || !y.is_finite())
        {
            return Err(Error::InvalidArgument(
                "polygon vertices must be finite".into(),
            ));
        }
        if self.width == 0 || self.height == 0 {
            return Ok(());
        }
        let (min_y, max_y) = vertices
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                (lo.min(v.1), hi.max(v.1))
            });
        let row_lo = (min_y - 0.5).floor().max(0.0);
        let row_hi = (max_y - 0.5).ceil().min(self.height as f64 - 1.0);
        if row_lo > row_hi {
            return Ok(());
        }
        let mut crossings: Vec<f64> = Vec::with_capacity(vertices.len());
        for y in row_lo as usize..=row_hi as usize {
            let yc = y as f64 + 0.5;
            crossings.clear();
            let mut j = vertices.len() - 1;
            for i in 0..vertices.len() {
                let (xi, yi) = vertices[i];
                let (xj, yj) = vertices[j];
                if (yi > yc) != (yj > yc) {
                    crossings.push((xj - xi) * (yc - yi) / (yj - yi) + xi);
                }
                j = i;
            }
            crossings.sort_by(f64::total_cmp);
            for pair in crossings.chunks_exact(2) {
                // pixels whose centre satisfies pair[0] <= x + 0.5 < pair[1]
                let first = first_center_at_or_after(pair[0], self.width);
                let last = first_center_at_or_after(pair[1], self.width) - 1;
                if let Some((xa, xb)) = clip_range(first, last, self.width) {
                    self.span(y, xa, xb, c);
                }
            }
        }
        Ok(())
    }

    /// Fills every pixel with `(x - cx)^2 + (y - cy)^2 <= radius^2`.
    pub fn fill_circle(&mut self, cx: i32, cy: i32, radius: u32, c: Color) {
        let (cx, cy, r) = (cx as i64, cy as i64, radius as i64);
        let Some((ya, yb)) = clip_range(cy - r, cy + r, self.height) else {
            return;
        };
        for y in ya..=yb {
            let dy = (y as i64 - cy) as i128;
            let reach = ((r as i128 * r as i128 - dy * dy) as u128).isqrt() as i64;
            if let Some((xa, xb)) = clip_range(cx - reach, cx + reach, self.width) {
                self.span(y, xa, xb, c);
            }
        }
    }

    /// Writes binary PPM (`P6`).
    pub fn write_ppm_to<W: Write>(&self, mut w: W) -> io::Result<()> {
        write!(w, "P6\n{} {}\n255\n", self.width, self.height)?;
        w.write_all(&self.pixels)
    }

    pub fn to_ppm(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.pixels.len() + 20);
        self.write_ppm_to(&mut out)
            .expect("writing to a Vec cannot fail");
        out
    }

    pub fn write_ppm(&self, path: impl AsRef<Path>) -> io::Result<()> {
        std::fs::write(path, self.to_ppm())
    }

    #[inline]
    fn put(&mut self, x: usize, y: usize, c: Color) {
        self.mark(y, x, x);
        let i = (y * self.width + x) * 3;
        self.pixels[i..i + 3].copy_from_slice(&c.bytes());
    }

    /// Row `y`, columns `xa..=xb`, already clipped.
    #[inline]
    fn span(&mut self, y: usize, xa: usize, xb: usize, c: Color) {
        self.mark(y, xa, xb);
        let row = y * self.width * 3;
        fill_bytes(&mut self.pixels[row + xa * 3..row + (xb + 1) * 3], c);
    }
}

/// Smallest integer `x` with `x + 0.5 >= edge`, exact for every `x` in
/// `[0, width)`; edges far outside the row are pulled in first.
fn first_center_at_or_after(edge: f64, width: usize) -> i64 {
    let edge = edge.clamp(-2.0, width as f64 + 2.0);
    let mut x = (edge - 0.5).ceil() as i64;
    while (x as f64) + 0.5 < edge {
        x += 1;
    }
    while ((x - 1) as f64) + 0.5 >= edge {
        x -= 1;
    }
    x
}

/// Intersects the inclusive range `[lo, hi]` with `[0, len)`.
fn clip_range(lo: i64, hi: i64, len: usize) -> Option<(usize, usize)> {
    let lo = lo.max(0);
    let hi = hi.min(len as i64 - 1);
    (lo <= hi).then_some((lo as usize, hi as usize))
}

/// Fills an RGB byte run with one colour: one pixel is written, then the
/// filled prefix is doubled until the run is covered. The block copies
/// compile down to wide vector moves.
fn fill_bytes(run: &mut [u8], c: Color) {
    if c.r == c.g && c.g == c.b {
        let whole = run.len() / 3 * 3;
        run[..whole].fill(c.r);
        return;
    }
    if run.len() < 3 {
        return;
    }
    run[..3].copy_from_slice(&c.bytes());
    let mut filled = 3;
    while filled < run.len() {
        let n = filled.min(run.len() - filled);
        run.copy_within(..n, filled);
        filled += n;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const RED: Color = Color::rgb(255, 0, 0);

    fn set_pixels(fb: &FrameBuffer, c: Color) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for y in 0..fb.height() {
            for x in 0..fb.width() {
                if fb.pixel(x, y) == Some(c) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    fn fill_bytes_scalar(run: &mut [u8], c: Color) {
        for px in run.chunks_exact_mut(3) {
            px.copy_from_slice(&c.bytes());
        }
    }

    /// Thin line from the closed form, one division per pixel.
    fn closed_form_line(w: usize, h: usize, p0: (i64, i64), p1: (i64, i64)) -> Vec<(usize, usize)> {
        let x_major = (p1.0 - p0.0).abs() >= (p1.1 - p0.1).abs();
        let (mut a, mut b) = if x_major {
            (p0, p1)
        } else {
            ((p0.1, p0.0), (p1.1, p1.0))
        };
        if a.0 > b.0 {
            std::mem::swap(&mut a, &mut b);
        }
        let (n, d) = (b.0 - a.0, (b.1 - a.1).abs());
        let sign = if b.1 >= a.1 { 1 } else { -1 };
        let mut out = Vec::new();
        for i in 0..=n {
            let off = if n == 0 {
                0
            } else {
                (2 * i * d + n).div_euclid(2 * n)
            };
            let (major, minor) = (a.0 + i, a.1 + sign * off);
            let (x, y) = if x_major {
                (major, minor)
            } else {
                (minor, major)
            };
            if (0..w as i64).contains(&x) && (0..h as i64).contains(&y) {
                out.push((x as usize, y as usize));
            }
        }
        out.sort_unstable_by_key(|&(x, y)| (y, x));
        out
    }

    #[test]
    fn stepped_line_equals_closed_form() {
        let mut rng = crate::Rng::new(17);
        for _ in 0..2000 {
            let mut pick = || rng.below(80) as i64 - 20;
            let (p0, p1) = ((pick(), pick()), (pick(), pick()));
            let mut fb = FrameBuffer::new(40, 30);
            fb.draw_line(p0.0 as i32, p0.1 as i32, p1.0 as i32, p1.1 as i32, 1, RED);
            assert_eq!(
                set_pixels(&fb, RED),
                closed_form_line(40, 30, p0, p1),
                "{p0:?} {p1:?}"
            );
        }
    }

    #[test]
    fn fast_fill_equals_scalar_fill() {
        for len in [0usize, 1, 2, 3, 6, 9, 30, 3 * 599, 3 * 600, 3 * 1025] {
            let mut fast = vec![7u8; len];
            let mut slow = vec![7u8; len];
            for c in [Color::rgb(1, 2, 3), Color::rgb(9, 9, 9)] {
                fill_bytes(&mut fast, c);
                fill_bytes_scalar(&mut slow, c);
                assert_eq!(fast, slow, "len {len}");
            }
        }
    }

    #[test]
    fn clear_sets_every_byte() {
        let mut fb = FrameBuffer::new(600, 400);
        assert_eq!(fb.pixels().len(), 720_000);
        fb.clear(Color::WHITE);
        assert!(fb.pixels().iter().all(|&b| b == 255));
        fb.clear(Color::BLACK);
        assert!(fb.pixels().iter().all(|&b| b == 0));
    }

    #[test]
    fn rect_counts() {
        let mut fb = FrameBuffer::new(32, 32);
        fb.fill_rect(0, 0, 0, 0, RED);
        assert_eq!(fb.count(RED), 1);
        fb.clear(Color::BLACK);
        fb.fill_rect(10, 10, 19, 19, RED);
        assert_eq!(fb.count(RED), 100);
        fb.clear(Color::BLACK);
        fb.fill_rect(19, 19, 10, 10, RED);
        assert_eq!(fb.count(RED), 100);
    }

    #[test]
    fn rect_outside_is_noop() {
        let mut fb = FrameBuffer::new(16, 16);
        let before = fb.clone();
        fb.fill_rect(-10, -10, -1, -1, RED);
        fb.fill_rect(16, 0, 100, 100, RED);
        fb.fill_rect(i32::MIN, i32::MAX - 1, i32::MAX, i32::MAX, RED);
        assert_eq!(fb, before);
    }

    #[test]
    fn rect_partially_outside_is_clipped() {
        let mut fb = FrameBuffer::new(16, 16);
        fb.fill_rect(-5, -5, 1, 1, RED);
        assert_eq!(fb.count(RED), 4);
        fb.fill_rect(i32::MIN, 15, i32::MAX, 15, RED);
        assert_eq!(fb.count(RED), 4 + 16);
    }

    #[test]
    fn horizontal_line() {
        let mut fb = FrameBuffer::new(16, 16);
        fb.draw_line(0, 5, 9, 5, 1, RED);
        assert_eq!(
            set_pixels(&fb, RED),
            (0..10).map(|x| (x, 5)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn zero_length_line() {
        let mut fb = FrameBuffer::new(16, 16);
        fb.draw_line(4, 7, 4, 7, 1, RED);
        assert_eq!(set_pixels(&fb, RED), vec![(4, 7)]);
    }

    #[test]
    fn diagonal_line() {
        let mut fb = FrameBuffer::new(16, 16);
        fb.draw_line(0, 0, 3, 3, 1, RED);
        assert_eq!(set_pixels(&fb, RED), vec![(0, 0), (1, 1), (2, 2), (3, 3)]);
    }

    #[test]
    fn line_direction_does_not_matter() {
        let mut a = FrameBuffer::new(20, 20);
        let mut b = FrameBuffer::new(20, 20);
        a.draw_line(1, 2, 17, 9, 1, RED);
        b.draw_line(17, 9, 1, 2, 1, RED);
        assert_eq!(a, b);
        a.draw_line(3, 19, 6, 0, 1, RED);
        b.draw_line(6, 0, 3, 19, 1, RED);
        assert_eq!(a, b);
    }

    #[test]
    fn shallow_line_ties_round_up() {
        // (0,0)-(4,2): offsets floor((4i+4)/8) = 0,1,1,2,2
        let mut fb = FrameBuffer::new(8, 8);
        fb.draw_line(0, 0, 4, 2, 1, RED);
        assert_eq!(
            set_pixels(&fb, RED),
            vec![(0, 0), (1, 1), (2, 1), (3, 2), (4, 2)]
        );
    }

    #[test]
    fn huge_line_is_clipped() {
        let mut fb = FrameBuffer::new(10, 10);
        fb.draw_line(i32::MIN, 5, i32::MAX, 5, 1, RED);
        assert_eq!(fb.count(RED), 10);
        fb.clear(Color::BLACK);
        fb.draw_line(i32::MIN, i32::MIN, i32::MAX, i32::MAX, 1, RED);
        assert!(fb.count(RED) <= 10);
    }

    #[test]
    fn thick_horizontal_line_is_a_band() {
        let mut fb = FrameBuffer::new(20, 20);
        fb.draw_line(2, 10, 12, 10, 3, RED);
        // centres at y = 9.5..11.5 => rows 9, 10, 11, columns 2..=12
        assert_eq!(fb.count(RED), 3 * 11);
        assert_eq!(fb.pixel(2, 9), Some(RED));
        assert_eq!(fb.pixel(12, 11), Some(RED));
        assert_eq!(fb.pixel(13, 10), Some(Color::BLACK));
    }

    #[test]
    fn square_polygon_equals_rect() {
        let mut a = FrameBuffer::new(32, 32);
        let mut b = FrameBuffer::new(32, 32);
        a.fill_rect(10, 10, 19, 19, RED);
        b.fill_polygon(
            &[(10.0, 10.0), (20.0, 10.0), (20.0, 20.0), (10.0, 20.0)],
            RED,
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn polygon_needs_three_vertices() {
        let mut fb = FrameBuffer::new(8, 8);
        assert!(fb.fill_polygon(&[(0.0, 0.0), (4.0, 4.0)], RED).is_err());
        assert!(fb
            .fill_polygon(&[(0.0, 0.0), (4.0, f64::NAN), (1.0, 1.0)], RED)
            .is_err());
    }

    #[test]
    fn collinear_polygon_fills_nothing() {
        let mut fb = FrameBuffer::new(8, 8);
        fb.fill_polygon(&[(0.0, 0.0), (2.0, 2.0), (4.0, 4.0)], RED)
            .unwrap();
        assert_eq!(fb.count(RED), 0);
    }

    #[test]
    fn right_triangle_count() {
        // centres (x+.5, y+.5) strictly inside x + y < 4 => x + y <= 2
        let mut fb = FrameBuffer::new(8, 8);
        fb.fill_polygon(&[(0.0, 0.0), (4.0, 0.0), (0.0, 4.0)], RED)
            .unwrap();
        assert_eq!(fb.count(RED), 6);
    }

    #[test]
    fn circle_counts() {
        let mut fb = FrameBuffer::new(32, 32);
        fb.fill_circle(16, 16, 0, RED);
        assert_eq!(set_pixels(&fb, RED), vec![(16, 16)]);
        fb.fill_circle(16, 16, 2, RED);
        assert_eq!(fb.count(RED), 13);
        let before = fb.clone();
        fb.fill_circle(-100, -100, 20, Color::WHITE);
        fb.fill_circle(i32::MAX, i32::MIN, u32::MAX / 4, Color::WHITE);
        assert_eq!(fb, before);
    }

    #[test]
    fn ppm_header_and_payload() {
        let mut fb = FrameBuffer::new(3, 2);
        fb.clear(Color::rgb(1, 2, 3));
        let ppm = fb.to_ppm();
        let header = b"P6\n3 2\n255\n";
        assert_eq!(&ppm[..header.len()], header);
        assert_eq!(&ppm[header.len()..], fb.pixels());
    }

    #[test]
    fn zero_sized_buffer_is_safe() {
        let mut fb = FrameBuffer::new(0, 0);
        fb.clear(RED);
        fb.fill_rect(0, 0, 5, 5, RED);
        fb.draw_line(0, 0, 5, 5, 1, RED);
        fb.draw_line(0, 0, 5, 5, 4, RED);
        fb.fill_circle(0, 0, 3, RED);
        fb.fill_polygon(&[(0.0, 0.0), (4.0, 0.0), (0.0, 4.0)], RED)
            .unwrap();
        assert!(fb.pixels().is_empty());
    }
}
