use gymkit::FrameBuffer;

/// Box-filtered luminance in [0, 1] at `width` x `height`, row-major.
pub fn grayscale_downsample(fb: &FrameBuffer, width: usize, height: usize) -> Vec<f64> {
    let mut out = vec![0.0; width * height];
    let (src_w, src_h) = (fb.width(), fb.height());
    if src_w == 0 || src_h == 0 {
        return out;
    }
    let pixels = fb.pixels();
    for oy in 0..height {
        let y0 = oy * src_h / height;
        let y1 = ((oy + 1) * src_h / height).max(y0 + 1).min(src_h);
        for ox in 0..width {
            let x0 = ox * src_w / width;
            let x1 = ((ox + 1) * src_w / width).max(x0 + 1).min(src_w);
            let mut sum = 0.0;
            for y in y0..y1 {
                let row = &pixels[(y * src_w + x0) * 3..(y * src_w + x1) * 3];
                for px in row.chunks_exact(3) {
                    sum += 0.299 * px[0] as f64 + 0.587 * px[1] as f64 + 0.114 * px[2] as f64;
                }
            }
            out[oy * width + ox] = sum / ((y1 - y0) * (x1 - x0)) as f64 / 255.0;
        }
    }
    out
}
