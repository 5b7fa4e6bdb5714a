//! Minimal raster drawing used for the amplitude chart, feature panels,
//! heatmaps and scatter plots. There is no text rendering; numeric ranges go
//! into JSON sidecars instead.

use std::path::Path;

use image::{Rgb, RgbImage};

use crate::error::{Error, Result};
use crate::raster::{quantize_unit, Raster};

pub const WHITE: [u8; 3] = [255, 255, 255];
pub const BLACK: [u8; 3] = [0, 0, 0];
pub const AXIS: [u8; 3] = [96, 96, 96];

/// Distinct colors for cluster labels.
pub const PALETTE: [[u8; 3]; 8] = [
    [31, 119, 180],
    [255, 127, 14],
    [44, 160, 44],
    [214, 39, 40],
    [148, 103, 189],
    [140, 86, 75],
    [227, 119, 194],
    [23, 190, 207],
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Glyph {
    Square,
    Circle,
    Triangle,
    Cross,
}

pub struct Canvas {
    img: RgbImage,
}

impl Canvas {
    pub fn new(width: u32, height: u32, background: [u8; 3]) -> Self {
        Self {
            img: RgbImage::from_pixel(width, height, Rgb(background)),
        }
    }

    pub fn width(&self) -> u32 {
        self.img.width()
    }

    pub fn height(&self) -> u32 {
        self.img.height()
    }

    #[inline]
    pub fn put(&mut self, x: i64, y: i64, color: [u8; 3]) {
        if x >= 0 && y >= 0 && (x as u32) < self.img.width() && (y as u32) < self.img.height() {
            self.img.put_pixel(x as u32, y as u32, Rgb(color));
        }
    }

    /// Fills the half-open rectangle `[x0, x1) x [y0, y1)`, clipped.
    pub fn fill_rect(&mut self, x0: i64, y0: i64, x1: i64, y1: i64, color: [u8; 3]) {
        for y in y0.max(0)..y1.min(self.img.height() as i64) {
            for x in x0.max(0)..x1.min(self.img.width() as i64) {
                self.img.put_pixel(x as u32, y as u32, Rgb(color));
            }
        }
    }

    pub fn line(&mut self, x0: i64, y0: i64, x1: i64, y1: i64, color: [u8; 3]) {
        // Bresenham
        let (dx, dy) = ((x1 - x0).abs(), -(y1 - y0).abs());
        let (sx, sy) = (if x0 < x1 { 1 } else { -1 }, if y0 < y1 { 1 } else { -1 });
        let (mut x, mut y, mut err) = (x0, y0, dx + dy);
        loop {
            self.put(x, y, color);
            if x == x1 && y == y1 {
                break;
            }
            let e2 = 2 * err;
            if e2 >= dy {
                err += dy;
                x += sx;
            }
            if e2 <= dx {
                err += dx;
                y += sy;
            }
        }
    }

    pub fn glyph(&mut self, cx: i64, cy: i64, r: i64, glyph: Glyph, color: [u8; 3]) {
        match glyph {
            Glyph::Square => self.fill_rect(cx - r, cy - r, cx + r + 1, cy + r + 1, color),
            Glyph::Circle => {
                for dy in -r..=r {
                    for dx in -r..=r {
                        if dx * dx + dy * dy <= r * r {
                            self.put(cx + dx, cy + dy, color);
                        }
                    }
                }
            }
            Glyph::Triangle => {
                for dy in -r..=r {
                    let half = (dy + r) / 2;
                    for dx in -half..=half {
                        self.put(cx + dx, cy + dy, color);
                    }
                }
            }
            Glyph::Cross => {
                for d in -r..=r {
                    for t in -1..=1 {
                        self.put(cx + d, cy + d + t, color);
                        self.put(cx + d, cy - d + t, color);
                    }
                }
            }
        }
    }

    /// Copies `tile` with its top-left corner at `(x, y)`.
    pub fn blit(&mut self, tile: &RgbImage, x: u32, y: u32) {
        for (tx, ty, px) in tile.enumerate_pixels() {
            self.put(i64::from(x + tx), i64::from(y + ty), px.0);
        }
    }

    pub fn image(&self) -> &RgbImage {
        &self.img
    }

    pub fn into_image(self) -> RgbImage {
        self.img
    }
}

pub fn save_rgb(img: &RgbImage, path: &Path) -> Result<()> {
    img.save(path).map_err(|e| Error::image(path, e))
}

/// Linear color map over `t in [0, 1]`: dark blue through teal to yellow.
pub fn linear_colormap(t: f64) -> [u8; 3] {
    const STOPS: [[f64; 3]; 3] = [[0.10, 0.05, 0.35], [0.10, 0.60, 0.55], [0.99, 0.91, 0.15]];
    let t = if t.is_finite() { t.clamp(0.0, 1.0) } else { 0.0 };
    let s = t * (STOPS.len() - 1) as f64;
    let i = (s.floor() as usize).min(STOPS.len() - 2);
    let f = s - i as f64;
    let mut out = [0u8; 3];
    for c in 0..3 {
        out[c] = quantize_unit(STOPS[i][c] * (1.0 - f) + STOPS[i + 1][c] * f);
    }
    out
}

/// HSL to 8-bit RGB, hue in degrees.
pub fn hsl_to_rgb(hue_deg: f64, saturation: f64, lightness: f64) -> [u8; 3] {
    let l = lightness.clamp(0.0, 1.0);
    let s = saturation.clamp(0.0, 1.0);
    let c = (1.0 - (2.0 * l - 1.0).abs()) * s;
    let hp = hue_deg.rem_euclid(360.0) / 60.0;
    let x = c * (1.0 - (hp % 2.0 - 1.0).abs());
    let (r, g, b) = match hp as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = l - c / 2.0;
    [quantize_unit(r + m), quantize_unit(g + m), quantize_unit(b + m)]
}

/// Renders a raster through the linear color map after min-max scaling.
pub fn raster_image(r: &Raster) -> RgbImage {
    let n = r.normalized();
    let mut img = RgbImage::new(r.width() as u32, r.height() as u32);
    for (px, &v) in img.pixels_mut().zip(n.data()) {
        *px = Rgb(linear_colormap(v));
    }
    img
}

/// Raster as plain grayscale RGB after min-max scaling.
pub fn raster_gray_image(r: &Raster) -> RgbImage {
    let n = r.normalized();
    let mut img = RgbImage::new(r.width() as u32, r.height() as u32);
    for (px, &v) in img.pixels_mut().zip(n.data()) {
        let g = quantize_unit(v);
        *px = Rgb([g, g, g]);
    }
    img
}

/// Bar chart of non-negative values scaled to the tallest bar.
pub fn bar_chart(values: &[f64], width: u32, height: u32, color: [u8; 3]) -> RgbImage {
    let mut canvas = Canvas::new(width, height, WHITE);
    let max = values.iter().cloned().fold(0.0_f64, f64::max);
    let n = values.len().max(1) as f64;
    for (i, &v) in values.iter().enumerate() {
        let x0 = (i as f64 * width as f64 / n).floor() as i64;
        let x1 = (((i + 1) as f64 * width as f64 / n).floor() as i64).max(x0 + 1);
        let h = if max > 0.0 {
            (v.max(0.0) / max * f64::from(height)).round() as i64
        } else {
            0
        };
        canvas.fill_rect(x0, i64::from(height) - h, x1, i64::from(height), color);
    }
    canvas.into_image()
}

/// Polyline chart of `values`, scaled to their own min/max.
pub fn line_chart(values: &[f64], width: u32, height: u32, color: [u8; 3]) -> RgbImage {
    let mut canvas = Canvas::new(width, height, WHITE);
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    let span = if hi > lo { hi - lo } else { 1.0 };
    let pts: Vec<(i64, i64)> = values
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let x = if values.len() > 1 {
                i as f64 * f64::from(width - 1) / (values.len() - 1) as f64
            } else {
                0.0
            };
            let y = f64::from(height - 1) * (1.0 - (v - lo) / span);
            (x.round() as i64, y.round() as i64)
        })
        .collect();
    canvas.line(0, i64::from(height) - 1, i64::from(width) - 1, i64::from(height) - 1, AXIS);
    for w in pts.windows(2) {
        canvas.line(w[0].0, w[0].1, w[1].0, w[1].1, color);
    }
    if let [only] = pts.as_slice() {
        canvas.put(only.0, only.1, color);
    }
    canvas.into_image()
}
