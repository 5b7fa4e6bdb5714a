use std::collections::VecDeque;

use crate::raster::Raster;

pub const DEFAULT_SIGMA: f64 = 1.4;
pub const DEFAULT_LOW: f64 = 0.1;
pub const DEFAULT_HIGH: f64 = 0.3;

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeMap {
    pub width: usize,
    pub height: usize,
    pub edges: Vec<bool>,
}

impl EdgeMap {
    pub fn count(&self) -> usize {
        self.edges.iter().filter(|&&e| e).count()
    }

    /// Fraction of pixels marked as edges.
    pub fn density(&self) -> f64 {
        self.count() as f64 / self.edges.len() as f64
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.edges[y * self.width + x]
    }

    pub fn to_raster(&self) -> Raster {
        Raster::new(
            self.width,
            self.height,
            self.edges.iter().map(|&e| if e { 1.0 } else { 0.0 }).collect(),
        )
        .expect("edge map dimensions are valid")
    }
}

fn gaussian_kernel(sigma: f64) -> Vec<f64> {
    let radius = (3.0 * sigma).ceil().max(1.0) as i64;
    let k: Vec<f64> = (-radius..=radius)
        .map(|i| (-(i * i) as f64 / (2.0 * sigma * sigma)).exp())
        .collect();
    let s: f64 = k.iter().sum();
    k.into_iter().map(|v| v / s).collect()
}

/// Separable Gaussian blur with clamp-to-edge borders.
pub fn gaussian_blur(gray: &Raster, sigma: f64) -> Raster {
    if sigma <= 0.0 {
        return gray.clone();
    }
    let k = gaussian_kernel(sigma);
    let r = (k.len() / 2) as i64;
    let (w, h) = (gray.width() as i64, gray.height() as i64);
    let clamp = |v: i64, n: i64| v.clamp(0, n - 1) as usize;
    let tmp = Raster::from_fn(w as usize, h as usize, |x, y| {
        k.iter()
            .enumerate()
            .map(|(i, kv)| kv * gray.get(clamp(x as i64 + i as i64 - r, w), y))
            .sum()
    });
    Raster::from_fn(w as usize, h as usize, |x, y| {
        k.iter()
            .enumerate()
            .map(|(i, kv)| kv * tmp.get(x, clamp(y as i64 + i as i64 - r, h)))
            .sum()
    })
}

/// Canny detector: Gaussian blur, Sobel gradients, non-maximum suppression
/// along the quantized gradient direction, then hysteresis with `low` and
/// `high` taken relative to the largest gradient magnitude.
pub fn canny_edges(gray: &Raster, sigma: f64, low: f64, high: f64) -> EdgeMap {
    assert!(0.0 < low && low < high, "canny thresholds need 0 < low < high");
    let blurred = gaussian_blur(gray, sigma);
    let (w, h) = (gray.width(), gray.height());
    let at = |x: i64, y: i64| {
        blurred.get(
            x.clamp(0, w as i64 - 1) as usize,
            y.clamp(0, h as i64 - 1) as usize,
        )
    };
    let mut mag = vec![0.0; w * h];
    let mut dir = vec![0u8; w * h];
    for y in 0..h as i64 {
        for x in 0..w as i64 {
            let gx = (at(x + 1, y - 1) + 2.0 * at(x + 1, y) + at(x + 1, y + 1))
                - (at(x - 1, y - 1) + 2.0 * at(x - 1, y) + at(x - 1, y + 1));
            let gy = (at(x - 1, y + 1) + 2.0 * at(x, y + 1) + at(x + 1, y + 1))
                - (at(x - 1, y - 1) + 2.0 * at(x, y - 1) + at(x + 1, y - 1));
            let i = y as usize * w + x as usize;
            mag[i] = gx.hypot(gy);
            let angle = gy.atan2(gx).to_degrees().rem_euclid(180.0);
            dir[i] = if !(22.5..157.5).contains(&angle) {
                0
            } else if angle < 67.5 {
                1
            } else if angle < 112.5 {
                2
            } else {
                3
            };
        }
    }
    let max = mag.iter().cloned().fold(0.0, f64::max);
    let mut edges = vec![false; w * h];
    // numerical noise on flat images must not produce edges
    if max <= 1e-12 {
        return EdgeMap { width: w, height: h, edges };
    }

    let m = |x: i64, y: i64| {
        if x < 0 || y < 0 || x >= w as i64 || y >= h as i64 {
            0.0
        } else {
            mag[y as usize * w + x as usize]
        }
    };
    let mut thin = vec![0.0; w * h];
    for y in 0..h as i64 {
        for x in 0..w as i64 {
            let i = y as usize * w + x as usize;
            let (dx, dy) = match dir[i] {
                0 => (1, 0),
                1 => (1, 1),
                2 => (0, 1),
                _ => (-1, 1),
            };
            let v = mag[i];
            // strict on one side, non-strict on the other: plateaus two
            // pixels wide keep exactly one pixel
            if v > m(x - dx, y - dy) && v >= m(x + dx, y + dy) {
                thin[i] = v;
            }
        }
    }

    let (lo, hi) = (low * max, high * max);
    let mut queue = VecDeque::new();
    for (i, &v) in thin.iter().enumerate() {
        if v >= hi {
            edges[i] = true;
            queue.push_back(i);
        }
    }
    while let Some(i) = queue.pop_front() {
        let (x, y) = ((i % w) as i64, (i / w) as i64);
        for ny in y - 1..=y + 1 {
            for nx in x - 1..=x + 1 {
                if nx < 0 || ny < 0 || nx >= w as i64 || ny >= h as i64 {
                    continue;
                }
                let j = ny as usize * w + nx as usize;
                if !edges[j] && thin[j] >= lo {
                    edges[j] = true;
                    queue.push_back(j);
                }
            }
        }
    }
    EdgeMap { width: w, height: h, edges }
}
