use crate::error::{Error, Result};
use crate::raster::Raster;

const OTSU_BINS: usize = 256;

#[inline]
fn otsu_bin(v: f64) -> usize {
    ((v.clamp(0.0, 1.0) * OTSU_BINS as f64) as usize).min(OTSU_BINS - 1)
}

/// Otsu split on a 256-bin histogram of `[0, 1]` values. Returns the last bin
/// of the background class, or `None` when every pixel shares one bin.
pub fn otsu_bin_threshold(gray: &Raster) -> Option<usize> {
    let mut hist = [0u64; OTSU_BINS];
    for &v in gray.data() {
        hist[otsu_bin(v)] += 1;
    }
    let total = gray.len() as f64;
    let sum_all: f64 = hist.iter().enumerate().map(|(i, &c)| i as f64 * c as f64).sum();
    let (mut w0, mut sum0) = (0.0, 0.0);
    let mut best: Option<(usize, f64)> = None;
    for (t, &c) in hist.iter().enumerate().take(OTSU_BINS - 1) {
        w0 += c as f64;
        sum0 += t as f64 * c as f64;
        let w1 = total - w0;
        if w0 == 0.0 || w1 == 0.0 {
            continue;
        }
        let m0 = sum0 / w0;
        let m1 = (sum_all - sum0) / w1;
        let between = w0 * w1 * (m0 - m1).powi(2);
        if best.is_none_or(|(_, b)| between > b) {
            best = Some((t, between));
        }
    }
    best.map(|(t, _)| t)
}

/// Foreground mask: pixels above the Otsu split.
pub fn otsu_mask(gray: &Raster) -> Result<Vec<bool>> {
    let t = otsu_bin_threshold(gray)
        .ok_or_else(|| Error::degenerate("Otsu threshold of a single-valued image"))?;
    Ok(gray.data().iter().map(|&v| otsu_bin(v) > t).collect())
}

/// Box sizes `2, 4, 8, ...` up to `side / 4` with the occupied-box count at
/// each. Boxes tile from the origin; partial boxes on the far edges count.
pub fn box_counts(mask: &[bool], width: usize, height: usize) -> Vec<(usize, usize)> {
    let side = width.min(height);
    let mut grid = mask.to_vec();
    let (mut gw, mut gh) = (width, height);
    let mut out = Vec::new();
    let mut size = 1;
    while size * 2 <= side / 4 {
        let (nw, nh) = (gw.div_ceil(2), gh.div_ceil(2));
        let mut next = vec![false; nw * nh];
        for y in 0..gh {
            for x in 0..gw {
                if grid[y * gw + x] {
                    next[(y / 2) * nw + x / 2] = true;
                }
            }
        }
        grid = next;
        gw = nw;
        gh = nh;
        size *= 2;
        out.push((size, grid.iter().filter(|&&b| b).count()));
    }
    out
}

/// Least-squares slope of `log N(s)` against `log(1/s)`.
pub fn box_counting_dimension(mask: &[bool], width: usize, height: usize) -> Result<f64> {
    if width.min(height) < 16 {
        return Err(Error::invalid("box counting needs an image side of at least 16"));
    }
    let filled = mask.iter().filter(|&&b| b).count();
    if filled == 0 || filled == mask.len() {
        return Err(Error::degenerate("foreground is empty or covers the whole image"));
    }
    let pts: Vec<(f64, f64)> = box_counts(mask, width, height)
        .into_iter()
        .map(|(s, n)| (-(s as f64).ln(), (n as f64).ln()))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

/// Box-counting dimension of the Otsu foreground.
pub fn fractal_dimension(gray: &Raster) -> Result<f64> {
    if gray.width().min(gray.height()) < 16 {
        return Err(Error::invalid("fractal dimension needs an image side of at least 16"));
    }
    let mask = otsu_mask(gray)?;
    box_counting_dimension(&mask, gray.width(), gray.height())
}
