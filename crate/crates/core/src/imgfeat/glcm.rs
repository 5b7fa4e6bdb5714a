use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::raster::Raster;

/// Pixel displacement `(dx, dy)`; `dx` runs along columns, `dy` along rows.
pub type Offset = (i32, i32);

pub const DEFAULT_LEVELS: usize = 8;
pub const DEFAULT_OFFSETS: [Offset; 4] = [(1, 0), (0, 1), (1, 1), (1, -1)];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GlcmStats {
    pub contrast: f64,
    pub energy: f64,
    pub homogeneity: f64,
    /// Zero by convention when the marginal variance vanishes.
    pub correlation: f64,
    pub correlation_degenerate: bool,
}

/// Quantizes `[0, 1]` uniformly to `levels` bins, `1.0` landing in the top bin.
#[inline]
pub(crate) fn quantize(v: f64, levels: usize) -> usize {
    ((v.clamp(0.0, 1.0) * levels as f64) as usize).min(levels - 1)
}

/// Symmetric normalized co-occurrence matrix for one offset, row-major
/// `levels x levels`.
pub fn cooccurrence(gray: &Raster, levels: usize, offset: Offset) -> Result<Vec<f64>> {
    if levels < 2 {
        return Err(Error::invalid("GLCM needs at least two gray levels"));
    }
    let (w, h) = (gray.width() as i64, gray.height() as i64);
    let (dx, dy) = (i64::from(offset.0), i64::from(offset.1));
    let q: Vec<usize> = gray.data().iter().map(|&v| quantize(v, levels)).collect();
    let mut counts = vec![0u64; levels * levels];
    for y in 0..h {
        let ny = y + dy;
        if ny < 0 || ny >= h {
            continue;
        }
        for x in 0..w {
            let nx = x + dx;
            if nx < 0 || nx >= w {
                continue;
            }
            let i = q[(y * w + x) as usize];
            let j = q[(ny * w + nx) as usize];
            counts[i * levels + j] += 1;
            counts[j * levels + i] += 1;
        }
    }
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return Err(Error::invalid(format!(
            "offset {offset:?} leaves no pixel pairs in a {w}x{h} image"
        )));
    }
    Ok(counts.iter().map(|&c| c as f64 / total as f64).collect())
}

pub fn glcm_stats(p: &[f64], levels: usize) -> GlcmStats {
    let (mut contrast, mut energy, mut homogeneity, mut mean) = (0.0, 0.0, 0.0, 0.0);
    for i in 0..levels {
        for j in 0..levels {
            let v = p[i * levels + j];
            let d = i as f64 - j as f64;
            contrast += d * d * v;
            energy += v * v;
            homogeneity += v / (1.0 + d.abs());
            mean += i as f64 * v;
        }
    }
    // symmetric matrix: row and column marginals coincide
    let mut var = 0.0;
    let mut cov = 0.0;
    for i in 0..levels {
        for j in 0..levels {
            let v = p[i * levels + j];
            var += (i as f64 - mean).powi(2) * v;
            cov += (i as f64 - mean) * (j as f64 - mean) * v;
        }
    }
    let degenerate = var <= 1e-15;
    GlcmStats {
        contrast,
        energy,
        homogeneity,
        correlation: if degenerate { 0.0 } else { cov / var },
        correlation_degenerate: degenerate,
    }
}

/// Contrast, energy, homogeneity and correlation for each offset.
pub fn glcm_features(gray: &Raster, levels: usize, offsets: &[Offset]) -> Result<Vec<GlcmStats>> {
    offsets
        .iter()
        .map(|&o| Ok(glcm_stats(&cooccurrence(gray, levels, o)?, levels)))
        .collect()
}
