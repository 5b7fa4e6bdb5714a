use std::path::Path;

use image::RgbImage;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::par::Execution;
use crate::plot::{linear_colormap, save_rgb, Canvas, WHITE};
use crate::raster::Raster;

/// Side of the uniform sliding window.
pub const SSIM_WINDOW: usize = 8;
/// `(K1 L)^2` with `K1 = 0.01`, `L = 1`.
pub const SSIM_C1: f64 = 0.01 * 0.01;
/// `(K2 L)^2` with `K2 = 0.03`, `L = 1`.
pub const SSIM_C2: f64 = 0.03 * 0.03;

/// Sums over every `SSIM_WINDOW`-square window, row-major over the
/// `(w - 7) x (h - 7)` window origins.
fn window_sums(values: &[f64], w: usize, h: usize) -> Vec<f64> {
    let ow = w - SSIM_WINDOW + 1;
    let oh = h - SSIM_WINDOW + 1;
    let mut rows = vec![0.0; ow * h];
    for y in 0..h {
        let row = &values[y * w..(y + 1) * w];
        for x in 0..ow {
            rows[y * ow + x] = row[x..x + SSIM_WINDOW].iter().sum();
        }
    }
    let mut out = vec![0.0; ow * oh];
    for y in 0..oh {
        for x in 0..ow {
            let mut s = 0.0;
            for k in 0..SSIM_WINDOW {
                s += rows[(y + k) * ow + x];
            }
            out[y * ow + x] = s;
        }
    }
    out
}

/// Mean SSIM over all 8x8 windows (stride 1, uniform weights, population
/// statistics) for images with unit dynamic range. Each window's index is
/// clamped to `[-1, 1]`.
pub fn ssim(a: &Raster, b: &Raster) -> Result<f64> {
    let (w, h) = (a.width(), a.height());
    if (w, h) != (b.width(), b.height()) {
        return Err(Error::invalid(format!(
            "SSIM of {w}x{h} against {}x{}",
            b.width(),
            b.height()
        )));
    }
    if w < SSIM_WINDOW || h < SSIM_WINDOW {
        return Err(Error::invalid(format!(
            "SSIM needs images of at least {SSIM_WINDOW}x{SSIM_WINDOW}"
        )));
    }
    let (da, db) = (a.data(), b.data());
    let sa = window_sums(da, w, h);
    let sb = window_sums(db, w, h);
    let saa = window_sums(&da.iter().map(|v| v * v).collect::<Vec<_>>(), w, h);
    let sbb = window_sums(&db.iter().map(|v| v * v).collect::<Vec<_>>(), w, h);
    let sab = window_sums(
        &da.iter().zip(db).map(|(x, y)| x * y).collect::<Vec<_>>(),
        w,
        h,
    );
    let n = (SSIM_WINDOW * SSIM_WINDOW) as f64;
    let mut total = 0.0;
    for i in 0..sa.len() {
        let (ma, mb) = (sa[i] / n, sb[i] / n);
        let va = saa[i] / n - ma * ma;
        let vb = sbb[i] / n - mb * mb;
        let cov = sab[i] / n - ma * mb;
        let num = (2.0 * ma * mb + SSIM_C1) * (2.0 * cov + SSIM_C2);
        let den = (ma * ma + mb * mb + SSIM_C1) * (va + vb + SSIM_C2);
        total += (num / den).clamp(-1.0, 1.0);
    }
    Ok(total / sa.len() as f64)
}

/// Symmetric pairwise SSIM matrix with an exact unit diagonal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimilarityMatrix {
    pub n: usize,
    /// Row-major `n x n`.
    pub values: Vec<f64>,
    pub labels: Vec<String>,
}

#[derive(Serialize)]
struct HeatmapSidecar<'a> {
    n: usize,
    min: f64,
    max: f64,
    colormap: &'static str,
    cell_pixels: u32,
    labels: &'a [String],
}

impl SimilarityMatrix {
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    pub fn value_range(&self) -> (f64, f64) {
        self.values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
    }

    fn cell_pixels(&self) -> u32 {
        (512 / self.n.max(1) as u32).max(4)
    }

    /// Heatmap with the linear color map stretched over the matrix range.
    pub fn heatmap(&self) -> RgbImage {
        let cell = self.cell_pixels();
        let side = cell * self.n as u32;
        let mut canvas = Canvas::new(side, side, WHITE);
        let (lo, hi) = self.value_range();
        let span = if hi > lo { hi - lo } else { 1.0 };
        for i in 0..self.n {
            for j in 0..self.n {
                let t = if hi > lo { (self.get(i, j) - lo) / span } else { 1.0 };
                let (x, y) = (j as i64 * i64::from(cell), i as i64 * i64::from(cell));
                canvas.fill_rect(x, y, x + i64::from(cell), y + i64::from(cell), linear_colormap(t));
            }
        }
        canvas.into_image()
    }

    /// Writes the heatmap PNG and a JSON sidecar with the value range.
    pub fn write_heatmap(&self, png: &Path, sidecar: &Path) -> Result<()> {
        save_rgb(&self.heatmap(), png)?;
        let (min, max) = self.value_range();
        let meta = HeatmapSidecar {
            n: self.n,
            min,
            max,
            colormap: "linear: dark blue (min) -> teal -> yellow (max)",
            cell_pixels: self.cell_pixels(),
            labels: &self.labels,
        };
        let json = serde_json::to_string_pretty(&meta)?;
        std::fs::write(sidecar, json).map_err(|e| Error::io(sidecar, e))
    }

    /// Plain CSV: a label column followed by one column per image.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut wtr = csv::Writer::from_path(path)?;
        let mut header = vec!["label".to_string()];
        header.extend(self.labels.iter().cloned());
        wtr.write_record(&header)?;
        for i in 0..self.n {
            let mut row = vec![self.labels[i].clone()];
            row.extend((0..self.n).map(|j| self.get(i, j).to_string()));
            wtr.write_record(&row)?;
        }
        wtr.flush().map_err(|e| Error::io(path, e))
    }
}

pub fn pairwise_ssim(
    images: &[Raster],
    labels: Vec<String>,
    exec: Execution,
) -> Result<SimilarityMatrix> {
    let n = images.len();
    if n == 0 {
        return Err(Error::invalid("pairwise SSIM needs at least one image"));
    }
    if labels.len() != n {
        return Err(Error::invalid(format!("{} labels for {n} images", labels.len())));
    }
    let dims = (images[0].width(), images[0].height());
    if images.iter().any(|im| (im.width(), im.height()) != dims) {
        return Err(Error::invalid("pairwise SSIM needs images of one size"));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let scores = exec.map(&pairs, |&(i, j)| ssim(&images[i], &images[j]));
    let mut values = vec![0.0; n * n];
    for i in 0..n {
        values[i * n + i] = 1.0;
    }
    for (&(i, j), s) in pairs.iter().zip(scores) {
        let s = s?;
        values[i * n + j] = s;
        values[j * n + i] = s;
    }
    Ok(SimilarityMatrix { n, values, labels })
}
