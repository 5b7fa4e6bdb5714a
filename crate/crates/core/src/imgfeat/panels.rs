//! Composite per-image figures: panel A (texture, radial profile, spectrum,
//! Hu, GLCM, box counts) and panel B (histogram, edges, ACF, Haar LL, LBP).

use image::imageops::{resize, FilterType};
use image::RgbImage;

use super::canny::{canny_edges, DEFAULT_HIGH, DEFAULT_LOW, DEFAULT_SIGMA};
use super::fractal::{box_counts, otsu_mask};
use super::glcm::{glcm_features, DEFAULT_LEVELS, DEFAULT_OFFSETS};
use super::haar::{haar_approx, pad_to_multiple};
use super::histogram::{lbp_histogram, pixel_histogram, DEFAULT_HIST_BINS};
use super::moments::{hu_moments, radial_profile};
use super::spectrum::{autocorrelation2d, fft_spectrum};
use super::RADIAL_BINS;
use crate::error::Result;
use crate::plot::{bar_chart, line_chart, raster_gray_image, raster_image, Canvas, BLACK, WHITE};
use crate::raster::Raster;

const TILE: u32 = 256;
const PAD: u32 = 8;

fn fit(img: &RgbImage) -> RgbImage {
    if img.width() == TILE && img.height() == TILE {
        img.clone()
    } else {
        resize(img, TILE, TILE, FilterType::Nearest)
    }
}

fn grid(tiles: &[RgbImage], cols: u32) -> RgbImage {
    let rows = (tiles.len() as u32).div_ceil(cols);
    let mut canvas = Canvas::new(
        cols * (TILE + PAD) + PAD,
        rows * (TILE + PAD) + PAD,
        [230, 230, 230],
    );
    for (i, t) in tiles.iter().enumerate() {
        let (c, r) = (i as u32 % cols, i as u32 / cols);
        canvas.blit(&fit(t), PAD + c * (TILE + PAD), PAD + r * (TILE + PAD));
    }
    canvas.into_image()
}

fn blank() -> RgbImage {
    Canvas::new(TILE, TILE, WHITE).into_image()
}

pub fn panel_a(gray: &Raster) -> Result<RgbImage> {
    let texture = raster_gray_image(gray);
    let profile = line_chart(&radial_profile(gray, RADIAL_BINS), TILE, TILE, [200, 40, 40]);
    let spectrum = raster_image(&fft_spectrum(gray).log_power);
    let hu = hu_moments(gray)
        .map(|h| bar_chart(&h.map(f64::abs), TILE, TILE, [60, 120, 60]))
        .unwrap_or_else(|_| blank());
    let glcm: Vec<f64> = glcm_features(gray, DEFAULT_LEVELS, &DEFAULT_OFFSETS)?
        .iter()
        .flat_map(|g| [g.contrast / (DEFAULT_LEVELS * DEFAULT_LEVELS) as f64, g.energy, g.homogeneity, g.correlation.abs()])
        .collect();
    let glcm = bar_chart(&glcm, TILE, TILE, [120, 60, 160]);
    let boxes = match otsu_mask(gray) {
        Ok(mask) => {
            let counts: Vec<f64> = box_counts(&mask, gray.width(), gray.height())
                .iter()
                .map(|&(_, n)| (n.max(1) as f64).ln())
                .collect();
            line_chart(&counts, TILE, TILE, BLACK)
        }
        Err(_) => blank(),
    };
    Ok(grid(&[texture, profile, spectrum, hu, glcm, boxes], 3))
}

pub fn panel_b(gray: &Raster) -> Result<RgbImage> {
    let hist: Vec<f64> = pixel_histogram(gray, DEFAULT_HIST_BINS)
        .iter()
        .map(|&c| c as f64)
        .collect();
    let hist = bar_chart(&hist, TILE, TILE, [40, 70, 160]);
    let edges = raster_gray_image(
        &canny_edges(gray, DEFAULT_SIGMA, DEFAULT_LOW, DEFAULT_HIGH).to_raster(),
    );
    let acf = autocorrelation2d(gray)
        .map(|a| raster_image(&a.centered()))
        .unwrap_or_else(|_| blank());
    let ll = raster_gray_image(&haar_approx(&pad_to_multiple(gray, 2), 1)?.ll_upsampled());
    let lbp = bar_chart(&lbp_histogram(gray), TILE, TILE, [180, 100, 20]);
    Ok(grid(&[raster_gray_image(gray), hist, edges, acf, ll, lbp], 3))
}
