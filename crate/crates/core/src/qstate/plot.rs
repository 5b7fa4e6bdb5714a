use std::f64::consts::TAU;
use std::path::Path;

use image::RgbImage;

use super::statevector::{export_amplitudes, Statevector};
use crate::error::Result;
use crate::plot::{hsl_to_rgb, save_rgb, Canvas, AXIS, WHITE};

const BAR_COLOR: [u8; 3] = [40, 70, 160];
const PANEL_HEIGHT: u32 = 160;
const GAP: u32 = 8;

/// Two stacked bar charts: `|c_i|` scaled to the largest magnitude on top,
/// `arg(c_i) / 2pi` below with each bar tinted by its phase hue.
pub fn amplitude_chart(state: &Statevector) -> RgbImage {
    let amps = export_amplitudes(state);
    let n = amps.len() as u32;
    let bar = (512 / n).max(2);
    let width = bar * n;
    let height = 2 * PANEL_HEIGHT + GAP;
    let mut canvas = Canvas::new(width, height, WHITE);

    let mags: Vec<f64> = amps.iter().map(|a| a.probability.sqrt()).collect();
    let max_mag = mags.iter().cloned().fold(0.0_f64, f64::max);
    let ph = i64::from(PANEL_HEIGHT);
    for (i, (m, a)) in mags.iter().zip(&amps).enumerate() {
        let x0 = i as i64 * i64::from(bar);
        let x1 = x0 + i64::from(bar);
        let h = if max_mag > 0.0 {
            (m / max_mag * f64::from(PANEL_HEIGHT)).round() as i64
        } else {
            0
        };
        canvas.fill_rect(x0, ph - h, x1, ph, BAR_COLOR);
        if a.probability > 0.0 {
            let hp = (a.phase / TAU * f64::from(PANEL_HEIGHT)).round() as i64;
            let top = i64::from(height) - hp.max(1);
            let color = hsl_to_rgb(a.phase.to_degrees(), 1.0, 0.5);
            canvas.fill_rect(x0, top, x1, i64::from(height), color);
        }
    }
    let sep = ph + i64::from(GAP) / 2;
    canvas.line(0, sep, i64::from(width) - 1, sep, AXIS);
    canvas.into_image()
}

/// Writes [`amplitude_chart`] as a PNG.
pub fn plot_amplitudes(state: &Statevector, path: &Path) -> Result<()> {
    save_rgb(&amplitude_chart(state), path)
}
