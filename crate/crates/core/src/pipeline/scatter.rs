use image::RgbImage;

use crate::plot::{Canvas, Glyph, AXIS, PALETTE, WHITE};
use crate::texgen::Mode;

const SIZE: u32 = 512;
const MARGIN: i64 = 32;

fn glyph_for(mode: Mode) -> Glyph {
    match mode {
        Mode::Chaotic => Glyph::Square,
        Mode::Layered => Glyph::Circle,
        Mode::Ring => Glyph::Triangle,
        Mode::Wave => Glyph::Cross,
    }
}

/// Embedding scatter: color from the cluster label, glyph from the mode.
pub fn scatter_plot(points: &[[f64; 2]], clusters: &[usize], modes: &[Mode]) -> RgbImage {
    let mut canvas = Canvas::new(SIZE, SIZE, WHITE);
    let far = SIZE as i64 - MARGIN;
    canvas.line(MARGIN, far, far, far, AXIS);
    canvas.line(MARGIN, MARGIN, MARGIN, far, AXIS);
    if points.is_empty() {
        return canvas.into_image();
    }
    let bounds = |k: usize| {
        let (lo, hi) = points
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p[k]), hi.max(p[k])));
        if hi > lo { (lo, hi - lo) } else { (lo - 0.5, 1.0) }
    };
    let (bx, by) = (bounds(0), bounds(1));
    let inner = (far - MARGIN - 16) as f64;
    for (i, p) in points.iter().enumerate() {
        let x = MARGIN + 8 + ((p[0] - bx.0) / bx.1 * inner).round() as i64;
        let y = far - 8 - ((p[1] - by.0) / by.1 * inner).round() as i64;
        let color = PALETTE[clusters.get(i).copied().unwrap_or(0) % PALETTE.len()];
        let glyph = modes.get(i).copied().map_or(Glyph::Circle, glyph_for);
        canvas.glyph(x, y, 4, glyph, color);
    }
    canvas.into_image()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_points_inside_frame() {
        let img = scatter_plot(&[[0.0, 0.0], [1.0, 1.0]], &[0, 1], &[Mode::Ring, Mode::Wave]);
        assert_eq!(img.dimensions(), (SIZE, SIZE));
        let colored = img.pixels().filter(|p| p.0 == PALETTE[1]).count();
        assert!(colored > 0);
        let empty = scatter_plot(&[], &[], &[]);
        assert!(empty.pixels().all(|p| p.0 == WHITE || p.0 == AXIS));
    }
}
