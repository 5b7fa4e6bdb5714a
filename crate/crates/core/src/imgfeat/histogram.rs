use crate::raster::Raster;

pub const DEFAULT_HIST_BINS: usize = 64;

/// Uniform bins over `[0, 1]`; the last bin is closed on the right and
/// out-of-range values are clamped.
pub fn pixel_histogram(gray: &Raster, bins: usize) -> Vec<u64> {
    let bins = bins.max(1);
    let mut counts = vec![0u64; bins];
    for &v in gray.data() {
        let b = ((v.clamp(0.0, 1.0) * bins as f64) as usize).min(bins - 1);
        counts[b] += 1;
    }
    counts
}

/// Neighbor offsets `(dx, dy)` clockwise from the top-left; neighbor `b`
/// sets bit `b` of the code.
pub const LBP_NEIGHBORS: [(i64, i64); 8] = [
    (-1, -1),
    (0, -1),
    (1, -1),
    (1, 0),
    (1, 1),
    (0, 1),
    (-1, 1),
    (-1, 0),
];

/// Radius-1 8-neighbor LBP codes of the interior pixels, row-major over
/// `(width - 2) x (height - 2)`. Bit set iff neighbor >= center.
pub fn lbp_codes(gray: &Raster) -> Vec<u8> {
    let (w, h) = (gray.width(), gray.height());
    if w < 3 || h < 3 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity((w - 2) * (h - 2));
    for y in 1..h - 1 {
        for x in 1..w - 1 {
            let c = gray.get(x, y);
            let mut code = 0u8;
            for (b, (dx, dy)) in LBP_NEIGHBORS.iter().enumerate() {
                let v = gray.get((x as i64 + dx) as usize, (y as i64 + dy) as usize);
                if v >= c {
                    code |= 1 << b;
                }
            }
            out.push(code);
        }
    }
    out
}

/// 256-bin LBP histogram normalized to sum 1; all zeros for images smaller
/// than 3x3.
pub fn lbp_histogram(gray: &Raster) -> Vec<f64> {
    let codes = lbp_codes(gray);
    let mut hist = vec![0.0; 256];
    for &c in &codes {
        hist[c as usize] += 1.0;
    }
    if !codes.is_empty() {
        let n = codes.len() as f64;
        hist.iter_mut().for_each(|v| *v /= n);
    }
    hist
}
