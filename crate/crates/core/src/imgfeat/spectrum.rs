use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::raster::Raster;

/// In-place unnormalized 2D DFT of a row-major `width x height` buffer.
pub(crate) fn fft2(data: &mut [Complex64], width: usize, height: usize, inverse: bool) {
    let mut planner = FftPlanner::new();
    let (row_fft, col_fft) = if inverse {
        (planner.plan_fft_inverse(width), planner.plan_fft_inverse(height))
    } else {
        (planner.plan_fft_forward(width), planner.plan_fft_forward(height))
    };
    for row in data.chunks_exact_mut(width) {
        row_fft.process(row);
    }
    let mut column = vec![Complex64::new(0.0, 0.0); height];
    for x in 0..width {
        for (y, c) in column.iter_mut().enumerate() {
            *c = data[y * width + x];
        }
        col_fft.process(&mut column);
        for (y, c) in column.iter().enumerate() {
            data[y * width + x] = *c;
        }
    }
}

fn to_complex(r: &Raster) -> Vec<Complex64> {
    r.data().iter().map(|&v| Complex64::new(v, 0.0)).collect()
}

/// Signed frequency of DFT bin `i` out of `n`, in cycles per image.
#[inline]
pub(crate) fn signed_freq(i: usize, n: usize) -> f64 {
    if i <= n / 2 {
        i as f64
    } else {
        i as f64 - n as f64
    }
}

/// Moves index `(0, 0)` to the center `(w/2, h/2)`.
pub fn fftshift(r: &Raster) -> Raster {
    let (w, h) = (r.width(), r.height());
    Raster::from_fn(w, h, |x, y| r.get((x + w - w / 2) % w, (y + h - h / 2) % h))
}

/// Unshifted power spectrum `|F(k)|^2` of the unnormalized DFT.
pub fn power_spectrum(gray: &Raster) -> Raster {
    let (w, h) = (gray.width(), gray.height());
    let mut buf = to_complex(gray);
    fft2(&mut buf, w, h, false);
    Raster::new(w, h, buf.iter().map(|c| c.norm_sqr()).collect()).expect("same dimensions")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FftStats {
    /// Power-weighted mean of `|k|` over non-DC bins, cycles per image.
    pub centroid: f64,
    /// `lambda_max / lambda_min` of the power-weighted second moment of `k`;
    /// infinite when the spectrum is confined to a line through the origin.
    pub anisotropy: f64,
}

#[derive(Debug, Clone)]
pub struct Spectrum {
    /// `log1p(|F|^2)` with DC at the center, for display.
    pub log_power: Raster,
    pub stats: FftStats,
}

pub fn spectrum_stats(power: &Raster) -> FftStats {
    let (w, h) = (power.width(), power.height());
    let (mut total, mut radial, mut mxx, mut myy, mut mxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for y in 0..h {
        let ky = signed_freq(y, h);
        for x in 0..w {
            if x == 0 && y == 0 {
                continue;
            }
            let p = power.get(x, y);
            let kx = signed_freq(x, w);
            total += p;
            radial += p * kx.hypot(ky);
            mxx += p * kx * kx;
            myy += p * ky * ky;
            mxy += p * kx * ky;
        }
    }
    if total <= 0.0 {
        return FftStats {
            centroid: 0.0,
            anisotropy: 1.0,
        };
    }
    let (a, d, b) = (mxx / total, myy / total, mxy / total);
    let mean = (a + d) / 2.0;
    let disc = (((a - d) / 2.0).powi(2) + b * b).sqrt();
    let (hi, lo) = (mean + disc, mean - disc);
    let anisotropy = if lo <= 1e-12 * hi { f64::INFINITY } else { hi / lo };
    FftStats {
        centroid: radial / total,
        anisotropy,
    }
}

/// 2D DFT power spectrum: centered `log1p` display image plus summary stats.
pub fn fft_spectrum(gray: &Raster) -> Spectrum {
    let power = power_spectrum(gray);
    let stats = spectrum_stats(&power);
    Spectrum {
        log_power: fftshift(&power.map(f64::ln_1p)),
        stats,
    }
}

#[derive(Debug, Clone)]
pub struct Autocorrelation {
    /// Normalized circular ACF indexed by lag `(dx mod W, dy mod H)`.
    pub acf: Raster,
    /// First lag along x (resp. y) where the ACF drops below `1/e`, searched
    /// up to half the image side.
    pub decay_x: Option<usize>,
    pub decay_y: Option<usize>,
}

impl Autocorrelation {
    pub fn centered(&self) -> Raster {
        fftshift(&self.acf)
    }
}

fn variance_is_zero(gray: &Raster) -> bool {
    let mean = gray.mean();
    let var = gray.data().iter().map(|v| (v - mean).powi(2)).sum::<f64>() / gray.len() as f64;
    var <= 1e-24 + 1e-14 * mean * mean
}

/// Mean-subtracted circular autocorrelation via the inverse DFT of the power
/// spectrum, normalized to `ACF(0, 0) = 1`.
pub fn autocorrelation2d(gray: &Raster) -> Result<Autocorrelation> {
    if variance_is_zero(gray) {
        return Err(Error::degenerate("autocorrelation of a constant image"));
    }
    let (w, h) = (gray.width(), gray.height());
    let mean = gray.mean();
    let mut buf: Vec<Complex64> = gray
        .data()
        .iter()
        .map(|&v| Complex64::new(v - mean, 0.0))
        .collect();
    fft2(&mut buf, w, h, false);
    for c in buf.iter_mut() {
        *c = Complex64::new(c.norm_sqr(), 0.0);
    }
    fft2(&mut buf, w, h, true);
    let zero = buf[0].re;
    let acf = Raster::new(w, h, buf.iter().map(|c| c.re / zero).collect()).expect("same dimensions");
    let threshold = (-1.0f64).exp();
    let decay_x = (1..=w / 2).find(|&dx| acf.get(dx, 0) < threshold);
    let decay_y = (1..=h / 2).find(|&dy| acf.get(0, dy) < threshold);
    Ok(Autocorrelation {
        acf,
        decay_x,
        decay_y,
    })
}
