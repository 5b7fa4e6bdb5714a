use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use super::params::{Mode, TextureParams};
use crate::error::Result;
use crate::raster::Raster;

/// Wavevector magnitude band for chaotic textures, cycles per image.
pub const CHAOTIC_BAND: (f64, f64) = (8.0, 32.0);
/// Wavevector magnitude band for wave textures, cycles per image.
pub const WAVE_BAND: (f64, f64) = (1.0, 4.0);
/// Radial frequency band for ring textures, cycles per image.
pub const RING_BAND: (f64, f64) = (4.0, 16.0);
/// Blob widths for layered textures as a fraction of `min(width, height)`.
pub const LAYERED_SIGMA_FRACTION: (f64, f64) = (0.08, 0.25);

/// Which spin angle a render feeds. Each channel draws its geometry from its
/// own substreams so the two renders are decorrelated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Channel {
    Polar = 0,
    Azimuthal = 1,
}

/// Geometry of one basis term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Term {
    /// `cos(2pi (kx x/W + ky y/H) + phi)` with integer cycles per image.
    Plane { kx: i32, ky: i32 },
    /// Gaussian blob centered at `(cx W, cy H)` with width `sigma` pixels.
    Blob { cx: f64, cy: f64, sigma: f64 },
    /// `cos(2pi omega |r - c| + phi)` with `r` normalized to the unit square.
    Ring { cx: f64, cy: f64, omega: f64 },
}

impl Term {
    /// Direct evaluation at pixel `(x, y)`.
    pub fn evaluate(&self, x: usize, y: usize, width: usize, height: usize, phase: f64) -> f64 {
        let rx = x as f64 / width as f64;
        let ry = y as f64 / height as f64;
        match *self {
            Term::Plane { kx, ky } => (TAU * (f64::from(kx) * rx + f64::from(ky) * ry) + phase).cos(),
            Term::Blob { cx, cy, sigma } => {
                let dx = x as f64 - cx * width as f64;
                let dy = y as f64 - cy * height as f64;
                (-(dx * dx + dy * dy) / (2.0 * sigma * sigma)).exp()
            }
            Term::Ring { cx, cy, omega } => {
                let rho = ((rx - cx).powi(2) + (ry - cy).powi(2)).sqrt();
                (TAU * omega * rho + phase).cos()
            }
        }
    }
}

fn substream(seed: u64, channel: Channel, term: usize) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(((channel as u64) << 32) | term as u64);
    rng
}

/// Uniform over integer lattice points with `lo <= |k| <= hi`.
fn lattice_wavevector(rng: &mut ChaCha20Rng, (lo, hi): (f64, f64)) -> (i32, i32) {
    let kmax = hi.floor() as i32;
    loop {
        let kx = rng.random_range(-kmax..=kmax);
        let ky = rng.random_range(-kmax..=kmax);
        let m = f64::from(kx).hypot(f64::from(ky));
        if m >= lo && m <= hi {
            return (kx, ky);
        }
    }
}

/// Per-term geometry for `params` on `channel`, one entry per weight.
pub fn term_geometry(params: &TextureParams, channel: Channel) -> Vec<Term> {
    let side = params.width.min(params.height) as f64;
    (0..params.weights.len())
        .map(|i| {
            let mut rng = substream(params.seed, channel, i);
            match params.mode {
                Mode::Chaotic => {
                    let (kx, ky) = lattice_wavevector(&mut rng, CHAOTIC_BAND);
                    Term::Plane { kx, ky }
                }
                Mode::Wave => {
                    let (kx, ky) = lattice_wavevector(&mut rng, WAVE_BAND);
                    Term::Plane { kx, ky }
                }
                Mode::Layered => {
                    let cx = rng.random_range(0.0..1.0);
                    let cy = rng.random_range(0.0..1.0);
                    let (lo, hi) = LAYERED_SIGMA_FRACTION;
                    let sigma = rng.random_range(lo..=hi) * side;
                    Term::Blob { cx, cy, sigma }
                }
                Mode::Ring => {
                    let cx = rng.random_range(0.0..1.0);
                    let cy = rng.random_range(0.0..1.0);
                    let omega = rng.random_range(RING_BAND.0..=RING_BAND.1);
                    Term::Ring { cx, cy, omega }
                }
            }
        })
        .collect()
}

/// The weighted term sum before min-max rescaling.
pub fn render_raw(params: &TextureParams, channel: Channel) -> Result<Raster> {
    params.validate()?;
    let (w, h) = (params.width, params.height);
    let terms = term_geometry(params, channel);
    let active: Vec<(f64, f64, Term)> = params
        .weights
        .iter()
        .zip(&params.phases)
        .zip(&terms)
        .filter(|((w, _), _)| **w > 0.0)
        .map(|((&w, &p), &t)| (w, p, t))
        .collect();

    let mut out = vec![0.0; w * h];
    match params.mode {
        Mode::Chaotic | Mode::Wave => {
            // cos(a + b + phi) = Re(e^{i phi} e^{i a} e^{i b}); rows and columns
            // get their phasor tables once per term.
            let tables: Vec<(f64, Vec<Complex64>, Vec<Complex64>)> = active
                .iter()
                .map(|&(weight, phase, term)| {
                    let Term::Plane { kx, ky } = term else { unreachable!() };
                    let xs = (0..w)
                        .map(|x| Complex64::from_polar(1.0, TAU * f64::from(kx) * x as f64 / w as f64))
                        .collect();
                    let ys = (0..h)
                        .map(|y| {
                            Complex64::from_polar(1.0, TAU * f64::from(ky) * y as f64 / h as f64 + phase)
                        })
                        .collect();
                    (weight, xs, ys)
                })
                .collect();
            for (y, row) in out.chunks_exact_mut(w).enumerate() {
                for (weight, xs, ys) in &tables {
                    let py = ys[y];
                    for (v, px) in row.iter_mut().zip(xs) {
                        *v += weight * (px.re * py.re - px.im * py.im);
                    }
                }
            }
        }
        Mode::Layered => {
            let tables: Vec<(f64, Vec<f64>, Vec<f64>)> = active
                .iter()
                .map(|&(weight, _, term)| {
                    let Term::Blob { cx, cy, sigma } = term else { unreachable!() };
                    let g = |d: f64| (-(d * d) / (2.0 * sigma * sigma)).exp();
                    let xs = (0..w).map(|x| g(x as f64 - cx * w as f64)).collect();
                    let ys = (0..h).map(|y| g(y as f64 - cy * h as f64)).collect();
                    (weight, xs, ys)
                })
                .collect();
            for (y, row) in out.chunks_exact_mut(w).enumerate() {
                for (weight, xs, ys) in &tables {
                    let wy = weight * ys[y];
                    for (v, gx) in row.iter_mut().zip(xs) {
                        *v += wy * gx;
                    }
                }
            }
        }
        Mode::Ring => {
            for (y, row) in out.chunks_exact_mut(w).enumerate() {
                for &(weight, phase, term) in &active {
                    for (x, v) in row.iter_mut().enumerate() {
                        *v += weight * term.evaluate(x, y, w, h, phase);
                    }
                }
            }
        }
    }
    Raster::new(w, h, out)
}

fn rescale_symmetric(raw: Raster) -> Raster {
    let (lo, hi) = raw.min_max();
    let span = hi - lo;
    if span > 0.0 {
        raw.map(|v| (2.0 * (v - lo) / span - 1.0).clamp(-1.0, 1.0))
    } else {
        raw.map(|_| 0.0)
    }
}

/// Render of `channel`, min-max rescaled to `[-1, 1]`. A constant sum maps
/// to zero everywhere.
pub fn render_channel(params: &TextureParams, channel: Channel) -> Result<Raster> {
    Ok(rescale_symmetric(render_raw(params, channel)?))
}

/// The polar-channel render.
pub fn render_scalar_field(params: &TextureParams) -> Result<Raster> {
    render_channel(params, Channel::Polar)
}
