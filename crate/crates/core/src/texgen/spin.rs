use std::f64::consts::{FRAC_1_PI, PI};

use crate::error::{Error, Result};
use crate::raster::Raster;

/// Grid of 3-vectors `m(x, y)`, row-major.
///
/// Construction does not normalize; generators in this module produce unit
/// spins within `1e-9`, while dumps read back from `f32` carry ~`1e-7` error.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinField {
    width: usize,
    height: usize,
    spins: Vec<[f64; 3]>,
}

impl SpinField {
    pub fn new(width: usize, height: usize, spins: Vec<[f64; 3]>) -> Result<Self> {
        if width == 0 || height == 0 || spins.len() != width * height {
            return Err(Error::invalid(format!(
                "spin field {width}x{height} with {} cells",
                spins.len()
            )));
        }
        Ok(Self {
            width,
            height,
            spins,
        })
    }

    pub fn uniform(width: usize, height: usize, m: [f64; 3]) -> Result<Self> {
        Self::new(width, height, vec![m; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> [f64; 3] {
        self.spins[y * self.width + x]
    }

    pub fn spins(&self) -> &[[f64; 3]] {
        &self.spins
    }

    pub fn max_norm_deviation(&self) -> f64 {
        self.spins
            .iter()
            .map(|m| (norm(m) - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Rotates every spin about the z axis by `alpha` (a global helicity shift).
    pub fn rotate_in_plane(&self, alpha: f64) -> Self {
        let (s, c) = alpha.sin_cos();
        Self {
            width: self.width,
            height: self.height,
            spins: self
                .spins
                .iter()
                .map(|&[x, y, z]| [c * x - s * y, s * x + c * y, z])
                .collect(),
        }
    }

    pub fn mz(&self) -> Raster {
        Raster::new(
            self.width,
            self.height,
            self.spins.iter().map(|m| m[2]).collect(),
        )
        .expect("dimensions already validated")
    }
}

#[inline]
fn norm(m: &[f64; 3]) -> f64 {
    (m[0] * m[0] + m[1] * m[1] + m[2] * m[2]).sqrt()
}

#[inline]
fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Spherical angles from two renders in `[-1, 1]`:
/// `theta = pi (u + 1) / 2`, `phi = pi (v + 1)`.
pub fn field_to_spins(u: &Raster, v: &Raster) -> Result<SpinField> {
    if u.width() != v.width() || u.height() != v.height() {
        return Err(Error::invalid(format!(
            "polar render is {}x{} but azimuthal render is {}x{}",
            u.width(),
            u.height(),
            v.width(),
            v.height()
        )));
    }
    let spins = u
        .data()
        .iter()
        .zip(v.data())
        .map(|(&u, &v)| {
            let theta = PI * (u.clamp(-1.0, 1.0) + 1.0) / 2.0;
            let phi = PI * (v.clamp(-1.0, 1.0) + 1.0);
            let (st, ct) = theta.sin_cos();
            let (sp, cp) = phi.sin_cos();
            [st * cp, st * sp, ct]
        })
        .collect();
    SpinField::new(u.width(), u.height(), spins)
}

/// Parameters of one isolated skyrmion. Lengths are in pixels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Skyrmion {
    pub center: (f64, f64),
    pub radius: f64,
    /// Winding of the in-plane angle, `+1` or `-1`.
    pub vorticity: i32,
    pub helicity: f64,
    /// Far-field `m_z`, `+1` or `-1`; the core points the other way.
    pub polarity: i32,
}

impl Skyrmion {
    fn validate(&self, width: usize, height: usize) -> Result<()> {
        if !(self.radius > 0.0) {
            return Err(Error::invalid("skyrmion radius must be positive"));
        }
        let (cx, cy) = self.center;
        if !(cx >= 0.0 && cy >= 0.0 && cx < width as f64 && cy < height as f64) {
            return Err(Error::invalid(format!(
                "skyrmion center ({cx}, {cy}) lies outside {width}x{height}"
            )));
        }
        if self.vorticity.abs() != 1 || self.polarity.abs() != 1 {
            return Err(Error::invalid("vorticity and polarity must be +1 or -1"));
        }
        Ok(())
    }

    /// Extent of the texture: spins are uniform beyond twice the radius.
    fn reach(&self) -> f64 {
        2.0 * self.radius
    }

    fn spin_at(&self, x: f64, y: f64) -> [f64; 3] {
        let (dx, dy) = (x - self.center.0, y - self.center.1);
        let rho = dx.hypot(dy);
        let theta = PI * (1.0 - rho / self.reach()).clamp(0.0, 1.0);
        let psi = f64::from(self.vorticity) * dy.atan2(dx) + self.helicity;
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = psi.sin_cos();
        [st * cp, st * sp, f64::from(self.polarity) * ct]
    }
}

/// Linear-profile skyrmion: `theta(rho) = pi clamp(1 - rho / 2R, 0, 1)`,
/// in-plane angle `vorticity atan2(y - cy, x - cx) + helicity`, and
/// `m_z = polarity cos(theta)`, so the far field is `(0, 0, polarity)`.
pub fn skyrmion_ansatz(width: usize, height: usize, skyrmion: &Skyrmion) -> Result<SpinField> {
    multi_skyrmion(width, height, std::slice::from_ref(skyrmion))
}

/// Several skyrmions sharing one far field. Each cell takes its spin from the
/// first skyrmion whose reach covers it.
pub fn multi_skyrmion(width: usize, height: usize, skyrmions: &[Skyrmion]) -> Result<SpinField> {
    let first = skyrmions
        .first()
        .ok_or_else(|| Error::invalid("at least one skyrmion is required"))?;
    for s in skyrmions {
        s.validate(width, height)?;
        if s.polarity != first.polarity {
            return Err(Error::invalid("skyrmions must share the far-field polarity"));
        }
    }
    let far = [0.0, 0.0, f64::from(first.polarity)];
    let mut spins = Vec::with_capacity(width * height);
    for y in 0..height {
        for x in 0..width {
            let (fx, fy) = (x as f64, y as f64);
            let m = skyrmions
                .iter()
                .find(|s| (fx - s.center.0).hypot(fy - s.center.1) < s.reach())
                .map_or(far, |s| s.spin_at(fx, fy));
            spins.push(m);
        }
    }
    SpinField::new(width, height, spins)
}

/// Signed solid angle of the spherical triangle `(a, b, c)`.
#[inline]
fn solid_angle(a: &[f64; 3], b: &[f64; 3], c: &[f64; 3]) -> f64 {
    let triple = dot(a, &cross(b, c));
    let denom = 1.0 + dot(a, b) + dot(b, c) + dot(c, a);
    2.0 * triple.atan2(denom)
}

/// Lattice topological charge `Q = (1/4pi) sum Omega`.
///
/// Every plaquette `(x, y)-(x+1, y+1)` is split into the triangles
/// `[(x,y), (x+1,y), (x+1,y+1)]` and `[(x,y), (x+1,y+1), (x,y+1)]`, both
/// counterclockwise in `(x, y)` coordinates. With that orientation the
/// linear skyrmion ansatz carries `Q = -vorticity * polarity`.
pub fn topological_charge(field: &SpinField) -> Result<f64> {
    let dev = field.max_norm_deviation();
    if dev > 1e-6 {
        return Err(Error::invalid(format!(
            "spin norm deviates from 1 by {dev:e}"
        )));
    }
    let (w, h) = (field.width(), field.height());
    let mut total = 0.0;
    for y in 0..h.saturating_sub(1) {
        for x in 0..w - 1 {
            let a = field.get(x, y);
            let b = field.get(x + 1, y);
            let c = field.get(x + 1, y + 1);
            let d = field.get(x, y + 1);
            total += solid_angle(&a, &b, &c) + solid_angle(&a, &c, &d);
        }
    }
    Ok(total * 0.25 * FRAC_1_PI)
}
