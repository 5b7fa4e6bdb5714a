use crate::error::{Error, Result};
use crate::raster::Raster;

/// Mean gray in `n_bins` concentric annuli around the image center, out to
/// the corner distance. Empty bins inherit the previous bin's value (a
/// leading empty bin takes the first populated one).
pub fn radial_profile(gray: &Raster, n_bins: usize) -> Vec<f64> {
    let n_bins = n_bins.max(1);
    let (w, h) = (gray.width(), gray.height());
    let (cx, cy) = ((w as f64 - 1.0) / 2.0, (h as f64 - 1.0) / 2.0);
    let rho_max = cx.hypot(cy);
    let mut sum = vec![0.0; n_bins];
    let mut count = vec![0usize; n_bins];
    for y in 0..h {
        for x in 0..w {
            let rho = (x as f64 - cx).hypot(y as f64 - cy);
            let b = if rho_max > 0.0 {
                ((rho / rho_max * n_bins as f64) as usize).min(n_bins - 1)
            } else {
                0
            };
            sum[b] += gray.get(x, y);
            count[b] += 1;
        }
    }
    let mut out: Vec<Option<f64>> = sum
        .iter()
        .zip(&count)
        .map(|(&s, &c)| (c > 0).then(|| s / c as f64))
        .collect();
    let first = out.iter().flatten().next().copied().unwrap_or(0.0);
    let mut prev = first;
    out.iter_mut()
        .map(|v| {
            let value = v.unwrap_or(prev);
            prev = value;
            value
        })
        .collect()
}

/// The seven Hu invariants (unscaled).
///
/// Intensities are mass-normalized before the usual `mu_00` power scaling,
/// i.e. `eta_pq = mu_pq / (M N^{(p+q)/2})` with `M = sum f` and `N` the pixel
/// count. This keeps translation and rotation invariance and adds invariance
/// to a uniform intensity factor.
pub fn hu_invariants(gray: &Raster) -> Result<[f64; 7]> {
    let mass = gray.sum();
    if !(mass > 0.0) || !mass.is_finite() {
        return Err(Error::degenerate("Hu moments need positive total intensity"));
    }
    let (w, h) = (gray.width(), gray.height());
    let (mut sx, mut sy) = (0.0, 0.0);
    for y in 0..h {
        for (x, &v) in gray.row(y).iter().enumerate() {
            sx += x as f64 * v;
            sy += y as f64 * v;
        }
    }
    let (xc, yc) = (sx / mass, sy / mass);
    // central moments mu[p][q], p + q in {2, 3}
    let mut mu = [[0.0f64; 4]; 4];
    for y in 0..h {
        let dy = y as f64 - yc;
        for (x, &v) in gray.row(y).iter().enumerate() {
            if v == 0.0 {
                continue;
            }
            let dx = x as f64 - xc;
            let (dx2, dy2) = (dx * dx, dy * dy);
            mu[2][0] += v * dx2;
            mu[0][2] += v * dy2;
            mu[1][1] += v * dx * dy;
            mu[3][0] += v * dx2 * dx;
            mu[0][3] += v * dy2 * dy;
            mu[2][1] += v * dx2 * dy;
            mu[1][2] += v * dx * dy2;
        }
    }
    let n = (w * h) as f64;
    let eta = |p: usize, q: usize| mu[p][q] / mass / n.powf((p + q) as f64 / 2.0);
    let (n20, n02, n11) = (eta(2, 0), eta(0, 2), eta(1, 1));
    let (n30, n03, n21, n12) = (eta(3, 0), eta(0, 3), eta(2, 1), eta(1, 2));

    let a = n30 + n12;
    let b = n21 + n03;
    let c = n30 - 3.0 * n12;
    let d = 3.0 * n21 - n03;
    Ok([
        n20 + n02,
        (n20 - n02).powi(2) + 4.0 * n11 * n11,
        c * c + d * d,
        a * a + b * b,
        c * a * (a * a - 3.0 * b * b) + d * b * (3.0 * a * a - b * b),
        (n20 - n02) * (a * a - b * b) + 4.0 * n11 * a * b,
        d * a * (a * a - 3.0 * b * b) - c * b * (3.0 * a * a - b * b),
    ])
}

/// Hu invariants in signed log scale, `sign(h) log10(|h| + 1e-30)`.
pub fn hu_moments(gray: &Raster) -> Result<[f64; 7]> {
    Ok(hu_invariants(gray)?.map(|h| h.signum() * (h.abs() + 1e-30).log10()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bump(u: f64, v: f64) -> f64 {
        (1.0 - u * u - v * v).max(0.0).powi(2)
    }

    fn blob(w: usize, h: usize, ox: f64, oy: f64) -> Raster {
        // two compact anisotropic bumps, asymmetric so all seven invariants are nonzero
        Raster::from_fn(w, h, |x, y| {
            let (x, y) = (x as f64 - ox, y as f64 - oy);
            let g1 = bump((x - 20.0) / 9.0, (y - 18.0) / 4.0);
            let (u, v) = (x - 28.0, y - 27.0);
            let g2 = 0.6 * bump((u + 0.5 * v) / 3.0, (v - 0.3 * u) / 6.0);
            g1 + g2
        })
    }

    #[test]
    fn constant_profile() {
        let p = radial_profile(&Raster::filled(17, 12, 0.5), 8);
        assert!(p.iter().all(|&v| v == 0.5));
    }

    #[test]
    fn single_bin_is_the_mean() {
        let img = Raster::from_fn(9, 7, |x, y| (x + 2 * y) as f64 / 30.0);
        let p = radial_profile(&img, 1);
        assert!((p[0] - img.mean()).abs() < 1e-15);
    }

    #[test]
    fn gaussian_profile_is_non_increasing() {
        let img = Raster::from_fn(64, 64, |x, y| {
            let r2 = (x as f64 - 31.5).powi(2) + (y as f64 - 31.5).powi(2);
            (-r2 / 200.0).exp()
        });
        let p = radial_profile(&img, 16);
        assert!(p.windows(2).all(|w| w[1] <= w[0]), "{p:?}");
    }

    #[test]
    fn empty_bins_inherit() {
        // 2x2 image: all pixels at the same radius, so only the last bin fills
        let p = radial_profile(&Raster::new(2, 2, vec![0.1, 0.2, 0.3, 0.4]).unwrap(), 4);
        assert!(p.iter().all(|&v| (v - 0.25).abs() < 1e-15));
    }

    #[test]
    fn hu_translation_and_scale_invariance() {
        let a = hu_moments(&blob(64, 64, 0.0, 0.0)).unwrap();
        let b = hu_moments(&blob(64, 64, 10.0, 7.0)).unwrap();
        let c = hu_moments(&blob(64, 64, 0.0, 0.0).map(|v| 2.0 * v)).unwrap();
        for k in 0..7 {
            assert!((a[k] - b[k]).abs() < 1e-6, "h{} {} vs {}", k + 1, a[k], b[k]);
            assert!((a[k] - c[k]).abs() < 1e-6);
        }
    }

    #[test]
    fn hu_rotation_invariance() {
        let img = blob(64, 64, 6.0, 8.0);
        let a = hu_moments(&img).unwrap();
        let b = hu_moments(&img.rotate90()).unwrap();
        for k in 0..7 {
            assert!((a[k] - b[k]).abs() < 1e-4);
        }
    }

    #[test]
    fn zero_mass_is_degenerate() {
        assert!(matches!(
            hu_moments(&Raster::filled(8, 8, 0.0)),
            Err(Error::DegenerateInput(_))
        ));
    }
}
