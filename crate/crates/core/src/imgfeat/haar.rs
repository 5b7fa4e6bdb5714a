use crate::error::{Error, Result};
use crate::raster::Raster;

/// Detail bands of one decomposition level.
#[derive(Debug, Clone, PartialEq)]
pub struct DetailBands {
    /// Horizontal differences (across columns).
    pub lh: Raster,
    /// Vertical differences (across rows).
    pub hl: Raster,
    pub hh: Raster,
}

/// Orthonormal 2D Haar decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct HaarDecomposition {
    /// Coarsest approximation band.
    pub ll: Raster,
    /// Detail bands, finest level first.
    pub details: Vec<DetailBands>,
    width: usize,
    height: usize,
}

fn forward_level(img: &Raster) -> (Raster, DetailBands) {
    let (hw, hh) = (img.width() / 2, img.height() / 2);
    let mut ll = vec![0.0; hw * hh];
    let mut lh = vec![0.0; hw * hh];
    let mut hl = vec![0.0; hw * hh];
    let mut d = vec![0.0; hw * hh];
    for y in 0..hh {
        for x in 0..hw {
            let a = img.get(2 * x, 2 * y);
            let b = img.get(2 * x + 1, 2 * y);
            let c = img.get(2 * x, 2 * y + 1);
            let e = img.get(2 * x + 1, 2 * y + 1);
            let i = y * hw + x;
            ll[i] = (a + b + c + e) / 2.0;
            lh[i] = (a - b + c - e) / 2.0;
            hl[i] = (a + b - c - e) / 2.0;
            d[i] = (a - b - c + e) / 2.0;
        }
    }
    let r = |v| Raster::new(hw, hh, v).expect("half-size band");
    (r(ll), DetailBands { lh: r(lh), hl: r(hl), hh: r(d) })
}

fn inverse_level(ll: &Raster, bands: &DetailBands) -> Raster {
    let (hw, hh) = (ll.width(), ll.height());
    let mut out = Raster::filled(2 * hw, 2 * hh, 0.0);
    for y in 0..hh {
        for x in 0..hw {
            let (s, h, v, d) = (ll.get(x, y), bands.lh.get(x, y), bands.hl.get(x, y), bands.hh.get(x, y));
            out.set(2 * x, 2 * y, (s + h + v + d) / 2.0);
            out.set(2 * x + 1, 2 * y, (s - h + v - d) / 2.0);
            out.set(2 * x, 2 * y + 1, (s + h - v - d) / 2.0);
            out.set(2 * x + 1, 2 * y + 1, (s - h - v + d) / 2.0);
        }
    }
    out
}

fn energy(r: &Raster) -> f64 {
    r.data().iter().map(|v| v * v).sum()
}

impl HaarDecomposition {
    pub fn levels(&self) -> usize {
        self.details.len()
    }

    pub fn reconstruct(&self) -> Raster {
        self.details
            .iter()
            .rev()
            .fold(self.ll.clone(), |ll, bands| inverse_level(&ll, bands))
    }

    /// Total energy across all bands; equals the image energy.
    pub fn total_energy(&self) -> f64 {
        energy(&self.ll)
            + self
                .details
                .iter()
                .map(|b| energy(&b.lh) + energy(&b.hl) + energy(&b.hh))
                .sum::<f64>()
    }

    /// Share of energy in the approximation band; an all-zero image counts
    /// as fully approximated.
    pub fn energy_ll(&self) -> f64 {
        let total = self.total_energy();
        if total > 0.0 {
            energy(&self.ll) / total
        } else {
            1.0
        }
    }

    /// Approximation band at full resolution: block means replicated over
    /// each `2^levels` block.
    pub fn ll_upsampled(&self) -> Raster {
        let f = 1usize << self.levels();
        let scale = f as f64;
        Raster::from_fn(self.width, self.height, |x, y| self.ll.get(x / f, y / f) / scale)
    }
}

pub fn haar_approx(gray: &Raster, levels: usize) -> Result<HaarDecomposition> {
    if levels == 0 {
        return Err(Error::invalid("Haar decomposition needs at least one level"));
    }
    let block = 1usize.checked_shl(levels as u32).unwrap_or(0);
    if block == 0 || gray.width() % block != 0 || gray.height() % block != 0 {
        return Err(Error::invalid(format!(
            "{}x{} is not divisible by 2^{levels}; pad the image first",
            gray.width(),
            gray.height()
        )));
    }
    let mut ll = gray.clone();
    let mut details = Vec::with_capacity(levels);
    for _ in 0..levels {
        let (next, bands) = forward_level(&ll);
        details.push(bands);
        ll = next;
    }
    Ok(HaarDecomposition {
        ll,
        details,
        width: gray.width(),
        height: gray.height(),
    })
}

/// Pads by edge replication up to the next multiple of `multiple`.
pub fn pad_to_multiple(gray: &Raster, multiple: usize) -> Raster {
    let w = gray.width().div_ceil(multiple) * multiple;
    let h = gray.height().div_ceil(multiple) * multiple;
    if (w, h) == (gray.width(), gray.height()) {
        return gray.clone();
    }
    Raster::from_fn(w, h, |x, y| {
        gray.get(x.min(gray.width() - 1), y.min(gray.height() - 1))
    })
}
