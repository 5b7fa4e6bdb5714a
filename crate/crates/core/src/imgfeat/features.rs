use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::canny::{canny_edges, DEFAULT_HIGH, DEFAULT_LOW, DEFAULT_SIGMA};
use super::fractal::fractal_dimension;
use super::glcm::{glcm_features, GlcmStats, Offset, DEFAULT_LEVELS, DEFAULT_OFFSETS};
use super::haar::{haar_approx, pad_to_multiple};
use super::histogram::{lbp_histogram, pixel_histogram, DEFAULT_HIST_BINS};
use super::moments::{hu_moments, radial_profile};
use super::spectrum::{autocorrelation2d, fft_spectrum};
use crate::error::{Error, Result};
use crate::raster::Raster;

pub const RADIAL_BINS: usize = 32;
pub const LBP_BINS: usize = 256;
pub const HAAR_LEVELS: usize = 1;
const GLCM_STATS: usize = 4;

/// Total number of numeric columns in a [`FeatureVector`].
pub const FEATURE_DIM: usize = RADIAL_BINS
    + 2
    + 7
    + DEFAULT_OFFSETS.len() * GLCM_STATS
    + 1
    + DEFAULT_HIST_BINS
    + 1
    + 2
    + 1
    + LBP_BINS;

/// Sub-features that could not be computed normally. Values behind a flag are
/// NaN, except `GlcmCorrelation` (reported as 0) and `AcfNoDecay` (reported
/// as the largest lag searched).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureFlag {
    FftAnisotropy,
    Hu,
    GlcmCorrelation,
    FractalDim,
    Acf,
    AcfNoDecay,
}

impl FeatureFlag {
    const ALL: [FeatureFlag; 6] = [
        FeatureFlag::FftAnisotropy,
        FeatureFlag::Hu,
        FeatureFlag::GlcmCorrelation,
        FeatureFlag::FractalDim,
        FeatureFlag::Acf,
        FeatureFlag::AcfNoDecay,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FeatureFlag::FftAnisotropy => "fft_anisotropy",
            FeatureFlag::Hu => "hu",
            FeatureFlag::GlcmCorrelation => "glcm_correlation",
            FeatureFlag::FractalDim => "fractal_dim",
            FeatureFlag::Acf => "acf",
            FeatureFlag::AcfNoDecay => "acf_no_decay",
        }
    }
}

impl fmt::Display for FeatureFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FeatureFlag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FeatureFlag::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::invalid(format!("unknown feature flag {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub radial_profile: Vec<f64>,
    pub spectral_centroid: f64,
    pub anisotropy: f64,
    pub hu: [f64; 7],
    pub glcm: Vec<GlcmStats>,
    pub fractal_dim: f64,
    pub hist: Vec<u64>,
    pub edge_density: f64,
    pub acf_decay: (f64, f64),
    pub wavelet_energy_ll: f64,
    pub lbp_hist: Vec<f64>,
    pub flags: BTreeSet<FeatureFlag>,
}

fn offset_tag((dx, dy): Offset) -> String {
    let part = |v: i32| if v < 0 { format!("m{}", -v) } else { v.to_string() };
    format!("{}_{}", part(dx), part(dy))
}

/// Column names in the fixed order used by [`FeatureVector::values`] and
/// the feature CSV.
pub fn feature_columns() -> Vec<String> {
    let mut cols = Vec::with_capacity(FEATURE_DIM);
    cols.extend((0..RADIAL_BINS).map(|i| format!("radial_{i:02}")));
    cols.push("fft_centroid".into());
    cols.push("fft_anisotropy".into());
    cols.extend((1..=7).map(|i| format!("hu_{i}")));
    for o in DEFAULT_OFFSETS {
        for stat in ["contrast", "energy", "homogeneity", "correlation"] {
            cols.push(format!("glcm_{}_{stat}", offset_tag(o)));
        }
    }
    cols.push("fractal_dim".into());
    cols.extend((0..DEFAULT_HIST_BINS).map(|i| format!("hist_{i:02}")));
    cols.push("edge_density".into());
    cols.push("acf_decay_x".into());
    cols.push("acf_decay_y".into());
    cols.push("wavelet_energy_ll".into());
    cols.extend((0..LBP_BINS).map(|i| format!("lbp_{i:03}")));
    cols
}

impl FeatureVector {
    /// Flattened numeric row in [`feature_columns`] order.
    pub fn values(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(FEATURE_DIM);
        v.extend(&self.radial_profile);
        v.push(self.spectral_centroid);
        v.push(self.anisotropy);
        v.extend(self.hu);
        for g in &self.glcm {
            v.extend([g.contrast, g.energy, g.homogeneity, g.correlation]);
        }
        v.push(self.fractal_dim);
        v.extend(self.hist.iter().map(|&c| c as f64));
        v.push(self.edge_density);
        v.push(self.acf_decay.0);
        v.push(self.acf_decay.1);
        v.push(self.wavelet_energy_ll);
        v.extend(&self.lbp_hist);
        v
    }

    /// Inverse of [`FeatureVector::values`].
    pub fn from_values(values: &[f64], flags: BTreeSet<FeatureFlag>) -> Result<Self> {
        if values.len() != FEATURE_DIM {
            return Err(Error::invalid(format!(
                "feature row has {} values, expected {FEATURE_DIM}",
                values.len()
            )));
        }
        let mut it = values.iter().copied();
        let mut take = |n: usize| -> Vec<f64> { it.by_ref().take(n).collect() };
        let radial_profile = take(RADIAL_BINS);
        let fft = take(2);
        let hu: [f64; 7] = take(7).try_into().expect("seven values");
        let degenerate_corr = flags.contains(&FeatureFlag::GlcmCorrelation);
        let glcm = take(DEFAULT_OFFSETS.len() * GLCM_STATS)
            .chunks_exact(GLCM_STATS)
            .map(|c| GlcmStats {
                contrast: c[0],
                energy: c[1],
                homogeneity: c[2],
                correlation: c[3],
                correlation_degenerate: degenerate_corr && c[3] == 0.0,
            })
            .collect();
        let fractal_dim = take(1)[0];
        let hist = take(DEFAULT_HIST_BINS)
            .into_iter()
            .map(|c| {
                if c >= 0.0 && c.fract() == 0.0 {
                    Ok(c as u64)
                } else {
                    Err(Error::invalid(format!("histogram count {c} is not a count")))
                }
            })
            .collect::<Result<Vec<u64>>>()?;
        let rest = take(4);
        let lbp_hist = take(LBP_BINS);
        Ok(Self {
            radial_profile,
            spectral_centroid: fft[0],
            anisotropy: fft[1],
            hu,
            glcm,
            fractal_dim,
            hist,
            edge_density: rest[0],
            acf_decay: (rest[1], rest[2]),
            wavelet_energy_ll: rest[3],
            lbp_hist,
            flags,
        })
    }

    pub fn flags_string(&self) -> String {
        self.flags.iter().map(|f| f.as_str()).collect::<Vec<_>>().join(";")
    }

    pub fn has_nan(&self) -> bool {
        self.values().iter().any(|v| v.is_nan())
    }
}

/// Defaults behind [`extract_all`], echoed into batch manifests.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureParams {
    pub radial_bins: usize,
    pub hist_bins: usize,
    pub glcm_levels: usize,
    pub glcm_offsets: Vec<Offset>,
    pub canny_sigma: f64,
    pub canny_low: f64,
    pub canny_high: f64,
    pub haar_levels: usize,
    pub lbp: String,
    pub fractal: String,
    pub hu_scaling: String,
    pub acf_decay_threshold: String,
}

impl Default for FeatureParams {
    fn default() -> Self {
        Self {
            radial_bins: RADIAL_BINS,
            hist_bins: DEFAULT_HIST_BINS,
            glcm_levels: DEFAULT_LEVELS,
            glcm_offsets: DEFAULT_OFFSETS.to_vec(),
            canny_sigma: DEFAULT_SIGMA,
            canny_low: DEFAULT_LOW,
            canny_high: DEFAULT_HIGH,
            haar_levels: HAAR_LEVELS,
            lbp: "radius 1, 8 neighbors clockwise from top-left, bit set iff neighbor >= center"
                .into(),
            fractal: "Otsu (256 bins) foreground, box sizes 2..side/4, least-squares slope".into(),
            hu_scaling: "mass-normalized, sign(h) * log10(|h| + 1e-30)".into(),
            acf_decay_threshold: "1/e".into(),
        }
    }
}

/// Both feature panels for one grayscale image, with defaults from
/// [`FeatureParams`]. A constant image has no intensity structure for the Hu
/// moments to describe, so they are flagged along with the other degenerate
/// sub-features.
pub fn extract_all(gray: &Raster) -> Result<FeatureVector> {
    let (w, h) = (gray.width(), gray.height());
    if w < 16 || h < 16 {
        return Err(Error::invalid(format!(
            "feature extraction needs at least 16x16 pixels, got {w}x{h}"
        )));
    }
    let mut flags = BTreeSet::new();
    let (lo, hi) = gray.min_max();
    let constant = lo == hi;

    let radial_profile = radial_profile(gray, RADIAL_BINS);

    let spectrum = fft_spectrum(gray);
    let anisotropy = if spectrum.stats.anisotropy.is_finite() {
        spectrum.stats.anisotropy
    } else {
        flags.insert(FeatureFlag::FftAnisotropy);
        f64::NAN
    };

    let hu = match hu_moments(gray) {
        Ok(h) if !constant => h,
        Ok(_) | Err(Error::DegenerateInput(_)) => {
            flags.insert(FeatureFlag::Hu);
            [f64::NAN; 7]
        }
        Err(e) => return Err(e),
    };

    let glcm = glcm_features(gray, DEFAULT_LEVELS, &DEFAULT_OFFSETS)?;
    if glcm.iter().any(|g| g.correlation_degenerate) {
        flags.insert(FeatureFlag::GlcmCorrelation);
    }

    let fractal_dim = match fractal_dimension(gray) {
        Ok(d) => d,
        Err(Error::DegenerateInput(_)) => {
            flags.insert(FeatureFlag::FractalDim);
            f64::NAN
        }
        Err(e) => return Err(e),
    };

    let hist = pixel_histogram(gray, DEFAULT_HIST_BINS);
    let edge_density = canny_edges(gray, DEFAULT_SIGMA, DEFAULT_LOW, DEFAULT_HIGH).density();

    let acf_decay = match autocorrelation2d(gray) {
        Ok(acf) => {
            if acf.decay_x.is_none() || acf.decay_y.is_none() {
                flags.insert(FeatureFlag::AcfNoDecay);
            }
            (
                acf.decay_x.unwrap_or(w / 2) as f64,
                acf.decay_y.unwrap_or(h / 2) as f64,
            )
        }
        Err(Error::DegenerateInput(_)) => {
            flags.insert(FeatureFlag::Acf);
            (f64::NAN, f64::NAN)
        }
        Err(e) => return Err(e),
    };

    let padded = pad_to_multiple(gray, 1 << HAAR_LEVELS);
    let wavelet_energy_ll = haar_approx(&padded, HAAR_LEVELS)?.energy_ll();

    Ok(FeatureVector {
        radial_profile,
        spectral_centroid: spectrum.stats.centroid,
        anisotropy,
        hu,
        glcm,
        fractal_dim,
        hist,
        edge_density,
        acf_decay,
        wavelet_energy_ll,
        lbp_hist: lbp_histogram(gray),
        flags,
    })
}
