//! Texture features of a grayscale raster with values in `[0, 1]`.
//!
//! Panel A: radial profile, FFT spectrum, Hu moments, GLCM statistics and
//! box-counting fractal dimension. Panel B: pixel histogram, Canny edges,
//! 2D autocorrelation, Haar approximation and LBP histogram.
//! [`extract_all`] collects all of them into a [`FeatureVector`].

mod canny;
mod features;
mod fractal;
mod glcm;
mod haar;
mod histogram;
mod moments;
mod panels;
mod spectrum;

pub use canny::{canny_edges, gaussian_blur, EdgeMap, DEFAULT_HIGH, DEFAULT_LOW, DEFAULT_SIGMA};
pub use features::{
    extract_all, feature_columns, FeatureFlag, FeatureParams, FeatureVector, FEATURE_DIM,
    HAAR_LEVELS, LBP_BINS, RADIAL_BINS,
};
pub use fractal::{
    box_counting_dimension, box_counts, fractal_dimension, otsu_bin_threshold, otsu_mask,
};
pub use glcm::{
    cooccurrence, glcm_features, glcm_stats, GlcmStats, Offset, DEFAULT_LEVELS, DEFAULT_OFFSETS,
};
pub use haar::{haar_approx, pad_to_multiple, DetailBands, HaarDecomposition};
pub use histogram::{lbp_codes, lbp_histogram, pixel_histogram, DEFAULT_HIST_BINS, LBP_NEIGHBORS};
pub use moments::{hu_invariants, hu_moments, radial_profile};
pub use panels::{panel_a, panel_b};
pub use spectrum::{
    autocorrelation2d, fft_spectrum, fftshift, power_spectrum, spectrum_stats, Autocorrelation,
    FftStats, Spectrum,
};
