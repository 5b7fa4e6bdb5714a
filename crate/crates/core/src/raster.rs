//! Row-major single-channel `f64` raster shared by scalar fields and
//! grayscale images.

use std::path::Path;

use image::{GrayImage, Luma};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Raster {
    width: usize,
    height: usize,
    data: Vec<f64>,
}

impl Raster {
    pub fn new(width: usize, height: usize, data: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::invalid("raster dimensions must be positive"));
        }
        if data.len() != width * height {
            return Err(Error::invalid(format!(
                "raster data has {} values, expected {}x{}",
                data.len(),
                width,
                height
            )));
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    pub fn filled(width: usize, height: usize, value: f64) -> Self {
        assert!(width > 0 && height > 0, "raster dimensions must be positive");
        Self {
            width,
            height,
            data: vec![value; width * height],
        }
    }

    /// Builds a raster by evaluating `f(x, y)` at every pixel.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        assert!(width > 0 && height > 0, "raster dimensions must be positive");
        let mut data = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Self {
            width,
            height,
            data,
        }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, value: f64) {
        self.data[y * self.width + x] = value;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    pub fn row(&self, y: usize) -> &[f64] {
        &self.data[y * self.width..(y + 1) * self.width]
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            width: self.width,
            height: self.height,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn min_max(&self) -> (f64, f64) {
        self.data
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            })
    }

    pub fn sum(&self) -> f64 {
        self.data.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.sum() / self.data.len() as f64
    }

    /// Rotates the raster by 90 degrees clockwise.
    pub fn rotate90(&self) -> Self {
        let (w, h) = (self.width, self.height);
        // new width = h, new height = w; new(x', y') = old(y', h - 1 - x')
        Self::from_fn(h, w, |nx, ny| self.get(ny, h - 1 - nx))
    }

    /// Values rescaled linearly so that `[lo, hi]` maps to `[0, 1]`.
    /// A constant raster maps to zeros.
    pub fn normalized(&self) -> Self {
        let (lo, hi) = self.min_max();
        let span = hi - lo;
        if span > 0.0 {
            self.map(|v| (v - lo) / span)
        } else {
            self.map(|_| 0.0)
        }
    }

    /// Quantizes values in `[0, 1]` to 8 bits (clamped, round-half-up).
    pub fn to_gray8(&self) -> GrayImage {
        let mut img = GrayImage::new(self.width as u32, self.height as u32);
        for (px, &v) in img.pixels_mut().zip(&self.data) {
            *px = Luma([quantize_unit(v)]);
        }
        img
    }

    pub fn from_gray8(img: &GrayImage) -> Self {
        let data = img.pixels().map(|p| f64::from(p.0[0]) / 255.0).collect();
        Self {
            width: img.width() as usize,
            height: img.height() as usize,
            data,
        }
    }

    /// Loads any image file as a grayscale raster in `[0, 1]`.
    pub fn load_gray(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let img = image::open(path).map_err(|e| Error::image(path, e))?;
        Ok(Self::from_gray8(&img.to_luma8()))
    }
}

#[inline]
pub(crate) fn quantize_unit(v: f64) -> u8 {
    (v.clamp(0.0, 1.0) * 255.0 + 0.5).floor() as u8
}
