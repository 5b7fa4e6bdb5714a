use std::path::Path;

use image::{Rgb, RgbImage};

use super::spin::SpinField;
use crate::error::{Error, Result};
use crate::plot::hsl_to_rgb;
use crate::raster::Raster;

/// A rendered texture: RGB from the spin hue, gray from `(m_z + 1) / 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct TextureImage {
    pub gray: Raster,
    pub rgb: RgbImage,
}

impl TextureImage {
    pub fn width(&self) -> usize {
        self.gray.width()
    }

    pub fn height(&self) -> usize {
        self.gray.height()
    }

    /// Encodes the RGB and 8-bit gray images as PNG bytes.
    pub fn png_bytes(&self) -> Result<(Vec<u8>, Vec<u8>)> {
        Ok((encode_png(&self.rgb)?, encode_png(&self.gray.to_gray8())?))
    }

    pub fn save(&self, rgb_path: &Path, gray_path: &Path) -> Result<()> {
        let (rgb, gray) = self.png_bytes()?;
        std::fs::write(rgb_path, rgb).map_err(|e| Error::io(rgb_path, e))?;
        std::fs::write(gray_path, gray).map_err(|e| Error::io(gray_path, e))?;
        Ok(())
    }

    /// The gray channel as it reads back from its 8-bit PNG.
    pub fn gray_quantized(&self) -> Raster {
        Raster::from_gray8(&self.gray.to_gray8())
    }
}

pub(crate) fn encode_png<P, C>(img: &image::ImageBuffer<P, C>) -> Result<Vec<u8>>
where
    P: image::Pixel + image::PixelWithColorType,
    [P::Subpixel]: image::EncodableLayout,
    C: std::ops::Deref<Target = [P::Subpixel]>,
{
    let mut buf = std::io::Cursor::new(Vec::new());
    img.write_to(&mut buf, image::ImageFormat::Png)
        .map_err(|e| Error::image("<memory>", e))?;
    Ok(buf.into_inner())
}

/// `atan2(m_y, m_x)` in degrees, wrapped into `[0, 360)`.
pub fn spin_hue_degrees(m: &[f64; 3]) -> f64 {
    let h = m[1].atan2(m[0]).to_degrees().rem_euclid(360.0);
    if h >= 360.0 {
        0.0
    } else {
        h
    }
}

/// HSL coloring: hue from the in-plane angle, lightness `(m_z + 1) / 2`,
/// full saturation.
pub fn colorize(field: &SpinField) -> TextureImage {
    let (w, h) = (field.width(), field.height());
    let mut rgb = RgbImage::new(w as u32, h as u32);
    let mut gray = Vec::with_capacity(w * h);
    for (px, m) in rgb.pixels_mut().zip(field.spins()) {
        let l = ((m[2] + 1.0) / 2.0).clamp(0.0, 1.0);
        *px = Rgb(hsl_to_rgb(spin_hue_degrees(m), 1.0, l));
        gray.push(l);
    }
    TextureImage {
        gray: Raster::new(w, h, gray).expect("field dimensions are valid"),
        rgb,
    }
}
