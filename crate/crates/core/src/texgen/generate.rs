use std::io::{Read, Write};
use std::path::Path;

use super::color::{colorize, TextureImage};
use super::params::{params_from_state, Mode};
use super::render::{render_channel, Channel};
use super::spin::{field_to_spins, SpinField};
use crate::error::{Error, Result};
use crate::qstate::{build_random_circuit, simulate, Statevector};

/// Everything produced for one texture.
#[derive(Debug, Clone)]
pub struct GeneratedTexture {
    pub state: Statevector,
    pub field: SpinField,
    pub image: TextureImage,
}

/// Circuit, statevector, two renders, spins and colors for one seed.
/// `seed` drives both the circuit and the per-term geometry substreams.
pub fn generate_texture(
    seed: u64,
    mode: Mode,
    size: (usize, usize),
    n_qubits: usize,
    depth: usize,
) -> Result<GeneratedTexture> {
    let circuit = build_random_circuit(seed, n_qubits, depth)?;
    let state = simulate(&circuit)?;
    let params = params_from_state(&state, mode, size, seed)?;
    let u = render_channel(&params, Channel::Polar)?;
    let v = render_channel(&params, Channel::Azimuthal)?;
    let field = field_to_spins(&u, &v)?;
    let image = colorize(&field);
    Ok(GeneratedTexture {
        state,
        field,
        image,
    })
}

/// Flat little-endian dump: `u32 width, u32 height, u32 channels (= 3)`,
/// then `f32` triples `(m_x, m_y, m_z)` in row-major order.
pub fn write_spin_dump(field: &SpinField, path: &Path) -> Result<()> {
    let mut buf = Vec::with_capacity(12 + field.spins().len() * 12);
    buf.extend_from_slice(&(field.width() as u32).to_le_bytes());
    buf.extend_from_slice(&(field.height() as u32).to_le_bytes());
    buf.extend_from_slice(&3u32.to_le_bytes());
    for m in field.spins() {
        for c in m {
            buf.extend_from_slice(&(*c as f32).to_le_bytes());
        }
    }
    let mut f = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    f.write_all(&buf).map_err(|e| Error::io(path, e))
}

pub fn read_spin_dump(path: &Path) -> Result<SpinField> {
    let mut bytes = Vec::new();
    std::fs::File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|e| Error::io(path, e))?;
    let word = |i: usize| -> Result<[u8; 4]> {
        bytes
            .get(i..i + 4)
            .map(|b| [b[0], b[1], b[2], b[3]])
            .ok_or_else(|| Error::invalid("truncated spin dump"))
    };
    let width = u32::from_le_bytes(word(0)?) as usize;
    let height = u32::from_le_bytes(word(4)?) as usize;
    let channels = u32::from_le_bytes(word(8)?);
    if channels != 3 {
        return Err(Error::invalid(format!("spin dump has {channels} channels")));
    }
    if bytes.len() != 12 + width * height * 12 {
        return Err(Error::invalid("spin dump length does not match header"));
    }
    let spins = bytes[12..]
        .chunks_exact(12)
        .map(|c| {
            let f = |k: usize| f64::from(f32::from_le_bytes([c[k], c[k + 1], c[k + 2], c[k + 3]]));
            [f(0), f(4), f(8)]
        })
        .collect();
    SpinField::new(width, height, spins)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::texgen::topological_charge;

    #[test]
    fn generation_is_deterministic_to_the_byte() {
        let a = generate_texture(1, Mode::Chaotic, (64, 64), 6, 6).unwrap();
        let b = generate_texture(1, Mode::Chaotic, (64, 64), 6, 6).unwrap();
        assert_eq!(a.image.png_bytes().unwrap(), b.image.png_bytes().unwrap());
        assert_eq!(a.field, b.field);
    }

    #[test]
    fn generated_spins_are_unit() {
        for mode in Mode::ALL {
            let t = generate_texture(5, mode, (48, 48), 6, 6).unwrap();
            assert!(t.field.max_norm_deviation() < 1e-9);
            assert!(topological_charge(&t.field).unwrap().is_finite());
        }
    }

    #[test]
    fn spin_dump_round_trip() {
        let t = generate_texture(2, Mode::Ring, (20, 12), 6, 6).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("spins.bin");
        write_spin_dump(&t.field, &path).unwrap();
        let bytes = std::fs::read(&path).unwrap();
        assert_eq!(&bytes[..12], &[20, 0, 0, 0, 12, 0, 0, 0, 3, 0, 0, 0]);
        let back = read_spin_dump(&path).unwrap();
        assert_eq!((back.width(), back.height()), (20, 12));
        for (a, b) in t.field.spins().iter().zip(back.spins()) {
            for k in 0..3 {
                assert!((a[k] - b[k]).abs() < 1e-7);
            }
        }
        std::fs::write(&path, &bytes[..20]).unwrap();
        assert!(read_spin_dump(&path).is_err());
    }
}
