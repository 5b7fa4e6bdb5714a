//! Amplitude-driven texture synthesis on unit spin fields.
//!
//! Each of the four modes sums one basis term per amplitude, weighted by
//! `|c_i|^2` and phase-shifted by `arg c_i`. Two decorrelated renders drive
//! the polar and azimuthal spin angles; [`colorize`] turns the spin field into
//! an RGB texture plus a gray channel carrying `m_z`.

mod color;
mod generate;
mod params;
mod render;
mod spin;

pub use color::{colorize, spin_hue_degrees, TextureImage};
pub(crate) use color::encode_png;
pub use generate::{generate_texture, read_spin_dump, write_spin_dump, GeneratedTexture};
pub use params::{params_from_state, Mode, TextureParams};
pub use render::{
    render_channel, render_raw, render_scalar_field, term_geometry, Channel, Term,
    CHAOTIC_BAND, LAYERED_SIGMA_FRACTION, RING_BAND, WAVE_BAND,
};
pub use spin::{
    field_to_spins, multi_skyrmion, skyrmion_ansatz, topological_charge, Skyrmion, SpinField,
};
