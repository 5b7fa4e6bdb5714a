//! Seeded statevector simulation whose amplitudes drive four synthetic
//! skyrmion spin-texture generators, plus the texture feature extraction,
//! SSIM similarity and PCA/k-means analysis used to compare the results.
//!
//! The crate is organised bottom-up:
//!
//! * [`qstate`] builds seeded brickwork circuits and simulates them on a dense
//!   statevector.
//! * [`texgen`] maps amplitudes to texture parameters, renders spin fields,
//!   colorizes them and measures the lattice topological charge.
//! * [`imgfeat`] extracts the two feature panels from a grayscale raster.
//! * [`simil`] computes SSIM matrices, PCA embeddings and k-means clusters.
//! * [`pipeline`] orchestrates batches and owns the on-disk formats.
//!
//! Batch-level work (one image per task, SSIM pairs) runs on rayon when the
//! `parallel` feature is enabled and falls back to plain iterators otherwise.

pub mod error;
pub mod imgfeat;
pub mod par;
pub mod pipeline;
pub mod plot;
pub mod qstate;
pub mod raster;
pub mod simil;
pub mod texgen;

pub use error::{Error, Result};
pub use raster::Raster;
