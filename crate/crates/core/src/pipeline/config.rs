use std::path::PathBuf;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::par::Execution;
use crate::texgen::Mode;

/// Environment variable capping the worker pool.
pub const THREADS_ENV: &str = "SKYRTEX_THREADS";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatchConfig {
    pub base_seed: u64,
    pub n_qubits: usize,
    pub depth: usize,
    pub modes: Vec<Mode>,
    pub per_mode_count: usize,
    pub image_size: (usize, usize),
    #[serde(skip)]
    pub output_dir: PathBuf,
    pub prng_name: String,
    pub cluster_k: usize,
    pub ssim_subset: usize,
    #[serde(skip)]
    pub execution: Execution,
    /// Worker cap; `None` falls back to [`THREADS_ENV`], then to all cores.
    #[serde(skip)]
    pub threads: Option<usize>,
}

impl Default for BatchConfig {
    fn default() -> Self {
        Self {
            base_seed: 42,
            n_qubits: 6,
            depth: 6,
            modes: Mode::ALL.to_vec(),
            per_mode_count: 50,
            image_size: (256, 256),
            output_dir: PathBuf::from("run"),
            prng_name: crate::qstate::PRNG_NAME.to_string(),
            cluster_k: 4,
            ssim_subset: 8,
            execution: Execution::default(),
            threads: None,
        }
    }
}

impl BatchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.modes.is_empty() {
            return Err(Error::invalid("at least one mode is required"));
        }
        for (i, m) in self.modes.iter().enumerate() {
            if self.modes[..i].contains(m) {
                return Err(Error::invalid(format!("mode {m} listed twice")));
            }
        }
        if self.per_mode_count == 0 || self.per_mode_count > u32::MAX as usize {
            return Err(Error::invalid("per-mode count must be in 1..=2^32-1"));
        }
        let (w, h) = self.image_size;
        if w < 16 || h < 16 {
            return Err(Error::invalid(format!("image size {w}x{h} is below 16x16")));
        }
        if self.cluster_k == 0 {
            return Err(Error::invalid("cluster count must be at least 1"));
        }
        if self.prng_name != crate::qstate::PRNG_NAME {
            return Err(Error::invalid(format!(
                "unsupported PRNG {:?}; only {:?} is available",
                self.prng_name,
                crate::qstate::PRNG_NAME
            )));
        }
        Ok(())
    }

    pub fn image_count(&self) -> usize {
        self.modes.len() * self.per_mode_count
    }

    pub(crate) fn resolved_threads(&self) -> Option<usize> {
        self.threads.or_else(threads_from_env)
    }
}

/// Positive integer from [`THREADS_ENV`], if set and valid.
pub fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

/// The SplitMix64 output function, a bijection on `u64`.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-image seed `splitmix64(base ^ splitmix64((mode << 32) | j))`.
///
/// For a fixed base this is injective in `(mode, j)` while `j < 2^32`, since
/// both the key packing and each mixing step are bijections.
pub fn mix_seed(base: u64, mode_index: usize, j: usize) -> u64 {
    let key = ((mode_index as u64) << 32) | (j as u64 & 0xFFFF_FFFF);
    splitmix64(base ^ splitmix64(key))
}
