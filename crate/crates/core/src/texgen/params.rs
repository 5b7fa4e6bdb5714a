use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::{export_amplitudes, Statevector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Chaotic,
    Layered,
    Ring,
    Wave,
}

impl Mode {
    pub const ALL: [Mode; 4] = [Mode::Chaotic, Mode::Layered, Mode::Ring, Mode::Wave];

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Chaotic => "chaotic",
            Mode::Layered => "layered",
            Mode::Ring => "ring",
            Mode::Wave => "wave",
        }
    }

    /// Position in [`Mode::ALL`].
    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mode::ALL
            .iter()
            .copied()
            .find(|m| m.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::invalid(format!(
                    "unknown mode {s:?}; expected chaotic, layered, ring or wave"
                ))
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TextureParams {
    pub mode: Mode,
    /// Non-negative basis weights `|c_i|^2`.
    pub weights: Vec<f64>,
    /// Basis phases in `[0, 2pi)`.
    pub phases: Vec<f64>,
    /// Keys the per-term geometry substreams.
    pub seed: u64,
    pub width: usize,
    pub height: usize,
}

impl TextureParams {
    pub fn validate(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 {
            return Err(Error::invalid("texture size must be positive"));
        }
        if self.weights.len() != self.phases.len() || self.weights.is_empty() {
            return Err(Error::invalid("weights and phases must be nonempty and equally long"));
        }
        if self.weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::invalid("weights must be finite and non-negative"));
        }
        if self.weights.iter().all(|&w| w == 0.0) {
            return Err(Error::degenerate("all texture weights are zero"));
        }
        Ok(())
    }
}

pub fn params_from_state(
    state: &Statevector,
    mode: Mode,
    size: (usize, usize),
    seed: u64,
) -> Result<TextureParams> {
    let (width, height) = size;
    if width == 0 || height == 0 {
        return Err(Error::invalid("texture size must be positive"));
    }
    let (weights, phases) = export_amplitudes(state)
        .into_iter()
        .map(|a| (a.probability, a.phase))
        .unzip();
    Ok(TextureParams {
        mode,
        weights,
        phases,
        seed,
        width,
        height,
    })
}
