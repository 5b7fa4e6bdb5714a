use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use num_complex::Complex64;

use super::circuit::{Circuit, Gate};
use crate::error::{Error, Result};

/// Largest statevector [`simulate`] will allocate, in amplitudes.
pub const DEFAULT_AMPLITUDE_CAP: usize = 1 << 24;

const NORM_TOLERANCE: f64 = 1e-12;

/// Dense pure state of `n_qubits` qubits; qubit 0 is the least significant
/// bit of the basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl Statevector {
    /// `|0…0⟩` on `n_qubits` qubits.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::zero_with_cap(n_qubits, DEFAULT_AMPLITUDE_CAP)
    }

    fn zero_with_cap(n_qubits: usize, cap: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::invalid("statevector needs at least one qubit"));
        }
        let dim = 1u128.checked_shl(n_qubits as u32).unwrap_or(u128::MAX);
        if n_qubits >= 64 || dim > cap as u128 {
            return Err(Error::Capacity {
                amplitudes: dim,
                cap,
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim as usize];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Wraps explicit amplitudes; the length must be a power of two and the
    /// norm must be 1 within `1e-12`.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::invalid(format!(
                "{len} amplitudes is not a power of two >= 2"
            )));
        }
        let state = Self {
            n_qubits: len.trailing_zeros() as usize,
            amplitudes,
        };
        let err = (state.norm_sqr() - 1.0).abs();
        if err > NORM_TOLERANCE {
            return Err(Error::invalid(format!("state norm deviates from 1 by {err:e}")));
        }
        Ok(state)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Multiplies every amplitude by `e^{i alpha}`.
    pub fn with_global_phase(&self, alpha: f64) -> Self {
        let p = Complex64::from_polar(1.0, alpha);
        Self {
            n_qubits: self.n_qubits,
            amplitudes: self.amplitudes.iter().map(|&c| c * p).collect(),
        }
    }

    /// Applies a gate in place. Angles are not range-checked here so inverse
    /// rotations can be applied directly.
    pub fn apply(&mut self, gate: &Gate) {
        for q in gate.targets() {
            assert!(q < self.n_qubits, "gate {gate:?} out of range");
        }
        match *gate {
            Gate::H(q) => {
                let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
                self.apply_single(q, [h, h, h, -h]);
            }
            Gate::Rx(q, theta) => {
                let (s, c) = (theta / 2.0).sin_cos();
                let c = Complex64::new(c, 0.0);
                let ms = Complex64::new(0.0, -s);
                self.apply_single(q, [c, ms, ms, c]);
            }
            Gate::Ry(q, theta) => {
                let (s, c) = (theta / 2.0).sin_cos();
                self.apply_single(
                    q,
                    [
                        Complex64::new(c, 0.0),
                        Complex64::new(-s, 0.0),
                        Complex64::new(s, 0.0),
                        Complex64::new(c, 0.0),
                    ],
                );
            }
            Gate::Rz(q, theta) => {
                let zero = Complex64::new(0.0, 0.0);
                self.apply_single(
                    q,
                    [
                        Complex64::from_polar(1.0, -theta / 2.0),
                        zero,
                        zero,
                        Complex64::from_polar(1.0, theta / 2.0),
                    ],
                );
            }
            Gate::Cnot { control, target } => {
                assert_ne!(control, target, "CNOT control equals target");
                let (c, t) = (1usize << control, 1usize << target);
                for i in 0..self.amplitudes.len() {
                    if i & c != 0 && i & t == 0 {
                        self.amplitudes.swap(i, i | t);
                    }
                }
            }
        }
    }

    /// Row-major 2x2 matrix `[m00, m01, m10, m11]` on qubit `q`, applied to
    /// every amplitude pair `(i, i + 2^q)` with bit `q` of `i` clear.
    fn apply_single(&mut self, q: usize, m: [Complex64; 4]) {
        let stride = 1usize << q;
        let dim = self.amplitudes.len();
        for base in (0..dim).step_by(2 * stride) {
            for i in base..base + stride {
                let a = self.amplitudes[i];
                let b = self.amplitudes[i + stride];
                self.amplitudes[i] = m[0] * a + m[1] * b;
                self.amplitudes[i + stride] = m[2] * a + m[3] * b;
            }
        }
    }
}

/// Runs `circuit` on `|0…0⟩` with the default amplitude cap.
pub fn simulate(circuit: &Circuit) -> Result<Statevector> {
    simulate_with_cap(circuit, DEFAULT_AMPLITUDE_CAP)
}

pub fn simulate_with_cap(circuit: &Circuit, cap: usize) -> Result<Statevector> {
    let mut state = Statevector::zero_with_cap(circuit.n_qubits(), cap)?;
    for gate in circuit.gates() {
        state.apply(gate);
    }
    Ok(state)
}

/// Probability and phase of one basis amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amplitude {
    pub probability: f64,
    /// `arg(c_i)` wrapped into `[0, 2pi)`; zero for a vanishing amplitude.
    pub phase: f64,
}

pub(crate) fn wrap_phase(c: Complex64) -> f64 {
    if c.norm_sqr() == 0.0 {
        return 0.0;
    }
    let p = c.arg().rem_euclid(TAU);
    if p >= TAU {
        0.0
    } else {
        p
    }
}

/// `(|c_i|^2, arg c_i)` ordered by basis index.
pub fn export_amplitudes(state: &Statevector) -> Vec<Amplitude> {
    state
        .amplitudes()
        .iter()
        .map(|&c| Amplitude {
            probability: c.norm_sqr(),
            phase: wrap_phase(c),
        })
        .collect()
}
