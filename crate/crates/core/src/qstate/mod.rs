//! Seeded random circuits and exact dense statevector simulation.
//!
//! Basis index `i` encodes qubit 0 as its least significant bit, so the
//! amplitude of `|q_{n-1} … q_1 q_0⟩` lives at `i = Σ q_k 2^k`.

mod circuit;
mod plot;
mod statevector;

pub use circuit::{build_random_circuit, Circuit, Gate, GateKind};
pub use plot::{amplitude_chart, plot_amplitudes};
pub use statevector::{
    export_amplitudes, simulate, simulate_with_cap, Amplitude, Statevector, DEFAULT_AMPLITUDE_CAP,
};

/// Name of the PRNG used for circuit sampling, echoed into manifests.
pub const PRNG_NAME: &str = "chacha20 (rand_chacha 0.9, seed_from_u64)";
