use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateKind {
    H,
    Rx,
    Ry,
    Rz,
    Cnot,
}

/// A single gate application. Rotation angles are in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Gate {
    H(usize),
    Rx(usize, f64),
    Ry(usize, f64),
    Rz(usize, f64),
    Cnot { control: usize, target: usize },
}

impl Gate {
    pub fn kind(&self) -> GateKind {
        match self {
            Gate::H(_) => GateKind::H,
            Gate::Rx(..) => GateKind::Rx,
            Gate::Ry(..) => GateKind::Ry,
            Gate::Rz(..) => GateKind::Rz,
            Gate::Cnot { .. } => GateKind::Cnot,
        }
    }

    /// Qubits acted on; `[control, target]` for CNOT.
    pub fn targets(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::Rx(q, _) | Gate::Ry(q, _) | Gate::Rz(q, _) => vec![q],
            Gate::Cnot { control, target } => vec![control, target],
        }
    }

    pub fn angle(&self) -> Option<f64> {
        match *self {
            Gate::Rx(_, a) | Gate::Ry(_, a) | Gate::Rz(_, a) => Some(a),
            _ => None,
        }
    }

    /// The inverse gate. Rotation inverses carry negated angles, so they are
    /// meant for direct application and are rejected by [`Circuit`] layers.
    pub fn inverse(self) -> Self {
        match self {
            Gate::Rx(q, a) => Gate::Rx(q, -a),
            Gate::Ry(q, a) => Gate::Ry(q, -a),
            Gate::Rz(q, a) => Gate::Rz(q, -a),
            g => g,
        }
    }

    fn validate(&self, n_qubits: usize) -> Result<()> {
        for q in self.targets() {
            if q >= n_qubits {
                return Err(Error::invalid(format!(
                    "gate {self:?} addresses qubit {q} of a {n_qubits}-qubit circuit"
                )));
            }
        }
        if let Gate::Cnot { control, target } = *self {
            if control == target {
                return Err(Error::invalid("CNOT control equals target"));
            }
        }
        if let Some(a) = self.angle() {
            if !(0.0..TAU).contains(&a) {
                return Err(Error::invalid(format!("rotation angle {a} outside [0, 2pi)")));
            }
        }
        Ok(())
    }
}

/// A circuit as an optional prelude (the Hadamard wall) followed by
/// `depth` layers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    n_qubits: usize,
    seed: u64,
    prelude: Vec<Gate>,
    layers: Vec<Vec<Gate>>,
}

impl Circuit {
    /// An empty circuit on `n_qubits` qubits: no prelude and depth 0.
    pub fn empty(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::invalid("circuit needs at least one qubit"));
        }
        Ok(Self {
            n_qubits,
            seed: 0,
            prelude: Vec::new(),
            layers: Vec::new(),
        })
    }

    /// Appends a validated layer.
    pub fn push_layer(&mut self, layer: Vec<Gate>) -> Result<()> {
        for g in &layer {
            g.validate(self.n_qubits)?;
        }
        self.layers.push(layer);
        Ok(())
    }

    pub fn with_layer(mut self, layer: Vec<Gate>) -> Result<Self> {
        self.push_layer(layer)?;
        Ok(self)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn prelude(&self) -> &[Gate] {
        &self.prelude
    }

    pub fn layers(&self) -> &[Vec<Gate>] {
        &self.layers
    }

    /// All gates in application order.
    pub fn gates(&self) -> impl Iterator<Item = &Gate> {
        self.prelude.iter().chain(self.layers.iter().flatten())
    }
}

/// Builds the seeded brickwork circuit: a Hadamard on every qubit, then
/// `depth` layers of one random rotation per qubit (axis uniform over X/Y/Z,
/// angle uniform in `[0, 2pi)`) followed by CNOTs on `(q, q + 1)` for even `q`
/// in even layers and odd `q` in odd layers.
pub fn build_random_circuit(seed: u64, n_qubits: usize, depth: usize) -> Result<Circuit> {
    let mut circuit = Circuit::empty(n_qubits)?;
    circuit.seed = seed;
    circuit.prelude = (0..n_qubits).map(Gate::H).collect();

    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    for layer_idx in 0..depth {
        let mut layer = Vec::with_capacity(n_qubits + n_qubits / 2);
        for q in 0..n_qubits {
            let axis = rng.random_range(0..3u32);
            let angle = rng.random_range(0.0..TAU);
            layer.push(match axis {
                0 => Gate::Rx(q, angle),
                1 => Gate::Ry(q, angle),
                _ => Gate::Rz(q, angle),
            });
        }
        let mut q = layer_idx % 2;
        while q + 1 < n_qubits {
            layer.push(Gate::Cnot {
                control: q,
                target: q + 1,
            });
            q += 2;
        }
        circuit.push_layer(layer)?;
    }
    Ok(circuit)
}
