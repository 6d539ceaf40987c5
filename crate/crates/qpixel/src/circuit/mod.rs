//! Gate-level circuit representation, synthesis and export.

mod qasm;
mod synth;

pub use qasm::{emit_qasm, format_angle, to_qasm};
pub use synth::{
    frqi_circuit, mapping_circuit, mapping_circuit_with, mcry_baseline_circuit, ucry,
    ucry_controls, Synthesis, MAX_BASELINE_PIXELS,
};

use serde::{Deserialize, Serialize};

use crate::encoding::EncodingSpec;
use crate::error::CircuitError;

/// A control qubit together with the basis value it triggers on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Control {
    pub qubit: usize,
    /// `true` fires on `|1⟩`, `false` on `|0⟩`.
    pub positive: bool,
}

/// One gate. `Ry(a)` applies `[[cos a/2, -sin a/2], [sin a/2, cos a/2]]`.
///
/// `Mcry` exists only for the multi-controlled baseline oracle; it is simulated
/// directly and cannot be exported to QASM.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    H {
        target: usize,
    },
    X {
        target: usize,
    },
    Ry {
        target: usize,
        angle: f64,
    },
    Cnot {
        control: usize,
        target: usize,
    },
    Mcry {
        controls: Vec<Control>,
        target: usize,
        angle: f64,
    },
}

impl Gate {
    pub fn target(&self) -> usize {
        match *self {
            Gate::H { target }
            | Gate::X { target }
            | Gate::Ry { target, .. }
            | Gate::Cnot { target, .. }
            | Gate::Mcry { target, .. } => target,
        }
    }

    fn validate(&self, num_qubits: usize) -> Result<(), CircuitError> {
        let check = |qubit: usize| {
            if qubit < num_qubits {
                Ok(())
            } else {
                Err(CircuitError::QubitOutOfRange { qubit, num_qubits })
            }
        };
        let target = self.target();
        check(target)?;
        match self {
            Gate::Cnot { control, .. } => {
                check(*control)?;
                if *control == target {
                    return Err(CircuitError::TargetIsControl(target));
                }
            }
            Gate::Mcry { controls, .. } => {
                let mut seen = vec![false; num_qubits];
                for c in controls {
                    check(c.qubit)?;
                    if c.qubit == target {
                        return Err(CircuitError::TargetIsControl(target));
                    }
                    if std::mem::replace(&mut seen[c.qubit], true) {
                        return Err(CircuitError::DuplicateControl(c.qubit));
                    }
                }
            }
            _ => {}
        }
        Ok(())
    }
}

/// Gates in execution order over a fixed qubit count.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
    spec: Option<EncodingSpec>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Self {
            num_qubits,
            gates: Vec::new(),
            spec: None,
        }
    }

    pub fn with_spec(spec: EncodingSpec) -> Self {
        Self {
            num_qubits: spec.total_qubits(),
            gates: Vec::new(),
            spec: Some(spec),
        }
    }

    pub fn push(&mut self, gate: Gate) -> Result<(), CircuitError> {
        gate.validate(self.num_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend<I: IntoIterator<Item = Gate>>(&mut self, gates: I) -> Result<(), CircuitError> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn spec(&self) -> Option<&EncodingSpec> {
        self.spec.as_ref()
    }

    pub fn counts(&self) -> GateCounts {
        count_gates(self)
    }
}

/// Tally of gates by kind.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCounts {
    pub ry: usize,
    pub cnot: usize,
    pub h: usize,
    pub x: usize,
    pub mcry: usize,
    pub total_qubits: usize,
}

pub fn count_gates(c: &Circuit) -> GateCounts {
    let mut counts = GateCounts {
        total_qubits: c.num_qubits,
        ..GateCounts::default()
    };
    for g in &c.gates {
        match g {
            Gate::H { .. } => counts.h += 1,
            Gate::X { .. } => counts.x += 1,
            Gate::Ry { .. } => counts.ry += 1,
            Gate::Cnot { .. } => counts.cnot += 1,
            Gate::Mcry { .. } => counts.mcry += 1,
        }
    }
    counts
}
