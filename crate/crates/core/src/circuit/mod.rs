// Copyright 2026 The pathsum Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Circuits over `{H, X, C^(m)Z, SWAP}`.

mod hidden_shift;
mod parse;
mod random;

use std::fmt;

use thiserror::Error;

pub use hidden_shift::{
    hidden_shift_circuit, hidden_shift_circuit_with_max_degree, parse_index_list, parse_monomials, HiddenShiftSpec,
};
pub use parse::{parse, parse_bytes, parse_with_max_controls, ParseError};
pub use random::random_circuit;

/// Largest `m` in `C^(m)Z` accepted by default (CCZ).
pub const DEFAULT_MAX_CONTROLS: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("qubit {qubit} is out of range for {num_qubits} qubits")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },
    #[error("qubit {0} appears twice in one gate")]
    RepeatedQubit(usize),
    #[error("gate has {controls} controls, above the limit of {max}")]
    TooManyControls { controls: usize, max: usize },
    #[error("controlled-Z gate needs at least one qubit")]
    EmptyGate,
    #[error("invalid hidden-shift instance: {0}")]
    HiddenShift(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    X(usize),
    /// `C^(d-1)Z` on the `d` listed qubits: `Z`, `CZ`, `CCZ`, ...
    Z(Vec<usize>),
    Swap(usize, usize),
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::H(q) | Gate::X(q) => vec![*q],
            Gate::Z(qs) => qs.clone(),
            Gate::Swap(a, b) => vec![*a, *b],
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Gate::H(_) | Gate::X(_) => 1,
            Gate::Z(qs) => qs.len(),
            Gate::Swap(..) => 2,
        }
    }

    /// Number of controls `m` of a `C^(m)Z`; zero for the other gates.
    pub fn controls(&self) -> usize {
        match self {
            Gate::Z(qs) => qs.len().saturating_sub(1),
            _ => 0,
        }
    }

    pub fn mnemonic(&self) -> &'static str {
        match self {
            Gate::H(_) => "h",
            Gate::X(_) => "x",
            Gate::Z(_) => "z",
            Gate::Swap(..) => "swap",
        }
    }

    pub fn is_ccz(&self) -> bool {
        matches!(self, Gate::Z(qs) if qs.len() == 3)
    }

    fn check(&self, num_qubits: usize, max_controls: usize) -> Result<(), CircuitError> {
        let qubits = self.qubits();
        if qubits.is_empty() {
            return Err(CircuitError::EmptyGate);
        }
        for (i, &q) in qubits.iter().enumerate() {
            if q >= num_qubits {
                return Err(CircuitError::QubitOutOfRange { qubit: q, num_qubits });
            }
            if qubits[..i].contains(&q) {
                return Err(CircuitError::RepeatedQubit(q));
            }
        }
        if self.controls() > max_controls {
            return Err(CircuitError::TooManyControls {
                controls: self.controls(),
                max: max_controls,
            });
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.mnemonic())?;
        for q in self.qubits() {
            write!(f, " {q}")?;
        }
        Ok(())
    }
}

/// An ordered gate list on a fixed register. Gates apply left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Circuit {
        Circuit {
            num_qubits,
            gates: Vec::new(),
        }
    }

    /// Validates every gate against the register, with no limit on controls.
    pub fn from_gates(num_qubits: usize, gates: Vec<Gate>) -> Result<Circuit, CircuitError> {
        let mut c = Circuit::new(num_qubits);
        for g in gates {
            c.push_with_limit(g, usize::MAX)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, gate: Gate) -> Result<(), CircuitError> {
        self.push_with_limit(gate, usize::MAX)
    }

    pub(crate) fn push_with_limit(&mut self, gate: Gate, max_controls: usize) -> Result<(), CircuitError> {
        gate.check(self.num_qubits, max_controls)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Largest `m` over the `C^(m)Z` gates present.
    pub fn max_controls(&self) -> usize {
        self.gates.iter().map(Gate::controls).max().unwrap_or(0)
    }

    pub fn ccz_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_ccz()).count()
    }

    pub fn volume(&self) -> Volume {
        Volume {
            gate_count: self.gates.len(),
            num_qubits: self.num_qubits,
            volume: self.gates.len() * self.num_qubits,
        }
    }

    /// Text form; `parse(serialize(c)) == c`.
    pub fn serialize(&self) -> String {
        let mut out = format!("qubits {}\n", self.num_qubits);
        for g in &self.gates {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

/// Size parameters. The volume is `gate_count × num_qubits`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Volume {
    pub gate_count: usize,
    pub num_qubits: usize,
    pub volume: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn volume_examples() {
        assert_eq!(
            Circuit::new(3).volume(),
            Volume {
                gate_count: 0,
                num_qubits: 3,
                volume: 0
            }
        );
        let mut c = Circuit::new(2);
        for g in [Gate::H(0), Gate::H(1), Gate::Z(vec![0, 1]), Gate::X(0), Gate::Swap(0, 1)] {
            c.push(g).unwrap();
        }
        assert_eq!(c.volume().volume, 10);
    }

    #[test]
    fn gate_validation() {
        let mut c = Circuit::new(2);
        assert_eq!(
            c.push(Gate::H(2)),
            Err(CircuitError::QubitOutOfRange {
                qubit: 2,
                num_qubits: 2
            })
        );
        assert_eq!(c.push(Gate::Swap(1, 1)), Err(CircuitError::RepeatedQubit(1)));
        assert_eq!(c.push(Gate::Z(vec![])), Err(CircuitError::EmptyGate));
        assert_eq!(
            Circuit::new(4).push_with_limit(Gate::Z(vec![0, 1, 2, 3]), 2),
            Err(CircuitError::TooManyControls { controls: 3, max: 2 })
        );
    }

    #[test]
    fn display_uses_text_mnemonics() {
        assert_eq!(Gate::Z(vec![2, 0, 1]).to_string(), "z 2 0 1");
        assert_eq!(Gate::Swap(0, 3).to_string(), "swap 0 3");
        assert!(Gate::Z(vec![0, 1, 2]).is_ccz());
        assert_eq!(Gate::Z(vec![4]).controls(), 0);
    }
}
