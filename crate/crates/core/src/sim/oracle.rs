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

//! Dense statevector simulation, used to check the path-sum engine.
//!
//! Every amplitude of a Toffoli–Hadamard state after `h` Hadamards is an
//! integer times `2^(-h/2)`, so the state is kept as integers plus one shared
//! exponent and each gate is a direct update of the integer vector. Nothing
//! here touches polynomials or rewriting.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::amplitude::Amplitude;
use crate::circuit::{Circuit, Gate};

/// Largest register the oracle simulates by default.
pub const ORACLE_MAX_QUBITS: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle is limited to {cap} qubits, circuit has {num_qubits}")]
    TooManyQubits { num_qubits: usize, cap: usize },
    #[error("input has {got} bits, circuit has {expected} qubits")]
    Width { expected: usize, got: usize },
}

/// `U_C |x⟩` with the basis index taking qubit 0 as the most significant bit.
pub struct StateVector {
    num_qubits: usize,
    coeffs: Vec<BigInt>,
    hadamards: i64,
}

impl StateVector {
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitude(&self, basis: usize) -> Amplitude {
        Amplitude::new(self.coeffs[basis].clone(), -self.hadamards)
    }

    pub fn amplitudes(&self) -> Vec<Amplitude> {
        (0..self.coeffs.len()).map(|i| self.amplitude(i)).collect()
    }

    /// `Pr[qubit measures 1]`, exactly.
    pub fn probability_one(&self, qubit: usize) -> Amplitude {
        let bit = 1 << (self.num_qubits - 1 - qubit);
        let total: BigInt = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(i, _)| i & bit != 0)
            .map(|(_, c)| c * c)
            .sum();
        Amplitude::new(total, -2 * self.hadamards)
    }

    /// `⟨x|x⟩`, which is 1 for any circuit.
    pub fn norm_sqr(&self) -> Amplitude {
        let total: BigInt = self.coeffs.iter().map(|c| c * c).sum();
        Amplitude::new(total, -2 * self.hadamards)
    }
}

/// Runs `circuit` on the basis state `input` (qubit 0 first).
pub fn statevector_oracle(circuit: &Circuit, input: &[bool]) -> Result<StateVector, OracleError> {
    statevector_oracle_with_cap(circuit, input, ORACLE_MAX_QUBITS)
}

pub fn statevector_oracle_with_cap(circuit: &Circuit, input: &[bool], cap: usize) -> Result<StateVector, OracleError> {
    let n = circuit.num_qubits();
    if n > cap {
        return Err(OracleError::TooManyQubits { num_qubits: n, cap });
    }
    if input.len() != n {
        return Err(OracleError::Width {
            expected: n,
            got: input.len(),
        });
    }
    let start = input.iter().fold(0usize, |acc, &b| acc << 1 | b as usize);
    let mut coeffs = vec![BigInt::zero(); 1 << n];
    coeffs[start] = BigInt::from(1);
    let mut hadamards = 0;
    let mask = |q: usize| 1usize << (n - 1 - q);

    for gate in circuit.gates() {
        match gate {
            Gate::H(q) => {
                let b = mask(*q);
                for i in 0..coeffs.len() {
                    if i & b == 0 {
                        let a0 = coeffs[i].clone();
                        let a1 = coeffs[i | b].clone();
                        coeffs[i] = &a0 + &a1;
                        coeffs[i | b] = a0 - a1;
                    }
                }
                hadamards += 1;
            }
            Gate::X(q) => {
                let b = mask(*q);
                for i in 0..coeffs.len() {
                    if i & b == 0 {
                        coeffs.swap(i, i | b);
                    }
                }
            }
            Gate::Z(qs) => {
                let all = qs.iter().fold(0, |m, &q| m | mask(q));
                for (i, c) in coeffs.iter_mut().enumerate() {
                    if i & all == all {
                        *c = -std::mem::take(c);
                    }
                }
            }
            Gate::Swap(a, b) => {
                let (ma, mb) = (mask(*a), mask(*b));
                for i in 0..coeffs.len() {
                    if i & ma != 0 && i & mb == 0 {
                        coeffs.swap(i, (i & !ma) | mb);
                    }
                }
            }
        }
    }
    Ok(StateVector {
        num_qubits: n,
        coeffs,
        hadamards,
    })
}
