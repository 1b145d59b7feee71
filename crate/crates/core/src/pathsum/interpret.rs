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

//! Circuit interpretation: `⟦g₂·g₁⟧ = ⟦g₂⟧ ∘ ⟦g₁⟧`, with each gate padded by
//! identity wires to the full register.

use super::{PathSum, PathSumError, Scalar};
use crate::boolpoly::{BoolPoly, Monomial, VarId};
use crate::circuit::{Circuit, Gate};

/// The path sum of a single gate on its own wires.
pub fn gate_sem(gate: &Gate) -> PathSum {
    let var = |i: u32| BoolPoly::var(VarId(i));
    match gate {
        Gate::H(_) => PathSum::from_parts(
            Scalar::sqrt2_pow(-1),
            2,
            var(0).mul(&var(1)),
            vec![var(1)],
            vec![var(0)],
        ),
        Gate::X(_) => PathSum::from_parts(
            Scalar::ONE,
            1,
            BoolPoly::zero(),
            vec![var(0).add(&BoolPoly::one())],
            vec![var(0)],
        ),
        Gate::Z(qubits) => {
            let k = qubits.len() as u32;
            let wires: Vec<BoolPoly> = (0..k).map(var).collect();
            PathSum::from_parts(
                Scalar::ONE,
                k,
                BoolPoly::monomial(Monomial::from_vars((0..k).map(VarId))),
                wires.clone(),
                wires,
            )
        }
        Gate::Swap(..) => PathSum::from_parts(
            Scalar::ONE,
            2,
            BoolPoly::zero(),
            vec![var(1), var(0)],
            vec![var(0), var(1)],
        ),
    }
}

/// `gate_sem(g)` on the listed qubits, tensored with identities on the rest
/// of an `n`-qubit register. Identity variables follow the gate's variables
/// in ascending wire order.
pub(crate) fn embed(gate: &Gate, n: usize) -> Result<PathSum, PathSumError> {
    let local = gate_sem(gate);
    let qubits = gate.qubits();
    if let Some(&q) = qubits.iter().find(|&&q| q >= n) {
        return Err(PathSumError::QubitOutOfRange { qubit: q, num_qubits: n });
    }
    let mut outputs = vec![BoolPoly::zero(); n];
    let mut inputs = vec![BoolPoly::zero(); n];
    let mut touched = vec![false; n];
    for (j, &q) in qubits.iter().enumerate() {
        outputs[q] = local.outputs()[j].clone();
        inputs[q] = local.inputs()[j].clone();
        touched[q] = true;
    }
    let mut next = local.num_vars();
    for w in 0..n {
        if !touched[w] {
            outputs[w] = BoolPoly::var(VarId(next));
            inputs[w] = BoolPoly::var(VarId(next));
            next += 1;
        }
    }
    Ok(PathSum::from_parts(local.scalar(), next, local.phase().clone(), outputs, inputs))
}

/// Appends `layer` after `acc` in place: the result is `layer ∘ acc` with
/// `acc`'s variables kept at their indices, then `layer`'s, then the mediators.
fn append_layer(acc: &mut PathSum, layer: &PathSum) {
    let n = acc.outputs.len();
    debug_assert_eq!(layer.inputs.len(), n);
    let offset = acc.num_vars;
    let mediators = offset + layer.num_vars;
    acc.phase.add_assign(&layer.phase.shift(offset));
    for i in 0..n {
        let y = Monomial::var(VarId(mediators + i as u32));
        let link = acc.outputs[i].add(&layer.inputs[i].shift(offset));
        acc.phase.add_assign(&link.mul_monomial(&y));
    }
    acc.outputs = layer.outputs.iter().map(|p| p.shift(offset)).collect();
    acc.scalar = acc.scalar.mul(layer.scalar).scale(-2 * n as i64);
    acc.num_vars = mediators + n as u32;
}

/// `⟦C⟧` as an `n → n` path sum.
///
/// The result equals the left fold `⟦g_k⟧ ∘ … ∘ ⟦g_1⟧` of padded gates up to
/// a renaming of variables. For `k ≥ 1` gates with at most `m` controls it has
/// at most `(m+1)·k + 2·n·k` variables.
pub fn interpret(circuit: &Circuit) -> Result<PathSum, PathSumError> {
    let n = circuit.num_qubits();
    let mut gates = circuit.gates().iter();
    let Some(first) = gates.next() else {
        return Ok(PathSum::identity(n));
    };
    let mut acc = embed(first, n)?;
    for g in gates {
        append_layer(&mut acc, &embed(g, n)?);
    }
    Ok(acc)
}

#[cfg(test)]
pub(crate) fn interpret_by_fold(circuit: &Circuit) -> Result<PathSum, PathSumError> {
    let n = circuit.num_qubits();
    let mut gates = circuit.gates().iter();
    let Some(first) = gates.next() else {
        return Ok(PathSum::identity(n));
    };
    let mut acc = embed(first, n)?;
    for g in gates {
        acc = embed(g, n)?.compose(&acc)?;
    }
    Ok(acc)
}
