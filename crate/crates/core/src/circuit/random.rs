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

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Circuit, Gate};

#[derive(Clone, Copy)]
enum Kind {
    H,
    X,
    Swap,
    Z { controls: usize },
}

/// Reproducible random circuit with `depth` gates.
///
/// Gate kinds are drawn uniformly from `H`, `X`, `SWAP` (when `n ≥ 2`) and
/// `C^(m)Z` for every `m ≤ max_m`; qubits are distinct and uniform. `max_m`
/// is clamped to `n - 1`.
pub fn random_circuit(n: usize, depth: usize, max_m: usize, seed: u64) -> Circuit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut circuit = Circuit::new(n);
    if n == 0 {
        return circuit;
    }
    let mut kinds = vec![Kind::H, Kind::X];
    if n >= 2 {
        kinds.push(Kind::Swap);
    }
    kinds.extend((0..=max_m.min(n - 1)).map(|controls| Kind::Z { controls }));

    for _ in 0..depth {
        let kind = kinds[rng.gen_range(0..kinds.len())];
        let gate = match kind {
            Kind::H => Gate::H(rng.gen_range(0..n)),
            Kind::X => Gate::X(rng.gen_range(0..n)),
            Kind::Swap => {
                let q = sample(&mut rng, n, 2);
                Gate::Swap(q.index(0), q.index(1))
            }
            Kind::Z { controls } => Gate::Z(sample(&mut rng, n, controls + 1).into_vec()),
        };
        circuit.push(gate).expect("generated gates are in range and distinct");
    }
    circuit
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::parse;

    #[test]
    fn same_seed_same_circuit() {
        assert_eq!(random_circuit(4, 30, 2, 7), random_circuit(4, 30, 2, 7));
        assert_ne!(random_circuit(4, 30, 2, 7), random_circuit(4, 30, 2, 8));
    }

    #[test]
    fn single_qubit_uses_h_x_z_only() {
        let c = random_circuit(1, 200, 0, 3);
        for g in c.gates() {
            assert!(matches!(g, Gate::H(0) | Gate::X(0) | Gate::Z(_)), "{g}");
            assert_eq!(g.arity(), 1);
        }
        let kinds: std::collections::BTreeSet<_> = c.gates().iter().map(Gate::mnemonic).collect();
        assert_eq!(kinds.len(), 3);
    }

    #[test]
    fn max_m_is_respected_and_clamped() {
        assert!(random_circuit(5, 300, 2, 1).gates().iter().all(|g| g.controls() <= 2));
        assert!(random_circuit(2, 300, 5, 1).gates().iter().all(|g| g.controls() <= 1));
    }

    #[test]
    fn serialized_output_parses_back() {
        for seed in 0..100 {
            let c = random_circuit(1 + (seed as usize % 6), 25, 2, seed);
            assert_eq!(parse(&c.serialize()).unwrap(), c);
        }
    }
}
