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

use pathsum::circuit::{hidden_shift_circuit, parse, parse_bytes, random_circuit};
use pathsum::sim::{
    measure_sim, output_amplitudes, parse_bits, recover_shift, statevector_oracle, strong_sim, SimError,
};
use pathsum::{Circuit, HiddenShiftSpec};
use proptest::prelude::*;

fn bits(text: &str) -> Vec<bool> {
    parse_bits(text).unwrap()
}

fn basis(index: usize, n: usize) -> Vec<bool> {
    (0..n).map(|q| index >> (n - 1 - q) & 1 == 1).collect()
}

/// `C|0ⁿ⟩` is exactly `|s⟩` according to the dense simulator.
fn oracle_confirms(circuit: &Circuit, shift: &[bool]) -> bool {
    let n = shift.len();
    let state = statevector_oracle(circuit, &vec![false; n]).unwrap();
    let target = shift.iter().fold(0, |acc, &b| acc << 1 | b as usize);
    (0..1 << n).all(|i| {
        let a = state.amplitude(i);
        if i == target {
            a.is_one()
        } else {
            a.is_zero()
        }
    })
}

#[test]
fn small_hidden_shift_instances() {
    let spec = HiddenShiftSpec::new(4, vec![vec![0, 1]], bits("0110"));
    let c = hidden_shift_circuit(&spec).unwrap();
    assert!(oracle_confirms(&c, &spec.shift));
    assert_eq!(recover_shift(&c, 24).unwrap().shift_string(), "0110");

    let spec = HiddenShiftSpec::new(8, vec![vec![0, 1, 2], vec![3]], bits("10110001"));
    let c = hidden_shift_circuit(&spec).unwrap();
    assert!(oracle_confirms(&c, &spec.shift));
    let result = recover_shift(&c, 24).unwrap();
    assert_eq!(result.shift, spec.shift);
    assert!(result.per_qubit_probability.iter().all(|p| p.as_bit().is_some()));
    assert_eq!(result.residual_vars, 0);
}

#[test]
fn random_generator_instances_match_the_oracle() {
    for seed in 0..80u64 {
        let n = 2 * (1 + seed as usize % 5);
        let spec = HiddenShiftSpec::random(n, seed as usize % 3, seed % 2 == 1, seed);
        let spec = HiddenShiftSpec {
            g_monomials: spec.g_monomials.into_iter().take(4).collect(),
            ..spec
        };
        let c = hidden_shift_circuit(&spec).unwrap();
        assert!(oracle_confirms(&c, &spec.shift), "seed {seed}: {spec:?}");
        assert_eq!(recover_shift(&c, 24).unwrap().shift, spec.shift, "seed {seed}");
    }
}

#[test]
fn step_budget_across_recovery() {
    for seed in 0..20u64 {
        let spec = HiddenShiftSpec::random(8, 2, true, seed);
        let c = hidden_shift_circuit(&spec).unwrap();
        let result = recover_shift(&c, 24).unwrap();
        assert!(result.rewrite_steps_total as u64 <= result.vars_total, "seed {seed}");
        assert!(result.vars_total >= u64::from(result.state_vars));
    }
}

#[test]
fn strong_and_measure_sim_match_the_oracle() {
    for seed in 0..40u64 {
        let n = 1 + seed as usize % 5;
        let c = random_circuit(n, 1 + seed as usize % 25, 2, seed);
        for x in 0..1 << n {
            let state = statevector_oracle(&c, &basis(x, n)).unwrap();
            for y in 0..1 << n {
                assert_eq!(strong_sim(&c, &basis(x, n), &basis(y, n), 24).unwrap(), state.amplitude(y));
            }
            assert_eq!(output_amplitudes(&c, &basis(x, n), 24).unwrap(), state.amplitudes());
            for q in 0..n {
                let p = measure_sim(&c, &basis(x, n), q, 24).unwrap();
                assert_eq!(p.exact(), &state.probability_one(q), "seed {seed}, x={x}, qubit {q}");
            }
        }
    }
}

#[test]
fn guard_and_width_errors() {
    let c = parse("qubits 2\nh 0\nh 1\nz 0 1\nh 0").unwrap();
    assert!(matches!(strong_sim(&c, &bits("00"), &bits("000"), 24), Err(SimError::Width { .. })));
    assert!(matches!(measure_sim(&c, &bits("00"), 2, 24), Err(SimError::QubitOutOfRange { .. })));
    let wide = Circuit::new(21);
    assert!(matches!(output_amplitudes(&wide, &[false; 21], 24), Err(SimError::TooWide { .. })));
}

proptest! {
    #[test]
    fn parser_never_panics(bytes in prop::collection::vec(any::<u8>(), 0..200)) {
        let _ = parse_bytes(&bytes);
    }

    #[test]
    fn parser_never_panics_on_near_miss_text(lines in prop::collection::vec("(qubits|h|x|z|swap|#|QUBITS)( [0-9]{1,3}){0,4}", 0..12)) {
        let _ = parse(&lines.join("\n"));
    }

    #[test]
    fn serialized_circuits_parse_back(n in 1usize..8, gates in 0usize..40, seed in any::<u64>()) {
        let c = random_circuit(n, gates, 2, seed);
        prop_assert_eq!(parse(&c.serialize()).unwrap(), c);
    }
}
