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

//! Browser bindings for the pathsum simulator.
//!
//! Each export takes plain strings and returns a JSON document; errors come
//! back as a thrown string. The `*_json` functions hold the logic so it can be
//! tested natively.

use pathsum::circuit::{hidden_shift_circuit, parse, parse_index_list, parse_monomials};
use pathsum::pathsum::interpret;
use pathsum::sim::{self, bits_to_string, parse_bits, Probability, DEFAULT_MAX_EVAL_VARS};
use pathsum::{normalize, Circuit, HiddenShiftSpec, PathSum, Strategy};
use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest register the page will simulate; keeps the tab responsive.
pub const MAX_QUBITS: usize = 24;

fn bits(what: &str, text: &str, n: usize) -> Result<Vec<bool>, String> {
    let b = parse_bits(text.trim()).ok_or_else(|| format!("{what} must be a string of 0s and 1s"))?;
    if b.len() != n {
        return Err(format!("{what} has {} bits, the circuit has {n} qubits", b.len()));
    }
    Ok(b)
}

fn circuit(text: &str) -> Result<Circuit, String> {
    let c = parse(text).map_err(|e| format!("line {e}"))?;
    if c.num_qubits() > MAX_QUBITS {
        return Err(format!("at most {MAX_QUBITS} qubits in the browser"));
    }
    Ok(c)
}

fn to_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("reports serialize")
}

/// Builds a hidden-shift circuit and recovers its shift.
pub fn hidden_shift_json(n: usize, shift: &str, g: &str, pi: &str) -> Result<String, String> {
    if n > MAX_QUBITS {
        return Err(format!("at most {MAX_QUBITS} qubits in the browser"));
    }
    let monomials = parse_monomials(g).map_err(|e| e.to_string())?;
    let mut spec = HiddenShiftSpec::new(n, monomials, bits("shift", shift, n)?);
    if !pi.trim().is_empty() {
        spec = spec.with_pi(parse_index_list(pi).map_err(|e| e.to_string())?);
    }
    let c = hidden_shift_circuit(&spec).map_err(|e| e.to_string())?;
    let result = sim::recover_shift(&c, DEFAULT_MAX_EVAL_VARS).map_err(|e| e.to_string())?;
    Ok(to_string(&json!({
        "circuit": c.serialize(),
        "gates": c.len(),
        "ccz": c.ccz_count(),
        "recovered": result.shift_string(),
        "matches": result.shift == spec.shift,
        "rewrite_steps": result.rewrite_steps_total,
        "vars_total": result.vars_total,
        "state_vars": result.state_vars,
    })))
}

/// `⟨out|C|in⟩` and the probability that each qubit of `C|in⟩` measures 1.
pub fn simulate_json(circuit_text: &str, input: &str, output: &str) -> Result<String, String> {
    let c = circuit(circuit_text)?;
    let n = c.num_qubits();
    let x = bits("input", input, n)?;
    let y = bits("output", output, n)?;
    let amplitude = sim::strong_sim(&c, &x, &y, DEFAULT_MAX_EVAL_VARS).map_err(|e| e.to_string())?;
    let probabilities = (0..n)
        .map(|q| sim::measure_sim(&c, &x, q, DEFAULT_MAX_EVAL_VARS))
        .collect::<Result<Vec<Probability>, _>>()
        .map_err(|e| e.to_string())?;
    Ok(to_string(&json!({
        "input": bits_to_string(&x),
        "output": bits_to_string(&y),
        "amplitude": amplitude.to_string(),
        "decimal": amplitude.to_decimal_string(),
        "probabilities": probabilities,
    })))
}

/// Normal form of `⟦C⟧`, or of `⟦C⟧ ∘ |in⟩` when `input` is not blank, with the rewrite trace.
pub fn normalize_json(circuit_text: &str, input: &str, seed: Option<u64>) -> Result<String, String> {
    let c = circuit(circuit_text)?;
    let mut sum = interpret(&c).map_err(|e| e.to_string())?;
    if !input.trim().is_empty() {
        let x = bits("input", input, c.num_qubits())?;
        sum = sum.compose(&PathSum::ket(&x)).map_err(|e| e.to_string())?;
    }
    let strategy = seed.map_or(Strategy::DeterministicFirst, Strategy::SeededRandom);
    let (nf, trace) = normalize(&sum, strategy);
    Ok(to_string(&json!({
        "initial_vars": sum.num_vars(),
        "text": nf.to_string(),
        "normal_form": nf,
        "trace": trace.iter().map(ToString::to_string).collect::<Vec<_>>(),
    })))
}

#[wasm_bindgen]
pub fn hidden_shift(n: usize, shift: &str, g: &str, pi: &str) -> Result<String, JsValue> {
    hidden_shift_json(n, shift, g, pi).map_err(JsValue::from)
}

#[wasm_bindgen]
pub fn simulate(circuit: &str, input: &str, output: &str) -> Result<String, JsValue> {
    simulate_json(circuit, input, output).map_err(JsValue::from)
}

/// A negative seed selects the deterministic strategy.
#[wasm_bindgen(js_name = normalize)]
pub fn normalize_circuit(circuit: &str, input: &str, seed: f64) -> Result<String, JsValue> {
    let seed = (seed >= 0.0).then_some(seed as u64);
    normalize_json(circuit, input, seed).map_err(JsValue::from)
}
