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

//! Strong simulation, single-qubit measurement and hidden-shift recovery.
//!
//! Both algorithms build a closed (`0 → 0`) path sum, normalize it and
//! evaluate what is left. Evaluation is exponential in the variables that
//! survive normalization, so it is refused above `max_eval_vars` and the
//! residual count is reported instead.

mod oracle;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::amplitude::Amplitude;
use crate::circuit::Circuit;
use crate::pathsum::{interpret, PathSum, PathSumError};
use crate::rewrite::{normalize, Strategy};

pub use oracle::{statevector_oracle, statevector_oracle_with_cap, OracleError, StateVector, ORACLE_MAX_QUBITS};

/// Largest normal form evaluated densely unless configured otherwise.
pub const DEFAULT_MAX_EVAL_VARS: u32 = 24;

/// Widest register [`output_amplitudes`] enumerates.
pub const MAX_COLUMN_QUBITS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("bit string has {got} bits, circuit has {expected} qubits")]
    Width { expected: usize, got: usize },
    #[error("qubit {qubit} is out of range for {num_qubits} qubits")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },
    #[error("normal form keeps {residual_vars} variables, above the evaluation limit of {max_vars}")]
    Inefficient { residual_vars: u32, max_vars: u32 },
    #[error("qubit {qubit} measures 1 with probability {probability}, not exactly 0 or 1")]
    NonDeterministic { qubit: usize, probability: Probability },
    #[error("{num_qubits} qubits is too wide to enumerate every output (limit {cap})")]
    TooWide { num_qubits: usize, cap: usize },
    #[error("measurement produced {0}, which is not a probability")]
    InvalidProbability(Amplitude),
    #[error(transparent)]
    PathSum(#[from] PathSumError),
}

/// Counters from one normalization.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RunStats {
    /// Variables before rewriting.
    pub initial_vars: u32,
    pub rewrite_steps: usize,
    /// Variables left in the normal form.
    pub residual_vars: u32,
}

/// An exact probability.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Probability(Amplitude);

impl Probability {
    /// Accepts only real values in `[0, 1]`.
    pub fn new(value: Amplitude) -> Result<Probability, SimError> {
        if value.is_negative() || value.cmp_one() == std::cmp::Ordering::Greater {
            return Err(SimError::InvalidProbability(value));
        }
        Ok(Probability(value))
    }

    pub fn exact(&self) -> &Amplitude {
        &self.0
    }

    pub fn decimal(&self) -> String {
        self.0.to_decimal_string()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// `Some(bit)` when the outcome is certain.
    pub fn as_bit(&self) -> Option<bool> {
        match (self.is_zero(), self.is_one()) {
            (true, _) => Some(false),
            (_, true) => Some(true),
            _ => None,
        }
    }
}

/// `1/2`, or the `N * 2^(e/2)` form for irrational values.
impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.to_rational_string() {
            Some(r) => f.write_str(&r),
            None => write!(f, "{}", self.0),
        }
    }
}

impl Serialize for Probability {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Probability", 3)?;
        s.serialize_field("exact", &self.0.to_string())?;
        s.serialize_field("value", &self.to_string())?;
        s.serialize_field("decimal", &self.decimal())?;
        s.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftResult {
    pub shift: Vec<bool>,
    pub per_qubit_probability: Vec<Probability>,
    /// Steps spent on the state and on every measurement.
    pub rewrite_steps_total: usize,
    /// Variables in `⟦C⟧ ∘ |0ⁿ⟩` before rewriting.
    pub state_vars: u32,
    /// Variables in the state plus every measurement sum; bounds `rewrite_steps_total`.
    pub vars_total: u64,
    /// Variables left after normalizing the state.
    pub residual_vars: u32,
}

impl ShiftResult {
    pub fn shift_string(&self) -> String {
        bits_to_string(&self.shift)
    }
}

pub fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Parses a big-endian bit string (qubit 0 leftmost).
pub fn parse_bits(text: &str) -> Option<Vec<bool>> {
    text.chars()
        .map(|c| match c {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        })
        .collect()
}

fn check_width(circuit: &Circuit, bits: &[bool]) -> Result<(), SimError> {
    if bits.len() != circuit.num_qubits() {
        return Err(SimError::Width {
            expected: circuit.num_qubits(),
            got: bits.len(),
        });
    }
    Ok(())
}

/// Normalizes a closed sum and evaluates it.
fn reduce_closed(sum: &PathSum, max_eval_vars: u32) -> Result<(Amplitude, RunStats), SimError> {
    let (normal, trace) = normalize(sum, Strategy::DeterministicFirst);
    let stats = RunStats {
        initial_vars: sum.num_vars(),
        rewrite_steps: trace.len(),
        residual_vars: normal.num_vars(),
    };
    match normal.eval_scalar(max_eval_vars) {
        Ok(value) => Ok((value, stats)),
        Err(PathSumError::EvalGuard { num_vars, max_vars }) => Err(SimError::Inefficient {
            residual_vars: num_vars,
            max_vars,
        }),
        Err(e) => Err(e.into()),
    }
}

/// `⟨y| U_C |x⟩`.
pub fn strong_sim(circuit: &Circuit, x: &[bool], y: &[bool], max_eval_vars: u32) -> Result<Amplitude, SimError> {
    strong_sim_with_stats(circuit, x, y, max_eval_vars).map(|(a, _)| a)
}

pub fn strong_sim_with_stats(
    circuit: &Circuit,
    x: &[bool],
    y: &[bool],
    max_eval_vars: u32,
) -> Result<(Amplitude, RunStats), SimError> {
    check_width(circuit, x)?;
    check_width(circuit, y)?;
    let closed = PathSum::bra(y).compose(&interpret(circuit)?.compose(&PathSum::ket(x))?)?;
    reduce_closed(&closed, max_eval_vars)
}

/// `⟨y| U_C |x⟩` for every `y`, indexed with qubit 0 as the most significant bit.
///
/// `⟦C⟧ ∘ |x⟩` is normalized once and each bra is composed with that normal
/// form, which is far cheaper than `2ⁿ` separate [`strong_sim`] calls.
pub fn output_amplitudes(circuit: &Circuit, x: &[bool], max_eval_vars: u32) -> Result<Vec<Amplitude>, SimError> {
    check_width(circuit, x)?;
    let n = circuit.num_qubits();
    if n > MAX_COLUMN_QUBITS {
        return Err(SimError::TooWide {
            num_qubits: n,
            cap: MAX_COLUMN_QUBITS,
        });
    }
    let state = interpret(circuit)?.compose(&PathSum::ket(x))?;
    let (column, _) = normalize(&state, Strategy::DeterministicFirst);
    (0..1usize << n)
        .map(|index| {
            let y: Vec<bool> = (0..n).map(|q| index >> (n - 1 - q) & 1 == 1).collect();
            let closed = PathSum::bra(&y).compose(&column)?;
            reduce_closed(&closed, max_eval_vars).map(|(a, _)| a)
        })
        .collect()
}

/// `g† ∘ (I ⊗ |1⟩⟨1| ⊗ I) ∘ g` with `g = ⟦C⟧ ∘ |x⟩` and the projector on `qubit`.
pub fn measurement_sandwich(circuit: &Circuit, x: &[bool], qubit: usize) -> Result<PathSum, SimError> {
    check_width(circuit, x)?;
    let n = circuit.num_qubits();
    if qubit >= n {
        return Err(SimError::QubitOutOfRange { qubit, num_qubits: n });
    }
    let g = interpret(circuit)?.compose(&PathSum::ket(x))?;
    sandwich(&g, qubit)
}

fn sandwich(g: &PathSum, qubit: usize) -> Result<PathSum, SimError> {
    let n = g.outputs().len();
    let one = PathSum::ket(&[true]).compose(&PathSum::bra(&[true]))?;
    let projector = PathSum::identity(qubit)
        .tensor(&one)
        .tensor(&PathSum::identity(n - qubit - 1));
    Ok(g.adjoint().compose(&projector.compose(g)?)?)
}

/// `Pr[qubit measures 1]` after running `circuit` on `|x⟩`.
pub fn measure_sim(circuit: &Circuit, x: &[bool], qubit: usize, max_eval_vars: u32) -> Result<Probability, SimError> {
    measure_sim_with_stats(circuit, x, qubit, max_eval_vars).map(|(p, _)| p)
}

pub fn measure_sim_with_stats(
    circuit: &Circuit,
    x: &[bool],
    qubit: usize,
    max_eval_vars: u32,
) -> Result<(Probability, RunStats), SimError> {
    let sandwich = measurement_sandwich(circuit, x, qubit)?;
    let (value, stats) = reduce_closed(&sandwich, max_eval_vars)?;
    Ok((Probability::new(value)?, stats))
}

/// Measures every qubit of `C|0ⁿ⟩` and reads off the shift. Each outcome
/// must be certain; anything else is reported as [`SimError::NonDeterministic`].
///
/// The state `⟦C⟧ ∘ |0ⁿ⟩` is normalized once and every measurement sandwich
/// is built from its normal form. Each step on the state is also a legal step
/// inside the sandwich, so this is one particular rewrite order of the full
/// sandwich rather than a different computation.
pub fn recover_shift(circuit: &Circuit, max_eval_vars: u32) -> Result<ShiftResult, SimError> {
    let n = circuit.num_qubits();
    let state = interpret(circuit)?.compose(&PathSum::ket(&vec![false; n]))?;
    let (reduced, trace) = normalize(&state, Strategy::DeterministicFirst);
    let measure = |q: usize| -> Result<(Probability, RunStats), SimError> {
        let (value, stats) = reduce_closed(&sandwich(&reduced, q)?, max_eval_vars)?;
        Ok((Probability::new(value)?, stats))
    };
    let results: Vec<Result<(Probability, RunStats), SimError>> = map_qubits(n, measure);

    let mut shift = Vec::with_capacity(n);
    let mut probabilities = Vec::with_capacity(n);
    let mut steps = trace.len();
    let mut vars_total = u64::from(state.num_vars());
    for (qubit, result) in results.into_iter().enumerate() {
        let (p, stats) = result?;
        let Some(bit) = p.as_bit() else {
            return Err(SimError::NonDeterministic { qubit, probability: p });
        };
        shift.push(bit);
        probabilities.push(p);
        steps += stats.rewrite_steps;
        vars_total += u64::from(stats.initial_vars);
    }
    Ok(ShiftResult {
        shift,
        per_qubit_probability: probabilities,
        rewrite_steps_total: steps,
        state_vars: state.num_vars(),
        vars_total,
        residual_vars: reduced.num_vars(),
    })
}

#[cfg(feature = "parallel")]
fn map_qubits<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_qubits<T>(n: usize, f: impl Fn(usize) -> T) -> Vec<T> {
    (0..n).map(f).collect()
}
