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

//! Hidden-shift circuits for Maiorana–McFarland bent functions.
//!
//! With the register split into halves `x` (qubits `0..h`) and `y`
//! (qubits `h..2h`), the shifted function is
//! `f(x, y) = Σ_i x_i·y_π(i) + g(y)` evaluated at `(x, y) + s` and its dual is
//! `f̃(x, y) = Σ_i x_i·y_π(i) + g(π⁻¹·x)`. The circuit
//! `H^n · O_f̃ · H^n · X^s · O_f · X^s · H^n` maps `|0ⁿ⟩` to `|s⟩`.

use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Circuit, CircuitError, Gate};

/// Largest monomial degree in `g` accepted by default (realizable with CCZ).
pub const DEFAULT_MAX_G_DEGREE: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HiddenShiftSpec {
    /// Total qubit count; even.
    pub n: usize,
    /// Monomials of `g`, as index sets into one half of the register.
    pub g_monomials: Vec<Vec<usize>>,
    /// The hidden shift, qubit 0 first.
    pub shift: Vec<bool>,
    /// Permutation of `0..n/2` coupling the halves.
    pub pi: Vec<usize>,
}

impl HiddenShiftSpec {
    /// Instance with the identity permutation.
    pub fn new(n: usize, g_monomials: Vec<Vec<usize>>, shift: Vec<bool>) -> Self {
        HiddenShiftSpec {
            n,
            g_monomials,
            shift,
            pi: (0..n / 2).collect(),
        }
    }

    pub fn with_pi(mut self, pi: Vec<usize>) -> Self {
        self.pi = pi;
        self
    }

    /// Random instance with `cubic` degree-3 monomials in `g` (as many as fit),
    /// some lower-degree terms, a random shift, and optionally a random `π`.
    pub fn random(n: usize, cubic: usize, permute: bool, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let half = n / 2;
        let mut g: BTreeSet<Vec<usize>> = BTreeSet::new();
        let draw = |rng: &mut ChaCha8Rng, degree: usize, count: usize, g: &mut BTreeSet<Vec<usize>>| {
            if degree > half {
                return;
            }
            let possible = binomial(half, degree);
            let target = g.len() + count.min(possible);
            let mut attempts = 0;
            while g.len() < target && attempts < 64 * (count + 1) {
                let mut m = sample(rng, half, degree).into_vec();
                m.sort_unstable();
                g.insert(m);
                attempts += 1;
            }
        };
        draw(&mut rng, 3, cubic, &mut g);
        let quadratic = rng.gen_range(0..=half);
        draw(&mut rng, 2, quadratic, &mut g);
        let linear = rng.gen_range(0..=2);
        draw(&mut rng, 1, linear, &mut g);

        let shift = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        let mut pi: Vec<usize> = (0..half).collect();
        if permute {
            pi.shuffle(&mut rng);
        }
        let mut g: Vec<Vec<usize>> = g.into_iter().collect();
        g.shuffle(&mut rng);
        HiddenShiftSpec::new(n, g, shift).with_pi(pi)
    }

    pub fn half(&self) -> usize {
        self.n / 2
    }

    pub fn validate(&self, max_degree: usize) -> Result<(), CircuitError> {
        let bad = |msg: String| Err(CircuitError::HiddenShift(msg));
        if self.n == 0 || self.n % 2 == 1 {
            return bad(format!("qubit count must be even and positive, got {}", self.n));
        }
        if self.shift.len() != self.n {
            return bad(format!("shift has {} bits but the circuit has {} qubits", self.shift.len(), self.n));
        }
        let half = self.half();
        let mut seen_pi = vec![false; half];
        if self.pi.len() != half {
            return bad(format!("permutation must list {half} entries, got {}", self.pi.len()));
        }
        for &p in &self.pi {
            match seen_pi.get_mut(p) {
                Some(s @ false) => *s = true,
                _ => return bad(format!("{:?} is not a permutation of 0..{half}", self.pi)),
            }
        }
        let mut monomials = BTreeSet::new();
        for m in &self.g_monomials {
            if m.is_empty() || m.len() > max_degree {
                return bad(format!("monomial {m:?} must have degree 1..={max_degree}"));
            }
            let mut sorted = m.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != m.len() {
                return bad(format!("monomial {m:?} repeats an index"));
            }
            if let Some(&i) = sorted.iter().find(|&&i| i >= half) {
                return bad(format!("monomial index {i} is out of range 0..{half}"));
            }
            if !monomials.insert(sorted) {
                return bad(format!("monomial {m:?} appears twice"));
            }
        }
        Ok(())
    }

    /// Evaluates `g` on a half-register assignment.
    pub fn g(&self, bits: &[bool]) -> bool {
        self.g_monomials
            .iter()
            .fold(false, |acc, m| acc ^ m.iter().all(|&i| bits[i]))
    }
}

/// Parses a comma-separated index list such as `2,0,1`.
pub fn parse_index_list(text: &str) -> Result<Vec<usize>, CircuitError> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| CircuitError::HiddenShift(format!("{:?} is not an index", t.trim())))
        })
        .collect()
}

/// Parses monomials written as `a,b,c;d;e,f`. Blank segments contribute nothing,
/// so the empty string is `g = 0`.
pub fn parse_monomials(text: &str) -> Result<Vec<Vec<usize>>, CircuitError> {
    text.split(';')
        .filter(|m| !m.trim().is_empty())
        .map(parse_index_list)
        .collect()
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

pub fn hidden_shift_circuit(spec: &HiddenShiftSpec) -> Result<Circuit, CircuitError> {
    hidden_shift_circuit_with_max_degree(spec, DEFAULT_MAX_G_DEGREE)
}

/// Builds the circuit, allowing `g` monomials up to `max_degree`.
pub fn hidden_shift_circuit_with_max_degree(
    spec: &HiddenShiftSpec,
    max_degree: usize,
) -> Result<Circuit, CircuitError> {
    spec.validate(max_degree)?;
    let n = spec.n;
    let half = spec.half();
    let mut pi_inv = vec![0; half];
    for (i, &p) in spec.pi.iter().enumerate() {
        pi_inv[p] = i;
    }

    let mut gates = Vec::new();
    let hadamards = |gates: &mut Vec<Gate>| gates.extend((0..n).map(Gate::H));
    let shift = |gates: &mut Vec<Gate>| {
        gates.extend(spec.shift.iter().enumerate().filter(|(_, &b)| b).map(|(q, _)| Gate::X(q)));
    };
    let coupling = |gates: &mut Vec<Gate>| {
        gates.extend((0..half).map(|i| Gate::Z(vec![i, half + spec.pi[i]])));
    };

    hadamards(&mut gates);
    shift(&mut gates);
    coupling(&mut gates);
    // O_g on the second half
    gates.extend(spec.g_monomials.iter().map(|m| Gate::Z(m.iter().map(|&a| half + a).collect())));
    shift(&mut gates);
    hadamards(&mut gates);
    coupling(&mut gates);
    // O_g(π⁻¹·x) on the first half
    gates.extend(spec.g_monomials.iter().map(|m| Gate::Z(m.iter().map(|&a| pi_inv[a]).collect())));
    hadamards(&mut gates);

    Circuit::from_gates(n, gates)
}
