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

//! Random path sums and confluence trials.
//!
//! Two sources are mixed. Circuit-derived sums interpret a small random
//! circuit and plug in random basis states, so they look like the sums met in
//! simulation. Direct sums draw every polynomial at random and reach shapes a
//! circuit of that size never produces.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boolpoly::{BoolPoly, Monomial, VarId};
use crate::circuit::random_circuit;
use crate::pathsum::{interpret, PathSum, Scalar};
use crate::rewrite::{normalize, simply_equivalent, Strategy};

/// Guard for the eval comparison done on every trial.
pub const TRIAL_EVAL_VARS: u32 = 24;

/// A random polynomial in variables `0..num_vars`.
pub fn random_poly(rng: &mut impl Rng, num_vars: u32, max_degree: usize, max_terms: usize) -> BoolPoly {
    let mut p = BoolPoly::zero();
    let terms = rng.gen_range(0..=max_terms);
    for _ in 0..terms {
        let degree = rng.gen_range(0..=max_degree.min(num_vars as usize));
        let vars = sample(rng, num_vars as usize, degree);
        p.toggle(Monomial::from_vars(vars.iter().map(|v| VarId(v as u32))));
    }
    p
}

/// A sum with every polynomial drawn directly: phase of degree at most 3,
/// zero to two outputs and inputs of degree at most 2.
pub fn random_direct_sum(rng: &mut impl Rng, max_vars: u32) -> PathSum {
    let k = rng.gen_range(1..=max_vars.max(1));
    let phase = random_poly(rng, k, 3, 2 * k as usize);
    let outputs = (0..rng.gen_range(0..=2)).map(|_| random_poly(rng, k, 2, 2)).collect();
    let inputs = (0..rng.gen_range(0..=2)).map(|_| random_poly(rng, k, 2, 2)).collect();
    let scalar = Scalar::sqrt2_pow(rng.gen_range(-4..=4));
    PathSum::make(scalar, k, phase, outputs, inputs).expect("variables drawn below k")
}

/// `⟦C⟧ ∘ |x⟩` for a small random circuit, sometimes closed with a bra.
/// Returns `None` if nothing fitting `max_vars` turned up.
pub fn random_circuit_sum(rng: &mut impl Rng, max_vars: u32) -> Option<PathSum> {
    for _ in 0..64 {
        let n = rng.gen_range(1..=3usize);
        let depth = rng.gen_range(1..=4usize);
        let circuit = random_circuit(n, depth, (n - 1).min(2), rng.gen());
        let ket: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
        let mut sum = interpret(&circuit).ok()?.compose(&PathSum::ket(&ket)).ok()?;
        if rng.gen_bool(0.3) {
            let bra: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
            sum = PathSum::bra(&bra).compose(&sum).ok()?;
        }
        if sum.num_vars() <= max_vars {
            return Some(sum);
        }
    }
    None
}

/// The fuzz sum for one trial seed: circuit-derived or direct, evenly.
pub fn fuzz_sum(seed: u64, max_vars: u32) -> PathSum {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if rng.gen_bool(0.5) {
        if let Some(sum) = random_circuit_sum(&mut rng, max_vars) {
            return sum;
        }
    }
    random_direct_sum(&mut rng, max_vars)
}

/// How the normal forms of one trial were compared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TrialOutcome {
    /// All normal forms are simply equivalent (and evaluate equally).
    Equivalent,
    /// Too many variables for the equivalence search; evals agree.
    EvalEqual,
    Failed(String),
}

impl TrialOutcome {
    pub fn passed(&self) -> bool {
        !matches!(self, TrialOutcome::Failed(_))
    }
}

/// Normalizes `sum` deterministically and under `random_strategies` seeded
/// strategies, then compares every random normal form with the deterministic one.
pub fn confluence_trial(sum: &PathSum, random_strategies: usize, seed: u64, var_cap: u32) -> TrialOutcome {
    let (reference, _) = normalize(sum, Strategy::DeterministicFirst);
    let reference_eval = reference.eval(TRIAL_EVAL_VARS).ok();
    let exact = reference.num_vars() <= var_cap;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random_strategies {
        let strategy_seed: u64 = rng.gen();
        let (other, trace) = normalize(sum, Strategy::SeededRandom(strategy_seed));
        if trace.len() > sum.num_vars() as usize {
            return TrialOutcome::Failed(format!("seed {strategy_seed}: trace of {} steps", trace.len()));
        }
        if exact {
            match simply_equivalent(&reference, &other, var_cap) {
                Ok(true) => {}
                _ => {
                    return TrialOutcome::Failed(format!(
                        "seed {strategy_seed}: normal forms differ\n  first: {reference}\n  random: {other}"
                    ))
                }
            }
        }
        if reference_eval.is_some() && other.eval(TRIAL_EVAL_VARS).ok() != reference_eval {
            return TrialOutcome::Failed(format!("seed {strategy_seed}: normal forms evaluate differently"));
        }
    }
    if exact {
        TrialOutcome::Equivalent
    } else {
        TrialOutcome::EvalEqual
    }
}
