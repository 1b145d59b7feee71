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

use pathsum::fuzz::{confluence_trial, fuzz_sum, random_direct_sum};
use pathsum::rewrite::{apply, find_rewrites, normalize_naive, replay, simply_equivalent, Rule};
use pathsum::{normalize, BoolPoly, Literal, PathSum, Strategy, VarId};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const EVAL_VARS: u32 = 16;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn every_step_preserves_eval(seed in any::<u64>()) {
        let sum = fuzz_sum(seed, 10);
        let before = sum.eval(EVAL_VARS).unwrap();
        for step in find_rewrites(&sum) {
            let after = apply(&sum, &step).unwrap();
            prop_assert!(after.num_vars() < sum.num_vars() || step.rule() == Rule::Z);
            prop_assert_eq!(after.eval(EVAL_VARS).unwrap(), before.clone(), "{} on {}", step, sum);
        }
    }

    #[test]
    fn normal_forms_preserve_eval_and_respect_the_step_bound(seed in any::<u64>(), strategy_seed in any::<u64>()) {
        let sum = fuzz_sum(seed, 10);
        for strategy in [Strategy::DeterministicFirst, Strategy::SeededRandom(strategy_seed)] {
            let (nf, trace) = normalize(&sum, strategy);
            prop_assert!(trace.len() <= sum.num_vars() as usize);
            prop_assert!(find_rewrites(&nf).is_empty());
            prop_assert_eq!(nf.eval(EVAL_VARS).unwrap(), sum.eval(EVAL_VARS).unwrap());
        }
    }

    #[test]
    fn normal_forms_agree_up_to_simple_equivalence(seed in any::<u64>()) {
        let sum = fuzz_sum(seed, 8);
        prop_assert!(confluence_trial(&sum, 4, seed, 8).passed());
    }

    #[test]
    fn simple_transforms_commute_with_normalization(seed in any::<u64>(), shift in any::<u32>(), negations in any::<u64>()) {
        let a = fuzz_sum(seed, 8);
        let k = a.num_vars();
        let phi: Vec<Literal> = (0..k)
            .map(|i| Literal::new(VarId((i + shift) % k), negations >> i & 1 == 1))
            .collect();
        let b = a.apply_simple_transform(&phi).unwrap();
        let (na, _) = normalize(&a, Strategy::DeterministicFirst);
        let (nb, _) = normalize(&b, Strategy::DeterministicFirst);
        prop_assert_eq!(simply_equivalent(&na, &nb, 8), Ok(true), "{} vs {}", na, nb);
    }

    #[test]
    fn steps_survive_composition(seed in any::<u64>(), other in any::<u64>()) {
        let a = fuzz_sum(seed, 6);
        let mut rng = ChaCha8Rng::seed_from_u64(other);
        let b = loop {
            let b = random_direct_sum(&mut rng, 5);
            if b.outputs().len() == a.inputs().len() {
                break b;
            }
        };
        let composed = a.compose(&b).unwrap();
        let available = find_rewrites(&composed);
        for step in find_rewrites(&a) {
            // a's variables keep their indices in a ∘ b
            prop_assert!(available.contains(&step), "{} missing from {}", step, composed);
            let stepped = apply(&composed, &step).unwrap();
            let expected = apply(&a, &step).unwrap().compose(&b).unwrap();
            prop_assert_eq!(stepped.eval(EVAL_VARS).unwrap(), expected.eval(EVAL_VARS).unwrap());
        }
    }

    #[test]
    fn lone_linear_pivot_forces_zero(seed in any::<u64>()) {
        let base = fuzz_sum(seed, 8);
        let x = VarId(base.num_vars());
        let phase = base.phase().add(&BoolPoly::var(x));
        let sum = PathSum::make(base.scalar(), x.0 + 1, phase, base.outputs().to_vec(), base.inputs().to_vec()).unwrap();
        prop_assert!(find_rewrites(&sum).iter().any(|s| s.rule() == Rule::Z && s.pivot() == x));
        prop_assert!(sum.eval(EVAL_VARS).unwrap().is_zero());
    }
}

#[test]
fn random_traces_round_trip_through_text() {
    for seed in 0..150 {
        let sum = fuzz_sum(seed, 12);
        let strategy = Strategy::SeededRandom(seed.wrapping_mul(0x9e37_79b9));
        let (fast, trace) = normalize(&sum, strategy);
        let lines: Vec<String> = trace.iter().map(ToString::to_string).collect();
        let parsed: Vec<_> = lines.iter().map(|l| l.parse().unwrap()).collect();
        assert_eq!(replay(&sum, &parsed).unwrap(), fast, "seed {seed}");
        // the reference normalizer picks its own random order; only the meaning must agree
        let (slow, _) = normalize_naive(&sum, strategy);
        assert_eq!(slow.eval(EVAL_VARS).unwrap(), fast.eval(EVAL_VARS).unwrap(), "seed {seed}");
    }
}
